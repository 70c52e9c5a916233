#pragma once
// Uniform ring interface used by the generic matrix and lifting code.
// Elements of Z/q and Z[1/S] carry their ring, so constants are built
// "like" an existing element.

#include "csl/bigint.hpp"
#include "csl/localized.hpp"

#include <optional>
#include <string>

namespace csl {

template <class R>
struct RingOps;

template <>
struct RingOps<BigInt> {
  static BigInt from_int(const BigInt&, const BigInt& v) { return v; }
  static bool is_zero(const BigInt& x) { return x == 0; }
  static bool is_unit(const BigInt& x) { return x == 1 || x == -1; }
  static BigInt inverse(const BigInt& x) {
    if (!is_unit(x)) throw std::domain_error("not a unit in Z: " + x.get_str());
    return x;
  }
  static std::optional<BigInt> divide(const BigInt& a, const BigInt& b) {
    if (b == 0 || !mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t())) return std::nullopt;
    BigInt q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
  }
  static BigInt gcd(const BigInt& a, const BigInt& b) { return csl::gcd(a, b); }
  static std::string str(const BigInt& x) { return x.get_str(); }
  static std::string ring_name(const BigInt&) { return "Z"; }
};

template <>
struct RingOps<Rational> {
  static Rational from_int(const Rational&, const BigInt& v) { return Rational(v); }
  static bool is_zero(const Rational& x) { return x == 0; }
  static bool is_unit(const Rational& x) { return x != 0; }
  static Rational inverse(const Rational& x) {
    if (x == 0) throw std::domain_error("division by zero in Q");
    return Rational(1) / x;
  }
  static std::optional<Rational> divide(const Rational& a, const Rational& b) {
    if (b == 0) return std::nullopt;
    return Rational(a / b);
  }
  static Rational gcd(const Rational& a, const Rational& b) {
    return (a == 0 && b == 0) ? Rational(0) : Rational(1);
  }
  static std::string str(const Rational& x) { return x.get_str(); }
  static std::string ring_name(const Rational&) { return "Q"; }
};

template <>
struct RingOps<LocalizedInt> {
  static LocalizedInt from_int(const LocalizedInt& like, const BigInt& v) {
    return LocalizedInt(like.ring(), v);
  }
  static bool is_zero(const LocalizedInt& x) { return x.is_zero(); }
  static bool is_unit(const LocalizedInt& x) { return x.is_unit(); }
  static LocalizedInt inverse(const LocalizedInt& x) { return x.inverse(); }
  static std::optional<LocalizedInt> divide(const LocalizedInt& a, const LocalizedInt& b) {
    return a.divide(b);
  }
  static LocalizedInt gcd(const LocalizedInt& a, const LocalizedInt& b) { return ring_gcd(a, b); }
  static std::string str(const LocalizedInt& x) { return x.str(); }
  static std::string ring_name(const LocalizedInt& x) { return x.ring()->name(); }
};

template <>
struct RingOps<ModInt> {
  static ModInt from_int(const ModInt& like, const BigInt& v) { return ModInt(v, like.q()); }
  static bool is_zero(const ModInt& x) { return x.is_zero(); }
  static bool is_unit(const ModInt& x) { return x.is_unit(); }
  static ModInt inverse(const ModInt& x) { return x.inverse(); }
  // Only unit divisors are accepted, so the quotient is unique.
  static std::optional<ModInt> divide(const ModInt& a, const ModInt& b) {
    if (!b.is_unit()) return std::nullopt;
    return a * b.inverse();
  }
  static ModInt gcd(const ModInt& a, const ModInt& b) {
    // Meaningful only over a field (prime q).
    return ModInt((a.is_zero() && b.is_zero()) ? 0 : 1, a.q());
  }
  static std::string str(const ModInt& x) { return x.str(); }
  static std::string ring_name(const ModInt& x) { return "Z/" + x.q().get_str(); }
};

template <class R>
R ring_int(const R& like, long v) {
  return RingOps<R>::from_int(like, BigInt(v));
}

}  // namespace csl
