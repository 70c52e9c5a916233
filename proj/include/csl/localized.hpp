#pragma once
// The S-integer rings Z[1/S] (S a finite set of primes) and Z/qZ.

#include "csl/bigint.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace csl {

// Z[1/S]. For a single prime ell this is Z[1/ell].
struct SRing {
  std::vector<BigInt> primes;  // sorted, distinct
  static std::shared_ptr<const SRing> make(std::vector<BigInt> primes);
  static std::shared_ptr<const SRing> from_denominator(const BigInt& n);  // primes of n
  std::string name() const;  // "Z1/6" style
  bool operator==(const SRing& o) const { return primes == o.primes; }
};
using SRingPtr = std::shared_ptr<const SRing>;

// Exact element num / prod p_i^{exp_i}, normalized so that exp_i = 0 or p_i
// does not divide num.
class LocalizedInt {
 public:
  LocalizedInt() = default;
  LocalizedInt(SRingPtr ring, const BigInt& num);
  LocalizedInt(SRingPtr ring, const BigInt& num, std::vector<unsigned> exps);
  static LocalizedInt from_rational(SRingPtr ring, const Rational& q);  // throws if not in ring

  const BigInt& num() const { return num_; }
  const std::vector<unsigned>& exps() const { return exp_; }
  unsigned exp() const { return exp_.empty() ? 0 : exp_[0]; }  // single-prime view
  const SRingPtr& ring() const { return ring_; }
  BigInt denominator() const;
  Rational value() const;
  bool is_zero() const { return num_ == 0; }
  bool is_integral() const;
  bool is_unit() const;
  LocalizedInt inverse() const;
  std::optional<LocalizedInt> divide(const LocalizedInt& b) const;  // exact division in the ring
  std::string str() const;

  LocalizedInt operator-() const;
  friend LocalizedInt operator+(const LocalizedInt& a, const LocalizedInt& b);
  friend LocalizedInt operator-(const LocalizedInt& a, const LocalizedInt& b);
  friend LocalizedInt operator*(const LocalizedInt& a, const LocalizedInt& b);
  friend bool operator==(const LocalizedInt& a, const LocalizedInt& b);
  friend bool operator!=(const LocalizedInt& a, const LocalizedInt& b) { return !(a == b); }

  // gcd in the PID Z[1/S]: the S-free part of gcd of numerators.
  friend LocalizedInt ring_gcd(const LocalizedInt& a, const LocalizedInt& b);

 private:
  void normalize();
  void check_ring(const LocalizedInt& o) const;
  BigInt num_ = 0;
  std::vector<unsigned> exp_;
  SRingPtr ring_;
};

// Element of Z/qZ as a canonical residue in [0,q).
class ModInt {
 public:
  ModInt() = default;
  ModInt(const BigInt& v, const BigInt& q);
  const BigInt& v() const { return v_; }
  const BigInt& q() const { return q_; }
  bool is_zero() const { return v_ == 0; }
  bool is_unit() const;
  ModInt inverse() const;
  std::string str() const { return v_.get_str(); }

  ModInt operator-() const { return ModInt(-v_, q_); }
  friend ModInt operator+(const ModInt& a, const ModInt& b);
  friend ModInt operator-(const ModInt& a, const ModInt& b);
  friend ModInt operator*(const ModInt& a, const ModInt& b);
  friend bool operator==(const ModInt& a, const ModInt& b) { return a.q_ == b.q_ && a.v_ == b.v_; }
  friend bool operator!=(const ModInt& a, const ModInt& b) { return !(a == b); }

 private:
  BigInt v_ = 0, q_ = 2;
};

}  // namespace csl
