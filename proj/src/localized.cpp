#include "csl/localized.hpp"

#include "csl/arith.hpp"

#include <algorithm>

namespace csl {

SRingPtr SRing::make(std::vector<BigInt> primes) {
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  for (auto& p : primes)
    if (!is_prime(p)) throw std::invalid_argument("SRing: " + p.get_str() + " is not prime");
  auto r = std::make_shared<SRing>();
  r->primes = std::move(primes);
  return r;
}

SRingPtr SRing::from_denominator(const BigInt& n) {
  if (n < 2) throw std::invalid_argument("SRing: denominator must be >= 2");
  return make(prime_divisors(n));
}

std::string SRing::name() const {
  BigInt prod = 1;
  for (auto& p : primes) prod *= p;
  return "Z1/" + prod.get_str();
}

LocalizedInt::LocalizedInt(SRingPtr ring, const BigInt& num)
    : num_(num), exp_(ring->primes.size(), 0), ring_(std::move(ring)) {}

LocalizedInt::LocalizedInt(SRingPtr ring, const BigInt& num, std::vector<unsigned> exps)
    : num_(num), exp_(std::move(exps)), ring_(std::move(ring)) {
  if (exp_.size() != ring_->primes.size()) throw std::invalid_argument("LocalizedInt: exponent arity");
  normalize();
}

LocalizedInt LocalizedInt::from_rational(SRingPtr ring, const Rational& q) {
  BigInt den = q.get_den();
  std::vector<unsigned> e(ring->primes.size(), 0);
  for (size_t i = 0; i < ring->primes.size(); ++i) {
    while (mpz_divisible_p(den.get_mpz_t(), ring->primes[i].get_mpz_t())) {
      den /= ring->primes[i];
      ++e[i];
    }
  }
  if (den != 1) throw std::domain_error("rational " + q.get_str() + " not in " + ring->name());
  return LocalizedInt(ring, q.get_num(), e);
}

void LocalizedInt::normalize() {
  if (num_ == 0) {
    std::fill(exp_.begin(), exp_.end(), 0u);
    return;
  }
  for (size_t i = 0; i < exp_.size(); ++i) {
    const BigInt& p = ring_->primes[i];
    while (exp_[i] > 0 && mpz_divisible_p(num_.get_mpz_t(), p.get_mpz_t())) {
      num_ /= p;
      --exp_[i];
    }
  }
}

void LocalizedInt::check_ring(const LocalizedInt& o) const {
  if (!ring_ || !o.ring_ || !(*ring_ == *o.ring_))
    throw std::invalid_argument("LocalizedInt: mixed rings");
}

BigInt LocalizedInt::denominator() const {
  BigInt d = 1;
  for (size_t i = 0; i < exp_.size(); ++i) d *= pow(ring_->primes[i], exp_[i]);
  return d;
}

Rational LocalizedInt::value() const {
  Rational r(num_, denominator());
  r.canonicalize();
  return r;
}

bool LocalizedInt::is_integral() const {
  return std::all_of(exp_.begin(), exp_.end(), [](unsigned e) { return e == 0; });
}

bool LocalizedInt::is_unit() const {
  if (num_ == 0) return false;
  BigInt u = abs(num_);
  for (auto& p : ring_->primes)
    while (mpz_divisible_p(u.get_mpz_t(), p.get_mpz_t())) u /= p;
  return u == 1;
}

LocalizedInt LocalizedInt::inverse() const {
  if (!is_unit()) throw std::domain_error("LocalizedInt: " + str() + " is not a unit");
  BigInt u = num_;
  std::vector<unsigned> f(exp_.size(), 0);
  for (size_t i = 0; i < exp_.size(); ++i)
    while (mpz_divisible_p(u.get_mpz_t(), ring_->primes[i].get_mpz_t())) {
      u /= ring_->primes[i];
      ++f[i];
    }
  // num_ = u * prod p^f with u = +-1
  BigInt newnum = u;
  for (size_t i = 0; i < exp_.size(); ++i) newnum *= pow(ring_->primes[i], exp_[i]);
  return LocalizedInt(ring_, newnum, f);
}

std::optional<LocalizedInt> LocalizedInt::divide(const LocalizedInt& b) const {
  check_ring(b);
  if (b.num_ == 0) return std::nullopt;
  BigInt u = b.num_;
  std::vector<unsigned> f(exp_.size(), 0);
  for (size_t i = 0; i < exp_.size(); ++i)
    while (mpz_divisible_p(u.get_mpz_t(), ring_->primes[i].get_mpz_t())) {
      u /= ring_->primes[i];
      ++f[i];
    }
  if (!mpz_divisible_p(num_.get_mpz_t(), u.get_mpz_t())) return std::nullopt;
  BigInt n = num_ / u;
  for (size_t i = 0; i < exp_.size(); ++i) n *= pow(ring_->primes[i], b.exp_[i]);
  std::vector<unsigned> e(exp_.size());
  for (size_t i = 0; i < exp_.size(); ++i) e[i] = exp_[i] + f[i];
  return LocalizedInt(ring_, n, e);
}

std::string LocalizedInt::str() const { return value().get_str(); }

LocalizedInt LocalizedInt::operator-() const {
  LocalizedInt r = *this;
  r.num_ = -r.num_;
  return r;
}

LocalizedInt operator+(const LocalizedInt& a, const LocalizedInt& b) {
  a.check_ring(b);
  std::vector<unsigned> e(a.exp_.size());
  BigInt na = a.num_, nb = b.num_;
  for (size_t i = 0; i < e.size(); ++i) {
    e[i] = std::max(a.exp_[i], b.exp_[i]);
    na *= pow(a.ring_->primes[i], e[i] - a.exp_[i]);
    nb *= pow(a.ring_->primes[i], e[i] - b.exp_[i]);
  }
  return LocalizedInt(a.ring_, na + nb, e);
}

LocalizedInt operator-(const LocalizedInt& a, const LocalizedInt& b) { return a + (-b); }

LocalizedInt operator*(const LocalizedInt& a, const LocalizedInt& b) {
  a.check_ring(b);
  std::vector<unsigned> e(a.exp_.size());
  for (size_t i = 0; i < e.size(); ++i) e[i] = a.exp_[i] + b.exp_[i];
  return LocalizedInt(a.ring_, a.num_ * b.num_, e);
}

bool operator==(const LocalizedInt& a, const LocalizedInt& b) {
  a.check_ring(b);
  return a.num_ == b.num_ && a.exp_ == b.exp_;
}

LocalizedInt ring_gcd(const LocalizedInt& a, const LocalizedInt& b) {
  a.check_ring(b);
  BigInt g = gcd(a.num_, b.num_);
  if (g == 0) return LocalizedInt(a.ring_, BigInt(0));
  for (auto& p : a.ring_->primes)
    while (mpz_divisible_p(g.get_mpz_t(), p.get_mpz_t())) g /= p;
  return LocalizedInt(a.ring_, g);
}

ModInt::ModInt(const BigInt& v, const BigInt& q) : v_(mod(v, q)), q_(q) {
  if (q < 2) throw std::invalid_argument("ModInt: modulus must be >= 2");
}

bool ModInt::is_unit() const { return gcd(v_, q_) == 1; }

ModInt ModInt::inverse() const {
  BigInt r;
  if (!mpz_invert(r.get_mpz_t(), v_.get_mpz_t(), q_.get_mpz_t()))
    throw std::domain_error("ModInt: " + v_.get_str() + " not invertible mod " + q_.get_str());
  return ModInt(r, q_);
}

static void same_q(const ModInt& a, const ModInt& b) {
  if (a.q() != b.q()) throw std::invalid_argument("ModInt: mixed moduli");
}

ModInt operator+(const ModInt& a, const ModInt& b) {
  same_q(a, b);
  return ModInt(a.v_ + b.v_, a.q_);
}
ModInt operator-(const ModInt& a, const ModInt& b) {
  same_q(a, b);
  return ModInt(a.v_ - b.v_, a.q_);
}
ModInt operator*(const ModInt& a, const ModInt& b) {
  same_q(a, b);
  return ModInt(a.v_ * b.v_, a.q_);
}

}  // namespace csl
