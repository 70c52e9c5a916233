#include "csl/arith.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace csl {

int jacobi(const BigInt& a, const BigInt& n) {
  if (n < 1 || mpz_even_p(n.get_mpz_t()))
    throw std::invalid_argument("jacobi: modulus must be odd and positive");
  return mpz_jacobi(a.get_mpz_t(), n.get_mpz_t());
}

namespace {

const std::vector<uint32_t>& small_primes(unsigned long bound) {
  static std::mutex mu;
  static std::vector<uint32_t> primes;
  static unsigned long sieved = 0;
  std::lock_guard<std::mutex> lock(mu);
  if (sieved < bound) {
    std::vector<bool> comp(bound + 1, false);
    primes.clear();
    for (unsigned long i = 2; i <= bound; ++i) {
      if (comp[i]) continue;
      primes.push_back((uint32_t)i);
      for (unsigned long j = i * i; j <= bound; j += i) comp[j] = true;
    }
    sieved = bound;
  }
  return primes;
}

bool miller_rabin(const BigInt& n, const BigInt& a) {
  BigInt d = n - 1;
  unsigned s = 0;
  while (mpz_even_p(d.get_mpz_t())) {
    d /= 2;
    ++s;
  }
  BigInt x = powm(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (unsigned r = 1; r < s; ++r) {
    x = x * x % n;
    if (x == n - 1) return true;
  }
  return false;
}

BigInt pollard_brent(const BigInt& n, unsigned long seed) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  BigInt c = seed % 97 + 1;
  BigInt y = seed % 1009 + 2, ys, x, q = 1, g = 1;
  const unsigned long m = 128;
  unsigned long r = 1;
  auto f = [&](const BigInt& v) -> BigInt { return (v * v + c) % n; };
  while (g == 1) {
    x = y;
    for (unsigned long i = 0; i < r; ++i) y = f(y);
    unsigned long k = 0;
    while (k < r && g == 1) {
      ys = y;
      for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
        y = f(y);
        BigInt diff = x - y;
        q = q * abs(diff) % n;
      }
      g = gcd(q, n);
      k += m;
    }
    r *= 2;
  }
  if (g == n) {
    do {
      ys = f(ys);
      BigInt diff = x - ys;
      g = gcd(abs(diff), n);
    } while (g == 1);
  }
  return g;
}

void split(const BigInt& n, std::map<BigInt, unsigned>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out[n] += 1;
    return;
  }
  BigInt r;
  if (is_square(n, &r)) {
    split(r, out);
    split(r, out);
    return;
  }
  for (unsigned long seed = 1;; ++seed) {
    BigInt d = pollard_brent(n, seed);
    if (d != n && d != 1) {
      split(d, out);
      split(n / d, out);
      return;
    }
  }
}

}  // namespace

bool is_prime(const BigInt& n) {
  if (n < 2) return false;
  static const int bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
  for (int b : bases) {
    if (n == b) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), b)) return false;
  }
  static const BigInt det_limit("3317044064679887385961981");
  if (n < det_limit) {
    for (int b : bases)
      if (!miller_rabin(n, BigInt(b))) return false;
    return true;
  }
  return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

Factorization factorize(const BigInt& n_in, unsigned long trial_bound) {
  if (n_in == 0) throw std::invalid_argument("factorize: zero");
  BigInt n = abs(n_in);
  std::map<BigInt, unsigned> acc;
  const auto& primes = small_primes(trial_bound);
  for (uint32_t p : primes) {
    if (BigInt(p) * p > n) break;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      n /= p;
      acc[BigInt(p)] += 1;
    }
  }
  if (n > 1) {
    BigInt tb(trial_bound);
    if (n < tb * tb)
      acc[n] += 1;
    else
      split(n, acc);
  }
  Factorization f;
  for (auto& [p, e] : acc) f.push_back({p, e});
  return f;
}

std::vector<BigInt> prime_divisors(const BigInt& n) {
  std::vector<BigInt> out;
  for (auto& pe : factorize(n)) out.push_back(pe.p);
  return out;
}

BigInt squarefree_part(const BigInt& n) {
  if (n == 0) throw std::invalid_argument("squarefree_part: zero");
  BigInt m = 1;
  for (auto& pe : factorize(n))
    if (pe.e % 2) m *= pe.p;
  return n < 0 ? BigInt(-m) : m;
}

bool is_squarefree(const BigInt& n) {
  if (n == 0) return false;
  for (auto& pe : factorize(n))
    if (pe.e > 1) return false;
  return true;
}

unsigned valuation(const BigInt& n, const BigInt& p, BigInt* unit) {
  if (n == 0) throw std::invalid_argument("valuation of zero");
  BigInt u = n;
  unsigned v = 0;
  while (mpz_divisible_p(u.get_mpz_t(), p.get_mpz_t())) {
    u /= p;
    ++v;
  }
  if (unit) *unit = u;
  return v;
}

namespace {
// (-1)^{(u-1)/2} and (-1)^{(u^2-1)/8} exponents for odd u, via u mod 8.
int eps_bit(const BigInt& u) { return (int)(mod(u, BigInt(4)) == 3); }
int omega_bit(const BigInt& u) {
  long r = mod(u, BigInt(8)).get_si();
  return (r == 3 || r == 5) ? 1 : 0;
}
}  // namespace

int hilbert(const BigInt& a, const BigInt& b, const Place& v) {
  if (a == 0 || b == 0) throw std::invalid_argument("hilbert: zero argument");
  if (v.is_inf()) return (a < 0 && b < 0) ? -1 : 1;
  const BigInt& p = v.p;
  if (p < 2 || !is_prime(p)) throw std::invalid_argument("hilbert: not a prime");
  BigInt u, w;
  unsigned alpha = valuation(a, p, &u);
  unsigned beta = valuation(b, p, &w);
  if (p == 2) {
    int e = eps_bit(u) * eps_bit(w) + (int)(alpha % 2) * omega_bit(w) +
            (int)(beta % 2) * omega_bit(u);
    return (e % 2) ? -1 : 1;
  }
  int s = 1;
  if ((alpha % 2) && (beta % 2) && mod(p, BigInt(4)) == 3) s = -s;
  if (beta % 2) s *= jacobi(u, p);
  if (alpha % 2) s *= jacobi(w, p);
  return s;
}

int hilbert(const Rational& a, const Rational& b, const Place& v) {
  // a = n/d has the square class of n*d.
  BigInt aa = a.get_num() * a.get_den();
  BigInt bb = b.get_num() * b.get_den();
  return hilbert(aa, bb, v);
}

bool is_square_mod_squarefree(const BigInt& a, const BigInt& n) {
  if (n < 1) throw std::invalid_argument("modulus must be positive");
  if (n == 1) return true;
  for (auto& pe : factorize(n)) {
    if (pe.e > 1) throw std::invalid_argument("modulus not squarefree");
    if (pe.p == 2) continue;  // every residue is a square mod 2
    if (jacobi(a, pe.p) == -1) return false;
  }
  return true;
}

}  // namespace csl
