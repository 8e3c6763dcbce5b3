#pragma once

// Small-integer arithmetic helpers shared by every module: primality,
// factorisation of levels, valuations, modular exponentiation.

#include <gmpxx.h>

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

namespace eisver {

using Integer = mpz_class;
using Rational = mpq_class;

inline bool is_prime(std::int64_t n)
{
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0 || n % 3 == 0) return false;
  for (std::int64_t d = 5; d * d <= n; d += 6)
    if (n % d == 0 || n % (d + 2) == 0) return false;
  return true;
}

inline std::vector<std::int64_t> primes_up_to(std::int64_t bound)
{
  std::vector<std::int64_t> out;
  for (std::int64_t n = 2; n <= bound; ++n)
    if (is_prime(n)) out.push_back(n);
  return out;
}

/// Prime factorisation as (prime, exponent) pairs in increasing order.
inline std::vector<std::pair<std::int64_t, int>> factor(std::int64_t n)
{
  if (n < 1) throw std::invalid_argument("factor: n must be positive");
  std::vector<std::pair<std::int64_t, int>> out;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    int e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

inline std::vector<std::int64_t> prime_divisors(std::int64_t n)
{
  std::vector<std::int64_t> out;
  for (auto [p, e] : factor(n)) out.push_back(p);
  return out;
}

inline bool is_squarefree(std::int64_t n)
{
  for (auto [p, e] : factor(n))
    if (e > 1) return false;
  return true;
}

/// Positive divisors in increasing order.
inline std::vector<std::int64_t> divisors(std::int64_t n)
{
  std::vector<std::int64_t> out;
  for (std::int64_t d = 1; d <= n; ++d)
    if (n % d == 0) out.push_back(d);
  return out;
}

inline std::int64_t euler_phi(std::int64_t n)
{
  std::int64_t r = n;
  for (auto p : prime_divisors(n)) r = r / p * (p - 1);
  return r;
}

/// Index of Gamma_0(N) in SL_2(Z): N * prod_{p | N} (1 + 1/p).
inline std::int64_t psi(std::int64_t n)
{
  std::int64_t r = n;
  for (auto p : prime_divisors(n)) r = r / p * (p + 1);
  return r;
}

inline std::int64_t mod(std::int64_t a, std::int64_t m)
{
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

inline std::int64_t gcd3(std::int64_t a, std::int64_t b, std::int64_t c)
{
  return std::gcd(std::gcd(a, b), c);
}

/// Extended Euclid: returns g = gcd(a, b) >= 0 with s*a + t*b = g.
inline std::int64_t xgcd(std::int64_t a, std::int64_t b, std::int64_t& s, std::int64_t& t)
{
  std::int64_t s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (b != 0) {
    std::int64_t q = a / b;
    std::int64_t r = a - q * b;
    a = b;
    b = r;
    std::int64_t ns = s0 - q * s1;
    s0 = s1;
    s1 = ns;
    std::int64_t nt = t0 - q * t1;
    t0 = t1;
    t1 = nt;
  }
  if (a < 0) {
    a = -a;
    s0 = -s0;
    t0 = -t0;
  }
  s = s0;
  t = t0;
  return a;
}

/// Inverse of a modulo m (m >= 1); throws if not invertible.
inline std::int64_t inverse_mod(std::int64_t a, std::int64_t m)
{
  if (m == 1) return 0;
  std::int64_t s, t;
  if (xgcd(mod(a, m), m, s, t) != 1) throw std::domain_error("inverse_mod: not a unit");
  return mod(s, m);
}

inline std::int64_t powmod(std::int64_t base, std::int64_t exp, std::int64_t m)
{
  if (m == 1) return 0;
  Integer r;
  Integer b = mod(base, m);
  Integer mm = m;
  mpz_powm_ui(r.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(exp), mm.get_mpz_t());
  return r.get_si();
}

/// Exponent of the prime ell in n (n != 0).
inline int valuation(const Integer& n, std::int64_t ell)
{
  if (n == 0) throw std::domain_error("valuation of zero");
  Integer m = abs(n);
  int v = 0;
  while (mpz_divisible_ui_p(m.get_mpz_t(), static_cast<unsigned long>(ell))) {
    m /= ell;
    ++v;
  }
  return v;
}

/// Largest power of ell dividing n.
inline Integer ell_power_part(const Integer& n, std::int64_t ell)
{
  Integer r = 1;
  for (int i = valuation(n, ell); i > 0; --i) r *= ell;
  return r;
}

/// n with all factors of 2 removed.
inline Integer odd_part(const Integer& n)
{
  Integer m = abs(n);
  if (m == 0) return 0;
  mpz_remove(m.get_mpz_t(), m.get_mpz_t(), Integer(2).get_mpz_t());
  return m;
}

inline Integer ipow(std::int64_t base, int exp)
{
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(exp));
  return r;
}

/// Numerator of a rational in lowest terms.
inline Integer num(const Rational& x)
{
  Rational y = x;
  y.canonicalize();
  return y.get_num();
}

} // namespace eisver
