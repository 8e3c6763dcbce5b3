#pragma once

// Univariate polynomial helpers over Z and Q (constant term first):
// exact square roots, Sturm sequences, and the real-root bound test used for
// Hecke eigenvalues.

#include "eisver/linalg.hpp"

#include <optional>
#include <vector>

namespace eisver {

using RatPolynomial = std::vector<Rational>;

inline void trim(IntPolynomial& f)
{
  while (!f.empty() && f.back() == 0) f.pop_back();
}

inline void trim(RatPolynomial& f)
{
  while (!f.empty() && f.back() == 0) f.pop_back();
}

inline Integer evaluate(const IntPolynomial& f, const Integer& x)
{
  Integer r = 0;
  for (std::size_t i = f.size(); i-- > 0;) r = r * x + f[i];
  return r;
}

inline Rational evaluate(const RatPolynomial& f, const Rational& x)
{
  Rational r = 0;
  for (std::size_t i = f.size(); i-- > 0;) r = r * x + f[i];
  return r;
}

inline IntPolynomial multiply(const IntPolynomial& a, const IntPolynomial& b)
{
  if (a.empty() || b.empty()) return {};
  IntPolynomial c(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  trim(c);
  return c;
}

/// Monic g with g^2 = f, or nullopt.
inline std::optional<IntPolynomial> monic_sqrt(IntPolynomial f)
{
  trim(f);
  if (f.empty() || f.back() != 1 || (f.size() - 1) % 2 != 0) return std::nullopt;
  const std::size_t n = f.size() - 1, g = n / 2;
  // Solve top-down: coefficient of x^(n-k) in g^2 determines g_{g-k}.
  IntPolynomial r(g + 1);
  r[g] = 1;
  for (std::size_t k = 1; k <= g; ++k) {
    Integer s = f[n - k];
    for (std::size_t i = 1; i < k; ++i) s -= r[g - i] * r[g - k + i];
    if (!mpz_divisible_ui_p(s.get_mpz_t(), 2)) return std::nullopt;
    r[g - k] = s / 2;
  }
  if (multiply(r, r) != f) return std::nullopt;
  return r;
}

inline RatPolynomial to_rational(const IntPolynomial& f) { return RatPolynomial(f.begin(), f.end()); }

inline RatPolynomial derivative(const RatPolynomial& f)
{
  RatPolynomial d;
  for (std::size_t i = 1; i < f.size(); ++i) d.push_back(f[i] * static_cast<long>(i));
  trim(d);
  return d;
}

/// Remainder of a divided by b (b nonzero).
inline RatPolynomial remainder(RatPolynomial a, const RatPolynomial& b)
{
  trim(a);
  while (a.size() >= b.size() && !a.empty()) {
    Rational c = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
    trim(a);
  }
  return a;
}

inline RatPolynomial quotient(RatPolynomial a, const RatPolynomial& b)
{
  trim(a);
  if (a.size() < b.size()) return {};
  RatPolynomial q(a.size() - b.size() + 1);
  while (a.size() >= b.size() && !a.empty()) {
    Rational c = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
    trim(a);
  }
  return q;
}

inline RatPolynomial poly_gcd(RatPolynomial a, RatPolynomial b)
{
  trim(a);
  trim(b);
  while (!b.empty()) {
    RatPolynomial r = remainder(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    Rational lead = a.back();
    for (auto& c : a) c /= lead;
  }
  return a;
}

inline RatPolynomial squarefree_part(const RatPolynomial& f)
{
  RatPolynomial g = poly_gcd(f, derivative(f));
  return quotient(f, g);
}

/// Number of distinct real roots of f in the closed interval [lo, hi].
inline std::size_t count_real_roots(RatPolynomial f, const Rational& lo, const Rational& hi)
{
  trim(f);
  if (f.empty()) throw std::invalid_argument("count_real_roots: zero polynomial");
  f = squarefree_part(f);
  std::vector<RatPolynomial> seq{f, derivative(f)};
  while (!seq.back().empty()) {
    RatPolynomial r = remainder(seq[seq.size() - 2], seq.back());
    for (auto& c : r) c = -c;
    seq.push_back(std::move(r));
  }
  seq.pop_back();
  auto variations = [&](const Rational& x) {
    std::size_t v = 0;
    int last = 0;
    for (const auto& p : seq) {
      int s = sgn(evaluate(p, x));
      if (s == 0) continue;
      if (last != 0 && s != last) ++v;
      last = s;
    }
    return v;
  };
  std::size_t n = variations(lo) - variations(hi); // roots in (lo, hi]
  if (evaluate(f, lo) == 0) ++n;
  return n;
}

/// True iff every root of f is real with absolute value at most 2 sqrt(r).
/// Works on G(y) with G(x^2) = +-f(x) f(-x), whose roots are the squares of
/// the roots of f, so that the interval endpoints 0 and 4r are rational.
inline bool roots_within_ramanujan_bound(const IntPolynomial& f, std::int64_t r)
{
  IntPolynomial fm = f;
  for (std::size_t i = 1; i < fm.size(); i += 2) fm[i] = -fm[i];
  IntPolynomial prod = multiply(f, fm);
  RatPolynomial g;
  for (std::size_t i = 0; i < prod.size(); i += 2) g.push_back(prod[i]);
  trim(g);
  if (g.size() <= 1) return true;
  RatPolynomial sf = squarefree_part(g);
  return count_real_roots(sf, 0, Rational(4 * r)) == sf.size() - 1;
}

} // namespace eisver
