#pragma once

// Reference computations used by the tests.  Nothing here calls into the
// library beyond the Integer type and plain matrix storage.

#include "eisver/linalg.hpp"

#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

using eisver::Integer;
using Grid = std::vector<std::vector<Integer>>;

inline Grid random_grid(std::mt19937_64& rng, std::size_t r, std::size_t c, int lo, int hi)
{
  std::uniform_int_distribution<int> dist(lo, hi);
  Grid g(r, std::vector<Integer>(c));
  for (auto& row : g)
    for (auto& x : row) x = dist(rng);
  return g;
}

inline eisver::IntMatrix to_matrix(const Grid& g)
{
  eisver::IntMatrix m(g.size(), g.empty() ? 0 : g[0].size());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = g[i][j];
  return m;
}

inline Grid to_grid(const eisver::IntMatrix& m)
{
  Grid g(m.rows(), std::vector<Integer>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) g[i][j] = m(i, j);
  return g;
}

/// Row HNF by column-wise Euclid on rows, then reduction above pivots into [0, pivot).
inline Grid textbook_hnf(Grid a)
{
  const std::size_t r = a.size(), c = r ? a[0].size() : 0;
  std::size_t top = 0;
  for (std::size_t col = 0; col < c && top < r; ++col) {
    while (true) {
      std::size_t best = r;
      for (std::size_t i = top; i < r; ++i)
        if (a[i][col] != 0 && (best == r || abs(a[i][col]) < abs(a[best][col]))) best = i;
      if (best == r) break;
      std::swap(a[top], a[best]);
      bool done = true;
      for (std::size_t i = top + 1; i < r; ++i) {
        if (a[i][col] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a[i][col].get_mpz_t(), a[top][col].get_mpz_t());
        for (std::size_t j = 0; j < c; ++j) a[i][j] -= q * a[top][j];
        if (a[i][col] != 0) done = false;
      }
      if (done) break;
    }
    if (a[top][col] == 0) continue;
    if (a[top][col] < 0)
      for (auto& x : a[top]) x = -x;
    for (std::size_t i = 0; i < top; ++i) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), a[i][col].get_mpz_t(), a[top][col].get_mpz_t());
      for (std::size_t j = 0; j < c; ++j) a[i][j] -= q * a[top][j];
    }
    ++top;
  }
  return a;
}

inline Integer cofactor_det(const Grid& a)
{
  const std::size_t n = a.size();
  if (n == 0) return 1;
  if (n == 1) return a[0][0];
  Integer s = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (a[0][j] == 0) continue;
    Grid minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Integer> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(a[i][k]);
      minor.push_back(std::move(row));
    }
    Integer t = a[0][j] * cofactor_det(minor);
    s += (j % 2 == 0) ? t : Integer(-t);
  }
  return s;
}

inline void subsets(std::size_t n, std::size_t k, std::size_t from, std::vector<std::size_t>& cur,
                    std::vector<std::vector<std::size_t>>& out)
{
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = from; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

/// Cokernel of the column span, from determinantal divisors d_k = gcd of k x k minors.
/// Returns the invariant factors greater than 1 and the free rank.
inline std::pair<std::vector<Integer>, std::size_t> determinantal_snf(const Grid& a)
{
  const std::size_t r = a.size(), c = r ? a[0].size() : 0;
  std::vector<Integer> dk{1};
  for (std::size_t k = 1; k <= std::min(r, c); ++k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    std::vector<std::size_t> cur;
    subsets(r, k, 0, cur, rs);
    subsets(c, k, 0, cur, cs);
    Integer g = 0;
    for (const auto& ri : rs)
      for (const auto& ci : cs) {
        Grid m(k, std::vector<Integer>(k));
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) m[i][j] = a[ri[i]][ci[j]];
        g = gcd(g, cofactor_det(m));
      }
    if (g == 0) break;
    dk.push_back(g);
  }
  std::vector<Integer> inv;
  for (std::size_t k = 1; k < dk.size(); ++k) {
    Integer f = dk[k] / dk[k - 1];
    if (f > 1) inv.push_back(f);
  }
  return {inv, r - (dk.size() - 1)};
}

/// Polynomial (low degree first) determinant of x I - a by cofactor expansion.
using Poly = std::vector<Integer>;

inline Poly poly_mul(const Poly& a, const Poly& b)
{
  Poly out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

inline Poly poly_add(Poly a, const Poly& b, int sign)
{
  if (a.size() < b.size()) a.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += sign * b[i];
  return a;
}

inline Poly poly_det(const std::vector<std::vector<Poly>>& a)
{
  const std::size_t n = a.size();
  if (n == 1) return a[0][0];
  Poly s{0};
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::vector<Poly>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Poly> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(a[i][k]);
      minor.push_back(std::move(row));
    }
    s = poly_add(s, poly_mul(a[0][j], poly_det(minor)), j % 2 == 0 ? 1 : -1);
  }
  while (s.size() > 1 && s.back() == 0) s.pop_back();
  return s;
}

inline Poly cofactor_charpoly(const Grid& a)
{
  const std::size_t n = a.size();
  std::vector<std::vector<Poly>> m(n, std::vector<Poly>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = i == j ? Poly{-a[i][j], 1} : Poly{-a[i][j]};
  return poly_det(m);
}

/// Genus of X_0(N) from the index, elliptic points and cusps.
struct Gamma0Data {
  std::int64_t index = 0;
  std::int64_t nu2 = 0;
  std::int64_t nu3 = 0;
  std::int64_t cusps = 0;
  std::int64_t genus = 0;
};

inline Gamma0Data gamma0_data(std::int64_t n)
{
  Gamma0Data d;
  std::map<std::int64_t, int> f;
  std::int64_t m = n;
  for (std::int64_t p = 2; p * p <= m; ++p)
    while (m % p == 0) ++f[p], m /= p;
  if (m > 1) ++f[m];
  // index = N prod (1 + 1/p)
  d.index = n;
  for (auto [p, e] : f) d.index = d.index / p * (p + 1);
  auto legendre = [](std::int64_t a, std::int64_t p) {
    a = ((a % p) + p) % p;
    if (a == 0) return 0;
    for (std::int64_t x = 1; x < p; ++x)
      if (x * x % p == a) return 1;
    return -1;
  };
  d.nu2 = n % 4 == 0 ? 0 : 1;
  d.nu3 = n % 9 == 0 ? 0 : 1;
  for (auto [p, e] : f) {
    d.nu2 *= p == 2 ? 1 : 1 + legendre(-1, p);
    d.nu3 *= p == 3 ? 1 : p == 2 ? 0 : 1 + legendre(-3, p);
  }
  for (std::int64_t c = 1; c <= n; ++c)
    if (n % c == 0) {
      const std::int64_t g = std::gcd(c, n / c);
      std::int64_t phi = 0;
      for (std::int64_t k = 1; k <= g; ++k)
        if (std::gcd(k, g) == 1) ++phi;
      d.cusps += phi;
    }
  // 12 g = 12 + index - 3 nu2 - 4 nu3 - 6 cusps
  d.genus = (12 + d.index - 3 * d.nu2 - 4 * d.nu3 - 6 * d.cusps) / 12;
  return d;
}

/// Points (including infinity) of y^2 + y = x^3 - x^2 - 10x - 20 over F_r, a model of X_0(11).
inline std::int64_t curve11_points(std::int64_t r)
{
  std::int64_t n = 1;
  for (std::int64_t x = 0; x < r; ++x)
    for (std::int64_t y = 0; y < r; ++y) {
      const std::int64_t lhs = (y * y + y) % r;
      const std::int64_t rhs = (((x * x % r) * x - x * x - 10 * x - 20) % r + 3 * r * r) % r;
      if (lhs == rhs) ++n;
    }
  return n;
}

/// Canonical form of (c : d) in P^1(Z/N): least pair among unit multiples.
inline std::pair<std::int64_t, std::int64_t> p1_canonical(std::int64_t c, std::int64_t d, std::int64_t n)
{
  std::pair<std::int64_t, std::int64_t> best{n, n};
  for (std::int64_t u = 0; u < n; ++u)
    if (std::gcd(u, n) == 1 || n == 1) best = std::min(best, {u * c % n, u * d % n});
  return best;
}

inline std::set<std::pair<std::int64_t, std::int64_t>> p1_enumeration(std::int64_t n)
{
  std::set<std::pair<std::int64_t, std::int64_t>> out;
  for (std::int64_t c = 0; c < n; ++c)
    for (std::int64_t d = 0; d < n; ++d) {
      std::int64_t g = std::gcd(std::gcd(c, d), n);
      if (g == 1) out.insert(p1_canonical(c, d, n));
    }
  if (n == 1) out.insert({0, 0});
  return out;
}

/// gamma(x) = y for some gamma in Gamma_0(N) with entries bounded by h.
inline bool cusps_related(std::int64_t xn, std::int64_t xd, std::int64_t yn, std::int64_t yd, std::int64_t n,
                          std::int64_t h)
{
  for (std::int64_t c = -h; c <= h; ++c) {
    if (c % n != 0) continue;
    for (std::int64_t d = -h; d <= h; ++d) {
      if (std::gcd(c, d) != 1) continue;
      for (std::int64_t a = -h; a <= h; ++a) {
        if (c == 0 && a * d != 1) continue;
        // b from ad - bc = 1
        std::int64_t b;
        if (c == 0) {
          for (b = -h; b <= h; ++b) {
            const std::int64_t num = a * xn + b * xd, den = c * xn + d * xd;
            if (num * yd == den * yn) return true;
          }
          continue;
        }
        if ((a * d - 1) % c != 0) continue;
        b = (a * d - 1) / c;
        const std::int64_t num = a * xn + b * xd, den = c * xn + d * xd;
        if (num * yd == den * yn) return true;
      }
    }
  }
  return false;
}

/// Manin symbols (with signs) summing to the path {0, r/s}, via convergents.
inline std::vector<std::pair<std::pair<std::int64_t, std::int64_t>, int>> path_from_zero(std::int64_t r, std::int64_t s)
{
  std::vector<std::pair<std::pair<std::int64_t, std::int64_t>, int>> out;
  if (s < 0) r = -r, s = -s;
  std::int64_t p2 = 0, q2 = 1, p1 = 1, q1 = 0;
  out.push_back({{0, 1}, 1});
  if (s == 0) return out;
  std::int64_t a = r, b = s;
  while (b != 0) {
    std::int64_t t = a / b;
    if (a % b != 0 && (a < 0) != (b < 0)) --t;
    const std::int64_t p = t * p1 + p2, q = t * q1 + q2;
    const std::int64_t det = p * q1 - p1 * q;
    out.push_back({{det * q, q1}, 1});
    p2 = p1, q2 = q1, p1 = p, q1 = q;
    const std::int64_t rem = a - t * b;
    a = b;
    b = rem;
  }
  return out;
}

/// Signed Manin symbols for the path {x, y} = {0, y} - {0, x}.
inline std::vector<std::pair<std::pair<std::int64_t, std::int64_t>, int>> path(std::int64_t xn, std::int64_t xd,
                                                                             std::int64_t yn, std::int64_t yd)
{
  auto out = path_from_zero(yn, yd);
  for (auto [sym, sign] : path_from_zero(xn, xd)) out.push_back({sym, -sign});
  return out;
}

} // namespace oracle
