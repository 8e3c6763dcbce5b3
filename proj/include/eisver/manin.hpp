#pragma once

// Weight-2 modular symbols for Gamma_0(N) presented by Manin symbols.
//
// A Manin symbol (c : d) stands for g{0, oo} = {b/d, a/c} where
// g = [[a, b], [c, d]] in SL_2(Z) lifts the bottom row.  Matrices act on the
// right: (c : d) g = (c, d) g as a row vector.  All operator matrices in this
// library act on row vectors (the image of basis vector i is row i).

#include "eisver/linalg.hpp"
#include "eisver/p1.hpp"

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace eisver {

/// Cusp num/den in lowest terms with den >= 0; infinity is 1/0.
struct Cusp {
  std::int64_t num = 1;
  std::int64_t den = 0;

  static Cusp make(std::int64_t num, std::int64_t den)
  {
    if (num == 0 && den == 0) throw std::invalid_argument("Cusp: 0/0");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    std::int64_t g = std::gcd(num, den);
    num /= g;
    den /= g;
    if (den == 0) num = 1;
    return {num, den};
  }

  std::string to_string() const
  {
    if (den == 0) return "oo";
    return std::to_string(num) + "/" + std::to_string(den);
  }

  friend bool operator==(const Cusp&, const Cusp&) = default;
};

/// Gamma_0(N)-equivalence of cusps: p1/q1 ~ p2/q2 iff
/// s1 q2 = s2 q1 mod gcd(q1 q2, N) where p_j s_j = 1 mod q_j.
inline bool cusps_equivalent(const Cusp& x, const Cusp& y, std::int64_t level)
{
  auto s_of = [](const Cusp& c) -> std::int64_t {
    if (c.den == 0) return c.num;
    if (c.den == 1) return 0;
    return inverse_mod(c.num, c.den);
  };
  const std::int64_t m = std::gcd(x.den * y.den, level);
  const std::int64_t lhs = s_of(x) * y.den;
  const std::int64_t rhs = s_of(y) * x.den;
  if (m == 0) return lhs == rhs;
  return mod(lhs - rhs, m) == 0;
}

/// One representative per Gamma_0(N) class, ordered by denominator class
/// d | N and then numerator.  For squarefree N these are 1/d for d | N.
inline std::vector<Cusp> cusp_representatives(std::int64_t level)
{
  std::vector<Cusp> reps;
  for (auto c : divisors(level)) {
    for (std::int64_t a = 1; a <= level; ++a) {
      if (std::gcd(a, c) != 1) continue;
      Cusp x = Cusp::make(a, c);
      bool seen = false;
      for (const auto& r : reps)
        if (cusps_equivalent(r, x, level)) {
          seen = true;
          break;
        }
      if (!seen) reps.push_back(x);
    }
  }
  return reps;
}

/// Canonical cusps P_n = 1/n for n | N (squarefree N only).
inline std::vector<Cusp> cusp_classes(std::int64_t level)
{
  if (level < 1 || !is_squarefree(level)) throw std::invalid_argument("cusp_classes: level must be squarefree");
  std::vector<Cusp> out;
  for (auto n : divisors(level)) out.push_back(Cusp::make(1, n));
  return out;
}

inline std::size_t cusp_class_index(const std::vector<Cusp>& reps, const Cusp& x, std::int64_t level)
{
  for (std::size_t i = 0; i < reps.size(); ++i)
    if (cusps_equivalent(reps[i], x, level)) return i;
  throw std::logic_error("cusp_class_index: cusp not covered by representatives");
}

/// [[a, b], [c, d]] in SL_2(Z) whose bottom row reduces to (c, d) mod N.
inline std::array<std::int64_t, 4> lift_to_sl2(std::int64_t c, std::int64_t d, std::int64_t level)
{
  c = mod(c, level);
  d = mod(d, level);
  if (c == 0) c = level;
  while (std::gcd(c, d) != 1) d += level;
  std::int64_t s, t;
  xgcd(c, d, s, t); // s c + t d = 1
  return {t, -s, c, d};
}

using HeilbronnMatrix = std::array<std::int64_t, 4>;

/// Merel's set: [[a, b], [c, d]] with a > b >= 0, d > c >= 0, ad - bc = n.
inline std::vector<HeilbronnMatrix> heilbronn_merel(std::int64_t n)
{
  if (n < 1) throw std::invalid_argument("heilbronn_merel: n must be positive");
  std::vector<HeilbronnMatrix> out;
  for (std::int64_t a = 1; a <= n; ++a)
    for (std::int64_t d = 1; a + d <= n + 1; ++d) {
      const std::int64_t m = a * d - n;
      if (m < 0) continue;
      if (m == 0) {
        for (std::int64_t c = 0; c < d; ++c) out.push_back({a, 0, c, d});
        for (std::int64_t b = 1; b < a; ++b) out.push_back({a, b, 0, d});
        continue;
      }
      for (std::int64_t b = 1; b < a; ++b)
        if (m % b == 0 && m / b < d) out.push_back({a, b, m / b, d});
    }
  return out;
}

class ManinSpace {
 public:
  explicit ManinSpace(std::int64_t level) : level_(level), p1_(level)
  {
    build_relations();
    eliminate();
    build_boundary();
  }

  std::int64_t level() const { return level_; }
  const P1List& p1() const { return p1_; }
  std::size_t num_symbols() const { return p1_.size(); }

  /// Two-term rows x + x sigma, then three-term rows x + x tau + x tau^2,
  /// over all Manin symbols.
  const IntMatrix& relation_matrix() const { return relations_; }

  /// Free rank of the full space (modulo torsion).
  std::size_t rank() const { return basis_over_free_.rows(); }

  /// Symbol indices of the free generators chosen by pivoting.
  const std::vector<std::size_t>& free_generators() const { return free_symbols_; }

  /// Integer coordinates of every Manin symbol in the basis (num_symbols x rank).
  const IntMatrix& symbol_coordinates() const { return symbol_coords_; }

  const std::vector<Cusp>& cusps() const { return cusps_; }

  /// Boundary of each basis vector in the free module on cusp classes (rank x #cusps).
  const IntMatrix& boundary() const { return boundary_; }

  /// Boundary of each Manin symbol (num_symbols x #cusps).
  const IntMatrix& symbol_boundary() const { return symbol_boundary_; }

  /// Rows span the cuspidal sublattice ker(boundary), in HNF (2g x rank).
  const IntMatrix& cuspidal_inclusion() const { return cuspidal_; }
  std::size_t cuspidal_rank() const { return cuspidal_.rows(); }
  std::size_t genus() const { return cuspidal_.rows() / 2; }

  /// Coordinates of a formal sum of Manin symbols (given as P^1 pairs).
  template <class Pairs>
  Vector coordinates_of_sum(const Pairs& pairs) const
  {
    Vector v(rank());
    for (const auto& [c, d] : pairs) add_symbol(v, c, d);
    return v;
  }

  void add_symbol(Vector& v, std::int64_t c, std::int64_t d, long mult = 1) const
  {
    const auto i = p1_.index(c, d);
    if (i < 0) return;
    const auto row = symbol_coords_.row(static_cast<std::size_t>(i));
    for (std::size_t j = 0; j < row.size(); ++j)
      if (row[j] != 0) {
        if (mult == 1)
          v[j] += row[j];
        else
          v[j] += row[j] * mult;
      }
  }

  /// Operator on the full space given by a Heilbronn family (rank x rank).
  IntMatrix full_operator(const std::vector<HeilbronnMatrix>& family) const
  {
    const std::size_t k = rank();
    std::vector<Vector> images;
    images.reserve(free_symbols_.size());
    for (auto s : free_symbols_) {
      const auto& pt = p1_[s];
      Vector w(k);
      for (const auto& h : family) add_symbol(w, pt.c * h[0] + pt.d * h[2], pt.c * h[1] + pt.d * h[3]);
      images.push_back(std::move(w));
    }
    return change_from_free(images);
  }

  /// Restriction of a full-space operator to the cuspidal sublattice.
  IntMatrix restrict_to_cuspidal(const IntMatrix& full) const
  {
    const std::size_t g2 = cuspidal_rank();
    IntMatrix out(g2, g2);
    for (std::size_t i = 0; i < g2; ++i) {
      Vector img = vec_mat(cuspidal_.row(i), full);
      auto c = cuspidal_lattice_.coordinates(img);
      if (!c) throw std::logic_error("restrict_to_cuspidal: operator does not preserve the cuspidal lattice");
      for (std::size_t j = 0; j < g2; ++j) out(i, j) = (*c)[j];
    }
    return out;
  }

  const Lattice& cuspidal_lattice() const { return cuspidal_lattice_; }

 private:
  /// Given w_f = image of free generator f (in basis coordinates), return the
  /// matrix whose row i is the image of basis vector i.
  IntMatrix change_from_free(const std::vector<Vector>& images) const
  {
    const std::size_t k = rank();
    IntMatrix out(k, k);
    if (denominator_ == 1) {
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) out(i, j) = images[i][j];
      return out;
    }
    for (std::size_t i = 0; i < k; ++i) {
      Vector acc(k);
      for (std::size_t f = 0; f < k; ++f) {
        const Integer& c = basis_over_free_(i, f);
        if (c == 0) continue;
        for (std::size_t j = 0; j < k; ++j) acc[j] += c * images[f][j];
      }
      for (std::size_t j = 0; j < k; ++j) {
        if (!mpz_divisible_p(acc[j].get_mpz_t(), denominator_.get_mpz_t()))
          throw std::logic_error("ManinSpace: non-integral image of a basis vector");
        out(i, j) = acc[j] / denominator_;
      }
    }
    return out;
  }

  void build_relations()
  {
    const std::size_t n = p1_.size();
    std::vector<Vector> rows;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t j = p1_.sigma(i);
      if (j < i) continue;
      Vector r(n);
      r[i] += 1;
      r[j] += 1;
      rows.push_back(std::move(r));
    }
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t j = p1_.tau(i), k = p1_.tau(j);
      if (j < i || k < i) continue;
      Vector r(n);
      r[i] += 1;
      r[j] += 1;
      r[k] += 1;
      rows.push_back(std::move(r));
    }
    relations_ = IntMatrix::from_rows(rows, n);
  }

  void eliminate()
  {
    const std::size_t n = p1_.size();
    // Two-term relations identify symbols up to sign; sigma-fixed symbols are
    // 2-torsion and vanish modulo torsion.
    std::vector<long> rep(n, -1);
    std::vector<int> sign(n, 0);
    std::vector<std::size_t> rep_symbol;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t j = p1_.sigma(i);
      if (j == i || rep[i] >= 0) continue;
      rep[i] = static_cast<long>(rep_symbol.size());
      sign[i] = 1;
      rep[j] = rep[i];
      sign[j] = -1;
      rep_symbol.push_back(i);
    }
    const std::size_t m = rep_symbol.size();

    // Three-term relations over the representatives, reduced to RREF over Q.
    std::vector<RationalVector> rref;
    std::vector<std::size_t> pivot_cols;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t j = p1_.tau(i), k = p1_.tau(j);
      if (j < i || k < i) continue;
      RationalVector r(m);
      for (std::size_t s : {i, j, k})
        if (rep[s] >= 0) r[static_cast<std::size_t>(rep[s])] += sign[s];
      for (std::size_t t = 0; t < rref.size(); ++t) {
        const Rational f = r[pivot_cols[t]];
        if (f == 0) continue;
        for (std::size_t c = 0; c < m; ++c)
          if (rref[t][c] != 0) r[c] -= f * rref[t][c];
      }
      std::size_t piv = 0;
      while (piv < m && r[piv] == 0) ++piv;
      if (piv == m) continue;
      const Rational lead = r[piv];
      for (auto& x : r) x /= lead;
      for (std::size_t t = 0; t < rref.size(); ++t) {
        const Rational f = rref[t][piv];
        if (f == 0) continue;
        for (std::size_t c = 0; c < m; ++c)
          if (r[c] != 0) rref[t][c] -= f * r[c];
      }
      rref.push_back(std::move(r));
      pivot_cols.push_back(piv);
    }

    std::vector<long> free_index(m, -1);
    std::vector<long> pivot_row(m, -1);
    for (std::size_t t = 0; t < pivot_cols.size(); ++t) pivot_row[pivot_cols[t]] = static_cast<long>(t);
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < m; ++c)
      if (pivot_row[c] < 0) {
        free_index[c] = static_cast<long>(free_cols.size());
        free_cols.push_back(c);
        free_symbols_.push_back(rep_symbol[c]);
      }
    const std::size_t k = free_cols.size();

    // Coordinates of each symbol over the free generators.
    std::vector<RationalVector> coords(n, RationalVector(k));
    for (std::size_t i = 0; i < n; ++i) {
      if (rep[i] < 0) continue;
      const auto c = static_cast<std::size_t>(rep[i]);
      if (free_index[c] >= 0) {
        coords[i][static_cast<std::size_t>(free_index[c])] = sign[i];
      } else {
        const auto& row = rref[static_cast<std::size_t>(pivot_row[c])];
        for (std::size_t f = 0; f < k; ++f) coords[i][f] = -row[free_cols[f]] * sign[i];
      }
    }

    // Lattice generated by the symbols (the image of Z[P^1] in Q^k).
    denominator_ = 1;
    for (const auto& v : coords)
      for (const auto& x : v) denominator_ = lcm(denominator_, x.get_den());
    std::vector<Vector> scaled(n, Vector(k));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t f = 0; f < k; ++f) {
        Rational y = coords[i][f] * denominator_;
        scaled[i][f] = y.get_num();
      }
    if (denominator_ == 1) {
      basis_over_free_ = IntMatrix::identity(k);
      symbol_coords_ = IntMatrix::from_rows(scaled, k);
      return;
    }
    Lattice lat = Lattice::from_rows(scaled, k);
    basis_over_free_ = lat.basis_matrix();
    symbol_coords_ = IntMatrix(n, k);
    for (std::size_t i = 0; i < n; ++i) {
      auto z = lat.coordinates(scaled[i]);
      for (std::size_t f = 0; f < k; ++f) symbol_coords_(i, f) = (*z)[f];
    }
  }

  void build_boundary()
  {
    cusps_ = cusp_representatives(level_);
    const std::size_t n = p1_.size(), nc = cusps_.size(), k = rank();
    symbol_boundary_ = IntMatrix(n, nc);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& pt = p1_[i];
      auto [a, b, c, d] = lift_to_sl2(pt.c, pt.d, level_);
      symbol_boundary_(i, cusp_class_index(cusps_, Cusp::make(a, c), level_)) += 1;
      symbol_boundary_(i, cusp_class_index(cusps_, Cusp::make(b, d), level_)) -= 1;
    }
    std::vector<Vector> images;
    for (std::size_t f = 0; f < k; ++f) images.push_back(symbol_boundary_.row_vector(free_symbols_[f]));
    boundary_ = IntMatrix(k, nc);
    for (std::size_t i = 0; i < k; ++i) {
      Vector acc(nc);
      for (std::size_t f = 0; f < k; ++f)
        for (std::size_t j = 0; j < nc; ++j) acc[j] += basis_over_free_(i, f) * images[f][j];
      for (std::size_t j = 0; j < nc; ++j) {
        if (!mpz_divisible_p(acc[j].get_mpz_t(), denominator_.get_mpz_t()))
          throw std::logic_error("ManinSpace: non-integral boundary");
        boundary_(i, j) = acc[j] / denominator_;
      }
    }
    cuspidal_ = left_kernel(boundary_);
    cuspidal_lattice_ = Lattice::from_rows(cuspidal_);
  }

  std::int64_t level_;
  P1List p1_;
  IntMatrix relations_;
  std::vector<std::size_t> free_symbols_;
  IntMatrix basis_over_free_;
  Integer denominator_ = 1;
  IntMatrix symbol_coords_;
  std::vector<Cusp> cusps_;
  IntMatrix symbol_boundary_;
  IntMatrix boundary_;
  IntMatrix cuspidal_;
  Lattice cuspidal_lattice_;
};

inline ManinSpace build_manin_space(std::int64_t level) { return ManinSpace(level); }

/// Matrix of the boundary map on the basis of the full space.
inline const IntMatrix& boundary_map(const ManinSpace& space) { return space.boundary(); }

} // namespace eisver
