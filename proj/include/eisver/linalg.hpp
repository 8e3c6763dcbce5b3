#pragma once

// Exact integer linear algebra: dense matrices over Z, echelon lattices in
// Hermite normal form, Smith invariants, determinants, characteristic
// polynomials, integer kernels and exact solves.  No floating point.

#include "eisver/arith.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace eisver {

using Vector = std::vector<Integer>;
using RationalVector = std::vector<Rational>;

/// Coefficients of an integer polynomial, constant term first.
using IntPolynomial = std::vector<Integer>;

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static IntMatrix identity(std::size_t n)
  {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static IntMatrix diagonal(const Vector& d)
  {
    IntMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  static IntMatrix from_rows(const std::vector<Vector>& rows, std::size_t cols)
  {
    IntMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw std::invalid_argument("IntMatrix::from_rows: ragged rows");
      std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + static_cast<std::ptrdiff_t>(i * cols));
    }
    return m;
  }

  static IntMatrix from_rows(const std::vector<Vector>& rows)
  {
    return from_rows(rows, rows.empty() ? 0 : rows.front().size());
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<Integer> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const Integer> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  Vector row_vector(std::size_t i) const { return Vector(row(i).begin(), row(i).end()); }

  const std::vector<Integer>& entries() const { return data_; }

  IntMatrix transpose() const
  {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  /// Row-major flattening into a single row vector.
  Vector vectorized() const { return data_; }

  bool is_zero() const
  {
    return std::all_of(data_.begin(), data_.end(), [](const Integer& x) { return x == 0; });
  }

  Integer trace() const
  {
    if (!is_square()) throw std::invalid_argument("trace of non-square matrix");
    Integer t = 0;
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
  }

  friend bool operator==(const IntMatrix& a, const IntMatrix& b)
  {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b)
  {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: shape mismatch");
    IntMatrix c(a.rows_, b.cols_);
    if (small_product(a, b)) {
      std::vector<long> bs(b.data_.size());
      for (std::size_t t = 0; t < bs.size(); ++t) bs[t] = b.data_[t].get_si();
      std::vector<long> row(b.cols_);
      for (std::size_t i = 0; i < a.rows_; ++i) {
        std::fill(row.begin(), row.end(), 0L);
        for (std::size_t k = 0; k < a.cols_; ++k) {
          const long x = a(i, k).get_si();
          if (x == 0) continue;
          const long* br = &bs[k * b.cols_];
          for (std::size_t j = 0; j < b.cols_; ++j) row[j] += x * br[j];
        }
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) = row[j];
      }
      return c;
    }
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Integer& x = a(i, k);
        if (x == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          const Integer& y = b(k, j);
          if (y != 0) mpz_addmul(c(i, j).get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
        }
      }
    return c;
  }

  friend IntMatrix operator+(IntMatrix a, const IntMatrix& b)
  {
    a.check_same_shape(b);
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }

  friend IntMatrix operator-(IntMatrix a, const IntMatrix& b)
  {
    a.check_same_shape(b);
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }

  friend IntMatrix operator*(const Integer& s, IntMatrix a)
  {
    for (auto& x : a.data_) x *= s;
    return a;
  }

  /// a - s * I
  IntMatrix minus_scalar(const Integer& s) const
  {
    if (!is_square()) throw std::invalid_argument("minus_scalar: non-square matrix");
    IntMatrix m = *this;
    for (std::size_t i = 0; i < rows_; ++i) m(i, i) -= s;
    return m;
  }

  std::string to_string() const
  {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      os << (i ? ", [" : "[");
      for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j);
      os << "]";
    }
    os << "]";
    return os.str();
  }

 private:
  /// True when every partial sum of a * b fits comfortably in a long.
  static bool small_product(const IntMatrix& a, const IntMatrix& b)
  {
    auto bits = [](const IntMatrix& m) {
      std::size_t w = 0;
      for (const auto& x : m.data_) w = std::max(w, mpz_sizeinbase(x.get_mpz_t(), 2));
      return w;
    };
    std::size_t inner = 1;
    while ((std::size_t{1} << inner) < a.cols_ + 1) ++inner;
    return bits(a) + bits(b) + inner < 62;
  }

  void check_same_shape(const IntMatrix& b) const
  {
    if (rows_ != b.rows_ || cols_ != b.cols_) throw std::invalid_argument("matrix sum: shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// row vector times matrix
inline Vector vec_mat(std::span<const Integer> v, const IntMatrix& m)
{
  if (v.size() != m.rows()) throw std::invalid_argument("vec_mat: shape mismatch");
  Vector out(m.cols());
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k] == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(k, j) != 0) mpz_addmul(out[j].get_mpz_t(), v[k].get_mpz_t(), m(k, j).get_mpz_t());
  }
  return out;
}

inline bool is_zero_vector(std::span<const Integer> v)
{
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

/// Elementary-divisor description d_1 | d_2 | ... | d_k (each >= 2) plus a
/// free rank.
struct AbGroupStructure {
  std::vector<Integer> divisors;
  std::size_t free_rank = 0;

  /// Normalise an arbitrary list of nonzero diagonal entries into an
  /// invariant-factor chain; units are dropped.
  static AbGroupStructure from_diagonal(std::vector<Integer> diag, std::size_t free_rank = 0)
  {
    for (auto& d : diag) {
      if (d == 0) throw std::invalid_argument("from_diagonal: zero entry");
      d = abs(d);
    }
    for (std::size_t i = 0; i < diag.size(); ++i)
      for (std::size_t j = i + 1; j < diag.size(); ++j) {
        Integer g = gcd(diag[i], diag[j]);
        Integer l = lcm(diag[i], diag[j]);
        diag[i] = g;
        diag[j] = l;
      }
    AbGroupStructure s;
    s.free_rank = free_rank;
    for (auto& d : diag)
      if (d > 1) s.divisors.push_back(d);
    return s;
  }

  static AbGroupStructure cyclic(const Integer& n) { return from_diagonal({n}); }

  static AbGroupStructure direct_sum(const AbGroupStructure& a, const AbGroupStructure& b)
  {
    std::vector<Integer> d = a.divisors;
    d.insert(d.end(), b.divisors.begin(), b.divisors.end());
    return from_diagonal(std::move(d), a.free_rank + b.free_rank);
  }

  bool is_finite() const { return free_rank == 0; }
  bool is_trivial() const { return free_rank == 0 && divisors.empty(); }
  bool is_cyclic() const { return free_rank == 0 && divisors.size() <= 1; }

  Integer order() const
  {
    if (!is_finite()) throw std::domain_error("order of an infinite group");
    Integer n = 1;
    for (const auto& d : divisors) n *= d;
    return n;
  }

  /// ell-primary component (free part dropped).
  AbGroupStructure ell_part(std::int64_t ell) const
  {
    std::vector<Integer> d;
    for (const auto& x : divisors) d.push_back(ell_power_part(x, ell));
    return from_diagonal(std::move(d));
  }

  /// Component prime to 2 (free part dropped).
  AbGroupStructure odd_component() const
  {
    std::vector<Integer> d;
    for (const auto& x : divisors) d.push_back(eisver::odd_part(x));
    return from_diagonal(std::move(d));
  }

  /// Number of cyclic factors of the ell-part, i.e. dim over F_ell of A/ell A.
  std::size_t ell_rank(std::int64_t ell) const
  {
    std::size_t n = free_rank;
    for (const auto& x : divisors)
      if (mpz_divisible_ui_p(x.get_mpz_t(), static_cast<unsigned long>(ell))) ++n;
    return n;
  }

  std::string to_string() const
  {
    if (is_trivial()) return "0";
    std::ostringstream os;
    bool first = true;
    if (free_rank > 0) {
      os << "Z^" << free_rank;
      first = false;
    }
    for (const auto& d : divisors) {
      os << (first ? "" : " x ") << "Z/" << d;
      first = false;
    }
    return os.str();
  }

  friend bool operator==(const AbGroupStructure&, const AbGroupStructure&) = default;
};

/// Row lattice kept in reduced row-style Hermite normal form: pivots
/// positive, entries above a pivot in [0, pivot).
class Lattice {
 public:
  explicit Lattice(std::size_t dim = 0) : dim_(dim) {}

  static Lattice from_rows(const IntMatrix& m)
  {
    Lattice l(m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) l.insert(m.row_vector(i));
    return l;
  }

  static Lattice from_rows(const std::vector<Vector>& rows, std::size_t dim)
  {
    Lattice l(dim);
    for (const auto& r : rows) l.insert(r);
    return l;
  }

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return basis_.size(); }
  const std::vector<Vector>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  IntMatrix basis_matrix() const { return IntMatrix::from_rows(basis_, dim_); }

  /// Product of the pivots; the index in Z^dim when rank == dim.
  Integer pivot_product() const
  {
    Integer d = 1;
    for (std::size_t i = 0; i < basis_.size(); ++i) d *= basis_[i][pivots_[i]];
    return d;
  }

  void insert(Vector v)
  {
    if (v.size() != dim_) throw std::invalid_argument("Lattice::insert: dimension mismatch");
    std::size_t col = 0;
    std::size_t i = 0;
    while (true) {
      while (col < dim_ && v[col] == 0) ++col;
      if (col == dim_) break;
      while (i < basis_.size() && pivots_[i] < col) ++i;
      if (i < basis_.size() && pivots_[i] == col) {
        Vector& h = basis_[i];
        if (mpz_divisible_p(v[col].get_mpz_t(), h[col].get_mpz_t())) {
          Integer q = v[col] / h[col];
          axpy(v, -q, h, col);
        } else {
          Integer g, s, t;
          mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), h[col].get_mpz_t(), v[col].get_mpz_t());
          Integer a = h[col] / g;
          Integer b = v[col] / g;
          Vector nh(dim_), nv(dim_);
          for (std::size_t j = col; j < dim_; ++j) {
            nh[j] = s * h[j] + t * v[j];
            nv[j] = a * v[j] - b * h[j];
          }
          h = std::move(nh);
          v = std::move(nv);
        }
        continue;
      }
      if (v[col] < 0)
        for (auto& x : v) x = -x;
      basis_.insert(basis_.begin() + static_cast<std::ptrdiff_t>(i), std::move(v));
      pivots_.insert(pivots_.begin() + static_cast<std::ptrdiff_t>(i), col);
      break;
    }
    reduce();
  }

  /// Integer coordinates of v in the basis, or nullopt if v is not in the lattice.
  std::optional<Vector> coordinates(std::span<const Integer> v) const
  {
    if (v.size() != dim_) throw std::invalid_argument("Lattice::coordinates: dimension mismatch");
    Vector w(v.begin(), v.end());
    Vector c(basis_.size());
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      const std::size_t col = pivots_[i];
      for (std::size_t j = 0; j < col; ++j)
        if (w[j] != 0) return std::nullopt;
      if (w[col] == 0) continue;
      if (!mpz_divisible_p(w[col].get_mpz_t(), basis_[i][col].get_mpz_t())) return std::nullopt;
      c[i] = w[col] / basis_[i][col];
      axpy(w, -c[i], basis_[i], col);
    }
    if (!is_zero_vector(w)) return std::nullopt;
    return c;
  }

  /// Coordinates over Q, or nullopt if v is outside the rational span.
  std::optional<RationalVector> rational_coordinates(std::span<const Integer> v) const
  {
    if (v.size() != dim_) throw std::invalid_argument("Lattice::rational_coordinates: dimension mismatch");
    RationalVector w(v.begin(), v.end());
    RationalVector c(basis_.size());
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      const std::size_t col = pivots_[i];
      if (w[col] == 0) continue;
      c[i] = w[col] / Rational(basis_[i][col]);
      for (std::size_t j = col; j < dim_; ++j)
        if (basis_[i][j] != 0) w[j] -= c[i] * basis_[i][j];
    }
    for (const auto& x : w)
      if (x != 0) return std::nullopt;
    return c;
  }

  bool contains(std::span<const Integer> v) const { return coordinates(v).has_value(); }

  bool contains(const Lattice& other) const
  {
    return std::all_of(other.basis_.begin(), other.basis_.end(), [&](const Vector& b) { return contains(b); });
  }

  friend bool operator==(const Lattice& a, const Lattice& b) { return a.dim_ == b.dim_ && a.basis_ == b.basis_; }

 private:
  static void axpy(Vector& v, const Integer& a, const Vector& h, std::size_t from)
  {
    for (std::size_t j = from; j < v.size(); ++j)
      if (h[j] != 0) mpz_addmul(v[j].get_mpz_t(), a.get_mpz_t(), h[j].get_mpz_t());
  }

  void reduce()
  {
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      const std::size_t col = pivots_[i];
      const Integer& piv = basis_[i][col];
      for (std::size_t j = 0; j < i; ++j) {
        Integer& x = basis_[j][col];
        if (x >= 0 && x < piv) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), x.get_mpz_t(), piv.get_mpz_t());
        axpy(basis_[j], -q, basis_[i], col);
      }
    }
  }

  std::size_t dim_;
  std::vector<Vector> basis_;
  std::vector<std::size_t> pivots_;
};

/// Row-style Hermite normal form, same shape as the input (zero rows last).
inline IntMatrix hnf(const IntMatrix& m)
{
  Lattice l = Lattice::from_rows(m);
  IntMatrix h(m.rows(), m.cols());
  for (std::size_t i = 0; i < l.rank(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) h(i, j) = l.basis()[i][j];
  return h;
}

inline std::size_t rank(const IntMatrix& m) { return Lattice::from_rows(m).rank(); }

/// Nonzero Smith invariants (units included) of m.
inline std::vector<Integer> smith_invariants(const IntMatrix& m)
{
  IntMatrix a = m;
  while (true) {
    IntMatrix h = Lattice::from_rows(a).basis_matrix();
    bool diagonal = true;
    for (std::size_t i = 0; i < h.rows() && diagonal; ++i)
      for (std::size_t j = 0; j < h.cols(); ++j)
        if (i != j && h(i, j) != 0) {
          diagonal = false;
          break;
        }
    if (diagonal) {
      std::vector<Integer> d;
      for (std::size_t i = 0; i < h.rows(); ++i) d.push_back(h(i, i));
      return d;
    }
    a = h.transpose();
  }
}

/// Cokernel Z^rows / (column span of m).
inline AbGroupStructure snf(const IntMatrix& m)
{
  std::vector<Integer> d = smith_invariants(m);
  const std::size_t r = d.size();
  return AbGroupStructure::from_diagonal(std::move(d), m.rows() - r);
}

/// Z^cols / (row span of m).
inline AbGroupStructure row_quotient(const IntMatrix& m)
{
  std::vector<Integer> d = smith_invariants(m);
  const std::size_t r = d.size();
  return AbGroupStructure::from_diagonal(std::move(d), m.cols() - r);
}

/// ambient / sub, for row lattices in the same Z^n.  Throws if sub is not
/// contained in ambient.
inline AbGroupStructure quotient_structure(const Lattice& sub, const Lattice& ambient)
{
  IntMatrix coords(sub.rank(), ambient.rank());
  for (std::size_t i = 0; i < sub.rank(); ++i) {
    auto c = ambient.coordinates(sub.basis()[i]);
    if (!c) throw std::invalid_argument("quotient_structure: sublattice not contained in ambient");
    for (std::size_t j = 0; j < c->size(); ++j) coords(i, j) = (*c)[j];
  }
  return row_quotient(coords);
}

inline AbGroupStructure quotient_structure(const IntMatrix& sub, const IntMatrix& ambient)
{
  return quotient_structure(Lattice::from_rows(sub), Lattice::from_rows(ambient));
}

/// [ambient : sub], or nullopt when the ranks differ.
inline std::optional<Integer> lattice_index(const IntMatrix& sub, const IntMatrix& ambient)
{
  AbGroupStructure q = quotient_structure(sub, ambient);
  if (!q.is_finite()) return std::nullopt;
  return q.order();
}

/// Least n >= 1 with n v in the lattice; nullopt if no multiple lies in it.
inline std::optional<Integer> element_order(std::span<const Integer> v, const Lattice& lattice)
{
  auto c = lattice.rational_coordinates(v);
  if (!c) return std::nullopt;
  Integer n = 1;
  for (const auto& x : *c) n = lcm(n, x.get_den());
  return n;
}

/// Fraction-free (Bareiss) determinant.
inline Integer det(const IntMatrix& m)
{
  if (!m.is_square()) throw std::invalid_argument("det: non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t r = k + 1;
      while (r < n && a(r, k) == 0) ++r;
      if (r == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(r, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

/// Characteristic polynomial det(xI - m), constant term first, via the
/// division-free Berkowitz recursion.
inline IntPolynomial charpoly(const IntMatrix& m)
{
  if (!m.is_square()) throw std::invalid_argument("charpoly: non-square matrix");
  const std::size_t n = m.rows();
  // vec holds coefficients highest degree first for the trailing k x k block.
  std::vector<Integer> vec{1};
  for (std::size_t start = n; start-- > 0;) {
    const std::size_t k = n - start; // size of block starting at `start`
    const Integer& a = m(start, start);
    // diags[0] = 1, diags[1] = -a, diags[i+2] = -R A^i C
    std::vector<Integer> diags{1, -a};
    Vector c(k - 1);
    for (std::size_t i = 0; i + 1 < k; ++i) c[i] = m(start + 1 + i, start);
    for (std::size_t step = 0; step + 1 < k; ++step) {
      Integer s = 0;
      for (std::size_t j = 0; j + 1 < k; ++j) s += m(start, start + 1 + j) * c[j];
      diags.push_back(-s);
      if (step + 2 < k) {
        Vector nc(k - 1);
        for (std::size_t i = 0; i + 1 < k; ++i)
          for (std::size_t j = 0; j + 1 < k; ++j)
            if (m(start + 1 + i, start + 1 + j) != 0 && c[j] != 0)
              mpz_addmul(nc[i].get_mpz_t(), m(start + 1 + i, start + 1 + j).get_mpz_t(), c[j].get_mpz_t());
        c = std::move(nc);
      }
    }
    // Toeplitz (k+1) x k times vec (length k)
    std::vector<Integer> next(k + 1);
    for (std::size_t i = 0; i <= k; ++i)
      for (std::size_t j = 0; j < k && j <= i; ++j)
        if (i - j < diags.size()) next[i] += diags[i - j] * vec[j];
    vec = std::move(next);
  }
  std::reverse(vec.begin(), vec.end());
  return vec;
}

/// Basis (in HNF) of the left kernel {x : x m = 0}.
inline IntMatrix left_kernel(const IntMatrix& m)
{
  const std::size_t r = m.rows(), c = m.cols();
  Lattice l(c + r);
  for (std::size_t i = 0; i < r; ++i) {
    Vector v(c + r);
    for (std::size_t j = 0; j < c; ++j) v[j] = m(i, j);
    v[c + i] = 1;
    l.insert(std::move(v));
  }
  std::vector<Vector> ker;
  for (std::size_t i = 0; i < l.rank(); ++i)
    if (l.pivots()[i] >= c) ker.emplace_back(l.basis()[i].begin() + static_cast<std::ptrdiff_t>(c), l.basis()[i].end());
  return Lattice::from_rows(ker, r).basis_matrix();
}

/// Integer solution x of x m = b, or nullopt.
inline std::optional<Vector> solve_left(const IntMatrix& m, std::span<const Integer> b)
{
  const std::size_t r = m.rows(), c = m.cols();
  if (b.size() != c) throw std::invalid_argument("solve_left: dimension mismatch");
  Lattice l(c + r);
  for (std::size_t i = 0; i < r; ++i) {
    Vector v(c + r);
    for (std::size_t j = 0; j < c; ++j) v[j] = m(i, j);
    v[c + i] = 1;
    l.insert(std::move(v));
  }
  Vector w(b.begin(), b.end());
  Vector x(r);
  for (std::size_t i = 0; i < l.rank() && l.pivots()[i] < c; ++i) {
    const Vector& h = l.basis()[i];
    const std::size_t col = l.pivots()[i];
    for (std::size_t j = 0; j < col; ++j)
      if (w[j] != 0) return std::nullopt;
    if (w[col] == 0) continue;
    if (!mpz_divisible_p(w[col].get_mpz_t(), h[col].get_mpz_t())) return std::nullopt;
    Integer q = w[col] / h[col];
    for (std::size_t j = col; j < c; ++j) w[j] -= q * h[j];
    for (std::size_t j = 0; j < r; ++j) x[j] += q * h[c + j];
  }
  if (!is_zero_vector(w)) return std::nullopt;
  return x;
}

/// Unique rational solution x of x a = y for square invertible a.
inline RationalVector solve_left_rational(const IntMatrix& a, const RationalVector& y)
{
  if (!a.is_square() || a.rows() != y.size()) throw std::invalid_argument("solve_left_rational: shape mismatch");
  const std::size_t n = a.rows();
  // Solve a^T x^T = y^T by Gauss-Jordan on the augmented system.
  std::vector<RationalVector> aug(n, RationalVector(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = a(j, i);
    aug[i][n] = y[i];
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && aug[piv][col] == 0) ++piv;
    if (piv == n) throw std::domain_error("solve_left_rational: singular matrix");
    std::swap(aug[piv], aug[col]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || aug[i][col] == 0) continue;
      Rational f = aug[i][col] / aug[col][col];
      for (std::size_t j = col; j <= n; ++j) aug[i][j] -= f * aug[col][j];
    }
  }
  RationalVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = aug[i][n] / aug[i][i];
  return x;
}

} // namespace eisver
