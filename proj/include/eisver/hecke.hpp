#pragma once

// Hecke operators on cuspidal modular symbols and the Hecke algebra as a
// lattice of integer matrices.

#include "eisver/manin.hpp"

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace eisver {

/// ceil(psi(N) / 6), the weight-2 bound for a Z-basis of the Hecke algebra.
inline std::int64_t sturm_bound(std::int64_t level)
{
  if (level < 1) throw std::invalid_argument("sturm_bound: level must be positive");
  return (psi(level) + 5) / 6;
}

/// T_n on the full space; U_n when n | N (Merel's family covers every n).
inline IntMatrix hecke_matrix_full(const ManinSpace& space, std::int64_t n)
{
  if (n == 1) return IntMatrix::identity(space.rank());
  return space.full_operator(heilbronn_merel(n));
}

/// T_n restricted to the cuspidal sublattice.
inline IntMatrix hecke_matrix(const ManinSpace& space, std::int64_t n)
{
  if (n < 1) throw std::invalid_argument("hecke_matrix: n must be positive");
  if (n == 1) return IntMatrix::identity(space.cuspidal_rank());
  return space.restrict_to_cuspidal(hecke_matrix_full(space, n));
}

/// Source of cuspidal Hecke matrices; lets callers interpose a cache.
using HeckeProvider = std::function<IntMatrix(std::int64_t)>;

inline HeckeProvider direct_provider(const ManinSpace& space)
{
  return [&space](std::int64_t n) { return hecke_matrix(space, n); };
}

inline IntMatrix matrix_from_vector(std::span<const Integer> v, std::size_t n)
{
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = v[i * n + j];
  return m;
}

/// The Z-span of T_1, ..., T_B acting on the cuspidal lattice, with its ring
/// structure.  Elements are handled by their coordinates in the HNF basis.
class HeckeAlgebra {
 public:
  HeckeAlgebra(std::int64_t level, std::size_t dimension, HeckeProvider provider)
      : level_(level), dim_(dimension), bound_(eisver::sturm_bound(level)), provider_(std::move(provider)),
        lattice_(dimension * dimension)
  {
    for (std::int64_t n = 1; n <= bound_; ++n) {
      IntMatrix t = provider_(n);
      if (t.rows() != dim_ || t.cols() != dim_) throw std::logic_error("HeckeAlgebra: operator has wrong shape");
      lattice_.insert(t.vectorized());
      matrices_.emplace(n, std::move(t));
    }
    for (const auto& b : lattice_.basis()) basis_.push_back(matrix_from_vector(b, dim_));
    build_structure_constants();
  }

  HeckeAlgebra(const ManinSpace& space, HeckeProvider provider)
      : HeckeAlgebra(space.level(), space.cuspidal_rank(), std::move(provider))
  {
  }

  explicit HeckeAlgebra(const ManinSpace& space) : HeckeAlgebra(space, direct_provider(space)) {}

  std::int64_t level() const { return level_; }
  std::int64_t sturm_bound() const { return bound_; }
  /// Size of the matrices (2g).
  std::size_t dimension() const { return dim_; }
  /// Rank of the algebra as an abelian group (g).
  std::size_t rank() const { return basis_.size(); }

  const Lattice& lattice() const { return lattice_; }
  IntMatrix lattice_basis() const { return lattice_.basis_matrix(); }
  const std::vector<IntMatrix>& basis() const { return basis_; }

  /// Matrix of T_n (U_n for n | N); computed on demand beyond the Sturm bound.
  IntMatrix operator_matrix(std::int64_t n) const
  {
    std::lock_guard lock(mutex_);
    auto it = matrices_.find(n);
    if (it != matrices_.end()) return it->second;
    IntMatrix t = provider_(n);
    matrices_.emplace(n, t);
    return t;
  }

  /// Operators stored so far, keyed by index.
  std::map<std::int64_t, IntMatrix> operator_matrices() const
  {
    std::lock_guard lock(mutex_);
    return matrices_;
  }

  std::optional<Vector> try_coordinates(const IntMatrix& op) const { return lattice_.coordinates(op.vectorized()); }

  Vector coordinates(const IntMatrix& op) const
  {
    auto c = try_coordinates(op);
    if (!c) throw std::domain_error("HeckeAlgebra: operator outside the algebra lattice");
    return *c;
  }

  /// Coordinates of T_n.
  Vector element(std::int64_t n) const { return coordinates(operator_matrix(n)); }

  Vector one() const { return element(1); }

  /// a * 1 + x
  Vector add_scalar(Vector x, const Integer& a) const
  {
    Vector u = one();
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += a * u[i];
    return x;
  }

  IntMatrix to_matrix(std::span<const Integer> x) const
  {
    IntMatrix m(dim_, dim_);
    for (std::size_t i = 0; i < basis_.size(); ++i)
      if (x[i] != 0) m = m + x[i] * basis_[i];
    return m;
  }

  /// Row j holds the coordinates of x * b_j.
  IntMatrix multiplication_matrix(std::span<const Integer> x) const
  {
    const std::size_t g = rank();
    IntMatrix m(g, g);
    for (std::size_t i = 0; i < g; ++i) {
      if (x[i] == 0) continue;
      const IntMatrix& s = structure_[i];
      for (std::size_t j = 0; j < g; ++j)
        for (std::size_t k = 0; k < g; ++k)
          if (s(j, k) != 0) mpz_addmul(m(j, k).get_mpz_t(), x[i].get_mpz_t(), s(j, k).get_mpz_t());
    }
    return m;
  }

  Vector multiply(std::span<const Integer> x, std::span<const Integer> y) const
  {
    return vec_mat(y, multiplication_matrix(x));
  }

  /// Index of the lattice in its saturation inside the matrix ring.
  Integer saturation_index() const
  {
    Integer s = 1;
    for (const auto& d : smith_invariants(lattice_basis())) s *= abs(d);
    return s;
  }

 private:
  void build_structure_constants()
  {
    const std::size_t g = basis_.size();
    structure_.assign(g, IntMatrix(g, g));
    for (std::size_t i = 0; i < g; ++i)
      for (std::size_t j = i; j < g; ++j) {
        IntMatrix prod = basis_[i] * basis_[j];
        auto c = try_coordinates(prod);
        if (!c) throw std::domain_error("HeckeAlgebra: span of T_1..T_B is not closed under products");
        if (i != j && !(prod == basis_[j] * basis_[i]))
          throw std::logic_error("HeckeAlgebra: basis elements do not commute");
        for (std::size_t k = 0; k < g; ++k) {
          structure_[i](j, k) = (*c)[k];
          structure_[j](i, k) = (*c)[k];
        }
      }
  }

  std::int64_t level_;
  std::size_t dim_;
  std::int64_t bound_;
  HeckeProvider provider_;
  Lattice lattice_;
  std::vector<IntMatrix> basis_;
  std::vector<IntMatrix> structure_; // structure_[i] row j = coords(b_i b_j)
  mutable std::mutex mutex_;
  mutable std::map<std::int64_t, IntMatrix> matrices_;
};

inline HeckeAlgebra algebra_lattice(const ManinSpace& space) { return HeckeAlgebra(space); }

} // namespace eisver
