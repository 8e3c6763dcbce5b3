#pragma once

// Cuspidal divisor class group of X_0(N) for squarefree N.  Principal
// divisors come from eta quotients; a modular-symbol computation of the same
// group is provided as an independent route.

#include "eisver/hecke.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

namespace eisver {

struct AlphaBeta {
  Integer m_p;
  Integer m_q;
  std::size_t alpha = 0;
  std::size_t beta = 0;
};

/// M_p = num((p-1)(q^2-1)/3), M_q = num((p^2-1)(q-1)/3) and their l-adic valuations.
inline AlphaBeta m_alpha_beta(std::int64_t p, std::int64_t q, std::int64_t ell)
{
  if (!is_prime(p) || !is_prime(q) || p == q) throw std::invalid_argument("m_alpha_beta: p, q must be distinct primes");
  if (!is_prime(ell)) throw std::invalid_argument("m_alpha_beta: ell must be prime");
  AlphaBeta r;
  const Integer P = p, Q = q;
  r.m_p = num(Rational((P - 1) * (Q * Q - 1), 3));
  r.m_q = num(Rational((P * P - 1) * (Q - 1), 3));
  r.alpha = valuation(r.m_p, ell);
  r.beta = valuation(r.m_q, ell);
  return r;
}

/// Formal sum of cusps P_n (n | N), keyed by n.
struct CuspidalDivisor {
  std::map<std::int64_t, Integer> coefficients;

  static CuspidalDivisor difference(std::int64_t a, std::int64_t b)
  {
    CuspidalDivisor d;
    d.coefficients[a] += 1;
    d.coefficients[b] -= 1;
    return d;
  }

  Integer degree() const
  {
    Integer s = 0;
    for (const auto& [n, c] : coefficients) s += c;
    return s;
  }

  CuspidalDivisor scaled(const Integer& x) const
  {
    CuspidalDivisor d = *this;
    for (auto& [n, c] : d.coefficients) c *= x;
    return d;
  }

  /// Image under the Atkin-Lehner involution w_N: P_n -> P_{N/n}.
  CuspidalDivisor atkin_lehner(std::int64_t level) const
  {
    CuspidalDivisor d;
    for (const auto& [n, c] : coefficients) d.coefficients[level / n] += c;
    return d;
  }

  /// Coefficient vector over the divisors of N in increasing order.
  Vector to_vector(std::int64_t level) const
  {
    const auto ds = divisors(level);
    Vector v(ds.size());
    for (const auto& [n, c] : coefficients) {
      auto it = std::find(ds.begin(), ds.end(), n);
      if (it == ds.end()) throw std::invalid_argument("CuspidalDivisor: cusp index does not divide the level");
      v[static_cast<std::size_t>(it - ds.begin())] += c;
    }
    return v;
  }
};

/// C_p = P_1 - P_p
inline CuspidalDivisor divisor_c(std::int64_t p) { return CuspidalDivisor::difference(1, p); }

struct EtaLattice {
  std::int64_t level = 0;
  std::vector<std::int64_t> divisors;
  /// valuation(delta, c) = 24 * order of eta(delta tau) at the cusp 1/c.
  IntMatrix valuation_matrix;
  /// Rows span the admissible exponent vectors (r_delta).
  IntMatrix exponents;
  /// Divisors of the eta quotients, in the cusp basis 1/c.
  Lattice principal;
  Lattice degree_zero;
};

inline EtaLattice eta_lattice(std::int64_t level)
{
  if (level < 1 || !is_squarefree(level)) throw std::invalid_argument("eta_lattice: level must be squarefree");
  EtaLattice e;
  e.level = level;
  e.divisors = divisors(level);
  const std::size_t k = e.divisors.size();
  e.valuation_matrix = IntMatrix(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      const std::int64_t d = e.divisors[i], c = e.divisors[j], g = std::gcd(c, d);
      e.valuation_matrix(i, j) = Integer(level / (c * d / g)) * g;
    }

  // Constraint columns: weight zero, the two conditions mod 24, and one
  // parity condition per prime (prod delta^r_delta a square).
  const auto primes = prime_divisors(level);
  std::vector<Vector> columns;
  std::vector<Integer> moduli;
  Vector ones(k), lower(k), upper(k);
  for (std::size_t i = 0; i < k; ++i) {
    ones[i] = 1;
    lower[i] = e.divisors[i];
    upper[i] = level / e.divisors[i];
  }
  columns.push_back(ones);
  moduli.push_back(0);
  columns.push_back(lower);
  moduli.push_back(24);
  columns.push_back(upper);
  moduli.push_back(24);
  for (auto p : primes) {
    Vector v(k);
    for (std::size_t i = 0; i < k; ++i) v[i] = e.divisors[i] % p == 0 ? 1 : 0;
    columns.push_back(v);
    moduli.push_back(2);
  }
  std::vector<std::size_t> slack;
  for (std::size_t j = 0; j < moduli.size(); ++j)
    if (moduli[j] != 0) slack.push_back(j);
  IntMatrix system(k + slack.size(), columns.size());
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < columns.size(); ++j) system(i, j) = columns[j][i];
  for (std::size_t s = 0; s < slack.size(); ++s) system(k + s, slack[s]) = moduli[slack[s]];
  IntMatrix ker = left_kernel(system);
  Lattice admissible(k);
  for (std::size_t i = 0; i < ker.rows(); ++i) {
    Vector r(ker.row(i).begin(), ker.row(i).begin() + static_cast<std::ptrdiff_t>(k));
    admissible.insert(std::move(r));
  }
  e.exponents = admissible.basis_matrix();

  e.principal = Lattice(k);
  for (std::size_t i = 0; i < e.exponents.rows(); ++i) {
    Vector div = vec_mat(e.exponents.row(i), e.valuation_matrix);
    for (auto& x : div) {
      if (!mpz_divisible_ui_p(x.get_mpz_t(), 24)) throw std::logic_error("eta_lattice: non-integral divisor");
      x /= 24;
    }
    e.principal.insert(std::move(div));
  }

  e.degree_zero = Lattice(k);
  for (std::size_t i = 1; i < k; ++i) {
    Vector v(k);
    v[0] = 1;
    v[i] = -1;
    e.degree_zero.insert(std::move(v));
  }
  return e;
}

/// Least n >= 1 with n D principal.
inline Integer class_order(const EtaLattice& eta, const CuspidalDivisor& d)
{
  if (d.degree() != 0) throw std::invalid_argument("class_order: divisor must have degree 0");
  auto n = element_order(d.to_vector(eta.level), eta.principal);
  if (!n) throw std::logic_error("class_order: no multiple is principal");
  return *n;
}

inline Integer class_order(std::int64_t level, const CuspidalDivisor& d) { return class_order(eta_lattice(level), d); }

inline AbGroupStructure cuspidal_group_structure(const EtaLattice& eta)
{
  return quotient_structure(eta.principal, eta.degree_zero);
}

inline AbGroupStructure cuspidal_group_structure(std::int64_t level)
{
  return cuspidal_group_structure(eta_lattice(level));
}

/// Abel-Jacobi images of cuspidal divisors computed from modular symbols:
/// a degree-0 divisor D lifts to a symbol x with boundary D; subtracting the
/// cuspidal correction s with (T_r - 1 - r) s = (T_r - 1 - r) x leaves the
/// Eisenstein lift, and s mod the cuspidal lattice is the class of D.
class SymbolCuspidalGroup {
 public:
  explicit SymbolCuspidalGroup(const ManinSpace& space) : space_(space)
  {
    const std::int64_t n = space.level();
    std::int64_t r = 2;
    while (n % r == 0)
      do ++r;
      while (!is_prime(r));
    r_ = r;
    const IntMatrix full = hecke_matrix_full(space, r).minus_scalar(1 + r);
    shifted_full_ = full;
    shifted_cusp_ = space.restrict_to_cuspidal(full);
    if (space.cuspidal_rank() > 0 && det(shifted_cusp_) == 0)
      throw std::logic_error("SymbolCuspidalGroup: T_r - 1 - r is singular on cusp forms");
    for (auto m : divisors(n))
      if (m != 1) generators_.emplace(m, solve_point(CuspidalDivisor::difference(1, m)));
  }

  std::int64_t auxiliary_prime() const { return r_; }

  /// Class of D as a rational vector in cuspidal coordinates (defined mod Z^2g).
  RationalVector point(const CuspidalDivisor& d) const
  {
    if (d.degree() != 0) throw std::invalid_argument("SymbolCuspidalGroup: divisor must have degree 0");
    // D = -sum_{m != 1} c_m (P_1 - P_m)
    RationalVector out(space_.cuspidal_rank());
    for (const auto& [m, c] : d.coefficients) {
      if (m == 1 || c == 0) continue;
      auto it = generators_.find(m);
      if (it == generators_.end()) throw std::invalid_argument("SymbolCuspidalGroup: cusp index does not divide the level");
      for (std::size_t i = 0; i < out.size(); ++i) out[i] -= c * it->second[i];
    }
    return out;
  }

  /// Class of D computed directly from a lift of D.
  RationalVector solve_point(const CuspidalDivisor& d) const
  {
    if (d.degree() != 0) throw std::invalid_argument("SymbolCuspidalGroup: divisor must have degree 0");
    const std::int64_t n = space_.level();
    const auto& reps = space_.cusps();
    Vector target(reps.size());
    for (const auto& [m, c] : d.coefficients) target[cusp_class_index(reps, Cusp::make(1, m), n)] += c;
    auto x = solve_left(space_.boundary(), target);
    if (!x) throw std::logic_error("SymbolCuspidalGroup: divisor not in the boundary image");
    Vector y = vec_mat(*x, shifted_full_);
    auto yc = space_.cuspidal_lattice().coordinates(y);
    if (!yc) throw std::logic_error("SymbolCuspidalGroup: T_r - 1 - r does not kill the boundary");
    if (yc->empty()) return RationalVector{};
    return solve_left_rational(shifted_cusp_, RationalVector(yc->begin(), yc->end()));
  }

  /// Class of D with Hecke operators acting through Picard functoriality:
  /// U^* = w_N U w_N, so the point of w_N D is returned and the matrices of
  /// hecke_matrix can be applied to it directly.
  RationalVector picard_point(const CuspidalDivisor& d) const { return point(d.atkin_lehner(space_.level())); }

  Integer order(const CuspidalDivisor& d) const
  {
    Integer n = 1;
    for (const auto& x : point(d)) n = lcm(n, x.get_den());
    return n;
  }

  /// Group generated by the classes of P_1 - P_m, m | N.
  AbGroupStructure structure() const
  {
    const std::int64_t n = space_.level();
    std::vector<RationalVector> pts;
    Integer den = 1;
    for (auto m : divisors(n)) {
      if (m == 1) continue;
      pts.push_back(point(divisor_c(m)));
      for (const auto& x : pts.back()) den = lcm(den, x.get_den());
    }
    const std::size_t g2 = space_.cuspidal_rank();
    Lattice base(g2), all(g2);
    for (std::size_t i = 0; i < g2; ++i) {
      Vector e(g2);
      e[i] = den;
      base.insert(e);
      all.insert(std::move(e));
    }
    for (const auto& p : pts) {
      Vector v(g2);
      for (std::size_t i = 0; i < g2; ++i) v[i] = num(p[i] * den);
      all.insert(std::move(v));
    }
    return quotient_structure(base, all);
  }

 private:
  const ManinSpace& space_;
  std::int64_t r_ = 2;
  IntMatrix shifted_full_;
  IntMatrix shifted_cusp_;
  std::map<std::int64_t, RationalVector> generators_;
};

/// True iff pt * op lies in the cuspidal lattice.
inline bool annihilates(const IntMatrix& op, const RationalVector& pt)
{
  for (std::size_t j = 0; j < op.cols(); ++j) {
    Rational s = 0;
    for (std::size_t i = 0; i < pt.size(); ++i)
      if (op(i, j) != 0) s += pt[i] * op(i, j);
    if (s.get_den() != 1) return false;
  }
  return true;
}

} // namespace eisver
