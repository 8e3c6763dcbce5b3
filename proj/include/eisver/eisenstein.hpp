#pragma once

// Eisenstein ideals I0..I3 of the Hecke algebra of level pq, their finite
// quotients, the residual maximal ideals (ell, I_i), and the
// membership/structure statements about them.  Localisation at ell is always
// realised as the ell-primary part of a finite quotient.

#include "eisver/hecke.hpp"

#include <numeric>
#include <string>
#include <vector>

namespace eisver {

enum class IdealKind { I0, I1, I2, I3 };

inline std::string to_string(IdealKind k)
{
  switch (k) {
    case IdealKind::I0: return "I0";
    case IdealKind::I1: return "I1";
    case IdealKind::I2: return "I2";
    case IdealKind::I3: return "I3";
  }
  return "?";
}

struct EisensteinIdeal {
  IdealKind kind = IdealKind::I0;
  std::int64_t p = 0;
  std::int64_t q = 0;
  std::vector<std::string> generator_names;
  std::vector<Vector> generators; // algebra coordinates
  Lattice lattice;                // HNF of the ideal inside Z^rank
};

/// Ideal of the algebra generated by the given elements (as an ideal).
inline Lattice ideal_lattice(const HeckeAlgebra& alg, const std::vector<Vector>& generators)
{
  Lattice l(alg.rank());
  for (const auto& x : generators) {
    IntMatrix m = alg.multiplication_matrix(x);
    for (std::size_t j = 0; j < m.rows(); ++j) l.insert(m.row_vector(j));
  }
  return l;
}

/// Closure of a lattice under multiplication by every basis element.
inline bool is_ideal(const HeckeAlgebra& alg, const Lattice& l)
{
  for (std::size_t i = 0; i < alg.rank(); ++i) {
    Vector e(alg.rank());
    e[i] = 1;
    IntMatrix m = alg.multiplication_matrix(e);
    for (const auto& y : l.basis())
      if (!l.contains(vec_mat(y, m))) return false;
  }
  return true;
}

inline std::vector<std::int64_t> eisenstein_primes(std::int64_t level, std::int64_t bound)
{
  std::vector<std::int64_t> out;
  for (auto r : primes_up_to(bound))
    if (level % r != 0) out.push_back(r);
  return out;
}

/// Ideal of the given kind for the ordered pair (p, q).  I0 uses the primes
/// r not dividing pq up to r_bound (default: the Sturm bound).
inline EisensteinIdeal build_ideal(const HeckeAlgebra& alg, IdealKind kind, std::int64_t p, std::int64_t q,
                                   std::int64_t r_bound = 0)
{
  if (!is_prime(p) || !is_prime(q) || p == q || alg.level() != p * q)
    throw std::invalid_argument("build_ideal: level must be pq for distinct primes p, q");
  if (r_bound <= 0) r_bound = alg.sturm_bound();
  EisensteinIdeal ideal;
  ideal.kind = kind;
  ideal.p = p;
  ideal.q = q;
  auto add = [&](std::string name, Vector x) {
    ideal.generator_names.push_back(std::move(name));
    ideal.generators.push_back(std::move(x));
  };
  for (auto r : eisenstein_primes(alg.level(), r_bound))
    add("T" + std::to_string(r) + "-" + std::to_string(r + 1), alg.add_scalar(alg.element(r), -(r + 1)));
  auto up = [&](std::int64_t c) { add("U" + std::to_string(p) + "-" + std::to_string(c), alg.add_scalar(alg.element(p), -c)); };
  auto uq = [&](std::int64_t c) { add("U" + std::to_string(q) + "-" + std::to_string(c), alg.add_scalar(alg.element(q), -c)); };
  switch (kind) {
    case IdealKind::I0: break;
    case IdealKind::I1: up(1), uq(1); break;
    case IdealKind::I2: up(1), uq(q); break;
    case IdealKind::I3: up(p), uq(1); break;
  }
  ideal.lattice = ideal_lattice(alg, ideal.generators);
  if (!is_ideal(alg, ideal.lattice)) throw std::logic_error("build_ideal: generated lattice is not closed under the algebra");
  return ideal;
}

/// Ideal generated by an existing ideal and extra elements.
inline Lattice extend_ideal(const HeckeAlgebra& alg, const Lattice& base, const std::vector<Vector>& extra)
{
  Lattice l = base;
  const Lattice e = ideal_lattice(alg, extra);
  for (const auto& b : e.basis()) l.insert(b);
  return l;
}

/// ideal + m T
inline Lattice add_integer(const HeckeAlgebra& alg, const Lattice& base, const Integer& m)
{
  Lattice l = base;
  Vector u = alg.one();
  for (auto& x : u) x *= m;
  const Lattice e = ideal_lattice(alg, {u});
  for (const auto& b : e.basis()) l.insert(b);
  return l;
}

inline Lattice sum_lattices(const Lattice& a, const Lattice& b)
{
  Lattice l = a;
  for (const auto& v : b.basis()) l.insert(v);
  return l;
}

inline Lattice full_lattice(std::size_t n) { return Lattice::from_rows(IntMatrix::identity(n)); }

struct QuotientReport {
  IdealKind kind = IdealKind::I0;
  AbGroupStructure structure;
  bool finite = true;
  Integer index = 1; // valid only when finite

  AbGroupStructure ell_part(std::int64_t ell) const { return structure.ell_part(ell); }
  bool is_cyclic() const { return structure.is_cyclic(); }
};

inline AbGroupStructure algebra_quotient(const HeckeAlgebra& alg, const Lattice& ideal)
{
  return quotient_structure(ideal, full_lattice(alg.rank()));
}

/// T / ideal.  An infinite quotient is reported through `finite`.
inline QuotientReport quotient(const HeckeAlgebra& alg, const EisensteinIdeal& ideal)
{
  QuotientReport r;
  r.kind = ideal.kind;
  r.structure = algebra_quotient(alg, ideal.lattice);
  r.finite = r.structure.is_finite();
  if (r.finite) r.index = r.structure.order();
  return r;
}

/// Order of the image of x in T / ideal; nullopt if infinite.
inline std::optional<Integer> image_order(const Vector& x, const Lattice& ideal) { return element_order(x, ideal); }

struct MaximalIdeals {
  bool m1 = false;
  bool m2 = false;
  bool m3 = false;
  /// Set when m1 is maximal: lattice equality of (ell, I1) and (ell, I3).
  std::optional<bool> m1_equals_m3;
  AbGroupStructure residue1, residue2, residue3; // T / (ell, I_i)

  bool any() const { return m1 || m2 || m3; }
};

inline MaximalIdeals maximal_ideals(const HeckeAlgebra& alg, std::int64_t p, std::int64_t q, std::int64_t ell)
{
  if (!is_prime(ell)) throw std::invalid_argument("maximal_ideals: ell must be prime");
  MaximalIdeals out;
  Lattice l1 = add_integer(alg, build_ideal(alg, IdealKind::I1, p, q).lattice, ell);
  Lattice l2 = add_integer(alg, build_ideal(alg, IdealKind::I2, p, q).lattice, ell);
  Lattice l3 = add_integer(alg, build_ideal(alg, IdealKind::I3, p, q).lattice, ell);
  out.residue1 = algebra_quotient(alg, l1);
  out.residue2 = algebra_quotient(alg, l2);
  out.residue3 = algebra_quotient(alg, l3);
  out.m1 = !out.residue1.is_trivial();
  out.m2 = !out.residue2.is_trivial();
  out.m3 = !out.residue3.is_trivial();
  if (out.m1) out.m1_equals_m3 = (l1 == l3);
  return out;
}

/// The standing hypothesis: ell prime and ell does not divide 2pq(q - 1).
inline bool standing_hypothesis(std::int64_t p, std::int64_t q, std::int64_t ell)
{
  return is_prime(ell) && ell != 2 && p % ell != 0 && q % ell != 0 && (q - 1) % ell != 0;
}

inline void require_standing_hypothesis(std::int64_t p, std::int64_t q, std::int64_t ell)
{
  if (!standing_hypothesis(p, q, ell))
    throw std::invalid_argument("hypothesis violated: ell must be a prime not dividing 2pq(q-1)");
}

/// The four Eisenstein ideals of one ordered pair.
struct IdealSet {
  EisensteinIdeal i0, i1, i2, i3;

  static IdealSet build(const HeckeAlgebra& alg, std::int64_t p, std::int64_t q)
  {
    return {build_ideal(alg, IdealKind::I0, p, q), build_ideal(alg, IdealKind::I1, p, q),
            build_ideal(alg, IdealKind::I2, p, q), build_ideal(alg, IdealKind::I3, p, q)};
  }
};

struct DecompositionRecord {
  AbGroupStructure whole;    // ell-part of T / I0
  AbGroupStructure factor2;  // ell-part of T / I2
  AbGroupStructure factor3;  // ell-part of T / I3
  AbGroupStructure product;  // factor2 x factor3
  bool equal = false;
  bool factor2_cyclic = false;
  bool factor3_cyclic = false;
};

/// Decomposition record from the full quotients T/I0, T/I2, T/I3.
inline DecompositionRecord decomposition_record(const AbGroupStructure& q0, const AbGroupStructure& q2,
                                                const AbGroupStructure& q3, std::int64_t ell)
{
  DecompositionRecord r;
  r.whole = q0.ell_part(ell);
  r.factor2 = q2.ell_part(ell);
  r.factor3 = q3.ell_part(ell);
  r.product = AbGroupStructure::direct_sum(r.factor2, r.factor3);
  r.equal = r.whole == r.product;
  r.factor2_cyclic = r.factor2.is_cyclic();
  r.factor3_cyclic = r.factor3.is_cyclic();
  return r;
}

inline DecompositionRecord verify_decomposition(const HeckeAlgebra& alg, const IdealSet& ideals, std::int64_t ell)
{
  require_standing_hypothesis(ideals.i0.p, ideals.i0.q, ell);
  return decomposition_record(algebra_quotient(alg, ideals.i0.lattice), algebra_quotient(alg, ideals.i2.lattice),
                              algebra_quotient(alg, ideals.i3.lattice), ell);
}

inline DecompositionRecord verify_decomposition(const HeckeAlgebra& alg, std::int64_t p, std::int64_t q, std::int64_t ell)
{
  require_standing_hypothesis(p, q, ell);
  return verify_decomposition(alg, IdealSet::build(alg, p, q), ell);
}

/// Whether the image of x in T / ideal has order prime to ell.
inline bool order_prime_to(const Vector& x, const Lattice& ideal, std::int64_t ell)
{
  auto n = image_order(x, ideal);
  if (!n) return false;
  return !mpz_divisible_ui_p(n->get_mpz_t(), static_cast<unsigned long>(ell));
}

/// Order of the image of (U_p - 1)(U_p + 1) in T/I0; nullopt if infinite.
inline std::optional<Integer> lemma_up_order(const HeckeAlgebra& alg, const IdealSet& ideals)
{
  Vector up = alg.element(ideals.i0.p);
  return image_order(alg.multiply(alg.add_scalar(up, -1), alg.add_scalar(up, 1)), ideals.i0.lattice);
}

inline bool prime_to(const std::optional<Integer>& n, std::int64_t ell)
{
  return n && !mpz_divisible_ui_p(n->get_mpz_t(), static_cast<unsigned long>(ell));
}

/// (U_p - 1)(U_p + 1) lies in I0 T_ell.
inline bool check_lemma_up(const HeckeAlgebra& alg, const IdealSet& ideals, std::int64_t ell)
{
  require_standing_hypothesis(ideals.i0.p, ideals.i0.q, ell);
  return prime_to(lemma_up_order(alg, ideals), ell);
}

inline bool check_lemma_up(const HeckeAlgebra& alg, std::int64_t p, std::int64_t q, std::int64_t ell)
{
  require_standing_hypothesis(p, q, ell);
  return check_lemma_up(alg, IdealSet::build(alg, p, q), ell);
}

/// Order of the image of (U_q - 1)(U_q - q) in T/(U_p - 1, I0); nullopt if infinite.
inline std::optional<Integer> lemma_uq_order(const HeckeAlgebra& alg, const IdealSet& ideals)
{
  const auto p = ideals.i0.p, q = ideals.i0.q;
  Lattice i = extend_ideal(alg, ideals.i0.lattice, {alg.add_scalar(alg.element(p), -1)});
  Vector uq = alg.element(q);
  return image_order(alg.multiply(alg.add_scalar(uq, -1), alg.add_scalar(uq, -q)), i);
}

/// (U_q - 1)(U_q - q) lies in (U_p - 1, I0) T_ell.
inline bool check_lemma_uq(const HeckeAlgebra& alg, const IdealSet& ideals, std::int64_t ell)
{
  require_standing_hypothesis(ideals.i0.p, ideals.i0.q, ell);
  return prime_to(lemma_uq_order(alg, ideals), ell);
}

inline bool check_lemma_uq(const HeckeAlgebra& alg, std::int64_t p, std::int64_t q, std::int64_t ell)
{
  require_standing_hypothesis(p, q, ell);
  return check_lemma_uq(alg, IdealSet::build(alg, p, q), ell);
}

/// {(x, y, z) in T/I1 x T/I2 x T/I3 : x = y mod m12, x = z mod m13}
inline AbGroupStructure fiber_product(const HeckeAlgebra& alg, const IdealSet& ideals, const Integer& m12,
                                      const Integer& m13)
{
  const std::size_t g = alg.rank();
  Lattice j12 = add_integer(alg, sum_lattices(ideals.i1.lattice, ideals.i2.lattice), m12);
  Lattice j13 = add_integer(alg, sum_lattices(ideals.i1.lattice, ideals.i3.lattice), m13);
  auto embed = [g](std::span<const Integer> v, std::size_t block) {
    Vector out(3 * g);
    for (std::size_t i = 0; i < g; ++i) out[block * g + i] = v[i];
    return out;
  };
  Lattice ambient(3 * g);
  for (std::size_t i = 0; i < g; ++i) {
    Vector d(3 * g);
    d[i] = d[g + i] = d[2 * g + i] = 1;
    ambient.insert(std::move(d));
  }
  for (const auto& b : j12.basis()) ambient.insert(embed(b, 1));
  for (const auto& b : j13.basis()) ambient.insert(embed(b, 2));
  Lattice sub(3 * g);
  for (const auto& b : ideals.i1.lattice.basis()) sub.insert(embed(b, 0));
  for (const auto& b : ideals.i2.lattice.basis()) sub.insert(embed(b, 1));
  for (const auto& b : ideals.i3.lattice.basis()) sub.insert(embed(b, 2));
  return quotient_structure(sub, ambient);
}

struct ProbeRecord {
  AbGroupStructure whole;         // ell-part of T / I0
  AbGroupStructure fiber;         // congruences mod p-1 (I1, I2) and q-1 (I1, I3)
  AbGroupStructure fiber_swapped; // congruences mod q-1 (I1, I2) and p-1 (I1, I3)
  bool equal = false;
  bool equal_swapped = false;
};

inline ProbeRecord probe_record(const AbGroupStructure& q0, const AbGroupStructure& fiber,
                                const AbGroupStructure& fiber_swapped, std::int64_t ell)
{
  ProbeRecord r;
  r.whole = q0.ell_part(ell);
  r.fiber = fiber.ell_part(ell);
  r.fiber_swapped = fiber_swapped.ell_part(ell);
  r.equal = r.whole == r.fiber;
  r.equal_swapped = r.whole == r.fiber_swapped;
  return r;
}

/// Compares T/I0 with the fiber product of T/I1, T/I2, T/I3 at ell without
/// asserting anything.  Requires only ell odd and prime to pq.
inline ProbeRecord probe_expected_structure(const HeckeAlgebra& alg, const IdealSet& ideals, std::int64_t ell)
{
  const auto p = ideals.i0.p, q = ideals.i0.q;
  if (!is_prime(ell) || ell == 2 || p % ell == 0 || q % ell == 0)
    throw std::invalid_argument("probe_expected_structure: ell must be an odd prime not dividing pq");
  return probe_record(algebra_quotient(alg, ideals.i0.lattice), fiber_product(alg, ideals, p - 1, q - 1),
                      fiber_product(alg, ideals, q - 1, p - 1), ell);
}

} // namespace eisver
