#pragma once

// Upper bounds for rational torsion of J_0(N) from point counts over finite
// fields, hypothesis profiles, and per-(p, q, l) verdicts.

#include "eisver/cuspidal.hpp"
#include "eisver/eisenstein.hpp"
#include "eisver/polynomial.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

namespace eisver {

/// #J_0(N)(F_r) = sqrt(det((1 + r) I - T_r)) on the 2g-dimensional cuspidal lattice.
inline Integer point_count(const IntMatrix& t_r, std::int64_t r)
{
  if (t_r.rows() == 0) return 1;
  IntMatrix m = t_r;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = (i == j ? Integer(1 + r) : Integer(0)) - t_r(i, j);
  Integer d = det(m);
  if (d <= 0 || !mpz_perfect_square_p(d.get_mpz_t()))
    throw std::logic_error("point_count: det((1 + r) - T_r) is not a positive square");
  Integer s;
  mpz_sqrt(s.get_mpz_t(), d.get_mpz_t());
  return s;
}

inline Integer point_count(const HeckeAlgebra& alg, std::int64_t r)
{
  if (!is_prime(r) || alg.level() % r == 0) throw std::invalid_argument("point_count: r must be a prime of good reduction");
  return point_count(alg.operator_matrix(r), r);
}

/// l-part of the gcd of the point counts over r_list.
inline Integer torsion_upper_bound(const HeckeAlgebra& alg, std::int64_t ell, const std::vector<std::int64_t>& r_list)
{
  if (r_list.empty()) throw std::invalid_argument("torsion_upper_bound: empty r_list");
  Integer g = 0;
  for (auto r : r_list) {
    if (r == 2 || (alg.level() * ell) % r == 0)
      throw std::invalid_argument("torsion_upper_bound: r must be odd and prime to N l");
    g = gcd(g, point_count(alg, r));
  }
  return ell_power_part(g, ell);
}

/// Odd primes r < r_max with r not dividing N l.
inline std::vector<std::int64_t> default_r_list(std::int64_t level, std::int64_t ell, std::int64_t r_max = 200)
{
  std::vector<std::int64_t> out;
  for (auto r : primes_up_to(r_max - 1))
    if (r != 2 && (level * ell) % r != 0) out.push_back(r);
  return out;
}

struct ConditionProfile {
  std::int64_t p = 0;
  std::int64_t q = 0;
  std::int64_t ell = 0;
  std::int64_t big_p = 0;            // p if p >= 5, 9 if p = 3, 0 otherwise
  bool q_one_mod_p = false;
  bool q_one_mod_big_p = false;
  bool power_residue = false;        // p^((q-1)/p) = 1 mod q, when p | q - 1
  bool ell_coprime = false;          // l does not divide 2pq gcd(p-1, q-1)
  bool standing = false;             // l does not divide 2pq(q-1)

  /// Hypothesis for T[p^oo] = C[p^oo].
  bool at_p_holds() const
  {
    if (big_p == 0) return false;
    return !q_one_mod_big_p || !power_residue;
  }

  /// 1, 2 or 3 following the three cases of the l = p argument; 0 if none applies.
  int at_p_case() const
  {
    if (!at_p_holds()) return 0;
    if (!q_one_mod_big_p && q_one_mod_p) return 1;
    if (q_one_mod_big_p) return 2;
    return 3;
  }
};

inline ConditionProfile evaluate_conditions(std::int64_t p, std::int64_t q, std::int64_t ell)
{
  if (!is_prime(p) || !is_prime(q) || p == q) throw std::invalid_argument("evaluate_conditions: p, q must be distinct primes");
  ConditionProfile c;
  c.p = p;
  c.q = q;
  c.ell = ell;
  c.big_p = p >= 5 ? p : (p == 3 ? 9 : 0);
  c.q_one_mod_p = (q - 1) % p == 0;
  c.q_one_mod_big_p = c.big_p != 0 && (q - 1) % c.big_p == 0;
  if (c.q_one_mod_p) c.power_residue = powmod(p, (q - 1) / p, q) == 1;
  const std::int64_t g = std::gcd(p - 1, q - 1);
  c.ell_coprime = is_prime(ell) && (2 * p * q * g) % ell != 0;
  c.standing = standing_hypothesis(p, q, ell);
  return c;
}

enum class Status { Verified, UpperBoundNotTight, HypothesisNotMet, RefutedFlag };

inline std::string to_string(Status s)
{
  switch (s) {
    case Status::Verified: return "Verified";
    case Status::UpperBoundNotTight: return "UpperBoundNotTight";
    case Status::HypothesisNotMet: return "HypothesisNotMet";
    case Status::RefutedFlag: return "Refuted-Flag";
  }
  return "?";
}

/// ell = 0 marks claims about a pair that do not depend on a prime.
struct Verdict {
  std::int64_t p = 0;
  std::int64_t q = 0;
  std::int64_t ell = 0;
  std::string claim;
  Status status = Status::HypothesisNotMet;
  std::string cusp_structure;
  std::optional<Integer> upper_bound;
  std::map<std::string, std::string> witnesses;

  friend bool operator<(const Verdict& a, const Verdict& b)
  {
    return std::tie(a.p, a.q, a.ell, a.claim) < std::tie(b.p, b.q, b.ell, b.claim);
  }
};

struct BoundTrace {
  Integer bound = 0;                 // l-part of the running gcd
  std::vector<std::int64_t> primes;
  bool tight = false;
  bool below_target = false;
};

/// Everything computed once per level and shared by all (p, q, l) tasks.
class LevelData {
 public:
  using ProviderFactory = std::function<HeckeProvider(const ManinSpace&)>;

  explicit LevelData(std::int64_t level, const ProviderFactory& factory = {})
      : level_(level), space_(level), eta_(eta_lattice(level))
  {
    algebra_ = std::make_unique<HeckeAlgebra>(space_, factory ? factory(space_) : direct_provider(space_));
    cusp_ = cuspidal_group_structure(eta_);
    if (space_.genus() > 0) symbols_ = std::make_unique<SymbolCuspidalGroup>(space_);
  }

  std::int64_t level() const { return level_; }
  const ManinSpace& space() const { return space_; }
  const HeckeAlgebra& algebra() const { return *algebra_; }
  const EtaLattice& eta() const { return eta_; }
  const AbGroupStructure& cuspidal_group() const { return cusp_; }
  const SymbolCuspidalGroup* symbols() const { return symbols_.get(); }

  const IdealSet& ideals(std::int64_t p, std::int64_t q) const
  {
    std::lock_guard lock(mutex_);
    auto key = std::make_pair(p, q);
    auto it = ideals_.find(key);
    if (it == ideals_.end()) it = ideals_.emplace(key, IdealSet::build(*algebra_, p, q)).first;
    return it->second;
  }

  /// Quotients and element orders of one ordered pair that do not depend on l.
  struct PairSummary {
    AbGroupStructure q0, q1, q2, q3;
    AbGroupStructure fiber, fiber_swapped;
    std::optional<Integer> lemma_up, lemma_uq;
  };

  const PairSummary& pair(std::int64_t p, std::int64_t q) const
  {
    const auto key = std::make_pair(p, q);
    {
      std::lock_guard lock(mutex_);
      auto it = pairs_.find(key);
      if (it != pairs_.end()) return it->second;
    }
    const IdealSet& ideals = this->ideals(p, q);
    const HeckeAlgebra& alg = *algebra_;
    PairSummary s;
    s.q0 = algebra_quotient(alg, ideals.i0.lattice);
    s.q1 = algebra_quotient(alg, ideals.i1.lattice);
    s.q2 = algebra_quotient(alg, ideals.i2.lattice);
    s.q3 = algebra_quotient(alg, ideals.i3.lattice);
    s.fiber = fiber_product(alg, ideals, p - 1, q - 1);
    s.fiber_swapped = fiber_product(alg, ideals, q - 1, p - 1);
    s.lemma_up = lemma_up_order(alg, ideals);
    s.lemma_uq = lemma_uq_order(alg, ideals);
    std::lock_guard lock(mutex_);
    return pairs_.emplace(key, std::move(s)).first->second;
  }

  Integer point_count(std::int64_t r) const
  {
    {
      std::lock_guard lock(mutex_);
      auto it = counts_.find(r);
      if (it != counts_.end()) return it->second;
    }
    Integer c = eisver::point_count(*algebra_, r);
    std::lock_guard lock(mutex_);
    counts_.emplace(r, c);
    return c;
  }

  /// Running gcd over default_r_list(N, l, r_max).  Stops once the l-part
  /// reaches target, or after `window` consecutive primes without change.
  BoundTrace adaptive_bound(std::int64_t ell, const Integer& target, std::int64_t r_max = 200,
                            std::size_t window = 0) const
  {
    BoundTrace t;
    Integer g = 0;
    std::size_t unchanged = 0;
    for (auto r : default_r_list(level_, ell, r_max)) {
      g = gcd(g, point_count(r));
      Integer b = ell_power_part(g, ell);
      t.primes.push_back(r);
      unchanged = (t.primes.size() > 1 && b == t.bound) ? unchanged + 1 : 0;
      t.bound = b;
      if (b < target) {
        t.below_target = true;
        break;
      }
      if (b == target) {
        t.tight = true;
        break;
      }
      if (window > 0 && unchanged + 1 >= window) break;
    }
    return t;
  }

 private:
  std::int64_t level_;
  ManinSpace space_;
  EtaLattice eta_;
  std::unique_ptr<HeckeAlgebra> algebra_;
  AbGroupStructure cusp_;
  std::unique_ptr<SymbolCuspidalGroup> symbols_;
  mutable std::mutex mutex_;
  mutable std::map<std::pair<std::int64_t, std::int64_t>, IdealSet> ideals_;
  mutable std::map<std::pair<std::int64_t, std::int64_t>, PairSummary> pairs_;
  mutable std::map<std::int64_t, Integer> counts_;
};

struct ScanOptions {
  std::int64_t pq_max = 210;
  std::int64_t ell_max = 50;
  std::int64_t r_budget = 200;       // point counts use odd r < r_budget
  std::size_t window = 0;            // stabilization window for the gcd bound; 0 uses every r
  std::size_t threads = 1;
};

namespace detail {

inline std::string str(const Integer& x) { return x.get_str(); }

inline Status check(bool ok) { return ok ? Status::Verified : Status::RefutedFlag; }

inline Verdict make_verdict(std::int64_t p, std::int64_t q, std::int64_t ell, std::string claim)
{
  Verdict v;
  v.p = p;
  v.q = q;
  v.ell = ell;
  v.claim = std::move(claim);
  return v;
}

inline void attach_matrices(Verdict& v, const LevelData& data, std::int64_t p, std::int64_t q)
{
  v.witnesses["matrix_U" + std::to_string(p)] = data.algebra().operator_matrix(p).to_string();
  v.witnesses["matrix_U" + std::to_string(q)] = data.algebra().operator_matrix(q).to_string();
  for (const auto& [n, m] : data.algebra().operator_matrices())
    if (n <= data.algebra().sturm_bound() && n != p && n != q)
      v.witnesses["matrix_T" + std::to_string(n)] = m.to_string();
}

inline Verdict torsion_verdict(const LevelData& data, std::int64_t p, std::int64_t q, std::int64_t ell,
                               std::string claim, bool hypothesis, const ScanOptions& opt)
{
  Verdict v = make_verdict(p, q, ell, std::move(claim));
  const AbGroupStructure c = data.cuspidal_group().ell_part(ell);
  v.cusp_structure = c.to_string();
  if (!hypothesis) return v;
  const BoundTrace t = data.adaptive_bound(ell, c.order(), opt.r_budget, opt.window);
  v.upper_bound = t.bound;
  v.witnesses["cusp_order"] = str(c.order());
  std::string rs;
  for (auto r : t.primes) rs += (rs.empty() ? "" : ",") + std::to_string(r);
  v.witnesses["r_list"] = rs;
  if (t.below_target) {
    v.status = Status::RefutedFlag;
    attach_matrices(v, data, p, q);
  } else {
    v.status = t.tight ? Status::Verified : Status::UpperBoundNotTight;
  }
  return v;
}

} // namespace detail

/// Torsion claims for one triple; `scan_only` drops claims whose hypothesis fails.
inline std::vector<Verdict> torsion_claims(const LevelData& data, std::int64_t p, std::int64_t q, std::int64_t ell,
                                           const ScanOptions& opt, bool scan_only)
{
  using detail::torsion_verdict;
  const ConditionProfile c = evaluate_conditions(p, q, ell);
  std::vector<Verdict> out;
  auto push = [&](std::string claim, bool hyp, std::map<std::string, std::string> extra = {}) {
    if (scan_only && !hyp) return;
    Verdict v = torsion_verdict(data, p, q, ell, std::move(claim), hyp, opt);
    v.witnesses.insert(extra.begin(), extra.end());
    out.push_back(std::move(v));
  };
  push("torsion-ell", c.standing);
  push("torsion-ell-gcd", c.ell_coprime && (!scan_only || p < q));
  const bool at_p = ell == p && c.at_p_holds();
  push("torsion-at-p", at_p, {{"case", std::to_string(c.at_p_case())}, {"P", std::to_string(c.big_p)}});
  push("torsion-3p", ell == 3 && p == 3 && q > 3 && c.at_p_holds());

  if (ell == p && p > q) {
    Verdict v = detail::make_verdict(p, q, ell, "no-p-torsion");
    const AbGroupStructure cp = data.cuspidal_group().ell_part(p);
    v.cusp_structure = cp.to_string();
    const BoundTrace t = data.adaptive_bound(p, 1, opt.r_budget, opt.window);
    v.upper_bound = t.bound;
    if (!cp.is_trivial() || t.below_target) {
      v.status = Status::RefutedFlag;
      detail::attach_matrices(v, data, p, q);
    } else {
      v.status = t.tight ? Status::Verified : Status::UpperBoundNotTight;
    }
    out.push_back(std::move(v));
  } else if (!scan_only) {
    Verdict v = detail::make_verdict(p, q, ell, "no-p-torsion");
    v.cusp_structure = data.cuspidal_group().ell_part(ell).to_string();
    out.push_back(std::move(v));
  }
  return out;
}

/// Ideal, index and cuspidal claims under the standing hypothesis l | 2pq(q-1) false.
inline std::vector<Verdict> algebra_claims(const LevelData& data, std::int64_t p, std::int64_t q, std::int64_t ell,
                                           bool scan_only)
{
  using detail::check;
  using detail::make_verdict;
  using detail::str;
  std::vector<Verdict> out;
  const std::vector<std::string> names = {"decomposition",     "lemma-up-squared", "lemma-uq-product",
                                          "index-i1",          "index-i2",         "index-i3",
                                          "cuspidal-ell-part", "class-order-dp",   "class-order-dq",
                                          "annihilation-dp",   "annihilation-dq"};
  const AbGroupStructure cusp = data.cuspidal_group().ell_part(ell);
  if (!standing_hypothesis(p, q, ell)) {
    if (!scan_only)
      for (const auto& n : names) {
        Verdict v = make_verdict(p, q, ell, n);
        v.cusp_structure = cusp.to_string();
        out.push_back(std::move(v));
      }
    return out;
  }
  const HeckeAlgebra& alg = data.algebra();
  const LevelData::PairSummary& pair = data.pair(p, q);
  const AlphaBeta ab = m_alpha_beta(p, q, ell);
  const Integer la = ipow(ell, ab.alpha), lb = ipow(ell, ab.beta);
  auto verdict = [&](const std::string& claim, bool ok, std::map<std::string, std::string> w) {
    Verdict v = make_verdict(p, q, ell, claim);
    v.cusp_structure = cusp.to_string();
    v.status = check(ok);
    v.witnesses = std::move(w);
    if (!ok) detail::attach_matrices(v, data, p, q);
    out.push_back(std::move(v));
  };

  {
    const DecompositionRecord d = decomposition_record(pair.q0, pair.q2, pair.q3, ell);
    const ProbeRecord pr = probe_record(pair.q0, pair.fiber, pair.fiber_swapped, ell);
    verdict("decomposition", d.equal,
            {{"whole", d.whole.to_string()},
             {"factor_i2", d.factor2.to_string()},
             {"factor_i3", d.factor3.to_string()},
             {"factor_i2_cyclic", d.factor2_cyclic ? "true" : "false"},
             {"factor_i3_cyclic", d.factor3_cyclic ? "true" : "false"},
             {"probe_fiber", pr.fiber.to_string()},
             {"probe_fiber_swapped", pr.fiber_swapped.to_string()},
             {"probe_equal", pr.equal ? "true" : "false"},
             {"probe_equal_swapped", pr.equal_swapped ? "true" : "false"}});
  }
  auto order_str = [](const std::optional<Integer>& n) { return n ? n->get_str() : std::string("infinite"); };
  verdict("lemma-up-squared", prime_to(pair.lemma_up, ell), {{"image_order", order_str(pair.lemma_up)}});
  verdict("lemma-uq-product", prime_to(pair.lemma_uq, ell), {{"image_order", order_str(pair.lemma_uq)}});

  const AbGroupStructure& q1 = pair.q1;
  const AbGroupStructure& q2 = pair.q2;
  const AbGroupStructure& q3 = pair.q3;
  const Integer m1 = num(Rational(Integer(p - 1) * (q - 1), 3));
  verdict("index-i1", q1.is_finite() && q1.ell_part(ell).order() == ell_power_part(m1, ell),
          {{"quotient", q1.to_string()}, {"expected", str(ell_power_part(m1, ell))}});
  verdict("index-i2", q2.is_finite() && q2.ell_part(ell).order() == la,
          {{"quotient", q2.to_string()}, {"M_p", str(ab.m_p)}, {"expected", str(la)}});
  verdict("index-i3", q3.is_finite() && q3.ell_part(ell).order() == lb,
          {{"quotient", q3.to_string()}, {"M_q", str(ab.m_q)}, {"expected", str(lb)}});

  std::vector<Integer> ds;
  if (la > 1) ds.push_back(la);
  if (lb > 1) ds.push_back(lb);
  const AbGroupStructure expected = AbGroupStructure::from_diagonal(ds);
  verdict("cuspidal-ell-part", cusp == expected,
          {{"expected", expected.to_string()}, {"cuspidal_group", data.cuspidal_group().to_string()}});

  const CuspidalDivisor dp = divisor_c(p).scaled(ab.m_p / la);
  const CuspidalDivisor dq = divisor_c(q).scaled(ab.m_q / lb);
  const SymbolCuspidalGroup* sg = data.symbols();
  for (auto [name, div, target] : {std::tuple{"class-order-dp", dp, la}, std::tuple{"class-order-dq", dq, lb}}) {
    const Integer eta_order = class_order(data.eta(), div);
    const Integer sym_order = sg ? sg->order(div) : Integer(1);
    verdict(name, ell_power_part(eta_order, ell) == target && eta_order == sym_order,
            {{"eta_order", str(eta_order)}, {"symbol_order", str(sym_order)}, {"expected", str(target)}});
  }

  // I2 kills D_p and I3 kills D_q, with Hecke operators acting on divisor
  // classes by Picard functoriality.
  const IntMatrix up = alg.operator_matrix(p), uq = alg.operator_matrix(q);
  auto kills = [&](const CuspidalDivisor& d, std::int64_t a, std::int64_t b) {
    if (!sg) return true;
    const RationalVector pt = sg->picard_point(d);
    return annihilates(up.minus_scalar(a), pt) && annihilates(uq.minus_scalar(b), pt);
  };
  verdict("annihilation-dp", kills(dp, 1, q), {{"operators", "U" + std::to_string(p) + "-1,U" + std::to_string(q) + "-" + std::to_string(q)}});
  verdict("annihilation-dq", kills(dq, p, 1), {{"operators", "U" + std::to_string(p) + "-" + std::to_string(p) + ",U" + std::to_string(q) + "-1"}});
  return out;
}

/// Claims about a pair that do not depend on l (reported with ell = 0).
inline std::vector<Verdict> pair_claims(const LevelData& data, std::int64_t p, std::int64_t q)
{
  const AbGroupStructure& q1 = data.pair(p, q).q1;
  const Integer m1 = num(Rational(Integer(p - 1) * (q - 1), 3));
  Verdict v = detail::make_verdict(p, q, 0, "index-i1-odd-part");
  v.cusp_structure = data.cuspidal_group().to_string();
  const bool ok = q1.is_finite() && odd_part(q1.order()) == odd_part(m1);
  v.status = detail::check(ok);
  v.witnesses = {{"quotient", q1.to_string()}, {"num", detail::str(m1)}};
  if (!ok) detail::attach_matrices(v, data, p, q);
  return {v};
}

/// All claims for one triple, including those whose hypothesis fails.
inline std::vector<Verdict> verify_triple(const LevelData& data, std::int64_t p, std::int64_t q, std::int64_t ell,
                                          const ScanOptions& opt = {})
{
  std::vector<Verdict> out = pair_claims(data, p, q);
  for (auto& v : algebra_claims(data, p, q, ell, false)) out.push_back(std::move(v));
  for (auto& v : torsion_claims(data, p, q, ell, opt, false)) out.push_back(std::move(v));
  std::sort(out.begin(), out.end());
  return out;
}

/// Ordered pairs (p, q) of distinct primes with pq <= pq_max, sorted.
inline std::vector<std::pair<std::int64_t, std::int64_t>> scan_pairs(std::int64_t pq_max)
{
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  if (pq_max < 6) return out;
  const auto ps = primes_up_to(pq_max / 2);
  for (auto p : ps)
    for (auto q : ps)
      if (p != q && p * q <= pq_max) out.emplace_back(p, q);
  return out;
}

/// Verdicts for every (p, q, l) in range whose hypothesis holds, sorted.
/// A failed task is reported as a Refuted-Flag verdict carrying the error.
inline std::vector<Verdict> scan(const ScanOptions& opt, const LevelData::ProviderFactory& factory = {})
{
  if (opt.pq_max < 1 || opt.ell_max < 1 || opt.r_budget < 1) throw std::invalid_argument("scan: bounds must be positive");
  std::map<std::int64_t, std::vector<std::pair<std::int64_t, std::int64_t>>> by_level;
  for (auto pr : scan_pairs(opt.pq_max)) by_level[pr.first * pr.second].push_back(pr);
  std::vector<std::int64_t> levels;
  for (const auto& [n, prs] : by_level) levels.push_back(n);
  // Largest levels first keeps the pool busy until the end.
  std::reverse(levels.begin(), levels.end());

  std::vector<std::int64_t> ells;
  for (auto l : primes_up_to(opt.ell_max))
    if (l != 2) ells.push_back(l);

  std::mutex out_mutex;
  std::vector<Verdict> out;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    while (true) {
      const std::size_t i = next++;
      if (i >= levels.size()) return;
      const std::int64_t n = levels[i];
      std::vector<Verdict> local;
      try {
        LevelData data(n, factory);
        for (auto [p, q] : by_level[n]) {
          for (auto& v : pair_claims(data, p, q)) local.push_back(std::move(v));
          for (auto ell : ells) {
            for (auto& v : algebra_claims(data, p, q, ell, true)) local.push_back(std::move(v));
            for (auto& v : torsion_claims(data, p, q, ell, opt, true)) local.push_back(std::move(v));
          }
        }
      } catch (const std::exception& e) {
        local.clear();
        for (auto [p, q] : by_level[n]) {
          Verdict v = detail::make_verdict(p, q, 0, "task-error");
          v.status = Status::RefutedFlag;
          v.witnesses["error"] = e.what();
          local.push_back(std::move(v));
        }
      }
      std::lock_guard lock(out_mutex);
      for (auto& v : local) out.push_back(std::move(v));
    }
  };
  const std::size_t nt = std::max<std::size_t>(1, std::min(opt.threads, levels.size()));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < nt; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace eisver
