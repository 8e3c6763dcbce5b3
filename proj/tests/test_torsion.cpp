#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "eisver/torsion.hpp"
#include "oracles.hpp"

using namespace eisver;

namespace {

const Verdict* find(const std::vector<Verdict>& vs, const std::string& claim)
{
  for (const auto& v : vs)
    if (v.claim == claim) return &v;
  return nullptr;
}

} // namespace

TEST_CASE("point counts at level 11")
{
  ManinSpace s(11);
  HeckeAlgebra alg(s);
  for (std::int64_t r : {2, 3, 5, 7, 13, 17}) CHECK(point_count(alg, r) == oracle::curve11_points(r));
  CHECK(point_count(alg, 2) == 5);
  CHECK_THROWS(point_count(alg, 11));
  CHECK_THROWS(point_count(alg, 9));
}

TEST_CASE("genus zero has a single point")
{
  ManinSpace s(10);
  REQUIRE(s.genus() == 0);
  HeckeAlgebra alg(s);
  CHECK(point_count(alg, 3) == 1);
  CHECK(point_count(IntMatrix(0, 0), 3) == 1);
}

TEST_CASE("torsion upper bounds")
{
  ManinSpace s11(11);
  HeckeAlgebra a11(s11);
  CHECK(torsion_upper_bound(a11, 5, {3, 7}) == 5);
  ManinSpace s15(15);
  HeckeAlgebra a15(s15);
  CHECK(torsion_upper_bound(a15, 7, {11, 13}) == 1);
  CHECK_THROWS(torsion_upper_bound(a15, 7, {2}));
  CHECK_THROWS(torsion_upper_bound(a15, 7, {}));
  CHECK(default_r_list(15, 7, 20) == std::vector<std::int64_t>{11, 13, 17, 19});
}

TEST_CASE("torsion bound only drops as primes are added")
{
  ManinSpace s(57);
  HeckeAlgebra alg(s);
  std::vector<std::int64_t> rs;
  Integer last = 0;
  for (auto r : default_r_list(57, 3, 80)) {
    rs.push_back(r);
    Integer b = torsion_upper_bound(alg, 3, rs);
    if (last != 0) CHECK(last % b == 0);
    last = b;
  }
}

TEST_CASE("cuspidal group divides every point count")
{
  for (std::int64_t n : {11, 15, 21, 35, 39, 57, 65, 91}) {
    LevelData data(n);
    const Integer c = data.cuspidal_group().order();
    for (auto r : default_r_list(n, 1, 40)) CHECK(data.point_count(r) % c == 0);
  }
}

TEST_CASE("condition profiles")
{
  // 11 = 1 mod 5, and 5^2 = 3 mod 11 is not 1, so it is the residue branch that holds
  auto a = evaluate_conditions(5, 11, 5);
  CHECK(a.big_p == 5);
  CHECK(a.q_one_mod_p);
  CHECK(a.q_one_mod_big_p);
  CHECK_FALSE(a.power_residue);
  CHECK(a.at_p_holds());
  CHECK(evaluate_conditions(11, 5, 11).at_p_case() == 3);
  // 31 = 1 mod 5 and 5^6 = 1 mod 31: neither branch
  CHECK(powmod(5, 6, 31) == 1);
  CHECK_FALSE(evaluate_conditions(5, 31, 5).at_p_holds());
  auto b = evaluate_conditions(3, 19, 3);
  CHECK(b.big_p == 9);
  CHECK(b.q_one_mod_big_p);
  CHECK(powmod(3, 6, 19) == 7);
  CHECK_FALSE(b.power_residue);
  CHECK(b.at_p_holds());
  CHECK(b.at_p_case() == 2);
  auto c = evaluate_conditions(3, 7, 3);
  CHECK(c.big_p == 9);
  CHECK(c.q_one_mod_p);
  CHECK_FALSE(c.q_one_mod_big_p);
  CHECK(c.at_p_case() == 1);
  auto d = evaluate_conditions(5, 7, 5);
  CHECK_FALSE(d.q_one_mod_p);
  CHECK(d.at_p_case() == 3);
  CHECK(evaluate_conditions(2, 7, 2).big_p == 0);
  CHECK_FALSE(evaluate_conditions(2, 7, 2).at_p_holds());
  CHECK(evaluate_conditions(3, 5, 7).standing);
  CHECK_FALSE(evaluate_conditions(5, 7, 3).standing);
  CHECK_THROWS(evaluate_conditions(4, 7, 3));
}

TEST_CASE("condition flags are pure functions of the triple")
{
  for (std::int64_t p : {3, 5, 7, 11})
    for (std::int64_t q : {3, 5, 7, 13, 19, 31, 37}) {
      if (p == q) continue;
      auto x = evaluate_conditions(p, q, p), y = evaluate_conditions(p, q, p);
      CHECK(x.at_p_case() == y.at_p_case());
      CHECK(x.power_residue == y.power_residue);
      // case 1 means q = 1 mod p but not mod P
      if (x.at_p_case() == 1) {
        CHECK((q - 1) % p == 0);
        CHECK((q - 1) % x.big_p != 0);
      }
    }
}

TEST_CASE("verdicts at (3, 5, 7)")
{
  LevelData data(15);
  auto vs = verify_triple(data, 3, 5, 7);
  CHECK(std::is_sorted(vs.begin(), vs.end()));
  for (const char* claim : {"torsion-ell", "decomposition", "lemma-up-squared", "lemma-uq-product", "index-i2",
                            "index-i3", "cuspidal-ell-part", "class-order-dp", "annihilation-dp"}) {
    const Verdict* v = find(vs, claim);
    REQUIRE(v != nullptr);
    INFO(claim);
    CHECK(v->status == Status::Verified);
  }
  CHECK(find(vs, "torsion-ell")->upper_bound == Integer(1));
  CHECK(find(vs, "torsion-at-p")->status == Status::HypothesisNotMet);
  for (const auto& v : vs) CHECK(v.status != Status::RefutedFlag);
}

TEST_CASE("verdicts at (3, 19, 3)")
{
  LevelData data(57);
  REQUIRE(data.space().genus() == static_cast<std::size_t>(oracle::gamma0_data(57).genus));
  auto vs = verify_triple(data, 3, 19, 3);
  const Verdict* at_p = find(vs, "torsion-at-p");
  REQUIRE(at_p != nullptr);
  CHECK(at_p->status == Status::Verified);
  CHECK(at_p->witnesses.at("case") == "2");
  CHECK(at_p->witnesses.at("P") == "9");
  CHECK(find(vs, "torsion-3p")->status == Status::Verified);
  CHECK(find(vs, "decomposition")->status == Status::HypothesisNotMet);
}

TEST_CASE("no torsion of order p when p > q")
{
  for (auto [p, q] : std::vector<std::pair<std::int64_t, std::int64_t>>{{5, 3}, {7, 3}, {11, 2}, {13, 7}, {19, 3}}) {
    LevelData data(p * q);
    auto vs = verify_triple(data, p, q, p);
    const Verdict* v = find(vs, "no-p-torsion");
    REQUIRE(v != nullptr);
    INFO(p << " " << q);
    CHECK(v->status == Status::Verified);
    CHECK(v->upper_bound == Integer(1));
  }
}

TEST_CASE("scan bounds")
{
  ScanOptions opt;
  opt.pq_max = 5;
  CHECK(scan(opt).empty());
  CHECK(scan_pairs(5).empty());
  CHECK(scan_pairs(6) == std::vector<std::pair<std::int64_t, std::int64_t>>{{2, 3}, {3, 2}});
  opt.pq_max = 0;
  CHECK_THROWS(scan(opt));
}

TEST_CASE("scans are deterministic and independent of the thread count")
{
  ScanOptions opt;
  opt.pq_max = 60;
  opt.ell_max = 13;
  auto a = scan(opt);
  opt.threads = 4;
  auto b = scan(opt);
  REQUIRE(a.size() == b.size());
  CHECK(!a.empty());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].claim == b[i].claim);
    CHECK(a[i].status == b[i].status);
    CHECK(a[i].witnesses == b[i].witnesses);
    CHECK(a[i].upper_bound == b[i].upper_bound);
  }
  for (const auto& v : a) CHECK(v.status != Status::RefutedFlag);
}
