#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "eisver/hecke.hpp"
#include "eisver/polynomial.hpp"
#include "oracles.hpp"

using namespace eisver;

namespace {

/// T_n applied to Manin symbol i as a path sum, pushed through the given matrices.
Vector double_coset_image(const ManinSpace& s, std::size_t i, const std::vector<HeilbronnMatrix>& family)
{
  const auto& pt = s.p1()[i];
  auto [a, b, c, d] = lift_to_sl2(pt.c, pt.d, s.level());
  Vector v(s.rank());
  for (const auto& h : family) {
    // {b/d, a/c} -> {h(b/d), h(a/c)}
    const std::int64_t xn = h[0] * b + h[1] * d, xd = h[2] * b + h[3] * d;
    const std::int64_t yn = h[0] * a + h[1] * c, yd = h[2] * a + h[3] * c;
    for (auto [sym, sign] : oracle::path(xn, xd, yn, yd)) s.add_symbol(v, sym.first, sym.second, sign);
  }
  return v;
}

std::vector<HeilbronnMatrix> coset_family(std::int64_t p, std::int64_t level)
{
  std::vector<HeilbronnMatrix> f;
  for (std::int64_t j = 0; j < p; ++j) f.push_back({1, j, 0, p});
  if (level % p != 0) f.push_back({p, 0, 0, 1});
  return f;
}

} // namespace

TEST_CASE("Sturm bounds")
{
  CHECK(sturm_bound(11) == 2);
  CHECK(sturm_bound(15) == 4);
  CHECK(sturm_bound(35) == 8);
}

TEST_CASE("T_1 is the identity")
{
  ManinSpace s(33);
  CHECK(hecke_matrix(s, 1) == IntMatrix::identity(6));
  CHECK(hecke_matrix_full(s, 1) == IntMatrix::identity(s.rank()));
}

TEST_CASE("traces at level 11 match point counts on the curve")
{
  ManinSpace s(11);
  for (std::int64_t r : {2, 3, 5, 7, 13, 17, 19, 23}) {
    const std::int64_t a_r = r + 1 - oracle::curve11_points(r);
    CHECK(hecke_matrix(s, r).trace() == 2 * a_r);
  }
  CHECK(hecke_matrix(s, 2).trace() == -4);
}

TEST_CASE("U_3 squares to the identity at level 15")
{
  ManinSpace s(15);
  IntMatrix u3 = hecke_matrix(s, 3);
  CHECK(u3 * u3 == IntMatrix::identity(2));
}

TEST_CASE("algebra ranks")
{
  CHECK(algebra_lattice(ManinSpace(11)).rank() == 1);
  CHECK(algebra_lattice(ManinSpace(15)).rank() == 1);
  CHECK(algebra_lattice(ManinSpace(33)).rank() == 3);
}

TEST_CASE("Merel's operators agree with the double coset action on paths")
{
  for (std::int64_t n = 2; n <= 21; ++n) {
    ManinSpace s(n);
    for (std::int64_t p : {2, 3, 5, 7}) {
      IntMatrix t = hecke_matrix_full(s, p);
      auto family = coset_family(p, n);
      for (std::size_t i = 0; i < s.num_symbols(); ++i) {
        INFO("N = " << n << " p = " << p << " symbol " << i);
        CHECK(vec_mat(s.symbol_coordinates().row(i), t) == double_coset_image(s, i, family));
      }
    }
  }
}

TEST_CASE("Hecke operators commute and are multiplicative")
{
  for (std::int64_t n : {15, 21, 33, 35, 39}) {
    ManinSpace s(n);
    std::map<std::int64_t, IntMatrix> t;
    for (std::int64_t k = 1; k <= 25; ++k) t.emplace(k, hecke_matrix(s, k));
    for (std::int64_t i = 1; i <= 12; ++i)
      for (std::int64_t j = 1; j <= 12; ++j) {
        CHECK(t[i] * t[j] == t[j] * t[i]);
        if (std::gcd(i, j) == 1 && i * j <= 25) CHECK(t[i] * t[j] == t[i * j]);
      }
    for (std::int64_t p : {2, 3, 5}) {
      IntMatrix sq = t[p] * t[p];
      if (n % p == 0)
        CHECK(sq == t[p * p]);
      else
        CHECK(sq == t[p * p] + Integer(p) * IntMatrix::identity(sq.rows()));
    }
  }
}

TEST_CASE("characteristic polynomials are squares with roots in the Ramanujan interval")
{
  for (std::int64_t n : {11, 23, 35, 37, 57}) {
    ManinSpace s(n);
    for (std::int64_t r : {2, 3, 5, 7, 11, 13}) {
      if (n % r == 0) continue;
      auto f = charpoly(hecke_matrix(s, r));
      auto h = monic_sqrt(f);
      REQUIRE(h.has_value());
      CHECK(multiply(*h, *h) == f);
      CHECK(roots_within_ramanujan_bound(*h, r));
    }
  }
}

TEST_CASE("algebra structure constants reproduce matrix products")
{
  ManinSpace s(57);
  HeckeAlgebra alg(s);
  CHECK(alg.sturm_bound() == 14);
  const std::size_t g = alg.rank();
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = 0; j < g; ++j) {
      Vector x(g), y(g);
      x[i] = 1;
      y[j] = 2;
      CHECK(alg.to_matrix(alg.multiply(x, y)) == alg.to_matrix(x) * alg.to_matrix(y));
    }
  for (std::int64_t n = 1; n <= alg.sturm_bound(); ++n) CHECK(alg.to_matrix(alg.element(n)) == alg.operator_matrix(n));
  CHECK(alg.to_matrix(alg.one()) == IntMatrix::identity(alg.dimension()));
  // operators beyond the bound lie in the span
  CHECK(alg.try_coordinates(alg.operator_matrix(29)).has_value());
}
