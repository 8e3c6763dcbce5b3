#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "eisver/linalg.hpp"
#include "eisver/polynomial.hpp"
#include "oracles.hpp"

using namespace eisver;

namespace {

IntMatrix mat(std::vector<std::vector<long>> rows)
{
  IntMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
  return m;
}

AbGroupStructure from_oracle(const std::pair<std::vector<Integer>, std::size_t>& r)
{
  return AbGroupStructure::from_diagonal(r.first, r.second);
}

} // namespace

TEST_CASE("hnf of identity and zero")
{
  CHECK(hnf(IntMatrix::identity(2)) == IntMatrix::identity(2));
  CHECK(hnf(IntMatrix(3, 3)) == IntMatrix(3, 3));
}

TEST_CASE("hnf agrees with textbook row reduction on random matrices")
{
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t r = 1 + trial % 5, c = 1 + (trial / 5) % 5;
    auto g = oracle::random_grid(rng, r, c, -9, 9);
    CHECK(hnf(oracle::to_matrix(g)) == oracle::to_matrix(oracle::textbook_hnf(g)));
  }
}

TEST_CASE("hnf is idempotent and preserves the row lattice")
{
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    IntMatrix m = oracle::to_matrix(oracle::random_grid(rng, 4, 4, -9, 9));
    IntMatrix h = hnf(m);
    CHECK(hnf(h) == h);
    Lattice a = Lattice::from_rows(m), b = Lattice::from_rows(h);
    CHECK(a.contains(b));
    CHECK(b.contains(a));
  }
}

TEST_CASE("snf small cases")
{
  auto s = snf(IntMatrix::diagonal({1, 1}));
  CHECK(s.divisors.empty());
  CHECK(s.free_rank == 0);
  s = snf(IntMatrix::diagonal({2, 3}));
  CHECK(s.divisors == std::vector<Integer>{6});
  CHECK(s.free_rank == 0);
  s = snf(IntMatrix(2, 3));
  CHECK(s.divisors.empty());
  CHECK(s.free_rank == 2);
}

TEST_CASE("snf matches determinantal divisors")
{
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t r = 1 + trial % 4, c = 1 + (trial / 4) % 4;
    auto g = oracle::random_grid(rng, r, c, -6, 6);
    CHECK(snf(oracle::to_matrix(g)) == from_oracle(oracle::determinantal_snf(g)));
  }
}

TEST_CASE("snf of a matrix and of its transpose have the same torsion")
{
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    IntMatrix m = oracle::to_matrix(oracle::random_grid(rng, 3, 5, -9, 9));
    CHECK(snf(m).divisors == snf(m.transpose()).divisors);
    CHECK(snf(m).divisors == row_quotient(m).divisors);
  }
}

TEST_CASE("det and charpoly match cofactor expansion")
{
  CHECK(charpoly(IntMatrix::identity(2)) == IntPolynomial{1, -2, 1});
  CHECK(charpoly(mat({{5}})) == IntPolynomial{-5, 1});
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + trial % 5;
    auto g = oracle::random_grid(rng, n, n, -9, 9);
    IntMatrix m = oracle::to_matrix(g);
    CHECK(det(m) == oracle::cofactor_det(g));
    auto f = charpoly(m);
    auto o = oracle::cofactor_charpoly(g);
    CHECK(f == IntPolynomial(o.begin(), o.end()));
    Integer sign = n % 2 == 0 ? 1 : -1;
    CHECK(f[0] == sign * det(m));
  }
}

TEST_CASE("lattice index")
{
  CHECK(lattice_index(IntMatrix::diagonal({2, 2}), IntMatrix::identity(2)) == Integer(4));
  IntMatrix b = mat({{1, 2}, {0, 3}});
  CHECK(lattice_index(b, b) == Integer(1));
  CHECK_FALSE(lattice_index(mat({{1, 0}}), IntMatrix::identity(2)).has_value());
  CHECK_THROWS(lattice_index(IntMatrix::identity(2), IntMatrix::diagonal({2, 2})));
}

TEST_CASE("lattice index equals the determinant ratio")
{
  std::mt19937_64 rng(23);
  int tested = 0;
  while (tested < 60) {
    auto bg = oracle::random_grid(rng, 3, 3, -5, 5);
    auto cg = oracle::random_grid(rng, 3, 3, -4, 4);
    Integer db = oracle::cofactor_det(bg), dc = oracle::cofactor_det(cg);
    if (db == 0 || dc == 0) continue;
    IntMatrix b = oracle::to_matrix(bg);
    IntMatrix a = oracle::to_matrix(cg) * b; // rows of a lie in the row span of b
    Integer ratio = abs(oracle::cofactor_det(oracle::to_grid(a))) / abs(db);
    CHECK(lattice_index(a, b) == ratio);
    ++tested;
  }
}

TEST_CASE("indices multiply along a chain")
{
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 30; ++trial) {
    IntMatrix c = oracle::to_matrix(oracle::random_grid(rng, 3, 3, -4, 4));
    IntMatrix d = oracle::to_matrix(oracle::random_grid(rng, 3, 3, -4, 4));
    if (det(c) == 0 || det(d) == 0) continue;
    IntMatrix top = IntMatrix::identity(3), mid = c, low = d * c;
    CHECK(*lattice_index(low, top) == *lattice_index(low, mid) * *lattice_index(mid, top));
  }
}

TEST_CASE("element order in a quotient")
{
  Lattice l = Lattice::from_rows(IntMatrix::diagonal({4, 6}));
  CHECK(element_order(Vector{1, 0}, l) == Integer(4));
  CHECK(element_order(Vector{2, 3}, l) == Integer(2));
  CHECK(element_order(Vector{0, 0}, l) == Integer(1));
  Lattice line = Lattice::from_rows(mat({{1, 0}}));
  CHECK_FALSE(element_order(Vector{0, 1}, line).has_value());
}

TEST_CASE("left kernel and left solve")
{
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    IntMatrix m = oracle::to_matrix(oracle::random_grid(rng, 5, 3, -5, 5));
    IntMatrix k = left_kernel(m);
    CHECK((k * m).is_zero());
    CHECK(k.rows() == m.rows() - rank(m));
    Vector x{1, -2, 0, 3, 1};
    Vector b = vec_mat(x, m);
    auto y = solve_left(m, b);
    REQUIRE(y.has_value());
    CHECK(vec_mat(*y, m) == b);
  }
  CHECK_FALSE(solve_left(IntMatrix::diagonal({2, 2}), Vector{1, 0}).has_value());
  auto r = solve_left_rational(IntMatrix::diagonal({2, 3}), RationalVector{1, 1});
  CHECK(r == RationalVector{Rational(1, 2), Rational(1, 3)});
}

TEST_CASE("group structure normalisation")
{
  auto s = AbGroupStructure::from_diagonal({4, 6, 1});
  CHECK(s.divisors == std::vector<Integer>{2, 12});
  CHECK(s.order() == 24);
  CHECK(s.ell_part(2).divisors == std::vector<Integer>{2, 4});
  CHECK(s.ell_part(3).divisors == std::vector<Integer>{3});
  CHECK(s.odd_component().is_cyclic());
  CHECK(s.ell_rank(2) == 2);
  CHECK(s.to_string() == "Z/2 x Z/12");
  CHECK(AbGroupStructure{}.to_string() == "0");
}

TEST_CASE("fast and exact matrix products agree")
{
  std::mt19937_64 rng(37);
  auto a = oracle::random_grid(rng, 6, 7, -1000, 1000);
  auto b = oracle::random_grid(rng, 7, 5, -1000, 1000);
  IntMatrix p = oracle::to_matrix(a) * oracle::to_matrix(b);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 5; ++j) {
      Integer s = 0;
      for (std::size_t k = 0; k < 7; ++k) s += a[i][k] * b[k][j];
      CHECK(p(i, j) == s);
    }
  IntMatrix big = IntMatrix::diagonal({Integer("123456789012345678901234567890"), 1});
  CHECK((big * big)(0, 0) == Integer("15241578753238836750495351562536198787501905199875019052100"));
}

TEST_CASE("real root counting and the Ramanujan test")
{
  // (x - 1)(x + 2)(x - 3) = x^3 - 2x^2 - 5x + 6
  RatPolynomial f{6, -5, -2, 1};
  CHECK(count_real_roots(f, -5, 5) == 3);
  CHECK(count_real_roots(f, 0, 2) == 1);
  CHECK(count_real_roots(f, 1, 3) == 2);
  CHECK(count_real_roots(RatPolynomial{1, 0, 1}, -10, 10) == 0);
  // x^2 + 2x + 2 has complex roots; x^2 - 8 has roots +-2 sqrt 2
  CHECK_FALSE(roots_within_ramanujan_bound(IntPolynomial{2, 2, 1}, 2));
  CHECK(roots_within_ramanujan_bound(IntPolynomial{-8, 0, 1}, 2));
  CHECK_FALSE(roots_within_ramanujan_bound(IntPolynomial{-9, 0, 1}, 2));
  // (x + 2)^2 for r = 2 is inside the bound
  CHECK(roots_within_ramanujan_bound(IntPolynomial{4, 4, 1}, 2));
  auto s = monic_sqrt(IntPolynomial{4, 4, 1});
  REQUIRE(s.has_value());
  CHECK(*s == IntPolynomial{2, 1});
  CHECK_FALSE(monic_sqrt(IntPolynomial{1, 3, 1}).has_value());
}
