#include <doctest.h>

#include <cmath>
#include <sstream>

#include "consensus/errors.hpp"
#include "consensus/net.hpp"
#include "consensus/sim.hpp"
#include "test_support.hpp"

using namespace consensus;

TEST_CASE("validate accepts identity and the periodic ring") {
  CHECK(validate(Matrix::identity(2)).n() == 2);
  const Matrix ring{{0, 0.5, 0, 0.5}, {0.5, 0, 0.5, 0}, {0, 0.5, 0, 0.5}, {0.5, 0, 0.5, 0}};
  CHECK(validate(ring).weights() == ring);
}

TEST_CASE("validate rejects each violation with its location") {
  SUBCASE("row sum") {
    try {
      validate(Matrix{{0.5, 0.6}, {0.5, 0.5}});
      FAIL("expected RowSumViolation");
    } catch (const RowSumViolation& e) {
      CHECK(e.row == 0);
      CHECK(e.sum == doctest::Approx(1.1));
    }
  }
  SUBCASE("negative weight") {
    try {
      validate(Matrix{{1.0, 0.0}, {1.5, -0.5}});
      FAIL("expected NegativeWeight");
    } catch (const NegativeWeight& e) {
      CHECK(e.i == 1);
      CHECK(e.j == 1);
    }
  }
  SUBCASE("not square") { CHECK_THROWS_AS(validate(Matrix(2, 3, 1.0 / 3.0)), NotSquare); }
  SUBCASE("too small") { CHECK_THROWS_AS(validate(Matrix{{1.0}}), BadParameter); }
  SUBCASE("tolerance edge") {
    CHECK_NOTHROW(validate(Matrix{{0.5, 0.5 + 5e-13}, {0.5, 0.5}}));
    CHECK_THROWS_AS(validate(Matrix{{0.5, 0.5 + 5e-12}, {0.5, 0.5}}), RowSumViolation);
  }
}

TEST_CASE("make_ring rows") {
  const auto r4 = make_ring(4, 0.0);
  const double row0[] = {0, 0.5, 0, 0.5};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK(r4(i, j) == row0[(j + 4 - i) % 4]);

  const auto r4e = make_ring(4, 0.1);
  const double row0e[] = {0.1, 0.45, 0, 0.45};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK(r4e(i, j) == doctest::Approx(row0e[(j + 4 - i) % 4]).epsilon(1e-15));

  const auto r3 = make_ring(3, 0.0);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(r3(i, i) == 0.0);
    CHECK(r3(i, (i + 1) % 3) == 0.5);
    CHECK(r3(i, (i + 2) % 3) == 0.5);
  }

  CHECK_THROWS_AS(make_ring(2, 0.0), BadParameter);
  CHECK_THROWS_AS(make_ring(4, 1.0), BadParameter);
  CHECK_THROWS_AS(make_ring(4, -0.1), BadParameter);
}

TEST_CASE("ring family is symmetric and stochastic for many (n, s)") {
  for (std::size_t n = 3; n <= 12; ++n)
    for (double s : {0.0, 0.05, 0.1, 0.3, 0.7, 0.99}) {
      const auto a = make_ring(n, s);
      CHECK(is_symmetric(a.weights()));
      for (std::size_t i = 0; i < n; ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < n; ++j) sum += a(i, j);
        CHECK(std::abs(sum - 1.0) <= 1e-12);
      }
    }
}

TEST_CASE("analyze_structure on the named examples") {
  const auto ring = make_ring(4, 0.0);
  const auto rep = analyze_structure(ring);
  CHECK(rep.symmetric);
  CHECK(rep.irreducible);
  CHECK_FALSE(rep.primitive);
  CHECK_FALSE(rep.witness_k.has_value());

  // Oracle: indicator powers of the periodic ring never become positive, k <= 10.
  const auto dense = test_support::to_dense(ring);
  for (int k = 1; k <= 10; ++k) CHECK_FALSE(oracle::indicator_power_positive(dense, k));

  const auto loopy = make_ring(4, 0.1);
  const auto rep2 = analyze_structure(loopy);
  CHECK(rep2.primitive);
  REQUIRE(rep2.witness_k.has_value());
  // Oracle: first positive power of the self-looped ring's pattern.
  const auto dense2 = test_support::to_dense(loopy);
  int first = 0;
  for (int k = 1; k <= 10 && first == 0; ++k)
    if (oracle::indicator_power_positive(dense2, k)) first = k;
  CHECK(first == 2);
  CHECK(*rep2.witness_k == 2);

  CHECK_FALSE(analyze_structure(validate(Matrix::identity(2))).irreducible);
}

TEST_CASE("pure ring is primitive iff n is odd") {
  for (std::size_t n = 3; n <= 8; ++n) {
    const auto rep = analyze_structure(make_ring(n, 0.0));
    CHECK(rep.irreducible);
    CHECK(rep.primitive == (n % 2 == 1));
  }
}

TEST_CASE("structure report invariants over the random corpus") {
  for (const auto& a : test_support::random_corpus(200, 1000)) {
    const auto rep = analyze_structure(a);
    const std::size_t n = a.n();
    CHECK(rep.irreducible);
    CHECK(rep.symmetric);
    if (rep.primitive) {
      REQUIRE(rep.witness_k.has_value());
      CHECK(*rep.witness_k >= 1);
      CHECK(*rep.witness_k <= (n - 1) * (n - 1) + 1);
      CHECK(oracle::indicator_power_positive(test_support::to_dense(a), static_cast<int>(*rep.witness_k)));
      if (*rep.witness_k > 1)
        CHECK_FALSE(oracle::indicator_power_positive(test_support::to_dense(a), static_cast<int>(*rep.witness_k) - 1));
    } else {
      CHECK_FALSE(rep.witness_k.has_value());
    }
  }
}

TEST_CASE("reducible block-diagonal matrix") {
  const Matrix m{{0.5, 0.5, 0, 0}, {0.5, 0.5, 0, 0}, {0, 0, 0.5, 0.5}, {0, 0, 0.5, 0.5}};
  const auto rep = analyze_structure(validate(m));
  CHECK(rep.symmetric);
  CHECK_FALSE(rep.irreducible);
  CHECK_FALSE(rep.primitive);
}

TEST_CASE("matrix text format") {
  SUBCASE("parse") {
    std::istringstream in("2\n0.5 0.5\n0.5 0.5\n");
    const auto a = read_matrix(in);
    CHECK(a.weights() == Matrix{{0.5, 0.5}, {0.5, 0.5}});
  }
  SUBCASE("short row") {
    std::istringstream in("2\n0.5\n");
    try {
      read_matrix(in);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.row == 1);
      CHECK(e.reason.find("wrong count") != std::string::npos);
    }
  }
  SUBCASE("missing row") {
    std::istringstream in("2\n0.5 0.5\n");
    CHECK_THROWS_AS(read_matrix(in), ParseError);
  }
  SUBCASE("bad header and token") {
    std::istringstream h("two\n");
    CHECK_THROWS_AS(read_matrix(h), ParseError);
    std::istringstream t("2\n0.5 x\n0.5 0.5\n");
    CHECK_THROWS_AS(read_matrix(t), ParseError);
    std::istringstream trailing("2\n0.5 0.5\n0.5 0.5\n1 2\n");
    CHECK_THROWS_AS(read_matrix(trailing), ParseError);
  }
  SUBCASE("validation after parse") {
    std::istringstream in("2\n0.5 0.6\n0.5 0.5\n");
    CHECK_THROWS_AS(read_matrix(in), RowSumViolation);
  }
}

TEST_CASE("write/read round trip is value-exact") {
  std::vector<WeightedAdjacency> cases{make_ring(4, 0.1), make_ring(7, 0.0)};
  for (const auto& a : test_support::random_corpus(30, 77)) cases.push_back(a);
  for (const auto& a : cases) {
    std::stringstream buf;
    write_matrix(a, buf);
    CHECK(read_matrix(buf) == a);
  }
}
