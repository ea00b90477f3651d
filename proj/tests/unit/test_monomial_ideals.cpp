#include <random>

#include "doctest.h"
#include "koszulcone/monomial_ideals.hpp"
#include "support/fixture_loader.hpp"

using namespace koszulcone;
using namespace testsupport;

TEST_CASE("decomposition reconstructs ideal elements") {
  std::mt19937_64 rng(31);
  for (const char* name : {"hhr_example", "poly_stable_b", "poly_mixed", "star_counter", "md_squares_n3_d2"}) {
    auto j = job(name);
    auto A = algebra(j, 6);
    MonomialIdeal<PrimeField> J(A, j.ideal);
    for (int trial = 0; trial < 30; ++trial) {
      const int d = J.max_degree() + static_cast<int>(rng() % 2);
      auto v = A.zero(d);
      for (std::size_t i = 0; i < J.size(); ++i) {
        auto a = A.zero(d - J.degree(i));
        for (auto& c : a.coords) c = A.field().from_integer(static_cast<std::int64_t>(rng() % 5) - 2);
        v = A.add(v, A.multiply(a, A.normal_form(J.generator(i))));
      }
      REQUIRE(J.contains(v));
      auto coef = J.decompose(v);
      auto back = A.zero(d);
      for (std::size_t i = 0; i < J.size(); ++i) back = A.add(back, A.multiply(coef[i], A.normal_form(J.generator(i))));
      CHECK_MESSAGE(A.equal(back, v), name);
    }
  }
}

TEST_CASE("decomposition of a non-member throws") {
  auto j = job("hhr_example");
  auto A = algebra(j, 4);
  MonomialIdeal<PrimeField> J(A, j.ideal);
  CHECK_THROWS_AS(J.decompose(A.variable(0)), NotInIdeal);
}

TEST_CASE("colon sets of the hhr ordering") {
  auto j = job("hhr_example");
  auto A = algebra(j, 6);
  MonomialIdeal<PrimeField> J(A, j.ideal);
  auto lq = check_linear_quotients(J, 4);
  REQUIRE(lq.passed);
  CHECK(lq.colons[0].vars == IndexSet{2});  // (0 : x1x2) = (x3)
  CHECK(lq.colons[1].vars == IndexSet{0, 2});
}

TEST_CASE("decomposition table convention") {
  auto j = job("poly_m2_n3");
  auto A = algebra(j, 5);
  MonomialIdeal<PrimeField> J(A, j.ideal);
  DecompositionTable<PrimeField> T(J);
  for (std::size_t k = 0; k < J.size(); ++k)
    for (std::size_t s = 0; s < A.num_vars(); ++s) {
      auto v = A.multiply(A.variable(s), A.normal_form(J.generator(k)));
      auto back = A.zero(3);
      for (std::size_t i = 0; i < J.size(); ++i)
        back = A.add(back, A.multiply(T.coefficient(i, s, k), A.normal_form(J.generator(i))));
      CHECK(A.equal(back, v));
    }
}

TEST_CASE("non-linear quotients are detected") {
  // (x1^2, x2^2): the colon (x1^2 : x2^2) = (x1^2) is not linear.
  auto j = polynomial_ring(2);
  auto A = algebra(j, 5);
  MonomialIdeal<PrimeField> J(A, {Monomial(std::vector<int>{2, 0}), Monomial(std::vector<int>{0, 2})});
  auto lq = check_linear_quotients(J, 4);
  CHECK_FALSE(lq.passed);
  CHECK(lq.colons[1].fails_at == 2);
}

TEST_CASE("Conca witness") {
  auto A = algebra(job("conca"), 5);
  auto ann = annihilator_vars(A, Monomial(std::vector<int>{0, 1, 0, 0}), 4);
  CHECK(ann.fails_at == 2);
  auto sk = check_strongly_koszul(A, 3);
  CHECK_FALSE(sk.passed);
  CHECK(sk.exhaustive);
}

TEST_CASE("strongly Koszul rings pass") {
  for (const char* name : {"md_squares_n3_d2", "hhr_example", "poly_m2_n3"}) {
    auto A = algebra(job(name), 5);
    CHECK_MESSAGE(check_strongly_koszul(A, 4).passed, name);
  }
}

TEST_CASE("regular ordering on fixtures") {
  auto check = [](const char* name) {
    auto j = job(name);
    auto A = algebra(j, 7);
    QuadraticDual<PrimeField> D(A, 4);
    MonomialIdeal<PrimeField> J(A, j.ideal);
    DecompositionTable<PrimeField> T(J);
    return check_regular_ordering(J, T, D, RegularOrderingOptions{});
  };
  CHECK(check("hhr_example").passed);
  CHECK(check("poly_stable_a").passed);
  auto sq = check("md_squares_n3_d2");
  CHECK_FALSE(sq.passed);
  REQUIRE_FALSE(sq.violations.empty());
  CHECK(sq.violations.front().condition == "1");
}

TEST_CASE("star condition needs monomial relations") {
  auto j = job("conca");
  auto A = algebra(j, 5);
  MonomialIdeal<PrimeField> J(A, j.ideal);
  auto lq = check_linear_quotients(J, 3);
  CHECK_THROWS_AS(check_star_condition(J, lq), NotMultigraded);
}

TEST_CASE("invalid ideals") {
  auto A = algebra(polynomial_ring(2), 4);
  CHECK_THROWS_AS(MonomialIdeal<PrimeField>(A, {}), InvalidIdeal);
  CHECK_THROWS_AS(MonomialIdeal<PrimeField>(A, {Monomial::one(2)}), InvalidIdeal);
}
