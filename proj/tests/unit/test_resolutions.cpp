#include <functional>
#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "koszulcone/export.hpp"
#include "koszulcone/resolutions.hpp"
#include "support/fixture_loader.hpp"

using namespace koszulcone;
using namespace testsupport;

namespace {

struct Built {
  GradedAlgebra<PrimeField> A;
  QuadraticDual<PrimeField> D;
  MonomialIdeal<PrimeField> J;
  DecompositionTable<PrimeField> T;
  ResolutionSetup<PrimeField> S;

  Built(const JobSpec& j, int H, int cutoff)
      : A(algebra(j, cutoff)), D(A, std::max(H, 1)), J(A, j.ideal), T(J), S(J, D, H, 4) {}
};

std::size_t total_rank(const ChainComplex<PrimeField>& c) {
  std::size_t t = 0;
  for (int l = 0; l <= c.top(); ++l) t += c.rank(l);
  return t;
}

}  // namespace

TEST_CASE("Priddy complexes have the dual ranks and are exact for polynomial rings") {
  for (std::size_t n = 1; n <= 3; ++n) {
    auto A = algebra(polynomial_ring(n), 6);
    QuadraticDual<PrimeField> D(A, 4);
    auto P = priddy_complex(A, D, 4);
    CHECK(P.kind == ComplexKind::Priddy);
    for (int l = 0; l <= 4; ++l) CHECK(P.rank(l) == binomial(static_cast<long>(n), l));
    auto v = verify_complex(P, VerifyOptions{6, std::nullopt});
    CHECK(v.passed());
  }
  auto A = algebra(polynomial_ring(2), 3);
  QuadraticDual<PrimeField> D(A, 1);
  auto P0 = priddy_complex(A, D, 0);
  CHECK(P0.top() == 0);
  CHECK(P0.rank(0) == 1);
}

TEST_CASE("zero homological bound") {
  Built b(job("hhr_example"), 0, 6);
  auto c = closed_form_resolution(b.S, b.T).complex;
  CHECK(c.top() == 0);
  CHECK(c.rank(0) == 1);
  auto t = betti_table(b.S);
  CHECK(t.total(0) == 1);
  CHECK(t.total(1) == 0);
}

TEST_CASE("single generator and a Koszul complex") {
  auto j = polynomial_ring(2);
  j.ideal = {Monomial(std::vector<int>{1, 0})};
  {
    Built b(j, 3, 6);
    auto t = betti_table(b.S);
    CHECK(t.at(1, 1) == 1);
    CHECK(t.total(2) == 0);
    auto c = closed_form_resolution(b.S, b.T).complex;
    CHECK(verify_complex(c, {}).passed());
  }
  j.ideal.push_back(Monomial(std::vector<int>{0, 1}));
  Built b(j, 3, 6);
  auto c = closed_form_resolution(b.S, b.T).complex;
  CHECK(c.rank(1) == 2);
  CHECK(c.rank(2) == 1);
  CHECK(c.rank(3) == 0);
  CHECK(verify_complex(c, {}).passed());
}

TEST_CASE("corrupted differential is caught") {
  Built b(job("hhr_example"), 4, 8);
  auto c = closed_form_resolution(b.S, b.T).complex;
  REQUIRE(verify_complex(c, {}).passed());
  auto& d2 = c.differentials[2];
  bool changed = false;
  for (auto& e : d2.entries)
    if (e.degree == 1 && !e.coords.empty()) {
      e.coords[0] = b.A.field().add(e.coords[0], 1);
      changed = true;
      break;
    }
  REQUIRE(changed);
  auto v = verify_complex(c, {});
  CHECK_FALSE(v.passed());
  const bool clean = v.d2_zero && v.exact();
  CHECK_FALSE(clean);
}

TEST_CASE("constant entries break minimality") {
  auto A = algebra(polynomial_ring(2), 4);
  ChainComplex<PrimeField> c;
  c.algebra = &A;
  BasisElement<PrimeField> e0{kNoGenerator, 0, 0, 0, {1}};
  BasisElement<PrimeField> e1{0, 0, 0, 0, {1}};
  c.modules = {{e0}, {e1}};
  c.differentials.emplace_back();
  c.differentials.push_back(zero_poly_matrix(A, c.modules[0], c.modules[1]));
  c.differentials[1].at(0, 0) = A.one();
  auto v = verify_complex(c, {});
  CHECK(v.d2_zero);
  CHECK_FALSE(v.minimal);
  CHECK_FALSE(v.minimal_witness.empty());
  CHECK_THROWS_AS(linear_strand(c), NotMinimal);
}

TEST_CASE("linear strand") {
  {
    Built b(job("hhr_example"), 4, 8);
    auto c = closed_form_resolution(b.S, b.T).complex;
    auto s = linear_strand(c);
    auto s2 = linear_strand(s);
    for (int l = 0; l <= s.top(); ++l) CHECK(s.rank(l) == s2.rank(l));
  }
  Built b(job("mixed_degree"), 4, 8);
  auto c = closed_form_resolution(b.S, b.T).complex;
  auto s = linear_strand(c);
  CHECK(total_rank(s) < total_rank(c));
  CHECK(linear_strand(s).rank(1) == s.rank(1));
}

TEST_CASE("closed form and cone resolutions are exact to homological degree five") {
  for (const char* name : {"hhr_example", "poly_stable_a", "poly_mixed"}) {
    Built b(job(name), 5, 10);
    auto closed = closed_form_resolution(b.S, b.T).complex;
    auto cone = iterated_mapping_cone(b.S);
    auto v = verify_complex(closed, VerifyOptions{8, std::nullopt});
    CHECK_MESSAGE(v.passed(), name);
    CHECK(verify_complex(cone, VerifyOptions{8, std::nullopt}).passed());
    CHECK(betti_from_complex(closed).entries == betti_table(b.S).entries);
    CHECK(betti_from_complex(cone).entries == betti_table(b.S).entries);
  }
}

TEST_CASE("literal inner sum breaks exactness on the hhr ordering") {
  Built b(job("hhr_example"), 4, 8);
  ClosedFormOptions opts;
  opts.literal_inner_sum = true;
  bool exact = true;
  try {
    exact = verify_complex(closed_form_resolution(b.S, b.T, opts).complex, {}).passed();
  } catch (const RegularOrderingViolation&) {
    exact = false;
  }
  CHECK_FALSE(exact);
}

TEST_CASE("non-regular ordering refuses the closed form") {
  Built b(job("md_squares_n3_d2"), 3, 8);
  CHECK_THROWS_AS(closed_form_resolution(b.S, b.T), NotRegular);
  CHECK(verify_complex(iterated_mapping_cone(b.S), {}).passed());
}

TEST_CASE("comparison map in homological degree one") {
  // J = (x1^2, x1x2, ...): x1 * x1x2 = x2 * x1^2, so psi_1 is multiplication by x2.
  Built b(job("poly_m2_n3"), 3, 8);
  REQUIRE(b.S.E(1) == IndexSet{0});
  auto psi = comparison_map_psi(b.S, b.T, 1, 1);
  REQUIRE(psi.rows == 1);
  REQUIRE(psi.cols == 1);
  CHECK(b.A.equal(psi.at(0, 0), b.A.variable(1)));
  auto psi0 = comparison_map_psi(b.S, b.T, 1, 0);
  CHECK(b.A.equal(psi0.at(0, 0), b.A.normal_form(b.J.generator(1))));
}

TEST_CASE("JSON export round trip") {
  for (const char* name : {"hhr_example", "poly_m2_n3"}) {
    Built b(job(name), 3, 8);
    auto c = closed_form_resolution(b.S, b.T).complex;
    auto j = complex_to_json(c);
    auto back = complex_from_json(b.A, j);
    CHECK(complex_to_json(back) == j);
    CHECK(back.top() == c.top());
    CHECK(verify_complex(back, {}).passed());
  }
  Built b(job("hhr_example"), 2, 6);
  auto j = complex_to_json(closed_form_resolution(b.S, b.T).complex);
  j["kind"] = "banana";
  CHECK_THROWS_AS(complex_from_json(b.A, j), SchemaError);
}

TEST_CASE("rational coefficients") {
  auto j = job("conca");
  j.field = FieldSpec{true, 0};
  GradedAlgebra<RationalField> A(make_presentation(j, RationalField{}), 6);
  QuadraticDual<RationalField> D(A, 3);
  auto P = priddy_complex(A, D, 3);
  CHECK(verify_complex(P, VerifyOptions{5, std::nullopt}).passed());
  auto x = element_to_json(RationalField{}, mpq_class(-2, 3));
  CHECK(x == "-2/3");
  CHECK(element_from_json(RationalField{}, x) == mpq_class(-2, 3));
}

TEST_CASE("Betti table formatting") {
  Built b(job("md_squares_n3_d2"), 3, 8);
  auto t = betti_table(b.S);
  CHECK(t.linear);
  CHECK(t.regularity == 1);
  auto text = format_betti(t, BettiLevel::Ideal);
  CHECK(text.find("total: 3 8 15") != std::string::npos);
  auto js = betti_to_json(t, BettiLevel::Ideal);
  CHECK(js.dump() == betti_to_json(t, BettiLevel::Ideal).dump());
}

namespace {

// Smallest strongly stable set of degree-d monomials containing the seeds.
std::vector<Monomial> borel_closure(std::size_t n, int d, std::mt19937_64& rng) {
  std::set<Monomial, std::greater<>> out;
  std::vector<Monomial> todo;
  auto all = monomials_of_degree(n, d);
  for (int k = 1 + static_cast<int>(rng() % 2); k > 0; --k) todo.push_back(all[rng() % all.size()]);
  while (!todo.empty()) {
    Monomial m = todo.back();
    todo.pop_back();
    if (!out.insert(m).second) continue;
    for (std::size_t j = 1; j < n; ++j)
      if (m.exponents[j] > 0)
        for (std::size_t i = 0; i < j; ++i) {
          Monomial up = m;
          --up.exponents[j];
          ++up.exponents[i];
          todo.push_back(up);
        }
  }
  return {out.begin(), out.end()};
}

}  // namespace

TEST_CASE("random strongly stable ideals agree with the oracle") {
  std::mt19937_64 rng(1234);
  for (int trial = 0; trial < 12; ++trial) {
    const std::size_t n = 2 + rng() % 3;
    const int d = 1 + static_cast<int>(rng() % 2);
    auto j = polynomial_ring(n);
    j.ideal = borel_closure(n, d, rng);
    Built b(j, 4, d + 6);
    auto closed = closed_form_resolution(b.S, b.T).complex;
    auto cone = iterated_mapping_cone(b.S);
    CHECK(verify_complex(closed, VerifyOptions{d + 4, std::nullopt}).passed());
    CHECK(betti_from_complex(cone).entries == betti_from_complex(closed).entries);
    auto ref = oracle::betti_numbers(oracle_ring(j), oracle_ideal(j.ideal), 3, d + 3);
    std::map<std::pair<int, int>, std::size_t> mine;
    for (const auto& [key, v] : betti_table(b.S).entries)
      if (v && key.first <= 3 && key.second <= d + 3) mine[key] = v;
    CHECK(mine == ref);
  }
}
