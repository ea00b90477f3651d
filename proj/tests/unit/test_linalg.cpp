#include <random>

#include "doctest.h"
#include "koszulcone/linalg.hpp"

using namespace koszulcone;

namespace {

template <class F>
Matrix<F> random_matrix(const F& field, std::mt19937_64& rng, std::size_t r, std::size_t c, int range) {
  std::uniform_int_distribution<int> dist(-range, range);
  Matrix<F> m(field, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = field.from_integer(dist(rng));
  return m;
}

template <class F>
Vector<F> mat_vec(const Matrix<F>& m, const Vector<F>& v) {
  Vector<F> out(m.rows(), m.field().zero());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i] = m.field().fma(out[i], m(i, j), v[j]);
  return out;
}

// Matrix of rank r as a product of r x c and random combinations.
template <class F>
Matrix<F> low_rank(const F& field, std::mt19937_64& rng, std::size_t rows, std::size_t cols, std::size_t r) {
  auto base = random_matrix(field, rng, r, cols, 3);
  auto mix = random_matrix(field, rng, rows, r, 3);
  Matrix<F> m(field, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < r; ++k)
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = field.fma(m(i, j), mix(i, k), base(k, j));
  return m;
}

}  // namespace

TEST_CASE("prime field arithmetic") {
  PrimeField f(101);
  for (std::uint32_t a = 1; a < 101; ++a) CHECK(f.mul(a, f.inv(a)) == 1);
  CHECK(f.from_integer(-1) == 100);
  CHECK(f.from_fraction(1, 2) == 51);
  CHECK(f.parse("-3") == 98);
  CHECK_THROWS_AS(f.inv(0), FieldError);
  CHECK_THROWS(PrimeField(100));
}

TEST_CASE("rational field arithmetic") {
  RationalField q;
  CHECK(q.parse("3/6") == mpq_class(1, 2));
  CHECK(q.format(q.from_fraction(-4, 6)) == "-2/3");
  CHECK(q.mul(q.inv(q.from_integer(7)), q.from_integer(7)) == 1);
  CHECK_THROWS_AS(q.inv(q.zero()), FieldError);
}

TEST_CASE_TEMPLATE("rank plus nullity equals the column count", F, PrimeField, RationalField) {
  F field{};
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t rows = 1 + rng() % 6, cols = 1 + rng() % 6;
    auto m = random_matrix(field, rng, rows, cols, 2);
    auto ker = kernel(m);
    CHECK(rank(m) + ker.dim() == cols);
    for (std::size_t i = 0; i < ker.dim(); ++i) {
      const auto image = mat_vec(m, ker.basis().row_vector(i));
      CHECK(is_zero_vector<F>(field, image));
    }
  }
}

TEST_CASE_TEMPLATE("products of known rank", F, PrimeField, RationalField) {
  F field{};
  std::mt19937_64 rng(11);
  for (std::size_t r = 0; r <= 4; ++r) {
    auto m = low_rank(field, rng, 6, 5, r);
    CHECK(rank(m) <= r);
    auto e = echelonize(m);
    CHECK(e.rank == rank(m));
    CHECK(e.pivot_columns.size() == e.rank);
  }
}

TEST_CASE("rational elimination agrees with a large prime on integer matrices") {
  std::mt19937_64 rng(3);
  PrimeField fp(1000003);
  RationalField q;
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t rows = 2 + rng() % 5, cols = 2 + rng() % 5;
    std::uniform_int_distribution<int> dist(-4, 4);
    Matrix<PrimeField> a(fp, rows, cols);
    Matrix<RationalField> b(q, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) {
        int v = dist(rng);
        if (j == cols - 1 && i > 0) v = 0;  // keep some rank deficiency around
        a(i, j) = fp.from_integer(v);
        b(i, j) = q.from_integer(v);
      }
    CHECK(rank(a) == rank(b));
  }
}

TEST_CASE_TEMPLATE("subspace membership and coordinates", F, PrimeField, RationalField) {
  F field{};
  std::mt19937_64 rng(5);
  auto gens = random_matrix(field, rng, 3, 6, 3);
  auto S = Subspace<F>::span(gens);
  Vector<F> c = {field.from_integer(2), field.from_integer(-1), field.from_integer(5)};
  Vector<F> v(6, field.zero());
  for (std::size_t i = 0; i < 3; ++i) axpy(field, std::span(v), c[i], gens.row(i));
  REQUIRE(S.contains(std::span<const typename F::Element>(v)));
  auto coords = S.coordinates(v);
  REQUIRE(coords);
  CHECK(S.combine(*coords) == v);
  const auto res = S.residual(v);
  CHECK(is_zero_vector<F>(field, res));

  auto sol = solve_membership<F>(v, gens);
  REQUIRE(sol);
  Vector<F> back(6, field.zero());
  for (std::size_t i = 0; i < 3; ++i) axpy(field, std::span(back), (*sol)[i], gens.row(i));
  CHECK(back == v);

  MembershipSolver<F> solver(gens);
  CHECK(solver.solve(v) == sol);

  auto ann = S.annihilator();
  CHECK(ann.dim() + S.dim() == 6);
  for (std::size_t i = 0; i < ann.dim(); ++i)
    for (std::size_t j = 0; j < S.dim(); ++j) {
      auto x = field.zero();
      for (std::size_t k = 0; k < 6; ++k) x = field.fma(x, ann.basis()(i, k), S.basis()(j, k));
      CHECK(field.is_zero(x));
    }
}

TEST_CASE("intersection and sum dimensions") {
  PrimeField f;
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    auto a = Subspace<PrimeField>::span(random_matrix(f, rng, 1 + rng() % 4, 6, 3));
    auto b = Subspace<PrimeField>::span(random_matrix(f, rng, 1 + rng() % 4, 6, 3));
    std::vector<Subspace<PrimeField>> both = {a, b};
    auto cap = intersect_subspaces<PrimeField>(both, f, 6);
    auto cup = sum_subspaces<PrimeField>(both, f, 6);
    CHECK(cap.dim() + cup.dim() == a.dim() + b.dim());
    CHECK(a.contains(cap));
    CHECK(cup.contains(b));
  }
  std::vector<Subspace<PrimeField>> none;
  CHECK(intersect_subspaces<PrimeField>(none, f, 4).dim() == 4);
}

TEST_CASE("non-member has no solution") {
  PrimeField f;
  Matrix<PrimeField> g(f, 1, 2);
  g(0, 0) = 1;
  Vector<PrimeField> t = {0, 1};
  CHECK_FALSE(solve_membership<PrimeField>(t, g).has_value());
}
