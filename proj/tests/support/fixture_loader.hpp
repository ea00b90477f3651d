#pragma once

#include <memory>
#include <stdexcept>
#include <string>

#include "koszulcone/fixtures.hpp"
#include "koszulcone/graded_algebra.hpp"
#include "koszulcone/job.hpp"
#include "oracle/syzygy_oracle.hpp"

namespace testsupport {

using koszulcone::PrimeField;

inline koszulcone::JobSpec job(const std::string& name) {
  auto text = koszulcone::builtin_fixture(name);
  if (!text) throw std::invalid_argument("no fixture " + name);
  return koszulcone::parse_job(*text, name);
}

inline koszulcone::GradedAlgebra<PrimeField> algebra(const koszulcone::JobSpec& j, int cutoff) {
  return koszulcone::GradedAlgebra<PrimeField>(koszulcone::make_presentation(j, PrimeField(j.field.p)), cutoff);
}

inline koszulcone::JobSpec polynomial_ring(std::size_t n) {
  koszulcone::JobSpec j;
  for (std::size_t i = 0; i < n; ++i) j.vars.push_back("x" + std::to_string(i + 1));
  return j;
}

inline koszulcone::JobSpec squares_ring(std::size_t n) {
  koszulcone::JobSpec j = polynomial_ring(n);
  for (std::size_t i = 0; i < n; ++i) {
    koszulcone::Monomial m = koszulcone::Monomial::one(n);
    m.exponents[i] = 2;
    j.relations.push_back({{1, m}});
  }
  return j;
}

/// Squarefree monomials of degree d, lex order.
inline std::vector<koszulcone::Monomial> squarefree_power(std::size_t n, int d) {
  std::vector<koszulcone::Monomial> out;
  for (auto& m : koszulcone::monomials_of_degree(n, d)) {
    bool sqfree = true;
    for (int e : m.exponents) sqfree = sqfree && e <= 1;
    if (sqfree) out.push_back(m);
  }
  return out;
}

inline oracle::Ring oracle_ring(const koszulcone::JobSpec& j) {
  oracle::Ring r;
  r.p = j.field.rational ? 101 : j.field.p;
  r.n = j.vars.size();
  for (const auto& rel : j.relations) {
    std::vector<oracle::Term> terms;
    for (const auto& t : rel)
      terms.push_back({t.coefficient.get_num().get_si(), t.coefficient.get_den().get_si(), t.monomial.exponents});
    r.relations.push_back(std::move(terms));
  }
  return r;
}

inline std::vector<oracle::Exponents> oracle_ideal(const std::vector<koszulcone::Monomial>& gens) {
  std::vector<oracle::Exponents> out;
  for (const auto& m : gens) out.push_back(m.exponents);
  return out;
}

inline std::size_t binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  std::size_t r = 1;
  for (long i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
  return r;
}

}  // namespace testsupport
