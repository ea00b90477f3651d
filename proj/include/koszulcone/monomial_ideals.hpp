#pragma once

// Ordered monomial ideals J = (m_1, ..., m_r) of A, their prefix ideals
// J_i = (m_1, ..., m_i), colon ideals by variables, the decomposition
// coefficients m_i^*(v), and the bounded checks built on them.
//
// Variable indices are 0-based internally and printed 1-based.

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "koszulcone/graded_algebra.hpp"
#include "koszulcone/quadratic_dual.hpp"

namespace koszulcone {

class InvalidIdeal : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotInIdeal : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class NotMultigraded : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

template <class F>
class MonomialIdeal {
 public:
  MonomialIdeal(const GradedAlgebra<F>& A, std::vector<Monomial> generators);

  const GradedAlgebra<F>& algebra() const noexcept { return *A_; }
  std::size_t size() const noexcept { return gens_.size(); }
  const std::vector<Monomial>& generators() const noexcept { return gens_; }
  const Monomial& generator(std::size_t i) const { return gens_.at(i); }
  int degree(std::size_t i) const { return gens_.at(i).degree(); }
  int min_degree() const;
  int max_degree() const;
  bool equigenerated() const { return min_degree() == max_degree(); }

  /// (J_prefix)_d inside A_d, prefix = number of leading generators (0..r).
  const Subspace<F>& membership_space(std::size_t prefix, int d) const;
  bool contains(const AlgebraElement<F>& v, std::size_t prefix) const;
  bool contains(const AlgebraElement<F>& v) const { return contains(v, size()); }

  IndexSet supp(std::size_t i) const;
  IndexSet supp() const;

  /// Coefficients m_i^*(v), i = 0..r-1, using generators 0..bound-1 only.
  /// Canonical choice: the least prefix containing v takes its coefficient
  /// from the canonical solution of v = u + a m_j with u in J_{j-1}, then
  /// recurse on u.
  std::vector<AlgebraElement<F>> decompose(const AlgebraElement<F>& v, std::size_t bound) const;
  std::vector<AlgebraElement<F>> decompose(const AlgebraElement<F>& v) const { return decompose(v, size()); }

 private:
  const GradedAlgebra<F>* A_;
  std::vector<Monomial> gens_;
  // spaces_[prefix][d]
  std::vector<std::vector<Subspace<F>>> spaces_;
};

/// m_i^*(x_s m_k) and m_i^*(x_s x_t m_k) for all indices, built once.
template <class F>
class DecompositionTable {
 public:
  explicit DecompositionTable(const MonomialIdeal<F>& J);

  /// Coefficients of x_s m_k. When x_s m_k is outside J_{k-1} this is the
  /// convention m_k^* = x_s and all other coefficients zero.
  const std::vector<AlgebraElement<F>>& single(std::size_t s, std::size_t k) const {
    return single_.at({s, k});
  }
  /// m_j^*(x_s m_k)
  const AlgebraElement<F>& coefficient(std::size_t j, std::size_t s, std::size_t k) const { return single(s, k).at(j); }
  /// Coefficients of x_s x_t m_k; present when the degree fits the cutoff.
  const std::vector<AlgebraElement<F>>* pair(std::size_t s, std::size_t t, std::size_t k) const;

 private:
  std::map<std::pair<std::size_t, std::size_t>, std::vector<AlgebraElement<F>>> single_;
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::vector<AlgebraElement<F>>> pair_;
};

/// Degree-1 part of a colon ideal plus a bounded check that it generates the
/// colon in higher degrees.
struct ColonReport {
  IndexSet vars;              // variables lying in the colon
  std::size_t linear_dim = 0;  // dim of the colon in degree 1
  int checked_to = 0;
  std::optional<int> fails_at;  // first degree >= 2 where the colon exceeds its linear part
  /// The linear part is spanned by variables.
  bool coordinate() const { return linear_dim == vars.size(); }
  bool passed() const { return coordinate() && !fails_at.has_value(); }
};

/// E_i = {j : x_j m_i in J_{i-1}} with (J_{i-1} : m_i)_d = ((x_j : j in E_i))_d
/// checked for d <= D.
template <class F>
ColonReport colon_vars(const MonomialIdeal<F>& J, std::size_t i, int D);

/// (0 : m) by variables.
template <class F>
ColonReport annihilator_vars(const GradedAlgebra<F>& A, const Monomial& m, int D);

struct LinearQuotientsReport {
  std::vector<ColonReport> colons;
  bool passed = true;
};

template <class F>
LinearQuotientsReport check_linear_quotients(const MonomialIdeal<F>& J, int D);

struct StronglyKoszulFailure {
  IndexSet Y;
  std::size_t x = 0;
  /// 1 when ((Y) : x)_1 is not spanned by variables; otherwise the first
  /// degree needing a generator beyond the linear part.
  int degree = 0;
};

struct StronglyKoszulReport {
  bool passed = true;
  int checked_to = 0;
  std::size_t pairs_checked = 0;
  bool exhaustive = true;
  std::vector<StronglyKoszulFailure> failures;
};

inline constexpr std::size_t kExhaustiveVarLimit = 10;

/// For Y ⊆ X and x not in Y: Z = ((Y) : x)_1 must be spanned by variables and
/// generate ((Y) : x) through degree D. Exhaustive for n <= 10, otherwise only
/// |Y| <= subset_bound.
template <class F>
StronglyKoszulReport check_strongly_koszul(const GradedAlgebra<F>& A, int D, std::size_t subset_bound = 3);

struct Violation {
  std::string condition;  // "linear-quotients", "1", "2a", "2b", "3"
  std::string witness;
};

struct RegularOrderingReport {
  bool passed = true;
  bool literal_condition1 = false;
  bool literal_condition2b = false;
  int checked_to = 0;
  std::vector<Violation> violations;
  /// Instances of conditions (1) or (2b) where the two readings give
  /// different verdicts.
  std::vector<std::string> reading_disagreements;
};

struct RegularOrderingOptions {
  int D = 4;
  /// Read the last factor of condition (1) as m_j^*(x_s m_j) instead of
  /// m_j^*(x_s m_k).
  bool literal_condition1 = false;
  /// Apply (2b) to every s. By default an s only counts when some x_u^* in
  /// L^j but not in L^k has x_t^* x_s^* x_u^* nonzero in A^!.
  bool literal_condition2b = false;
};

template <class F>
RegularOrderingReport check_regular_ordering(const MonomialIdeal<F>& J, const DecompositionTable<F>& table,
                                             const QuadraticDual<F>& dual, const RegularOrderingOptions& opts);

struct StarReport {
  IndexSet relation_support;
  bool star_holds = true;
  bool regular_decomposition = true;
  bool guaranteed() const { return star_holds && regular_decomposition; }
  std::vector<std::string> witnesses;
};

/// Needs monomial relations; throws NotMultigraded otherwise.
template <class F>
StarReport check_star_condition(const MonomialIdeal<F>& J, const LinearQuotientsReport& lq);

}  // namespace koszulcone
