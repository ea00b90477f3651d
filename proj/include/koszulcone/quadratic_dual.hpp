#pragma once

// The quadratic dual A^! seen through its graded duals (A^!_l)^*, realized as
// subspaces of V^{(x) l}. A tensor f of degree l is a vector of length n^l
// indexed by words i_1..i_l with i_1 the most significant digit.

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "koszulcone/graded_algebra.hpp"
#include "koszulcone/linalg.hpp"

namespace koszulcone {

class AmbientTooLarge : public std::length_error {
 public:
  using std::length_error::length_error;
};

class CalibrationFailure : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

using IndexSet = std::set<std::size_t>;

/// Which tensor slot the right action f . x_j^* contracts.
enum class ActionSide { First, Last };

inline constexpr std::size_t kDefaultAmbientLimit = 1u << 18;

std::size_t tensor_dim(std::size_t n, int l);

/// Q2 = kernel of V (x) V -> A_2, spanned by commutators and lifted relations.
template <class F>
Subspace<F> relation_space(const GradedAlgebra<F>& A);

/// Ordered pairs (u, v) labelling the basis x*_u x*_v of A^!_2: every (u, v)
/// with u > v, plus u <= v outside S.
template <class F>
std::vector<Pair> non_s_ordered_pairs(const GradedAlgebra<F>& A);

/// q_{uv} = e_u (x) e_v - sum_{(s,t) in S} f^{u,v}_{s,t} e_s (x) e_t, one per
/// entry of non_s_ordered_pairs; the basis of (A^!_2)^* dual to x*_u x*_v.
template <class F>
std::vector<Vector<F>> labeled_deg2_basis(const GradedAlgebra<F>& A);

/// (s, t) in S -> {(u, v) non-S ordered -> -f^{u,v}_{s,t}}, i.e. the rewriting
/// x*_s x*_t = sum c_{uv} x*_u x*_v in A^!_2.
template <class F>
std::map<Pair, std::map<Pair, typename F::Element>> dual_deg2_relations(const GradedAlgebra<F>& A);

/// Slot contraction of a degree-l tensor against e_j.
template <class F>
Vector<F> contract(const F& field, std::size_t n, int l, const Vector<F>& f, std::size_t j, ActionSide side);

/// Outcome of a degree-bounded containment test prefix . L_src ⊆ L_dst.
struct ContainmentResult {
  bool holds = true;                // through checked_to
  std::optional<int> fails_at;      // first failing degree
  int checked_to = 0;
};

template <class F>
class QuadraticDual {
 public:
  using Element = typename F::Element;

  QuadraticDual(const GradedAlgebra<F>& A, int max_degree, std::size_t ambient_limit = kDefaultAmbientLimit);

  const F& field() const noexcept { return field_; }
  std::size_t num_vars() const noexcept { return n_; }
  int max_degree() const noexcept { return max_degree_; }

  const Subspace<F>& relation_space() const noexcept { return q2_; }
  /// (A^!_l)^* inside V^{(x) l}; zero space for l < 0.
  const Subspace<F>& component(int l) const;
  std::size_t component_dim(int l) const { return l < 0 ? 0 : component(l).dim(); }

  ActionSide action_side() const noexcept { return side_; }
  /// f . x_j^* under the calibrated action.
  Vector<F> act(const Vector<F>& f, int l, std::size_t j) const { return act(f, l, j, side_); }
  Vector<F> act(const Vector<F>& f, int l, std::size_t j, ActionSide side) const {
    return contract(field_, n_, l, f, j, side);
  }

  /// (B_E)^*_l = {f in (A^!_l)^* : f(a x_j^*) = 0 for all a and all j not in E}.
  Subspace<F> quotient_component(const IndexSet& E, int l) const;

  /// Whether the word x*_{w_1} ... x*_{w_l} is nonzero in A^!.
  bool word_nonzero(const std::vector<std::size_t>& word) const;

  /// Decides prefix . L_{E_src} ⊆ L_{E_dst} in each degree up to l_max.
  ContainmentResult left_ideal_contains(const IndexSet& E_src, const std::vector<std::size_t>& prefix,
                                        const IndexSet& E_dst, int l_max) const;

  /// Direct intersection of the l-1 embeddings of Q2; slower, used to cross
  /// check component().
  Subspace<F> component_by_intersection(int l) const;

 private:
  void check_ambient(int l) const;
  bool side_works(const GradedAlgebra<F>& A, ActionSide side) const;

  F field_;
  std::size_t n_;
  int max_degree_;
  std::size_t ambient_limit_;
  Subspace<F> q2_;
  Subspace<F> q2_perp_;
  std::vector<Subspace<F>> components_;
  ActionSide side_ = ActionSide::First;
};

/// (B_E)^*_l for l = 0..max_degree.
template <class F>
struct QuotientDualFamily {
  IndexSet E;
  std::vector<Subspace<F>> components;

  std::size_t dim(int l) const {
    return l < 0 || l >= static_cast<int>(components.size()) ? 0 : components[static_cast<std::size_t>(l)].dim();
  }
};

template <class F>
QuotientDualFamily<F> quotient_dual_family(const QuadraticDual<F>& dual, const IndexSet& E, int max_degree);

std::string format_index_set(const IndexSet& E);

}  // namespace koszulcone
