#pragma once

// Exact linear algebra: reduced row-echelon forms, kernels, subspaces with
// canonical bases, intersections, and canonical solutions of linear systems.
//
// Every underdetermined system is resolved the same way: unknowns are
// ordered as given, pivots are taken leftmost-first, and free unknowns are
// set to zero. Downstream decompositions and comparison maps depend on this
// being reproducible.

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "koszulcone/matrix.hpp"

namespace koszulcone {

class MismatchedAmbient : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// In-place reduction to reduced row-echelon form. Zero rows are dropped, so
/// on return `m.rows()` is the rank. Pivot columns are returned in order.
/// Over the rationals rows are cleared to integers and eliminated
/// fraction-free before the final normalisation.
template <class F>
std::vector<std::size_t> reduce_to_rref(Matrix<F>& m);

template <class F>
std::size_t rank(const Matrix<F>& m);

template <class F>
class Subspace {
 public:
  using Element = typename F::Element;

  Subspace() = default;
  /// The zero subspace of F^ambient.
  Subspace(F field, std::size_t ambient_dim) : basis_(std::move(field), 0, ambient_dim) {}

  static Subspace full(const F& field, std::size_t ambient_dim) {
    return Subspace(Matrix<F>::identity(field, ambient_dim));
  }
  /// Row span of `rows`.
  static Subspace span(Matrix<F> rows) { return Subspace(std::move(rows)); }
  static Subspace span(const F& field, std::size_t ambient_dim, const std::vector<Vector<F>>& rows) {
    return Subspace(Matrix<F>::from_rows(field, ambient_dim, rows));
  }

  const F& field() const noexcept { return basis_.field(); }
  std::size_t ambient_dim() const noexcept { return basis_.cols(); }
  std::size_t dim() const noexcept { return basis_.rows(); }
  /// Canonical basis: the nonzero rows of the reduced row-echelon form.
  const Matrix<F>& basis() const noexcept { return basis_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

  /// v minus its reduction against the basis; zero iff v lies in the space.
  Vector<F> residual(std::span<const Element> v) const;
  bool contains(std::span<const Element> v) const;
  bool contains(const Subspace& other) const;
  /// Coordinates with respect to basis() when v is a member.
  std::optional<Vector<F>> coordinates(std::span<const Element> v) const;
  /// Coordinates assuming membership (the pivot entries of v).
  Vector<F> pivot_coordinates(std::span<const Element> v) const;
  /// sum_i c_i * basis_i
  Vector<F> combine(std::span<const Element> coords) const;

  /// {w : <b, w> = 0 for every basis vector b} under the standard pairing.
  Subspace annihilator() const;

  friend bool operator==(const Subspace& a, const Subspace& b) { return a.basis_ == b.basis_; }

 private:
  explicit Subspace(Matrix<F> rows);

  Matrix<F> basis_;
  std::vector<std::size_t> pivots_;
};

template <class F>
struct EchelonForm {
  Matrix<F> rref;  // same shape as the input, zero rows at the bottom
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_columns;
  Subspace<F> kernel;  // {v : m v = 0}
};

template <class F>
EchelonForm<F> echelonize(const Matrix<F>& m);

/// Right null space {v : m v = 0}.
template <class F>
Subspace<F> kernel(const Matrix<F>& m);

/// Intersection of subspaces of a common ambient space. The empty
/// intersection is the whole ambient space.
template <class F>
Subspace<F> intersect_subspaces(std::span<const Subspace<F>> spaces, const F& field, std::size_t ambient_dim);

template <class F>
Subspace<F> sum_subspaces(std::span<const Subspace<F>> spaces, const F& field, std::size_t ambient_dim);

/// Solves c^T * generators = target. Returns the canonical solution: free
/// unknowns (rows of `generators` dependent on earlier rows) are zero.
template <class F>
std::optional<Vector<F>> solve_membership(std::span<const typename F::Element> target, const Matrix<F>& generators);

/// Same contract as solve_membership, factored once for many targets.
template <class F>
class MembershipSolver {
 public:
  using Element = typename F::Element;

  explicit MembershipSolver(const Matrix<F>& generators);

  std::size_t unknowns() const noexcept { return unknowns_; }
  std::size_t rank() const noexcept { return pivots_.size(); }
  /// Which generator rows are pivots (independent of all earlier rows).
  const std::vector<std::size_t>& pivot_unknowns() const noexcept { return pivots_; }

  std::optional<Vector<F>> solve(std::span<const Element> target) const;

 private:
  F field_;
  std::size_t unknowns_ = 0;
  std::size_t equations_ = 0;
  std::vector<std::size_t> pivots_;
  // transform * generators^T = rref(generators^T)
  Matrix<F> transform_;
  Matrix<F> rref_;
};

/// Incrementally maintained echelon basis: insert vectors one at a time and
/// learn whether each was independent of the earlier ones.
template <class F>
class EchelonAccumulator {
 public:
  using Element = typename F::Element;

  EchelonAccumulator(F field, std::size_t ambient_dim) : field_(std::move(field)), ambient_(ambient_dim) {}

  std::size_t dim() const noexcept { return rows_.size(); }
  std::size_t ambient_dim() const noexcept { return ambient_; }

  Vector<F> reduce(std::span<const Element> v) const;
  bool is_independent(std::span<const Element> v) const;
  /// Returns true if v was independent and has been added.
  bool insert(std::span<const Element> v);

  Subspace<F> span() const;

 private:
  F field_;
  std::size_t ambient_;
  std::vector<Vector<F>> rows_;  // each normalised: leading entry 1 at pivot
  std::vector<std::size_t> pivots_;
};

}  // namespace koszulcone
