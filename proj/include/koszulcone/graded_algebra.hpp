#pragma once

// A commutative quadratic algebra A = k[x_1..x_n]/I stored degree by degree
// up to an explicit cutoff. Each A_d gets a monomial k-basis chosen greedily:
// the user's preferred monomials first (in the order given), then the
// remaining monomials in lex order, keeping a monomial iff its class is
// independent of the classes already kept.

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "koszulcone/linalg.hpp"
#include "koszulcone/monomial.hpp"

namespace koszulcone {

class DegreeOverflow : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class InvalidPresentation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Homogeneous element of the free commutative polynomial ring.
template <class F>
using FreePolynomial = std::map<Monomial, typename F::Element>;

template <class F>
struct RingPresentation {
  F field{};
  std::vector<std::string> var_names;
  std::vector<FreePolynomial<F>> relations;  // homogeneous of degree 2
  std::vector<Monomial> preferred;           // tried first during basis selection

  std::size_t num_vars() const noexcept { return var_names.size(); }
  /// Throws InvalidPresentation.
  void validate() const;
};

template <class F>
struct AlgebraElement {
  int degree = 0;
  Vector<F> coords;  // over the chosen basis of A_degree; empty for degree < 0
};

/// A preferred monomial that had to be skipped because its class was already
/// spanned when its turn came.
struct InconsistentPreferred {
  Monomial monomial;
  std::string message;
};

using Pair = std::pair<std::size_t, std::size_t>;

template <class F>
class GradedAlgebra {
 public:
  using Element = typename F::Element;

  GradedAlgebra(RingPresentation<F> presentation, int max_degree);

  const F& field() const noexcept { return pres_.field; }
  const RingPresentation<F>& presentation() const noexcept { return pres_; }
  std::size_t num_vars() const noexcept { return pres_.num_vars(); }
  const std::vector<std::string>& var_names() const noexcept { return pres_.var_names; }
  int max_degree() const noexcept { return max_degree_; }

  /// dim A_d; zero for d < 0. Throws DegreeOverflow beyond the cutoff.
  std::size_t dim(int d) const;
  /// Chosen basis monomials of A_d.
  const std::vector<Monomial>& basis(int d) const;
  /// All monomials of the free ring in degree d, lex order.
  const std::vector<Monomial>& monomials(int d) const;
  std::size_t relation_ideal_dim(int d) const;
  /// Position of m in basis(deg m), if m was chosen.
  std::optional<std::size_t> basis_index(const Monomial& m) const;
  bool is_basis_monomial(const Monomial& m) const { return basis_index(m).has_value(); }

  const std::vector<InconsistentPreferred>& diagnostics() const noexcept { return diagnostics_; }

  AlgebraElement<F> zero(int d) const;
  AlgebraElement<F> one() const { return basis_element(0, 0); }
  AlgebraElement<F> variable(std::size_t j) const;
  AlgebraElement<F> basis_element(int d, std::size_t i) const;

  AlgebraElement<F> normal_form(const Monomial& m) const;
  AlgebraElement<F> normal_form(const FreePolynomial<F>& p, int degree) const;

  AlgebraElement<F> multiply(const AlgebraElement<F>& a, const AlgebraElement<F>& b) const;
  AlgebraElement<F> add(const AlgebraElement<F>& a, const AlgebraElement<F>& b) const;
  AlgebraElement<F> subtract(const AlgebraElement<F>& a, const AlgebraElement<F>& b) const;
  AlgebraElement<F> scale(const Element& c, const AlgebraElement<F>& a) const;
  /// a += c * b
  void accumulate(AlgebraElement<F>& a, const Element& c, const AlgebraElement<F>& b) const;
  bool is_zero(const AlgebraElement<F>& a) const;
  bool equal(const AlgebraElement<F>& a, const AlgebraElement<F>& b) const;

  /// Matrix of multiplication by c from A_d to A_{d + deg c}; columns index
  /// basis(d), rows index basis(d + deg c).
  Matrix<F> multiplication_matrix(const AlgebraElement<F>& c, int d) const;

  /// Pairs (s, t), s <= t, whose product x_s x_t was chosen for the basis of
  /// A_2, in basis order. Degree-2 coordinates index this list.
  const std::vector<Pair>& chosen_pairs() const noexcept { return chosen_pairs_; }
  bool in_S(std::size_t u, std::size_t v) const;
  /// Coefficients of x_u x_v over chosen_pairs(); valid for any ordered pair.
  Vector<F> expansion(std::size_t u, std::size_t v) const;
  /// For every unordered pair (u <= v) outside S: the nonzero coefficients
  /// f^{u,v}_{s,t} of x_u x_v = sum f^{u,v}_{s,t} x_s x_t.
  std::map<Pair, std::map<Pair, Element>> structure_coefficients() const;

  std::string format(const AlgebraElement<F>& a) const;

 private:
  void build_degree(int d);
  const Vector<F>& nf_row(const Monomial& m) const;

  RingPresentation<F> pres_;
  int max_degree_;
  struct Degree {
    std::vector<Monomial> monomials;
    std::map<Monomial, std::size_t> monomial_index;
    std::vector<Monomial> basis;
    std::map<Monomial, std::size_t> basis_index;
    std::size_t relation_dim = 0;
    std::vector<Vector<F>> normal_forms;  // by monomial index
  };
  std::vector<Degree> degrees_;
  std::vector<InconsistentPreferred> diagnostics_;
  std::vector<Pair> chosen_pairs_;
};

/// Signed display form for prime-field elements (p-1 shows as -1).
template <class F>
std::string format_scalar_signed(const F& field, const typename F::Element& a);

}  // namespace koszulcone
