#pragma once

// Free complexes over A with labelled bases: the Priddy complex, its
// sub-complexes A (x) (B_E)^*, iterated mapping cones, the closed-form
// resolution of an ideal with a regular ordering, and exact verification.
//
// A resolution of A/J has F_0 = A and, for l >= 1, basis elements m_i (x) f
// with f running over the echelon basis of (B^i)^*_{l-1}; such an element
// sits in internal degree deg(m_i) + l - 1. Bases are ordered by generator,
// then by dual basis vector.
//
// Mapping cones use cone(psi)_l = F_l (+) K_{l-1} with differential
// (a, b) -> (d a + psi b, -d^K b).

#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "koszulcone/graded_algebra.hpp"
#include "koszulcone/monomial_ideals.hpp"
#include "koszulcone/quadratic_dual.hpp"

namespace koszulcone {

class NotLinearQuotients : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};
class ClosureFailure : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};
class LiftingFailure : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};
class NonMinimalCone : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};
class NotMinimal : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};
class NotRegular : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};
class RegularOrderingViolation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

inline constexpr std::size_t kNoGenerator = std::numeric_limits<std::size_t>::max();

enum class ComplexKind { Priddy, SubPriddy, Resolution };

std::string to_string(ComplexKind kind);

template <class F>
struct BasisElement {
  std::size_t generator = kNoGenerator;
  std::size_t dual_index = 0;
  int dual_degree = 0;
  int internal_degree = 0;
  Vector<F> dual;  // tensor in V^{(x) dual_degree}
};

/// Matrix with entries in A; entry (r, c) is homogeneous of degree
/// internal_degree(c) - internal_degree(r) (an empty element when negative).
template <class F>
struct PolyMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<AlgebraElement<F>> entries;

  PolyMatrix() = default;
  PolyMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), entries(r * c) {}
  AlgebraElement<F>& at(std::size_t r, std::size_t c) { return entries[r * cols + c]; }
  const AlgebraElement<F>& at(std::size_t r, std::size_t c) const { return entries[r * cols + c]; }
};

template <class F>
struct ChainComplex {
  ComplexKind kind = ComplexKind::Resolution;
  const GradedAlgebra<F>* algebra = nullptr;
  std::vector<std::vector<BasisElement<F>>> modules;  // homological degrees 0..top
  std::vector<PolyMatrix<F>> differentials;           // [l]: modules[l] -> modules[l-1]; [0] unused

  int top() const { return static_cast<int>(modules.size()) - 1; }
  std::size_t rank(int l) const {
    return l < 0 || l > top() ? 0 : modules[static_cast<std::size_t>(l)].size();
  }
  /// Keeps F_0 and the basis elements of generators < limit.
  ChainComplex restrict_generators(std::size_t limit) const;
};

/// Zero-initialised poly matrix whose entry degrees follow the labels.
template <class F>
PolyMatrix<F> zero_poly_matrix(const GradedAlgebra<F>& A, const std::vector<BasisElement<F>>& rows,
                               const std::vector<BasisElement<F>>& cols);

/// P * Q with explicit row and column labels of the result.
template <class F>
PolyMatrix<F> multiply(const GradedAlgebra<F>& A, const PolyMatrix<F>& P, const PolyMatrix<F>& Q,
                       const std::vector<BasisElement<F>>& rows, const std::vector<BasisElement<F>>& cols);

template <class F>
bool is_zero(const GradedAlgebra<F>& A, const PolyMatrix<F>& P);

/// Shared inputs for resolving A/J: colon sets E_i and the duals (B^i)^*.
template <class F>
class ResolutionSetup {
 public:
  /// Throws NotLinearQuotients if the colon check fails through degree D.
  ResolutionSetup(const MonomialIdeal<F>& J, const QuadraticDual<F>& dual, int H, int D);

  const MonomialIdeal<F>& ideal() const noexcept { return *J_; }
  const GradedAlgebra<F>& algebra() const noexcept { return J_->algebra(); }
  const QuadraticDual<F>& dual() const noexcept { return *dual_; }
  int hmax() const noexcept { return H_; }
  int dmax() const noexcept { return D_; }
  const LinearQuotientsReport& linear_quotients() const noexcept { return lq_; }
  const IndexSet& E(std::size_t i) const { return E_.at(i); }
  const QuotientDualFamily<F>& family(std::size_t i) const { return families_.at(i); }

 private:
  const MonomialIdeal<F>* J_;
  const QuadraticDual<F>* dual_;
  int H_;
  int D_;
  LinearQuotientsReport lq_;
  std::vector<IndexSet> E_;
  std::vector<QuotientDualFamily<F>> families_;
};

/// A (x) (A^!_l)^* for l = 0..H with the trace differential.
template <class F>
ChainComplex<F> priddy_complex(const GradedAlgebra<F>& A, const QuadraticDual<F>& dual, int H);

/// A (x) (B_E)^*_l for l = 0..H. Throws ClosureFailure if the action leaves
/// the subspaces.
template <class F>
ChainComplex<F> sub_priddy_complex(const GradedAlgebra<F>& A, const QuadraticDual<F>& dual, const IndexSet& E,
                                   int H);

/// Mapping-cone resolution with comparison maps lifted by linear algebra.
template <class F>
ChainComplex<F> iterated_mapping_cone(const ResolutionSetup<F>& setup);

struct ClosedFormOptions {
  /// Let the inner sum run over j <= k (with m_k^*(x_s m_k) = x_s when
  /// x_s m_k is outside J_{k-1}) instead of j < k.
  bool literal_inner_sum = false;
  /// Run check_regular_ordering first and throw NotRegular on failure.
  bool require_regular = true;
  RegularOrderingOptions regular{};
};

template <class F>
struct ClosedFormResult {
  ChainComplex<F> complex;
  /// Terms whose contraction f . x_s^* had a component outside (B^j)^* and
  /// were projected.
  std::vector<std::string> projections;
};

template <class F>
ClosedFormResult<F> closed_form_resolution(const ResolutionSetup<F>& setup, const DecompositionTable<F>& table,
                                           const ClosedFormOptions& opts = {});

/// psi_l : K_l -> F_l for generator k, K = A (x) (B^k)^* shifted by deg m_k and
/// F the closed-form resolution of A/J_{k-1}:
///   psi(m_k (x) f) = sum_{t, j<k} m_j^*(x_t m_k) (m_j (x) f . x_t^*),   psi_0 = m_k.
/// Rows follow F.restrict_generators(k).
template <class F>
PolyMatrix<F> comparison_map_psi(const ResolutionSetup<F>& setup, const DecompositionTable<F>& table, std::size_t k,
                                 int l, std::vector<std::string>* projections = nullptr);

/// Checks d^F psi_l = psi_{l-1} d^K for l = 1..L. Returns a witness on failure.
template <class F>
std::optional<std::string> verify_psi_chain_map(const ResolutionSetup<F>& setup, const DecompositionTable<F>& table,
                                                const ChainComplex<F>& resolution, std::size_t k, int L);

/// Restriction to the linear strand. Throws NotMinimal on a constant entry.
template <class F>
ChainComplex<F> linear_strand(const ChainComplex<F>& c);

struct VerifyOptions {
  int D = 8;
  /// Only internal degrees i + offset + j, j in {0, 1}.
  std::optional<int> window_offset;
};

struct VerifyReport {
  bool d2_zero = true;
  std::string d2_witness;
  bool minimal = true;
  std::string minimal_witness;
  int checked_degree = 0;
  /// H_{i,d} for 1 <= i < top; only nonzero values are listed.
  std::map<std::pair<int, int>, std::size_t> homology;
  bool exact() const { return homology.empty(); }
  bool passed() const { return d2_zero && minimal && exact(); }
};

template <class F>
VerifyReport verify_complex(const ChainComplex<F>& c, const VerifyOptions& opts);

/// Homology of the Priddy complex truncated at H, internal degrees <= D.
/// Vanishing is a bounded certificate; any nonzero group is a witness that A
/// is not Koszul.
template <class F>
VerifyReport koszulness_certificate(const GradedAlgebra<F>& A, const QuadraticDual<F>& dual, int H, int D);

/// dim (F_l)_d and the degree-d block of d_l.
template <class F>
std::size_t graded_piece_dim(const ChainComplex<F>& c, int l, int d);
template <class F>
Matrix<F> differential_block(const ChainComplex<F>& c, int l, int d);

/// Graded Betti numbers of A/J: entries[(l, j)] = beta_{l,j}(A/J).
struct BettiTable {
  std::map<std::pair<int, int>, std::size_t> entries;
  int regularity = 0;
  bool linear = false;
  int hmax = 0;

  std::size_t at(int l, int j) const {
    auto it = entries.find({l, j});
    return it == entries.end() ? 0 : it->second;
  }
  /// beta_{i,j}(J) = beta_{i+1,j}(A/J).
  std::size_t ideal_at(int i, int j) const { return at(i + 1, j); }
  std::size_t total(int l) const;
};

template <class F>
BettiTable betti_table(const ResolutionSetup<F>& setup);

/// Counts basis labels of a resolution complex.
template <class F>
BettiTable betti_from_complex(const ChainComplex<F>& c);

enum class BettiLevel { Ideal, Quotient };

/// Aligned grid: columns homological degree, rows q = j - l.
std::string format_betti(const BettiTable& t, BettiLevel level);

}  // namespace koszulcone
