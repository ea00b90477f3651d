#include "koszulcone/resolutions.hpp"

#include <algorithm>
#include <iomanip>
#include <set>
#include <sstream>

namespace koszulcone {

std::string to_string(ComplexKind kind) {
  switch (kind) {
    case ComplexKind::Priddy:
      return "priddy";
    case ComplexKind::SubPriddy:
      return "sub-priddy";
    case ComplexKind::Resolution:
      return "resolution";
  }
  return "unknown";
}

namespace {

template <class F>
AlgebraElement<F> empty_element(const GradedAlgebra<F>& A, int d) {
  if (d < 0 || d > A.max_degree()) return {d, {}};
  return A.zero(d);
}

template <class F>
bool element_zero(const GradedAlgebra<F>& A, const AlgebraElement<F>& a) {
  return a.coords.empty() || A.is_zero(a);
}

template <class F>
PolyMatrix<F> submatrix(const PolyMatrix<F>& P, const std::vector<std::size_t>& rows,
                        const std::vector<std::size_t>& cols) {
  PolyMatrix<F> out(rows.size(), cols.size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols.size(); ++c) out.at(r, c) = P.at(rows[r], cols[c]);
  return out;
}

template <class F>
std::string describe(const BasisElement<F>& e) {
  std::ostringstream os;
  if (e.generator == kNoGenerator)
    os << "e" << e.dual_index;
  else
    os << "m" << e.generator + 1 << "(x)f" << e.dual_index;
  os << "[deg " << e.internal_degree << "]";
  return os.str();
}

// A (x) spaces[l] with the trace differential f -> sum_s x_s (x) f . x_s^*.
template <class F>
ChainComplex<F> koszul_type_complex(const GradedAlgebra<F>& A, const QuadraticDual<F>& dual,
                                    const std::vector<Subspace<F>>& spaces, ComplexKind kind, std::size_t generator,
                                    int shift) {
  ChainComplex<F> c;
  c.kind = kind;
  c.algebra = &A;
  const int top = static_cast<int>(spaces.size()) - 1;
  for (int l = 0; l <= top; ++l) {
    std::vector<BasisElement<F>> mod;
    const auto& B = spaces[static_cast<std::size_t>(l)].basis();
    for (std::size_t r = 0; r < B.rows(); ++r)
      mod.push_back({generator, r, l, shift + l, B.row_vector(r)});
    c.modules.push_back(std::move(mod));
  }
  c.differentials.emplace_back();
  const F& k = A.field();
  for (int l = 1; l <= top; ++l) {
    const auto& src = c.modules[static_cast<std::size_t>(l)];
    const auto& dst = c.modules[static_cast<std::size_t>(l - 1)];
    PolyMatrix<F> d = zero_poly_matrix(A, dst, src);
    const auto& target = spaces[static_cast<std::size_t>(l - 1)];
    for (std::size_t col = 0; col < src.size(); ++col) {
      for (std::size_t s = 0; s < A.num_vars(); ++s) {
        Vector<F> g = dual.act(src[col].dual, l, s);
        if (is_zero_vector<F>(k, g)) continue;
        auto coords = target.coordinates(g);
        if (!coords)
          throw ClosureFailure("contraction of " + describe(src[col]) + " by x" + std::to_string(s + 1) +
                               "^* leaves the degree " + std::to_string(l - 1) + " subspace");
        for (std::size_t r = 0; r < coords->size(); ++r)
          if (!k.is_zero((*coords)[r])) A.accumulate(d.at(r, col), (*coords)[r], A.variable(s));
      }
    }
    c.differentials.push_back(std::move(d));
  }
  return c;
}

// Offsets of the graded piece (F_l)_d: one block of size dim A_{d - deg e}
// per basis element.
template <class F>
std::vector<std::size_t> piece_offsets(const GradedAlgebra<F>& A, const std::vector<BasisElement<F>>& mod, int d) {
  std::vector<std::size_t> off;
  off.reserve(mod.size() + 1);
  std::size_t total = 0;
  for (const auto& e : mod) {
    off.push_back(total);
    total += A.dim(d - e.internal_degree);
  }
  off.push_back(total);
  return off;
}

// Orthogonal projection onto the row span of a basis, through the Gram
// system; cached per subspace.
template <class F>
class Projector {
 public:
  explicit Projector(const Subspace<F>& W) : W_(&W) {
    const auto& B = W.basis();
    Matrix<F> gram = B * B.transpose();
    solver_.emplace(gram);
  }
  // Coordinates of the projection of v with respect to W.basis().
  Vector<F> project(const Vector<F>& v) const {
    Vector<F> rhs = W_->basis().apply(v);
    auto c = solver_->solve(rhs);
    if (!c) throw ClosureFailure("orthogonal projection undefined: degenerate pairing on the target subspace");
    return *c;
  }

 private:
  const Subspace<F>* W_;
  std::optional<MembershipSolver<F>> solver_;
};

template <class F>
class ProjectorCache {
 public:
  const Projector<F>& get(const Subspace<F>& W) {
    auto it = cache_.find(&W);
    if (it == cache_.end()) it = cache_.emplace(&W, Projector<F>(W)).first;
    return it->second;
  }

 private:
  std::map<const Subspace<F>*, Projector<F>> cache_;
};

template <class F>
std::vector<std::vector<BasisElement<F>>> resolution_modules(const ResolutionSetup<F>& setup) {
  const auto& J = setup.ideal();
  std::vector<std::vector<BasisElement<F>>> mods;
  mods.push_back({BasisElement<F>{kNoGenerator, 0, 0, 0, Vector<F>{setup.algebra().field().one()}}});
  for (int l = 1; l <= setup.hmax(); ++l) {
    std::vector<BasisElement<F>> mod;
    for (std::size_t i = 0; i < J.size(); ++i) {
      const auto& B = setup.family(i).components.at(static_cast<std::size_t>(l - 1)).basis();
      for (std::size_t r = 0; r < B.rows(); ++r) mod.push_back({i, r, l - 1, J.degree(i) + l - 1, B.row_vector(r)});
    }
    mods.push_back(std::move(mod));
  }
  return mods;
}

// offsets[i] = index of the first basis element of generator i in a module.
template <class F>
std::vector<std::size_t> generator_offsets(const std::vector<BasisElement<F>>& mod, std::size_t r) {
  std::vector<std::size_t> off(r + 1, mod.size());
  for (std::size_t idx = mod.size(); idx-- > 0;)
    if (mod[idx].generator != kNoGenerator) off[mod[idx].generator] = idx;
  for (std::size_t i = r; i-- > 0;) off[i] = std::min(off[i], off[i + 1]);
  return off;
}

struct PsiTerm {
  std::size_t j;
  std::size_t r;
};

// sum_{t, j < k (or j <= k)} m_j^*(x_t m_k) (m_j (x) pi_j(f . x_t^*)) for f of
// dual degree lf >= 1; one algebra element per (j, r).
template <class F>
std::vector<std::pair<PsiTerm, AlgebraElement<F>>> psi_terms(const ResolutionSetup<F>& setup,
                                                             const DecompositionTable<F>& table, std::size_t k,
                                                             const Vector<F>& f, int lf, bool include_k,
                                                             ProjectorCache<F>& projectors,
                                                             std::vector<std::string>* projections) {
  const auto& A = setup.algebra();
  const auto& J = setup.ideal();
  const auto& dual = setup.dual();
  const F& field = A.field();
  const std::size_t n = A.num_vars();
  std::vector<std::pair<PsiTerm, AlgebraElement<F>>> out;
  std::vector<Vector<F>> contracted(n);
  for (std::size_t t = 0; t < n; ++t) contracted[t] = dual.act(f, lf, t);
  const std::size_t amb = tensor_dim(n, lf - 1);
  const std::size_t jmax = include_k ? k + 1 : k;
  for (std::size_t j = 0; j < jmax; ++j) {
    const int e = J.degree(k) + 1 - J.degree(j);
    if (e < 0) continue;
    const std::size_t nb = A.dim(e);
    std::vector<Vector<F>> T(nb, zero_vector(field, amb));
    bool any = false;
    for (std::size_t t = 0; t < n; ++t) {
      const auto& coef = table.coefficient(j, t, k);
      if (element_zero(A, coef) || is_zero_vector<F>(field, contracted[t])) continue;
      for (std::size_t b = 0; b < nb; ++b) {
        if (field.is_zero(coef.coords[b])) continue;
        axpy<F>(field, T[b], coef.coords[b], contracted[t]);
        any = true;
      }
    }
    if (!any) continue;
    const auto& W = setup.family(j).components.at(static_cast<std::size_t>(lf - 1));
    std::vector<AlgebraElement<F>> entries(W.dim(), A.zero(e));
    for (std::size_t b = 0; b < nb; ++b) {
      if (is_zero_vector<F>(field, T[b])) continue;
      Vector<F> coords;
      if (auto c = W.coordinates(T[b])) {
        coords = std::move(*c);
      } else {
        coords = projectors.get(W).project(T[b]);
        if (projections)
          projections->push_back("generator m" + std::to_string(k + 1) + " onto m" + std::to_string(j + 1) +
                                 " at dual degree " + std::to_string(lf - 1) + ", coefficient " +
                                 format_monomial(A.basis(e)[b], A.var_names()));
      }
      for (std::size_t r = 0; r < coords.size(); ++r)
        if (!field.is_zero(coords[r])) entries[r].coords[b] = field.add(entries[r].coords[b], coords[r]);
    }
    for (std::size_t r = 0; r < entries.size(); ++r)
      if (!A.is_zero(entries[r])) out.push_back({PsiTerm{j, r}, std::move(entries[r])});
  }
  return out;
}

template <class F>
std::optional<std::string> check_d2(const ChainComplex<F>& c) {
  const auto& A = *c.algebra;
  for (int l = 2; l <= c.top(); ++l) {
    auto P = multiply(A, c.differentials[static_cast<std::size_t>(l - 1)], c.differentials[static_cast<std::size_t>(l)],
                      c.modules[static_cast<std::size_t>(l - 2)], c.modules[static_cast<std::size_t>(l)]);
    for (std::size_t r = 0; r < P.rows; ++r)
      for (std::size_t col = 0; col < P.cols; ++col)
        if (!element_zero(A, P.at(r, col)))
          return "d" + std::to_string(l - 1) + "*d" + std::to_string(l) + " has entry " + A.format(P.at(r, col)) +
                 " at row " + describe(c.modules[static_cast<std::size_t>(l - 2)][r]) + ", column " +
                 describe(c.modules[static_cast<std::size_t>(l)][col]);
  }
  return std::nullopt;
}

template <class F>
std::optional<std::string> check_minimal(const ChainComplex<F>& c) {
  const auto& A = *c.algebra;
  for (int l = 1; l <= c.top(); ++l) {
    const auto& d = c.differentials[static_cast<std::size_t>(l)];
    for (std::size_t r = 0; r < d.rows; ++r)
      for (std::size_t col = 0; col < d.cols; ++col) {
        const auto& e = d.at(r, col);
        if (e.degree <= 0 && !element_zero(A, e))
          return "d" + std::to_string(l) + " has unit entry " + A.format(e) + " at column " +
                 describe(c.modules[static_cast<std::size_t>(l)][col]);
      }
  }
  return std::nullopt;
}

}  // namespace

template <class F>
PolyMatrix<F> zero_poly_matrix(const GradedAlgebra<F>& A, const std::vector<BasisElement<F>>& rows,
                               const std::vector<BasisElement<F>>& cols) {
  PolyMatrix<F> P(rows.size(), cols.size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols.size(); ++c)
      P.at(r, c) = empty_element(A, cols[c].internal_degree - rows[r].internal_degree);
  return P;
}

template <class F>
PolyMatrix<F> multiply(const GradedAlgebra<F>& A, const PolyMatrix<F>& P, const PolyMatrix<F>& Q,
                       const std::vector<BasisElement<F>>& rows, const std::vector<BasisElement<F>>& cols) {
  if (P.cols != Q.rows) throw std::invalid_argument("poly matrix product dimension mismatch");
  PolyMatrix<F> out = zero_poly_matrix(A, rows, cols);
  const F& k = A.field();
  for (std::size_t r = 0; r < P.rows; ++r)
    for (std::size_t m = 0; m < P.cols; ++m) {
      const auto& a = P.at(r, m);
      if (element_zero(A, a)) continue;
      for (std::size_t c = 0; c < Q.cols; ++c) {
        const auto& b = Q.at(m, c);
        if (element_zero(A, b)) continue;
        auto& target = out.at(r, c);
        if (target.coords.empty()) continue;  // degree beyond the cutoff
        A.accumulate(target, k.one(), A.multiply(a, b));
      }
    }
  return out;
}

template <class F>
bool is_zero(const GradedAlgebra<F>& A, const PolyMatrix<F>& P) {
  return std::all_of(P.entries.begin(), P.entries.end(), [&](const auto& e) { return element_zero(A, e); });
}

template <class F>
ChainComplex<F> ChainComplex<F>::restrict_generators(std::size_t limit) const {
  ChainComplex<F> out;
  out.kind = kind;
  out.algebra = algebra;
  std::vector<std::vector<std::size_t>> keep;
  for (const auto& mod : modules) {
    std::vector<std::size_t> idx;
    std::vector<BasisElement<F>> kept;
    for (std::size_t i = 0; i < mod.size(); ++i)
      if (mod[i].generator == kNoGenerator || mod[i].generator < limit) {
        idx.push_back(i);
        kept.push_back(mod[i]);
      }
    keep.push_back(std::move(idx));
    out.modules.push_back(std::move(kept));
  }
  out.differentials.emplace_back();
  for (std::size_t l = 1; l < modules.size(); ++l)
    out.differentials.push_back(submatrix(differentials[l], keep[l - 1], keep[l]));
  return out;
}

template <class F>
ResolutionSetup<F>::ResolutionSetup(const MonomialIdeal<F>& J, const QuadraticDual<F>& dual, int H, int D)
    : J_(&J), dual_(&dual), H_(H), D_(D) {
  if (H < 0) throw std::invalid_argument("homological bound must be nonnegative");
  if (dual.max_degree() < H - 1)
    throw std::invalid_argument("dual computed to degree " + std::to_string(dual.max_degree()) + ", need " +
                                std::to_string(H - 1));
  lq_ = check_linear_quotients(J, D);
  if (!lq_.passed) {
    std::string msg = "ideal does not have linear quotients by variables:";
    for (std::size_t i = 0; i < lq_.colons.size(); ++i) {
      const auto& c = lq_.colons[i];
      if (c.passed()) continue;
      msg += " (J_" + std::to_string(i) + " : m" + std::to_string(i + 1) + ")";
      msg += c.coordinate() ? " needs a generator in degree " + std::to_string(*c.fails_at)
                            : std::string(" has a non-variable linear form");
    }
    throw NotLinearQuotients(msg);
  }
  for (std::size_t i = 0; i < J.size(); ++i) {
    E_.push_back(lq_.colons[i].vars);
    families_.push_back(quotient_dual_family(dual, E_.back(), H - 1));
  }
}

template <class F>
ChainComplex<F> priddy_complex(const GradedAlgebra<F>& A, const QuadraticDual<F>& dual, int H) {
  std::vector<Subspace<F>> spaces;
  for (int l = 0; l <= H; ++l) spaces.push_back(dual.component(l));
  return koszul_type_complex(A, dual, spaces, ComplexKind::Priddy, kNoGenerator, 0);
}

template <class F>
ChainComplex<F> sub_priddy_complex(const GradedAlgebra<F>& A, const QuadraticDual<F>& dual, const IndexSet& E,
                                   int H) {
  std::vector<Subspace<F>> spaces;
  for (int l = 0; l <= H; ++l) spaces.push_back(dual.quotient_component(E, l));
  return koszul_type_complex(A, dual, spaces, ComplexKind::SubPriddy, kNoGenerator, 0);
}

template <class F>
std::size_t graded_piece_dim(const ChainComplex<F>& c, int l, int d) {
  if (l < 0 || l > c.top()) return 0;
  return piece_offsets(*c.algebra, c.modules[static_cast<std::size_t>(l)], d).back();
}

template <class F>
Matrix<F> differential_block(const ChainComplex<F>& c, int l, int d) {
  const auto& A = *c.algebra;
  const auto& src = c.modules.at(static_cast<std::size_t>(l));
  const auto& dst = c.modules.at(static_cast<std::size_t>(l - 1));
  auto co = piece_offsets(A, src, d);
  auto ro = piece_offsets(A, dst, d);
  Matrix<F> M(A.field(), ro.back(), co.back());
  const auto& P = c.differentials.at(static_cast<std::size_t>(l));
  for (std::size_t col = 0; col < src.size(); ++col) {
    const int sd = d - src[col].internal_degree;
    if (sd < 0) continue;
    for (std::size_t r = 0; r < dst.size(); ++r) {
      const auto& e = P.at(r, col);
      if (element_zero(A, e)) continue;
      Matrix<F> mult = A.multiplication_matrix(e, sd);
      for (std::size_t i = 0; i < mult.rows(); ++i)
        for (std::size_t j = 0; j < mult.cols(); ++j) M(ro[r] + i, co[col] + j) = mult(i, j);
    }
  }
  return M;
}

template <class F>
ChainComplex<F> iterated_mapping_cone(const ResolutionSetup<F>& setup) {
  const auto& A = setup.algebra();
  const auto& J = setup.ideal();
  const F& field = A.field();
  const int H = setup.hmax();

  ChainComplex<F> Fc;
  Fc.kind = ComplexKind::Resolution;
  Fc.algebra = &A;
  Fc.modules.assign(static_cast<std::size_t>(H) + 1, {});
  Fc.modules[0].push_back({kNoGenerator, 0, 0, 0, Vector<F>{field.one()}});
  Fc.differentials.assign(static_cast<std::size_t>(H) + 1, PolyMatrix<F>());
  for (int l = 1; l <= H; ++l) Fc.differentials[static_cast<std::size_t>(l)] = PolyMatrix<F>(Fc.rank(l - 1), 0);

  for (std::size_t k = 0; k < J.size(); ++k) {
    const int dk = J.degree(k);
    ChainComplex<F> K =
        koszul_type_complex(A, setup.dual(), setup.family(k).components, ComplexKind::SubPriddy, k, dk);
    // psi[i] : K_i -> F_i
    std::vector<PolyMatrix<F>> psi;
    psi.push_back(zero_poly_matrix(A, Fc.modules[0], K.modules[0]));
    for (std::size_t c = 0; c < K.modules[0].size(); ++c) psi[0].at(0, c) = A.normal_form(J.generator(k));
    for (int i = 1; i <= H - 1; ++i) {
      const auto& Ki = K.modules[static_cast<std::size_t>(i)];
      const auto& Fi = Fc.modules[static_cast<std::size_t>(i)];
      const auto& Fprev = Fc.modules[static_cast<std::size_t>(i - 1)];
      PolyMatrix<F> Y = multiply(A, psi[static_cast<std::size_t>(i - 1)], K.differentials[static_cast<std::size_t>(i)],
                                 Fprev, Ki);
      PolyMatrix<F> X = zero_poly_matrix(A, Fi, Ki);
      const int d = dk + i;
      std::optional<MembershipSolver<F>> solver;
      auto ro = piece_offsets(A, Fprev, d);
      auto co = piece_offsets(A, Fi, d);
      for (std::size_t c = 0; c < Ki.size(); ++c) {
        Vector<F> y = zero_vector(field, ro.back());
        bool nonzero = false;
        for (std::size_t r = 0; r < Fprev.size(); ++r) {
          const auto& e = Y.at(r, c);
          if (element_zero(A, e)) continue;
          for (std::size_t b = 0; b < e.coords.size(); ++b) y[ro[r] + b] = e.coords[b];
          nonzero = true;
        }
        if (!nonzero) continue;
        if (!solver) solver.emplace(differential_block(Fc, i, d).transpose());
        auto x = co.back() == 0 ? std::nullopt : solver->solve(y);
        if (!x)
          throw LiftingFailure("comparison map for m" + std::to_string(k + 1) + " does not lift in homological degree " +
                               std::to_string(i) + " at " + describe(Ki[c]));
        for (std::size_t r = 0; r < Fi.size(); ++r) {
          auto& e = X.at(r, c);
          for (std::size_t b = 0; b < e.coords.size(); ++b) e.coords[b] = (*x)[co[r] + b];
        }
      }
      psi.push_back(std::move(X));
    }
    for (std::size_t i = 0; i < psi.size(); ++i) {
      const auto& P = psi[i];
      for (std::size_t r = 0; r < P.rows; ++r)
        for (std::size_t c = 0; c < P.cols; ++c)
          if (P.at(r, c).degree <= 0 && !element_zero(A, P.at(r, c)))
            throw NonMinimalCone("comparison map for m" + std::to_string(k + 1) + " has a unit entry in degree " +
                                 std::to_string(i));
    }

    ChainComplex<F> next;
    next.kind = ComplexKind::Resolution;
    next.algebra = &A;
    next.modules.push_back(Fc.modules[0]);
    for (int l = 1; l <= H; ++l) {
      auto mod = Fc.modules[static_cast<std::size_t>(l)];
      for (const auto& e : K.modules[static_cast<std::size_t>(l - 1)]) mod.push_back(e);
      next.modules.push_back(std::move(mod));
    }
    next.differentials.emplace_back();
    for (int l = 1; l <= H; ++l) {
      const auto& rows = next.modules[static_cast<std::size_t>(l - 1)];
      const auto& cols = next.modules[static_cast<std::size_t>(l)];
      PolyMatrix<F> D = zero_poly_matrix(A, rows, cols);
      const std::size_t fr = Fc.rank(l - 1), fc = Fc.rank(l);
      const auto& old = Fc.differentials[static_cast<std::size_t>(l)];
      for (std::size_t r = 0; r < old.rows; ++r)
        for (std::size_t c = 0; c < old.cols; ++c) D.at(r, c) = old.at(r, c);
      const auto& P = psi[static_cast<std::size_t>(l - 1)];
      for (std::size_t r = 0; r < P.rows; ++r)
        for (std::size_t c = 0; c < P.cols; ++c) D.at(r, fc + c) = P.at(r, c);
      if (l >= 2) {
        const auto& dK = K.differentials[static_cast<std::size_t>(l - 1)];
        for (std::size_t r = 0; r < dK.rows; ++r)
          for (std::size_t c = 0; c < dK.cols; ++c)
            if (!element_zero(A, dK.at(r, c))) D.at(fr + r, fc + c) = A.scale(field.neg(field.one()), dK.at(r, c));
      }
      next.differentials.push_back(std::move(D));
    }
    Fc = std::move(next);
  }
  return Fc;
}

template <class F>
ClosedFormResult<F> closed_form_resolution(const ResolutionSetup<F>& setup, const DecompositionTable<F>& table,
                                           const ClosedFormOptions& opts) {
  const auto& A = setup.algebra();
  const auto& J = setup.ideal();
  const F& field = A.field();
  const int H = setup.hmax();
  if (opts.require_regular) {
    auto rep = check_regular_ordering(J, table, setup.dual(), opts.regular);
    if (!rep.passed) {
      std::string msg = "ordering is not regular";
      if (!rep.violations.empty())
        msg += ": condition " + rep.violations.front().condition + " fails at " + rep.violations.front().witness;
      throw NotRegular(msg);
    }
  }

  ClosedFormResult<F> result;
  auto& C = result.complex;
  C.kind = ComplexKind::Resolution;
  C.algebra = &A;
  C.modules = resolution_modules(setup);
  C.differentials.emplace_back();
  ProjectorCache<F> projectors;

  for (int l = 1; l <= H; ++l) {
    const auto& src = C.modules[static_cast<std::size_t>(l)];
    const auto& dst = C.modules[static_cast<std::size_t>(l - 1)];
    PolyMatrix<F> D = zero_poly_matrix(A, dst, src);
    if (l == 1) {
      for (std::size_t c = 0; c < src.size(); ++c) D.at(0, c) = A.normal_form(J.generator(src[c].generator));
      C.differentials.push_back(std::move(D));
      continue;
    }
    auto off = generator_offsets(dst, J.size());
    for (std::size_t c = 0; c < src.size(); ++c) {
      const std::size_t k = src[c].generator;
      const auto& target = setup.family(k).components.at(static_cast<std::size_t>(l - 2));
      for (std::size_t s = 0; s < A.num_vars(); ++s) {
        Vector<F> g = setup.dual().act(src[c].dual, l - 1, s);
        if (is_zero_vector<F>(field, g)) continue;
        auto coords = target.coordinates(g);
        if (!coords)
          throw ClosureFailure("contraction of " + describe(src[c]) + " leaves (B^" + std::to_string(k + 1) + ")^*");
        for (std::size_t r = 0; r < coords->size(); ++r)
          if (!field.is_zero((*coords)[r]))
            A.accumulate(D.at(off[k] + r, c), field.neg((*coords)[r]), A.variable(s));
      }
      for (auto& [term, elem] :
           psi_terms(setup, table, k, src[c].dual, l - 1, opts.literal_inner_sum, projectors, &result.projections))
        A.accumulate(D.at(off[term.j] + term.r, c), field.one(), elem);
    }
    C.differentials.push_back(std::move(D));
  }

  if (!opts.literal_inner_sum)
    if (auto w = check_d2(C)) throw RegularOrderingViolation("closed-form differential squares to nonzero: " + *w);
  return result;
}

template <class F>
PolyMatrix<F> comparison_map_psi(const ResolutionSetup<F>& setup, const DecompositionTable<F>& table, std::size_t k,
                                 int l, std::vector<std::string>* projections) {
  const auto& A = setup.algebra();
  const auto& J = setup.ideal();
  auto mods = resolution_modules(setup);
  std::vector<BasisElement<F>> rows;
  for (const auto& e : mods.at(static_cast<std::size_t>(l)))
    if (e.generator == kNoGenerator || e.generator < k) rows.push_back(e);
  std::vector<BasisElement<F>> cols;
  const auto& W = setup.family(k).components.at(static_cast<std::size_t>(l));
  for (std::size_t r = 0; r < W.dim(); ++r) cols.push_back({k, r, l, J.degree(k) + l, W.basis().row_vector(r)});
  PolyMatrix<F> P = zero_poly_matrix(A, rows, cols);
  if (l == 0) {
    for (std::size_t c = 0; c < cols.size(); ++c) P.at(0, c) = A.normal_form(J.generator(k));
    return P;
  }
  auto off = generator_offsets(rows, J.size());
  ProjectorCache<F> projectors;
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (auto& [term, elem] : psi_terms(setup, table, k, cols[c].dual, l, false, projectors, projections))
      A.accumulate(P.at(off[term.j] + term.r, c), A.field().one(), elem);
  return P;
}

template <class F>
std::optional<std::string> verify_psi_chain_map(const ResolutionSetup<F>& setup, const DecompositionTable<F>& table,
                                                const ChainComplex<F>& resolution, std::size_t k, int L) {
  const auto& A = setup.algebra();
  ChainComplex<F> Fk = resolution.restrict_generators(k);
  ChainComplex<F> K = koszul_type_complex(A, setup.dual(), setup.family(k).components, ComplexKind::SubPriddy, k,
                                          setup.ideal().degree(k));
  L = std::min({L, Fk.top(), K.top()});
  PolyMatrix<F> prev = comparison_map_psi(setup, table, k, 0);
  for (int l = 1; l <= L; ++l) {
    PolyMatrix<F> cur = comparison_map_psi(setup, table, k, l);
    const auto& rows = Fk.modules[static_cast<std::size_t>(l - 1)];
    const auto& cols = K.modules[static_cast<std::size_t>(l)];
    auto lhs = multiply(A, Fk.differentials[static_cast<std::size_t>(l)], cur, rows, cols);
    auto rhs = multiply(A, prev, K.differentials[static_cast<std::size_t>(l)], rows, cols);
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c < cols.size(); ++c)
        if (!A.equal(lhs.at(r, c), rhs.at(r, c)))
          return "m" + std::to_string(k + 1) + ", degree " + std::to_string(l) + ": d psi gives " +
                 A.format(lhs.at(r, c)) + " but psi d gives " + A.format(rhs.at(r, c)) + " at row " +
                 describe(rows[r]) + ", column " + describe(cols[c]);
    prev = std::move(cur);
  }
  return std::nullopt;
}

template <class F>
ChainComplex<F> linear_strand(const ChainComplex<F>& c) {
  if (auto w = check_minimal(c)) throw NotMinimal(*w);
  std::vector<std::vector<std::size_t>> keep;
  for (int l = 0; l <= c.top(); ++l) {
    const auto& mod = c.modules[static_cast<std::size_t>(l)];
    std::vector<std::size_t> idx;
    if (c.kind == ComplexKind::Resolution) {
      if (l == 0) {
        for (std::size_t i = 0; i < mod.size(); ++i) idx.push_back(i);
      } else if (c.top() >= 1 && !c.modules[1].empty()) {
        int delta = c.modules[1][0].internal_degree;
        for (const auto& e : c.modules[1]) delta = std::min(delta, e.internal_degree);
        for (std::size_t i = 0; i < mod.size(); ++i)
          if (mod[i].internal_degree == delta + l - 1) idx.push_back(i);
      }
    } else {
      const int base = c.modules.empty() || c.modules[0].empty() ? 0 : c.modules[0][0].internal_degree;
      for (std::size_t i = 0; i < mod.size(); ++i)
        if (mod[i].internal_degree == base + l) idx.push_back(i);
    }
    keep.push_back(std::move(idx));
  }
  ChainComplex<F> out;
  out.kind = c.kind;
  out.algebra = c.algebra;
  for (int l = 0; l <= c.top(); ++l) {
    std::vector<BasisElement<F>> mod;
    for (std::size_t i : keep[static_cast<std::size_t>(l)]) mod.push_back(c.modules[static_cast<std::size_t>(l)][i]);
    out.modules.push_back(std::move(mod));
  }
  out.differentials.emplace_back();
  for (int l = 1; l <= c.top(); ++l)
    out.differentials.push_back(submatrix(c.differentials[static_cast<std::size_t>(l)],
                                          keep[static_cast<std::size_t>(l - 1)], keep[static_cast<std::size_t>(l)]));
  return out;
}

template <class F>
VerifyReport verify_complex(const ChainComplex<F>& c, const VerifyOptions& opts) {
  VerifyReport rep;
  const auto& A = *c.algebra;
  if (auto w = check_d2(c)) {
    rep.d2_zero = false;
    rep.d2_witness = *w;
  }
  if (auto w = check_minimal(c)) {
    rep.minimal = false;
    rep.minimal_witness = *w;
  }
  int min_internal = std::numeric_limits<int>::max();
  for (const auto& mod : c.modules)
    for (const auto& e : mod) min_internal = std::min(min_internal, e.internal_degree);
  if (min_internal == std::numeric_limits<int>::max()) min_internal = 0;
  const int dmax = std::min(opts.D, A.max_degree() + min_internal);
  rep.checked_degree = dmax;
  if (!rep.d2_zero) return rep;

  std::map<std::pair<int, int>, std::size_t> rank_cache;
  auto block_rank = [&](int l, int d) -> std::size_t {
    if (l < 1 || l > c.top()) return 0;
    auto key = std::make_pair(l, d);
    auto it = rank_cache.find(key);
    if (it != rank_cache.end()) return it->second;
    std::size_t r = rank(differential_block(c, l, d));
    rank_cache[key] = r;
    return r;
  };
  for (int i = 1; i < c.top(); ++i) {
    std::vector<int> degrees;
    if (opts.window_offset) {
      for (int j = 0; j <= 1; ++j) degrees.push_back(i + *opts.window_offset + j);
    } else {
      for (int d = 0; d <= dmax; ++d) degrees.push_back(d);
    }
    for (int d : degrees) {
      if (d > dmax) continue;
      const std::size_t dim = graded_piece_dim(c, i, d);
      if (dim == 0) continue;
      const std::size_t h = dim - block_rank(i, d) - block_rank(i + 1, d);
      if (h != 0) rep.homology[{i, d}] = h;
    }
  }
  return rep;
}

template <class F>
VerifyReport koszulness_certificate(const GradedAlgebra<F>& A, const QuadraticDual<F>& dual, int H, int D) {
  return verify_complex(priddy_complex(A, dual, H), VerifyOptions{D, std::nullopt});
}

std::size_t BettiTable::total(int l) const {
  std::size_t t = 0;
  for (const auto& [key, v] : entries)
    if (key.first == l) t += v;
  return t;
}

namespace {

void finish_betti(BettiTable& t) {
  t.regularity = 0;
  std::set<int> rows;
  for (const auto& [key, v] : t.entries) {
    if (v == 0 || key.first == 0) continue;
    t.regularity = std::max(t.regularity, key.second - key.first);
    rows.insert(key.second - key.first);
  }
  t.linear = rows.size() <= 1;
}

}  // namespace

template <class F>
BettiTable betti_table(const ResolutionSetup<F>& setup) {
  BettiTable t;
  t.hmax = setup.hmax();
  t.entries[{0, 0}] = 1;
  const auto& J = setup.ideal();
  for (int l = 1; l <= setup.hmax(); ++l)
    for (std::size_t i = 0; i < J.size(); ++i) {
      const std::size_t b = setup.family(i).dim(l - 1);
      if (b) t.entries[{l, J.degree(i) + l - 1}] += b;
    }
  finish_betti(t);
  return t;
}

template <class F>
BettiTable betti_from_complex(const ChainComplex<F>& c) {
  BettiTable t;
  t.hmax = c.top();
  for (int l = 0; l <= c.top(); ++l)
    for (const auto& e : c.modules[static_cast<std::size_t>(l)]) t.entries[{l, e.internal_degree}] += 1;
  finish_betti(t);
  return t;
}

std::string format_betti(const BettiTable& t, BettiLevel level) {
  // cells[(column, row)]
  std::map<std::pair<int, int>, std::size_t> cells;
  const int first = 0;
  int last = level == BettiLevel::Ideal ? t.hmax - 1 : t.hmax;
  int rmin = std::numeric_limits<int>::max(), rmax = std::numeric_limits<int>::min();
  for (const auto& [key, v] : t.entries) {
    if (v == 0) continue;
    int col = key.first, j = key.second;
    if (level == BettiLevel::Ideal) {
      if (col == 0) continue;
      col -= 1;
    }
    const int row = j - col;
    cells[{col, row}] = v;
    rmin = std::min(rmin, row);
    rmax = std::max(rmax, row);
  }
  if (cells.empty()) return "(zero)\n";
  std::vector<std::size_t> width;
  for (int col = first; col <= last; ++col) {
    std::size_t total = 0, w = std::to_string(col).size();
    for (int row = rmin; row <= rmax; ++row) {
      auto it = cells.find({col, row});
      if (it != cells.end()) {
        total += it->second;
        w = std::max(w, std::to_string(it->second).size());
      }
    }
    w = std::max(w, std::to_string(total).size());
    width.push_back(w);
  }
  std::size_t label = std::max<std::size_t>(6, std::to_string(rmax).size() + 1);
  std::ostringstream os;
  os << std::string(label, ' ');
  for (int col = first; col <= last; ++col)
    os << ' ' << std::setw(static_cast<int>(width[static_cast<std::size_t>(col - first)])) << col;
  os << "\n" << std::setw(static_cast<int>(label)) << "total:";
  for (int col = first; col <= last; ++col) {
    std::size_t total = 0;
    for (int row = rmin; row <= rmax; ++row) {
      auto it = cells.find({col, row});
      if (it != cells.end()) total += it->second;
    }
    os << ' ' << std::setw(static_cast<int>(width[static_cast<std::size_t>(col - first)])) << total;
  }
  os << "\n";
  for (int row = rmin; row <= rmax; ++row) {
    os << std::setw(static_cast<int>(label)) << (std::to_string(row) + ":");
    for (int col = first; col <= last; ++col) {
      auto it = cells.find({col, row});
      os << ' ' << std::setw(static_cast<int>(width[static_cast<std::size_t>(col - first)]))
         << (it == cells.end() ? std::string(".") : std::to_string(it->second));
    }
    os << "\n";
  }
  return os.str();
}

#define KOSZULCONE_INSTANTIATE_RESOLUTIONS(F)                                                                   \
  template struct ChainComplex<F>;                                                                              \
  template PolyMatrix<F> zero_poly_matrix<F>(const GradedAlgebra<F>&, const std::vector<BasisElement<F>>&,      \
                                             const std::vector<BasisElement<F>>&);                              \
  template PolyMatrix<F> multiply<F>(const GradedAlgebra<F>&, const PolyMatrix<F>&, const PolyMatrix<F>&,       \
                                     const std::vector<BasisElement<F>>&, const std::vector<BasisElement<F>>&); \
  template bool is_zero<F>(const GradedAlgebra<F>&, const PolyMatrix<F>&);                                      \
  template class ResolutionSetup<F>;                                                                            \
  template ChainComplex<F> priddy_complex<F>(const GradedAlgebra<F>&, const QuadraticDual<F>&, int);            \
  template ChainComplex<F> sub_priddy_complex<F>(const GradedAlgebra<F>&, const QuadraticDual<F>&,              \
                                                 const IndexSet&, int);                                         \
  template ChainComplex<F> iterated_mapping_cone<F>(const ResolutionSetup<F>&);                                 \
  template ClosedFormResult<F> closed_form_resolution<F>(const ResolutionSetup<F>&,                             \
                                                         const DecompositionTable<F>&, const ClosedFormOptions&);\
  template PolyMatrix<F> comparison_map_psi<F>(const ResolutionSetup<F>&, const DecompositionTable<F>&,          \
                                               std::size_t, int, std::vector<std::string>*);                    \
  template std::optional<std::string> verify_psi_chain_map<F>(const ResolutionSetup<F>&,                       \
                                                              const DecompositionTable<F>&,                     \
                                                              const ChainComplex<F>&, std::size_t, int);        \
  template ChainComplex<F> linear_strand<F>(const ChainComplex<F>&);                                            \
  template VerifyReport verify_complex<F>(const ChainComplex<F>&, const VerifyOptions&);                        \
  template VerifyReport koszulness_certificate<F>(const GradedAlgebra<F>&, const QuadraticDual<F>&, int, int);  \
  template std::size_t graded_piece_dim<F>(const ChainComplex<F>&, int, int);                                   \
  template Matrix<F> differential_block<F>(const ChainComplex<F>&, int, int);                                   \
  template BettiTable betti_table<F>(const ResolutionSetup<F>&);                                                \
  template BettiTable betti_from_complex<F>(const ChainComplex<F>&);

KOSZULCONE_INSTANTIATE_RESOLUTIONS(PrimeField)
KOSZULCONE_INSTANTIATE_RESOLUTIONS(RationalField)

}  // namespace koszulcone
