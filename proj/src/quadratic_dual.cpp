#include "koszulcone/quadratic_dual.hpp"

namespace koszulcone {

std::size_t tensor_dim(std::size_t n, int l) {
  std::size_t d = 1;
  for (int i = 0; i < l; ++i) d *= n;
  return d;
}

std::string format_index_set(const IndexSet& E) {
  std::string s = "{";
  for (auto it = E.begin(); it != E.end(); ++it) {
    if (it != E.begin()) s += ",";
    s += std::to_string(*it + 1);
  }
  return s + "}";
}

template <class F>
Subspace<F> relation_space(const GradedAlgebra<F>& A) {
  const F& k = A.field();
  const std::size_t n = A.num_vars();
  std::vector<Vector<F>> rows;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) {
      Vector<F> r = zero_vector(k, n * n);
      r[u * n + v] = k.one();
      r[v * n + u] = k.neg(k.one());
      rows.push_back(std::move(r));
    }
  for (const auto& rel : A.presentation().relations) {
    Vector<F> r = zero_vector(k, n * n);
    for (const auto& [mono, coeff] : rel) {
      auto s = mono.support();
      std::size_t u = s.front(), v = s.size() == 1 ? s.front() : s.back();
      r[u * n + v] = k.add(r[u * n + v], coeff);
    }
    rows.push_back(std::move(r));
  }
  return Subspace<F>::span(k, n * n, rows);
}

template <class F>
std::vector<Pair> non_s_ordered_pairs(const GradedAlgebra<F>& A) {
  std::vector<Pair> out;
  const std::size_t n = A.num_vars();
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      if (u > v || !A.in_S(u, v)) out.emplace_back(u, v);
  return out;
}

template <class F>
std::vector<Vector<F>> labeled_deg2_basis(const GradedAlgebra<F>& A) {
  const F& k = A.field();
  const std::size_t n = A.num_vars();
  const auto& S = A.chosen_pairs();
  std::vector<Vector<F>> out;
  for (const auto& [u, v] : non_s_ordered_pairs(A)) {
    Vector<F> q = zero_vector(k, n * n);
    q[u * n + v] = k.one();
    auto e = A.expansion(u, v);
    for (std::size_t i = 0; i < S.size(); ++i) {
      auto [s, t] = S[i];
      q[s * n + t] = k.sub(q[s * n + t], e[i]);
    }
    out.push_back(std::move(q));
  }
  return out;
}

template <class F>
std::map<Pair, std::map<Pair, typename F::Element>> dual_deg2_relations(const GradedAlgebra<F>& A) {
  const F& k = A.field();
  const auto& S = A.chosen_pairs();
  std::map<Pair, std::map<Pair, typename F::Element>> out;
  for (const auto& st : S) out[st];
  for (const auto& uv : non_s_ordered_pairs(A)) {
    auto e = A.expansion(uv.first, uv.second);
    for (std::size_t i = 0; i < S.size(); ++i)
      if (!k.is_zero(e[i])) out[S[i]][uv] = k.neg(e[i]);
  }
  return out;
}

template <class F>
Vector<F> contract(const F& field, std::size_t n, int l, const Vector<F>& f, std::size_t j, ActionSide side) {
  if (l < 1) throw std::invalid_argument("cannot contract a degree-0 tensor");
  const std::size_t inner = tensor_dim(n, l - 1);
  Vector<F> out(inner, field.zero());
  if (side == ActionSide::First) {
    for (std::size_t w = 0; w < inner; ++w) out[w] = f[j * inner + w];
  } else {
    for (std::size_t w = 0; w < inner; ++w) out[w] = f[w * n + j];
  }
  return out;
}

template <class F>
QuadraticDual<F>::QuadraticDual(const GradedAlgebra<F>& A, int max_degree, std::size_t ambient_limit)
    : field_(A.field()), n_(A.num_vars()), max_degree_(max_degree), ambient_limit_(ambient_limit) {
  if (max_degree_ < 0) max_degree_ = 0;
  q2_ = koszulcone::relation_space(A);
  q2_perp_ = q2_.annihilator();
  components_.reserve(static_cast<std::size_t>(max_degree_) + 1);
  components_.push_back(Subspace<F>::full(field_, 1));
  if (max_degree_ >= 1) components_.push_back(Subspace<F>::full(field_, n_));
  if (max_degree_ >= 2) components_.push_back(q2_);

  // D_l = (D_{l-1} (x) V) ∩ (V^{(x) l-2} (x) Q2). Unknowns c_{r,b} give the
  // candidate sum_{r,b} c_{r,b} D_r (x) e_b.
  for (int l = 3; l <= max_degree_; ++l) {
    check_ambient(l);
    const Subspace<F>& prev = components_.back();
    const std::size_t R = prev.dim();
    const std::size_t unknowns = R * n_;
    const std::size_t words = tensor_dim(n_, l - 2);
    Matrix<F> eqs(field_, 0, unknowns);
    Vector<F> row(unknowns, field_.zero());
    for (std::size_t w = 0; w < words; ++w)
      for (std::size_t p = 0; p < q2_perp_.dim(); ++p) {
        std::fill(row.begin(), row.end(), field_.zero());
        bool any = false;
        for (std::size_t a = 0; a < n_; ++a)
          for (std::size_t b = 0; b < n_; ++b) {
            const Element& phi = q2_perp_.basis()(p, a * n_ + b);
            if (field_.is_zero(phi)) continue;
            for (std::size_t r = 0; r < R; ++r) {
              const Element& d = prev.basis()(r, w * n_ + a);
              if (field_.is_zero(d)) continue;
              row[r * n_ + b] = field_.fma(row[r * n_ + b], phi, d);
              any = true;
            }
          }
        if (any && !is_zero_vector<F>(field_, row)) eqs.append_row(row);
      }
    Subspace<F> sol = kernel(eqs);
    const std::size_t amb = tensor_dim(n_, l);
    std::vector<Vector<F>> rows;
    for (std::size_t s = 0; s < sol.dim(); ++s) {
      Vector<F> t(amb, field_.zero());
      for (std::size_t r = 0; r < R; ++r)
        for (std::size_t b = 0; b < n_; ++b) {
          const Element& c = sol.basis()(s, r * n_ + b);
          if (field_.is_zero(c)) continue;
          for (std::size_t w = 0; w < tensor_dim(n_, l - 1); ++w) {
            const Element& d = prev.basis()(r, w);
            if (!field_.is_zero(d)) t[w * n_ + b] = field_.fma(t[w * n_ + b], c, d);
          }
        }
      rows.push_back(std::move(t));
    }
    components_.push_back(Subspace<F>::span(field_, amb, rows));
  }

  if (side_works(A, ActionSide::First))
    side_ = ActionSide::First;
  else if (side_works(A, ActionSide::Last))
    side_ = ActionSide::Last;
  else
    throw CalibrationFailure("neither slot contraction gives a complex with d^2 = 0");
}

template <class F>
void QuadraticDual<F>::check_ambient(int l) const {
  std::size_t d = 1;
  for (int i = 0; i < l; ++i) {
    d *= n_;
    if (d > ambient_limit_)
      throw AmbientTooLarge("tensor degree " + std::to_string(l) + " exceeds the ambient dimension limit " +
                            std::to_string(ambient_limit_));
  }
}

template <class F>
const Subspace<F>& QuadraticDual<F>::component(int l) const {
  if (l > max_degree_)
    throw DegreeOverflow("dual degree " + std::to_string(l) + " exceeds cutoff " + std::to_string(max_degree_));
  if (l < 0) {
    static const Subspace<F> empty;
    return empty;
  }
  return components_[static_cast<std::size_t>(l)];
}

template <class F>
Subspace<F> QuadraticDual<F>::component_by_intersection(int l) const {
  if (l <= 2) return component(l);
  check_ambient(l);
  const std::size_t amb = tensor_dim(n_, l);
  std::vector<Subspace<F>> pieces;
  for (int j = 0; j <= l - 2; ++j) {
    // V^{(x) j} (x) Q2 (x) V^{(x) l-j-2}
    const std::size_t left = tensor_dim(n_, j), right = tensor_dim(n_, l - j - 2);
    std::vector<Vector<F>> rows;
    for (std::size_t a = 0; a < left; ++a)
      for (std::size_t q = 0; q < q2_.dim(); ++q)
        for (std::size_t c = 0; c < right; ++c) {
          Vector<F> t(amb, field_.zero());
          for (std::size_t m = 0; m < n_ * n_; ++m) t[(a * n_ * n_ + m) * right + c] = q2_.basis()(q, m);
          rows.push_back(std::move(t));
        }
    pieces.push_back(Subspace<F>::span(field_, amb, rows));
  }
  return intersect_subspaces<F>(pieces, field_, amb);
}

template <class F>
bool QuadraticDual<F>::side_works(const GradedAlgebra<F>& A, ActionSide side) const {
  const int top = std::min(max_degree_, 3);
  // d^2 = 0 on the Priddy complex: sum_{i,j} x_i x_j (x) (f.x_j^*).x_i^* = 0.
  for (int l = 2; l <= top; ++l) {
    const Subspace<F>& D = component(l);
    const std::size_t inner = tensor_dim(n_, l - 2);
    for (std::size_t r = 0; r < D.dim(); ++r) {
      Vector<F> f = D.basis().row_vector(r);
      Matrix<F> acc(field_, A.dim(2), inner);
      for (std::size_t j = 0; j < n_; ++j) {
        Vector<F> g = act(f, l, j, side);
        for (std::size_t i = 0; i < n_; ++i) {
          Vector<F> h = act(g, l - 1, i, side);
          if (is_zero_vector<F>(field_, h)) continue;
          Vector<F> e = A.expansion(i, j);
          for (std::size_t a = 0; a < e.size(); ++a) {
            if (field_.is_zero(e[a])) continue;
            axpy<F>(field_, acc.row(a), e[a], h);
          }
        }
      }
      if (!acc.is_zero()) return false;
    }
  }
  // Closure of the quotient duals for E = {1..m}.
  for (std::size_t m = 1; m < n_; ++m) {
    IndexSet E;
    for (std::size_t i = 0; i < m; ++i) E.insert(i);
    for (int l = 1; l <= top; ++l) {
      Subspace<F> B = quotient_component(E, l);
      Subspace<F> Bprev = quotient_component(E, l - 1);
      for (std::size_t r = 0; r < B.dim(); ++r)
        for (std::size_t s = 0; s < n_; ++s)
          if (!Bprev.contains(act(B.basis().row_vector(r), l, s, side))) return false;
    }
  }
  return true;
}

template <class F>
Subspace<F> QuadraticDual<F>::quotient_component(const IndexSet& E, int l) const {
  const Subspace<F>& D = component(l);
  if (l <= 0) return D;
  std::vector<std::size_t> cols;
  const std::size_t amb = tensor_dim(n_, l);
  for (std::size_t c = 0; c < amb; ++c)
    if (!E.count(c % n_)) cols.push_back(c);
  if (cols.empty() || D.dim() == 0) return D;
  // Left kernel of D restricted to the forbidden columns.
  Matrix<F> t(field_, cols.size(), D.dim());
  for (std::size_t i = 0; i < cols.size(); ++i)
    for (std::size_t r = 0; r < D.dim(); ++r) t(i, r) = D.basis()(r, cols[i]);
  Subspace<F> coeffs = kernel(t);
  std::vector<Vector<F>> rows;
  for (std::size_t s = 0; s < coeffs.dim(); ++s) rows.push_back(D.combine(coeffs.basis().row(s)));
  return Subspace<F>::span(field_, amb, rows);
}

template <class F>
bool QuadraticDual<F>::word_nonzero(const std::vector<std::size_t>& word) const {
  const Subspace<F>& D = component(static_cast<int>(word.size()));
  std::size_t idx = 0;
  for (std::size_t s : word) idx = idx * n_ + s;
  for (std::size_t r = 0; r < D.dim(); ++r)
    if (!field_.is_zero(D.basis()(r, idx))) return true;
  return false;
}

template <class F>
ContainmentResult QuadraticDual<F>::left_ideal_contains(const IndexSet& E_src, const std::vector<std::size_t>& prefix,
                                                        const IndexSet& E_dst, int l_max) const {
  // prefix . a . x_u^* pairs with f in (B_dst)^*_d as f[prefix, a, u]; the
  // containment holds in degree d iff all such entries vanish for u not in E_src.
  ContainmentResult res;
  const int p = static_cast<int>(prefix.size());
  std::size_t prefix_index = 0;
  for (std::size_t s : prefix) prefix_index = prefix_index * n_ + s;
  res.checked_to = std::min(l_max, max_degree_);
  for (int d = p + 1; d <= res.checked_to; ++d) {
    Subspace<F> B = quotient_component(E_dst, d);
    const std::size_t tail = tensor_dim(n_, d - p);
    bool ok = true;
    for (std::size_t r = 0; r < B.dim() && ok; ++r)
      for (std::size_t w = 0; w < tail && ok; ++w) {
        if (E_src.count(w % n_)) continue;
        if (!field_.is_zero(B.basis()(r, prefix_index * tail + w))) ok = false;
      }
    if (!ok) {
      res.holds = false;
      res.fails_at = d;
      return res;
    }
  }
  return res;
}

template <class F>
QuotientDualFamily<F> quotient_dual_family(const QuadraticDual<F>& dual, const IndexSet& E, int max_degree) {
  QuotientDualFamily<F> fam;
  fam.E = E;
  for (int l = 0; l <= max_degree; ++l) fam.components.push_back(dual.quotient_component(E, l));
  return fam;
}

#define KOSZULCONE_INSTANTIATE_DUAL(F)                                                                    \
  template Subspace<F> relation_space<F>(const GradedAlgebra<F>&);                                        \
  template std::vector<Pair> non_s_ordered_pairs<F>(const GradedAlgebra<F>&);                             \
  template std::vector<Vector<F>> labeled_deg2_basis<F>(const GradedAlgebra<F>&);                         \
  template std::map<Pair, std::map<Pair, F::Element>> dual_deg2_relations<F>(const GradedAlgebra<F>&);    \
  template Vector<F> contract<F>(const F&, std::size_t, int, const Vector<F>&, std::size_t, ActionSide);   \
  template class QuadraticDual<F>;                                                                        \
  template QuotientDualFamily<F> quotient_dual_family<F>(const QuadraticDual<F>&, const IndexSet&, int);

KOSZULCONE_INSTANTIATE_DUAL(PrimeField)
KOSZULCONE_INSTANTIATE_DUAL(RationalField)

}  // namespace koszulcone
