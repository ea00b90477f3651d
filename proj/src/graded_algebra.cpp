#include "koszulcone/graded_algebra.hpp"

#include <set>

namespace koszulcone {

template <class F>
void RingPresentation<F>::validate() const {
  if (var_names.empty()) throw InvalidPresentation("at least one variable is required");
  std::set<std::string> seen;
  for (const auto& v : var_names) {
    if (v.empty()) throw InvalidPresentation("empty variable name");
    if (!seen.insert(v).second) throw InvalidPresentation("duplicate variable name '" + v + "'");
  }
  for (std::size_t r = 0; r < relations.size(); ++r)
    for (const auto& [mono, coeff] : relations[r]) {
      if (mono.num_vars() != num_vars())
        throw InvalidPresentation("relation " + std::to_string(r + 1) + " has the wrong number of variables");
      if (mono.degree() != 2)
        throw InvalidPresentation("relation " + std::to_string(r + 1) + " is not homogeneous of degree 2");
    }
  for (const auto& m : preferred)
    if (m.num_vars() != num_vars()) throw InvalidPresentation("preferred monomial has the wrong number of variables");
}

template <class F>
GradedAlgebra<F>::GradedAlgebra(RingPresentation<F> presentation, int max_degree)
    : pres_(std::move(presentation)), max_degree_(max_degree) {
  pres_.validate();
  if (max_degree_ < 2) max_degree_ = 2;
  degrees_.resize(static_cast<std::size_t>(max_degree_) + 1);
  for (int d = 0; d <= max_degree_; ++d) build_degree(d);

  const auto& b2 = degrees_[2].basis;
  for (const auto& m : b2) {
    auto s = m.support();
    chosen_pairs_.emplace_back(s.front(), s.size() == 1 ? s.front() : s.back());
  }
}

template <class F>
void GradedAlgebra<F>::build_degree(int d) {
  const F& k = field();
  const std::size_t n = num_vars();
  Degree& deg = degrees_[static_cast<std::size_t>(d)];
  deg.monomials = monomials_of_degree(n, d);
  for (std::size_t i = 0; i < deg.monomials.size(); ++i) deg.monomial_index.emplace(deg.monomials[i], i);
  const std::size_t N = deg.monomials.size();

  // I_d spanned by mu * rho over degree d-2 monomials mu.
  EchelonAccumulator<F> ideal(k, N);
  if (d >= 2) {
    for (const auto& mu : monomials_of_degree(n, d - 2))
      for (const auto& rel : pres_.relations) {
        Vector<F> row = zero_vector(k, N);
        for (const auto& [mono, coeff] : rel) {
          auto& slot = row[deg.monomial_index.at(mu * mono)];
          slot = k.add(slot, coeff);
        }
        ideal.insert(row);
      }
  }
  deg.relation_dim = ideal.dim();
  Subspace<F> ideal_space = ideal.span();

  // Greedy selection: preferred monomials of this degree first, then lex.
  EchelonAccumulator<F> chosen = ideal;
  std::vector<bool> taken(N, false);
  auto unit = [&](std::size_t i) {
    Vector<F> v = zero_vector(k, N);
    v[i] = k.one();
    return v;
  };
  for (const auto& p : pres_.preferred) {
    if (p.degree() != d) continue;
    std::size_t i = deg.monomial_index.at(p);
    if (taken[i]) continue;
    if (chosen.insert(unit(i))) {
      taken[i] = true;
    } else {
      diagnostics_.push_back({p, "preferred monomial " + format_monomial(p, pres_.var_names) +
                                     " is dependent on earlier choices in degree " + std::to_string(d) +
                                     "; skipped"});
    }
  }
  for (std::size_t i = 0; i < N; ++i) {
    if (taken[i]) continue;
    if (chosen.insert(unit(i))) taken[i] = true;
  }
  for (std::size_t i = 0; i < N; ++i)
    if (taken[i]) {
      deg.basis_index.emplace(deg.monomials[i], deg.basis.size());
      deg.basis.push_back(deg.monomials[i]);
    }

  // Normal forms: with non-basis columns ordered first, the RREF of I_d has
  // its pivots exactly on the non-basis columns.
  const std::size_t B = deg.basis.size();
  deg.normal_forms.assign(N, zero_vector(k, B));
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < N; ++i)
    if (!taken[i]) order.push_back(i);
  const std::size_t nonbasis = order.size();
  for (std::size_t i = 0; i < N; ++i)
    if (taken[i]) order.push_back(i);

  Matrix<F> reordered(k, ideal_space.dim(), N);
  for (std::size_t r = 0; r < ideal_space.dim(); ++r)
    for (std::size_t c = 0; c < N; ++c) reordered(r, c) = ideal_space.basis()(r, order[c]);
  auto pivots = reduce_to_rref(reordered);
  if (pivots.size() != nonbasis) throw std::logic_error("normal form elimination has unexpected rank");
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    if (pivots[r] != r) throw std::logic_error("normal form pivots are not on the non-basis monomials");
    Vector<F>& nf = deg.normal_forms[order[r]];
    for (std::size_t c = nonbasis; c < N; ++c) nf[c - nonbasis] = k.neg(reordered(r, c));
  }
  for (std::size_t b = 0; b < B; ++b) deg.normal_forms[deg.monomial_index.at(deg.basis[b])][b] = k.one();
}

template <class F>
std::size_t GradedAlgebra<F>::dim(int d) const {
  if (d < 0) return 0;
  return basis(d).size();
}

template <class F>
const std::vector<Monomial>& GradedAlgebra<F>::basis(int d) const {
  if (d > max_degree_)
    throw DegreeOverflow("degree " + std::to_string(d) + " exceeds cutoff " + std::to_string(max_degree_));
  static const std::vector<Monomial> empty;
  if (d < 0) return empty;
  return degrees_[static_cast<std::size_t>(d)].basis;
}

template <class F>
const std::vector<Monomial>& GradedAlgebra<F>::monomials(int d) const {
  if (d > max_degree_)
    throw DegreeOverflow("degree " + std::to_string(d) + " exceeds cutoff " + std::to_string(max_degree_));
  static const std::vector<Monomial> empty;
  if (d < 0) return empty;
  return degrees_[static_cast<std::size_t>(d)].monomials;
}

template <class F>
std::size_t GradedAlgebra<F>::relation_ideal_dim(int d) const {
  if (d < 0) return 0;
  basis(d);
  return degrees_[static_cast<std::size_t>(d)].relation_dim;
}

template <class F>
std::optional<std::size_t> GradedAlgebra<F>::basis_index(const Monomial& m) const {
  const int d = m.degree();
  basis(d);
  const auto& idx = degrees_[static_cast<std::size_t>(d)].basis_index;
  auto it = idx.find(m);
  if (it == idx.end()) return std::nullopt;
  return it->second;
}

template <class F>
AlgebraElement<F> GradedAlgebra<F>::zero(int d) const {
  return {d, zero_vector(field(), dim(d))};
}

template <class F>
AlgebraElement<F> GradedAlgebra<F>::variable(std::size_t j) const {
  return normal_form(Monomial::variable(num_vars(), j));
}

template <class F>
AlgebraElement<F> GradedAlgebra<F>::basis_element(int d, std::size_t i) const {
  AlgebraElement<F> e = zero(d);
  e.coords.at(i) = field().one();
  return e;
}

template <class F>
const Vector<F>& GradedAlgebra<F>::nf_row(const Monomial& m) const {
  const int d = m.degree();
  basis(d);
  const Degree& deg = degrees_[static_cast<std::size_t>(d)];
  return deg.normal_forms[deg.monomial_index.at(m)];
}

template <class F>
AlgebraElement<F> GradedAlgebra<F>::normal_form(const Monomial& m) const {
  return {m.degree(), nf_row(m)};
}

template <class F>
AlgebraElement<F> GradedAlgebra<F>::normal_form(const FreePolynomial<F>& p, int degree) const {
  AlgebraElement<F> out = zero(degree);
  for (const auto& [mono, coeff] : p) {
    if (mono.degree() != degree) throw std::invalid_argument("polynomial is not homogeneous of the stated degree");
    axpy<F>(field(), out.coords, coeff, nf_row(mono));
  }
  return out;
}

template <class F>
AlgebraElement<F> GradedAlgebra<F>::multiply(const AlgebraElement<F>& a, const AlgebraElement<F>& b) const {
  const int d = a.degree + b.degree;
  AlgebraElement<F> out = zero(d);
  if (a.degree < 0 || b.degree < 0) return out;
  const auto& ba = basis(a.degree);
  const auto& bb = basis(b.degree);
  const F& k = field();
  for (std::size_t i = 0; i < ba.size(); ++i) {
    if (k.is_zero(a.coords[i])) continue;
    for (std::size_t j = 0; j < bb.size(); ++j) {
      if (k.is_zero(b.coords[j])) continue;
      axpy<F>(k, out.coords, k.mul(a.coords[i], b.coords[j]), nf_row(ba[i] * bb[j]));
    }
  }
  return out;
}

template <class F>
AlgebraElement<F> GradedAlgebra<F>::add(const AlgebraElement<F>& a, const AlgebraElement<F>& b) const {
  AlgebraElement<F> out = a;
  accumulate(out, field().one(), b);
  return out;
}

template <class F>
AlgebraElement<F> GradedAlgebra<F>::subtract(const AlgebraElement<F>& a, const AlgebraElement<F>& b) const {
  AlgebraElement<F> out = a;
  accumulate(out, field().neg(field().one()), b);
  return out;
}

template <class F>
AlgebraElement<F> GradedAlgebra<F>::scale(const Element& c, const AlgebraElement<F>& a) const {
  AlgebraElement<F> out = a;
  for (auto& x : out.coords) x = field().mul(c, x);
  return out;
}

template <class F>
void GradedAlgebra<F>::accumulate(AlgebraElement<F>& a, const Element& c, const AlgebraElement<F>& b) const {
  if (a.degree != b.degree) throw std::invalid_argument("adding elements of different degrees");
  axpy<F>(field(), a.coords, c, b.coords);
}

template <class F>
bool GradedAlgebra<F>::is_zero(const AlgebraElement<F>& a) const {
  return is_zero_vector<F>(field(), a.coords);
}

template <class F>
bool GradedAlgebra<F>::equal(const AlgebraElement<F>& a, const AlgebraElement<F>& b) const {
  if (a.degree != b.degree) return is_zero(a) && is_zero(b);
  for (std::size_t i = 0; i < a.coords.size(); ++i)
    if (!field().equal(a.coords[i], b.coords[i])) return false;
  return true;
}

template <class F>
Matrix<F> GradedAlgebra<F>::multiplication_matrix(const AlgebraElement<F>& c, int d) const {
  const std::size_t cols = dim(d);
  Matrix<F> m(field(), dim(d + c.degree), cols);
  for (std::size_t j = 0; j < cols; ++j) {
    auto prod = multiply(c, basis_element(d, j));
    for (std::size_t i = 0; i < prod.coords.size(); ++i) m(i, j) = prod.coords[i];
  }
  return m;
}

template <class F>
bool GradedAlgebra<F>::in_S(std::size_t u, std::size_t v) const {
  if (u > v) std::swap(u, v);
  for (const auto& p : chosen_pairs_)
    if (p.first == u && p.second == v) return true;
  return false;
}

template <class F>
Vector<F> GradedAlgebra<F>::expansion(std::size_t u, std::size_t v) const {
  const std::size_t n = num_vars();
  return nf_row(Monomial::variable(n, u) * Monomial::variable(n, v));
}

template <class F>
std::map<Pair, std::map<Pair, typename F::Element>> GradedAlgebra<F>::structure_coefficients() const {
  std::map<Pair, std::map<Pair, Element>> out;
  const std::size_t n = num_vars();
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u; v < n; ++v) {
      if (in_S(u, v)) continue;
      auto& entry = out[{u, v}];
      auto e = expansion(u, v);
      for (std::size_t i = 0; i < e.size(); ++i)
        if (!field().is_zero(e[i])) entry.emplace(chosen_pairs_[i], e[i]);
    }
  return out;
}

template <class F>
std::string format_scalar_signed(const F& field, const typename F::Element& a) {
  if constexpr (F::is_rational) {
    return field.format(a);
  } else {
    const auto p = field.characteristic();
    if (a > p / 2) return "-" + std::to_string(p - a);
    return std::to_string(a);
  }
}

template <class F>
std::string GradedAlgebra<F>::format(const AlgebraElement<F>& a) const {
  if (a.degree < 0) return "0";
  const auto& b = basis(a.degree);
  std::string s;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (field().is_zero(a.coords[i])) continue;
    std::string c = format_scalar_signed(field(), a.coords[i]);
    bool negative = !c.empty() && c[0] == '-';
    if (negative) c.erase(0, 1);
    if (s.empty())
      s += negative ? "-" : "";
    else
      s += negative ? " - " : " + ";
    std::string mono = format_monomial(b[i], var_names());
    if (c == "1")
      s += mono;
    else if (mono == "1")
      s += c;
    else
      s += c + "*" + mono;
  }
  return s.empty() ? "0" : s;
}

template struct RingPresentation<PrimeField>;
template struct RingPresentation<RationalField>;
template class GradedAlgebra<PrimeField>;
template class GradedAlgebra<RationalField>;
template std::string format_scalar_signed<PrimeField>(const PrimeField&, const PrimeField::Element&);
template std::string format_scalar_signed<RationalField>(const RationalField&, const RationalField::Element&);

}  // namespace koszulcone
