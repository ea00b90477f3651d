#include "koszulcone/monomial_ideals.hpp"

#include <algorithm>
#include <functional>

namespace koszulcone {

namespace {

std::string show_set(const IndexSet& E) { return format_index_set(E); }

template <class F>
Subspace<F> variable_ideal_space(const GradedAlgebra<F>& A, const IndexSet& vars, int d) {
  EchelonAccumulator<F> acc(A.field(), A.dim(d));
  if (d >= 1)
    for (std::size_t y : vars)
      for (std::size_t b = 0; b < A.dim(d - 1); ++b) acc.insert(A.multiply(A.variable(y), A.basis_element(d - 1, b)).coords);
  return acc.span();
}

// dim (J : m)_d where `ideal` is the relevant graded piece of J in degree d + deg m.
template <class F>
std::size_t colon_dim(const GradedAlgebra<F>& A, const AlgebraElement<F>& m, const Subspace<F>& ideal, int d) {
  EchelonAccumulator<F> acc(A.field(), A.dim(d + m.degree));
  for (std::size_t r = 0; r < ideal.dim(); ++r) acc.insert(ideal.basis().row(r));
  const std::size_t base = acc.dim();
  for (std::size_t b = 0; b < A.dim(d); ++b) acc.insert(A.multiply(m, A.basis_element(d, b)).coords);
  return A.dim(d) - (acc.dim() - base);
}

template <class F>
ColonReport colon_report(const GradedAlgebra<F>& A, const AlgebraElement<F>& m,
                         const std::function<Subspace<F>(int)>& ideal_in_degree, int D) {
  ColonReport rep;
  const std::size_t n = A.num_vars();
  const Subspace<F> deg1 = ideal_in_degree(m.degree + 1);
  // Linear part: kernel of A_1 -> A_{1+e} / J_{1+e}.
  Matrix<F> images(A.field(), A.dim(m.degree + 1), n);
  for (std::size_t j = 0; j < n; ++j) {
    auto res = deg1.residual(A.multiply(A.variable(j), m).coords);
    if (is_zero_vector<F>(A.field(), res)) rep.vars.insert(j);
    for (std::size_t i = 0; i < res.size(); ++i) images(i, j) = res[i];
  }
  const Subspace<F> linear = kernel(images);
  rep.linear_dim = linear.dim();
  std::vector<AlgebraElement<F>> linear_forms;
  for (std::size_t r = 0; r < linear.dim(); ++r) linear_forms.push_back({1, linear.basis().row_vector(r)});

  const int top = std::min(D, A.max_degree() - m.degree);
  rep.checked_to = std::min(top, 1);
  for (int d = 2; d <= top; ++d) {
    rep.checked_to = d;
    EchelonAccumulator<F> generated(A.field(), A.dim(d));
    for (const auto& z : linear_forms)
      for (std::size_t b = 0; b < A.dim(d - 1); ++b) generated.insert(A.multiply(z, A.basis_element(d - 1, b)).coords);
    if (colon_dim(A, m, ideal_in_degree(d + m.degree), d) != generated.dim()) {
      rep.fails_at = d;
      break;
    }
  }
  return rep;
}

}  // namespace

template <class F>
MonomialIdeal<F>::MonomialIdeal(const GradedAlgebra<F>& A, std::vector<Monomial> generators)
    : A_(&A), gens_(std::move(generators)) {
  if (gens_.empty()) throw InvalidIdeal("the ideal needs at least one generator");
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    const Monomial& m = gens_[i];
    if (m.num_vars() != A.num_vars()) throw InvalidIdeal("generator has the wrong number of variables");
    if (m.degree() == 0) throw InvalidIdeal("the unit ideal is not allowed");
    if (m.degree() > A.max_degree()) throw DegreeOverflow("generator degree exceeds the algebra cutoff");
    if (!A.is_basis_monomial(m))
      throw InvalidIdeal("generator " + format_monomial(m, A.var_names()) + " is not a chosen basis monomial");
    if (i > 0 && m.degree() < gens_[i - 1].degree())
      throw InvalidIdeal("generator degrees must be nondecreasing");
  }
  const int top = A.max_degree();
  spaces_.resize(gens_.size() + 1);
  std::vector<EchelonAccumulator<F>> acc;
  for (int d = 0; d <= top; ++d) acc.emplace_back(A.field(), A.dim(d));
  for (int d = 0; d <= top; ++d) spaces_[0].push_back(acc[static_cast<std::size_t>(d)].span());
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    const auto m = A.normal_form(gens_[i]);
    if (acc[static_cast<std::size_t>(m.degree)].reduce(m.coords) == zero_vector(A.field(), A.dim(m.degree)))
      throw InvalidIdeal("generator " + format_monomial(gens_[i], A.var_names()) +
                         " lies in the ideal of the earlier generators");
    for (int d = m.degree; d <= top; ++d)
      for (std::size_t b = 0; b < A.dim(d - m.degree); ++b)
        acc[static_cast<std::size_t>(d)].insert(A.multiply(m, A.basis_element(d - m.degree, b)).coords);
    for (int d = 0; d <= top; ++d) spaces_[i + 1].push_back(acc[static_cast<std::size_t>(d)].span());
  }
}

template <class F>
int MonomialIdeal<F>::min_degree() const {
  return gens_.front().degree();
}

template <class F>
int MonomialIdeal<F>::max_degree() const {
  return gens_.back().degree();
}

template <class F>
const Subspace<F>& MonomialIdeal<F>::membership_space(std::size_t prefix, int d) const {
  if (d > A_->max_degree())
    throw DegreeOverflow("degree " + std::to_string(d) + " exceeds cutoff " + std::to_string(A_->max_degree()));
  if (d < 0) {
    static const Subspace<F> empty;
    return empty;
  }
  return spaces_.at(prefix)[static_cast<std::size_t>(d)];
}

template <class F>
bool MonomialIdeal<F>::contains(const AlgebraElement<F>& v, std::size_t prefix) const {
  if (v.degree < 0) return true;
  return membership_space(prefix, v.degree).contains(v.coords);
}

template <class F>
IndexSet MonomialIdeal<F>::supp(std::size_t i) const {
  auto s = gens_.at(i).support();
  return IndexSet(s.begin(), s.end());
}

template <class F>
IndexSet MonomialIdeal<F>::supp() const {
  IndexSet out;
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    auto s = supp(i);
    out.insert(s.begin(), s.end());
  }
  return out;
}

template <class F>
std::vector<AlgebraElement<F>> MonomialIdeal<F>::decompose(const AlgebraElement<F>& v, std::size_t bound) const {
  const GradedAlgebra<F>& A = *A_;
  const F& k = A.field();
  std::vector<AlgebraElement<F>> out;
  for (std::size_t i = 0; i < gens_.size(); ++i) out.push_back(A.zero(v.degree - gens_[i].degree()));
  AlgebraElement<F> rest = v;
  bound = std::min(bound, gens_.size());
  while (!A.is_zero(rest)) {
    std::size_t j = 0;
    while (j < bound && !contains(rest, j + 1)) ++j;
    if (j == bound) throw NotInIdeal("element " + A.format(rest) + " is not in the ideal");
    // unknowns: basis of (J_{j})_e, then m_j * b for b in basis order
    const int e = rest.degree;
    const int c = e - gens_[j].degree();
    const Subspace<F>& lower = membership_space(j, e);
    const auto mj = A.normal_form(gens_[j]);
    Matrix<F> G = lower.basis();
    for (std::size_t b = 0; b < A.dim(c); ++b) G.append_row(A.multiply(mj, A.basis_element(c, b)).coords);
    auto sol = solve_membership<F>(rest.coords, G);
    if (!sol) throw std::logic_error("decomposition system is inconsistent");
    AlgebraElement<F> a = A.zero(c);
    for (std::size_t b = 0; b < A.dim(c); ++b) a.coords[b] = (*sol)[lower.dim() + b];
    auto am = A.multiply(a, mj);
    if (contains(am, j)) throw std::logic_error("decomposition coefficient lands in the earlier prefix");
    out[j] = a;
    A.accumulate(rest, k.neg(k.one()), am);
    bound = j;
  }
  return out;
}

template <class F>
DecompositionTable<F>::DecompositionTable(const MonomialIdeal<F>& J) {
  const GradedAlgebra<F>& A = J.algebra();
  const std::size_t n = A.num_vars();
  for (std::size_t k = 0; k < J.size(); ++k) {
    const auto mk = A.normal_form(J.generator(k));
    if (mk.degree + 1 > A.max_degree()) continue;
    for (std::size_t s = 0; s < n; ++s) {
      auto v = A.multiply(A.variable(s), mk);
      if (!J.contains(v, k)) {
        std::vector<AlgebraElement<F>> coeffs;
        for (std::size_t i = 0; i < J.size(); ++i) coeffs.push_back(A.zero(v.degree - J.degree(i)));
        coeffs[k] = A.variable(s);
        single_.emplace(std::make_pair(s, k), std::move(coeffs));
      } else {
        single_.emplace(std::make_pair(s, k), J.decompose(v, k));
      }
    }
    if (mk.degree + 2 > A.max_degree()) continue;
    for (std::size_t s = 0; s < n; ++s)
      for (std::size_t t = 0; t < n; ++t) {
        auto v = A.multiply(A.multiply(A.variable(s), A.variable(t)), mk);
        pair_.emplace(std::make_tuple(s, t, k), J.decompose(v, k + 1));
      }
  }
}

template <class F>
const std::vector<AlgebraElement<F>>* DecompositionTable<F>::pair(std::size_t s, std::size_t t, std::size_t k) const {
  auto it = pair_.find({s, t, k});
  return it == pair_.end() ? nullptr : &it->second;
}

template <class F>
ColonReport colon_vars(const MonomialIdeal<F>& J, std::size_t i, int D) {
  const GradedAlgebra<F>& A = J.algebra();
  return colon_report<F>(A, A.normal_form(J.generator(i)),
                         [&](int d) { return J.membership_space(i, d); }, D);
}

template <class F>
ColonReport annihilator_vars(const GradedAlgebra<F>& A, const Monomial& m, int D) {
  return colon_report<F>(A, A.normal_form(m), [&](int d) { return Subspace<F>(A.field(), A.dim(d)); }, D);
}

template <class F>
LinearQuotientsReport check_linear_quotients(const MonomialIdeal<F>& J, int D) {
  LinearQuotientsReport rep;
  for (std::size_t i = 0; i < J.size(); ++i) {
    rep.colons.push_back(colon_vars(J, i, D));
    if (!rep.colons.back().passed()) rep.passed = false;
  }
  return rep;
}

template <class F>
StronglyKoszulReport check_strongly_koszul(const GradedAlgebra<F>& A, int D, std::size_t subset_bound) {
  StronglyKoszulReport rep;
  const std::size_t n = A.num_vars();
  rep.exhaustive = n <= kExhaustiveVarLimit;
  rep.checked_to = std::min(D, A.max_degree() - 1);
  // Subsets ordered by size, then lexicographically by bitmask.
  std::vector<std::uint64_t> masks;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << std::min<std::size_t>(n, 63)); ++mask) {
    std::size_t size = static_cast<std::size_t>(__builtin_popcountll(mask));
    if (!rep.exhaustive && size > subset_bound) continue;
    masks.push_back(mask);
  }
  std::stable_sort(masks.begin(), masks.end(), [](std::uint64_t a, std::uint64_t b) {
    return __builtin_popcountll(a) < __builtin_popcountll(b);
  });
  for (std::uint64_t mask : masks) {
    IndexSet Y;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1u) Y.insert(i);
    for (std::size_t x = 0; x < n; ++x) {
      if (Y.count(x)) continue;
      ++rep.pairs_checked;
      auto colon = colon_report<F>(A, A.variable(x), [&](int d) { return variable_ideal_space(A, Y, d); }, D);
      if (!colon.coordinate()) {
        rep.passed = false;
        rep.failures.push_back({Y, x, 1});
      }
      if (colon.fails_at) {
        rep.passed = false;
        rep.failures.push_back({Y, x, *colon.fails_at});
      }
    }
  }
  return rep;
}

template <class F>
RegularOrderingReport check_regular_ordering(const MonomialIdeal<F>& J, const DecompositionTable<F>& table,
                                             const QuadraticDual<F>& dual, const RegularOrderingOptions& opts) {
  const GradedAlgebra<F>& A = J.algebra();
  const F& k = A.field();
  const std::size_t n = A.num_vars(), r = J.size();
  const auto& names = A.var_names();
  RegularOrderingReport rep;
  rep.literal_condition1 = opts.literal_condition1;
  rep.literal_condition2b = opts.literal_condition2b;
  rep.checked_to = std::min(opts.D, dual.max_degree());
  auto fail = [&](std::string cond, std::string witness) {
    rep.passed = false;
    rep.violations.push_back({std::move(cond), std::move(witness)});
  };
  auto gen = [&](std::size_t i) { return "m" + std::to_string(i + 1) + "=" + format_monomial(J.generator(i), names); };

  auto lq = check_linear_quotients(J, opts.D);
  if (!lq.passed) {
    for (std::size_t i = 0; i < r; ++i)
      if (!lq.colons[i].passed())
        fail("linear-quotients", gen(i) + (lq.colons[i].coordinate()
                                               ? " colon needs a generator in degree " +
                                                     std::to_string(*lq.colons[i].fails_at)
                                               : " colon has a linear part not spanned by variables"));
    return rep;
  }
  std::vector<IndexSet> E;
  for (const auto& c : lq.colons) E.push_back(c.vars);

  auto x = [&](std::size_t s) { return A.variable(s); };

  // (1)
  const auto& S = A.chosen_pairs();
  for (const auto& [u, v] : non_s_ordered_pairs(A)) {
    auto f = A.expansion(u, v);
    for (std::size_t kk = 0; kk < r; ++kk)
      for (std::size_t j = 0; j <= kk; ++j) {
        auto lhs = A.add(A.multiply(x(u), table.coefficient(j, v, kk)), A.multiply(x(v), table.coefficient(j, u, kk)));
        auto sym = A.zero(lhs.degree), lit = A.zero(lhs.degree);
        bool lit_defined = true;
        for (std::size_t i = 0; i < S.size(); ++i) {
          if (k.is_zero(f[i])) continue;
          auto [s, t] = S[i];
          auto first = A.multiply(x(s), table.coefficient(j, t, kk));
          A.accumulate(sym, f[i], A.add(first, A.multiply(x(t), table.coefficient(j, s, kk))));
          const auto& cj = table.coefficient(j, s, j);
          auto tail = A.multiply(x(t), cj);
          if (tail.degree != first.degree) {
            lit_defined = false;
            continue;
          }
          A.accumulate(lit, f[i], A.add(first, tail));
        }
        bool sym_ok = A.equal(lhs, sym);
        bool lit_ok = lit_defined && A.equal(lhs, lit);
        std::string where = "(u,v)=(" + names[u] + "," + names[v] + "), j=" + std::to_string(j + 1) +
                            ", k=" + std::to_string(kk + 1);
        if (sym_ok != lit_ok) rep.reading_disagreements.push_back(where);
        if (!(opts.literal_condition1 ? lit_ok : sym_ok))
          fail("1", where + ": lhs " + A.format(lhs) + " vs rhs " + A.format(opts.literal_condition1 ? lit : sym));
      }
  }

  // (2)
  for (std::size_t kk = 0; kk < r; ++kk)
    for (std::size_t j = 0; j < kk; ++j)
      for (std::size_t t : E[kk]) {
        if (A.is_zero(table.coefficient(j, t, kk))) continue;
        std::string where = "j=" + std::to_string(j + 1) + ", k=" + std::to_string(kk + 1) + ", t=" + names[t];
        if (!std::includes(E[kk].begin(), E[kk].end(), E[j].begin(), E[j].end()))
          fail("2a", where + ": E_j=" + show_set(E[j]) + " not inside E_k=" + show_set(E[kk]));
        auto single = dual.left_ideal_contains(E[j], {t}, E[kk], rep.checked_to);
        if (single.holds) continue;
        for (std::size_t s = 0; s < n; ++s) {
          auto twice = dual.left_ideal_contains(E[j], {t, s}, E[kk], rep.checked_to);
          if (!twice.holds || !E[kk].count(s)) continue;
          bool witnessed = false;
          for (std::size_t u = 0; u < n && !witnessed; ++u)
            if (!E[j].count(u) && E[kk].count(u) && dual.max_degree() >= 3) witnessed = dual.word_nonzero({t, s, u});
          if (!witnessed) rep.reading_disagreements.push_back("(2b) " + where + ", s=" + names[s]);
          if (witnessed || opts.literal_condition2b) fail("2b", where + ", s=" + names[s]);
        }
      }

  // (3)
  for (std::size_t kk = 0; kk < r; ++kk)
    for (std::size_t s : E[kk])
      for (std::size_t t : E[kk]) {
        const auto* lhs = table.pair(s, t, kk);
        if (!lhs) continue;
        for (std::size_t i = 0; i < kk; ++i) {
          auto rhs = A.zero((*lhs)[i].degree);
          for (std::size_t j = i; j < kk; ++j) {
            auto term = A.multiply(table.coefficient(i, s, j), table.coefficient(j, t, kk));
            if (term.degree == rhs.degree) A.accumulate(rhs, k.one(), term);
          }
          if (!A.equal((*lhs)[i], rhs))
            fail("3", "i=" + std::to_string(i + 1) + ", k=" + std::to_string(kk + 1) + ", s=" + names[s] +
                          ", t=" + names[t] + ": " + A.format((*lhs)[i]) + " vs " + A.format(rhs));
        }
      }
  return rep;
}

template <class F>
StarReport check_star_condition(const MonomialIdeal<F>& J, const LinearQuotientsReport& lq) {
  const GradedAlgebra<F>& A = J.algebra();
  const auto& names = A.var_names();
  StarReport rep;
  for (const auto& rel : A.presentation().relations) {
    if (rel.size() != 1) throw NotMultigraded("relation with more than one term");
    auto s = rel.begin()->first.support();
    rep.relation_support.insert(s.begin(), s.end());
  }
  for (std::size_t i = 0; i < J.size(); ++i) {
    const auto mi = A.normal_form(J.generator(i));
    for (std::size_t y : rep.relation_support) {
      auto v = A.multiply(A.variable(y), mi);
      if (!A.is_zero(v) && J.contains(v, i)) {
        rep.star_holds = false;
        rep.witnesses.push_back("y=" + names[y] + ", m" + std::to_string(i + 1) + "=" +
                                format_monomial(J.generator(i), names) + ": y*m lies in J_" + std::to_string(i) +
                                " and is nonzero");
      }
    }
  }
  // Regular decomposition function: set(g(x_s m_k)) ⊆ set(m_k) for s in set(m_k).
  for (std::size_t kk = 0; kk < J.size(); ++kk) {
    const auto mk = A.normal_form(J.generator(kk));
    for (std::size_t s : lq.colons.at(kk).vars) {
      auto v = A.multiply(A.variable(s), mk);
      if (A.is_zero(v)) continue;
      std::size_t j = 0;
      while (!J.contains(v, j + 1)) ++j;
      const auto& Ej = lq.colons.at(j).vars;
      const auto& Ek = lq.colons.at(kk).vars;
      if (!std::includes(Ek.begin(), Ek.end(), Ej.begin(), Ej.end())) {
        rep.regular_decomposition = false;
        rep.witnesses.push_back("g(" + names[s] + "*m" + std::to_string(kk + 1) + ")=m" + std::to_string(j + 1) +
                                " has set " + show_set(Ej) + " not inside " + show_set(Ek));
      }
    }
  }
  return rep;
}

#define KOSZULCONE_INSTANTIATE_IDEALS(F)                                                                  \
  template class MonomialIdeal<F>;                                                                        \
  template class DecompositionTable<F>;                                                                   \
  template ColonReport colon_vars<F>(const MonomialIdeal<F>&, std::size_t, int);                          \
  template ColonReport annihilator_vars<F>(const GradedAlgebra<F>&, const Monomial&, int);                \
  template LinearQuotientsReport check_linear_quotients<F>(const MonomialIdeal<F>&, int);                 \
  template StronglyKoszulReport check_strongly_koszul<F>(const GradedAlgebra<F>&, int, std::size_t);      \
  template RegularOrderingReport check_regular_ordering<F>(const MonomialIdeal<F>&,                       \
                                                           const DecompositionTable<F>&,                  \
                                                           const QuadraticDual<F>&,                       \
                                                           const RegularOrderingOptions&);                \
  template StarReport check_star_condition<F>(const MonomialIdeal<F>&, const LinearQuotientsReport&);

KOSZULCONE_INSTANTIATE_IDEALS(PrimeField)
KOSZULCONE_INSTANTIATE_IDEALS(RationalField)

}  // namespace koszulcone
