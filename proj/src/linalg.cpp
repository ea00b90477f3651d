#include "koszulcone/linalg.hpp"

#include <numeric>

namespace koszulcone {

namespace {

// Gauss-Jordan elimination choosing pivots only among the first `col_limit`
// columns; row operations act on whole rows. Zero rows are kept. Returns the
// pivot columns; pivot row i holds pivot_columns[i].
template <class F>
std::vector<std::size_t> gauss_jordan(Matrix<F>& m, std::size_t col_limit) {
  const F& field = m.field();
  std::vector<std::size_t> pivots;
  std::vector<std::size_t> support;
  std::size_t r = 0;
  for (std::size_t col = 0; col < col_limit && r < m.rows(); ++col) {
    std::size_t found = m.rows();
    for (std::size_t i = r; i < m.rows(); ++i)
      if (!field.is_zero(m(i, col))) {
        found = i;
        break;
      }
    if (found == m.rows()) continue;
    m.swap_rows(found, r);
    auto pivot_row = m.row(r);
    if (!field.is_one(pivot_row[col])) {
      auto inv = field.inv(pivot_row[col]);
      for (std::size_t j = col; j < m.cols(); ++j)
        if (!field.is_zero(pivot_row[j])) pivot_row[j] = field.mul(pivot_row[j], inv);
    }
    support.clear();
    for (std::size_t j = col; j < m.cols(); ++j)
      if (!field.is_zero(pivot_row[j])) support.push_back(j);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r) continue;
      auto target = m.row(i);
      if (field.is_zero(target[col])) continue;
      auto factor = field.neg(target[col]);
      for (std::size_t j : support) target[j] = field.fma(target[j], factor, pivot_row[j]);
    }
    pivots.push_back(col);
    ++r;
  }
  return pivots;
}

// Fraction-free (Bareiss) forward elimination on integer rows followed by
// rational back substitution.
std::vector<std::size_t> rref_fraction_free(Matrix<RationalField>& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::vector<mpz_class>> z(rows, std::vector<mpz_class>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    mpz_class lcm = 1;
    for (std::size_t j = 0; j < cols; ++j) {
      const mpq_class& q = m(i, j);
      if (sgn(q) != 0) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den_mpz_t());
    }
    for (std::size_t j = 0; j < cols; ++j) {
      const mpq_class& q = m(i, j);
      z[i][j] = q.get_num() * (lcm / q.get_den());
    }
  }

  std::vector<std::size_t> pivots;
  mpz_class prev = 1;
  std::size_t r = 0;
  for (std::size_t col = 0; col < cols && r < rows; ++col) {
    std::size_t found = rows;
    for (std::size_t i = r; i < rows; ++i)
      if (sgn(z[i][col]) != 0) {
        found = i;
        break;
      }
    if (found == rows) continue;
    std::swap(z[found], z[r]);
    const mpz_class pivot = z[r][col];
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = col + 1; j < cols; ++j) {
        mpz_class v = pivot * z[i][j] - z[i][col] * z[r][j];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        z[i][j] = v;
      }
      z[i][col] = 0;
    }
    prev = pivot;
    pivots.push_back(col);
    ++r;
  }

  // Back substitution in exact rationals on the rank rows only.
  Matrix<RationalField> out(m.field(), r, cols);
  for (std::size_t i = 0; i < r; ++i) {
    const mpz_class& lead = z[i][pivots[i]];
    for (std::size_t j = 0; j < cols; ++j) {
      if (sgn(z[i][j]) == 0) continue;
      mpq_class q(z[i][j], lead);
      q.canonicalize();
      out(i, j) = q;
    }
  }
  for (std::size_t i = r; i-- > 0;) {
    for (std::size_t k = 0; k < i; ++k) {
      mpq_class factor = out(k, pivots[i]);
      if (sgn(factor) == 0) continue;
      for (std::size_t j = pivots[i]; j < cols; ++j)
        if (sgn(out(i, j)) != 0) out(k, j) -= factor * out(i, j);
    }
  }
  m = std::move(out);
  return pivots;
}

}  // namespace

template <class F>
std::vector<std::size_t> reduce_to_rref(Matrix<F>& m) {
  if constexpr (F::is_rational) {
    return rref_fraction_free(m);
  } else {
    auto pivots = gauss_jordan(m, m.cols());
    m.truncate_rows(pivots.size());
    return pivots;
  }
}

template <class F>
std::size_t rank(const Matrix<F>& m) {
  Matrix<F> copy = m;
  return reduce_to_rref(copy).size();
}

template <class F>
Subspace<F>::Subspace(Matrix<F> rows) : basis_(std::move(rows)) {
  pivots_ = reduce_to_rref(basis_);
}

template <class F>
Vector<F> Subspace<F>::residual(std::span<const Element> v) const {
  if (v.size() != ambient_dim()) throw MismatchedAmbient("vector length does not match ambient dimension");
  Vector<F> out(v.begin(), v.end());
  const F& k = field();
  for (std::size_t i = 0; i < pivots_.size(); ++i) {
    Element c = out[pivots_[i]];
    if (k.is_zero(c)) continue;
    axpy<F>(k, out, k.neg(c), basis_.row(i));
  }
  return out;
}

template <class F>
bool Subspace<F>::contains(std::span<const Element> v) const {
  auto r = residual(v);
  return is_zero_vector<F>(field(), r);
}

template <class F>
bool Subspace<F>::contains(const Subspace& other) const {
  if (other.ambient_dim() != ambient_dim()) throw MismatchedAmbient("subspaces live in different ambient spaces");
  for (std::size_t i = 0; i < other.dim(); ++i)
    if (!contains(other.basis().row(i))) return false;
  return true;
}

template <class F>
Vector<F> Subspace<F>::pivot_coordinates(std::span<const Element> v) const {
  Vector<F> c;
  c.reserve(pivots_.size());
  for (std::size_t p : pivots_) c.push_back(v[p]);
  return c;
}

template <class F>
std::optional<Vector<F>> Subspace<F>::coordinates(std::span<const Element> v) const {
  if (!contains(v)) return std::nullopt;
  return pivot_coordinates(v);
}

template <class F>
Vector<F> Subspace<F>::combine(std::span<const Element> coords) const {
  if (coords.size() != dim()) throw std::invalid_argument("coordinate vector length does not match dimension");
  Vector<F> out = zero_vector(field(), ambient_dim());
  for (std::size_t i = 0; i < coords.size(); ++i) axpy<F>(field(), out, coords[i], basis_.row(i));
  return out;
}

template <class F>
Subspace<F> Subspace<F>::annihilator() const {
  const F& k = field();
  const std::size_t n = ambient_dim();
  std::vector<bool> is_pivot(n, false);
  for (std::size_t p : pivots_) is_pivot[p] = true;
  Matrix<F> rows(k, 0, n);
  for (std::size_t c = 0; c < n; ++c) {
    if (is_pivot[c]) continue;
    Vector<F> w = zero_vector(k, n);
    w[c] = k.one();
    for (std::size_t i = 0; i < pivots_.size(); ++i) w[pivots_[i]] = k.neg(basis_(i, c));
    rows.append_row(w);
  }
  return Subspace(std::move(rows));
}

template <class F>
Subspace<F> kernel(const Matrix<F>& m) {
  return Subspace<F>::span(m).annihilator();
}

template <class F>
EchelonForm<F> echelonize(const Matrix<F>& m) {
  EchelonForm<F> out;
  Matrix<F> reduced = m;
  out.pivot_columns = reduce_to_rref(reduced);
  out.rank = out.pivot_columns.size();
  out.rref = Matrix<F>(m.field(), m.rows(), m.cols());
  for (std::size_t i = 0; i < out.rank; ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out.rref(i, j) = reduced(i, j);
  out.kernel = Subspace<F>::span(std::move(reduced)).annihilator();
  return out;
}

template <class F>
Subspace<F> intersect_subspaces(std::span<const Subspace<F>> spaces, const F& field, std::size_t ambient_dim) {
  Matrix<F> constraints(field, 0, ambient_dim);
  for (const auto& s : spaces) {
    if (s.ambient_dim() != ambient_dim) throw MismatchedAmbient("subspaces live in different ambient spaces");
    auto ann = s.annihilator();
    for (std::size_t i = 0; i < ann.dim(); ++i) constraints.append_row(ann.basis().row(i));
  }
  return kernel(constraints);
}

template <class F>
Subspace<F> sum_subspaces(std::span<const Subspace<F>> spaces, const F& field, std::size_t ambient_dim) {
  Matrix<F> rows(field, 0, ambient_dim);
  for (const auto& s : spaces) {
    if (s.ambient_dim() != ambient_dim) throw MismatchedAmbient("subspaces live in different ambient spaces");
    for (std::size_t i = 0; i < s.dim(); ++i) rows.append_row(s.basis().row(i));
  }
  return Subspace<F>::span(std::move(rows));
}

template <class F>
MembershipSolver<F>::MembershipSolver(const Matrix<F>& generators)
    : field_(generators.field()), unknowns_(generators.rows()), equations_(generators.cols()) {
  // Augmented [G^T | I]; eliminate on the G^T block only.
  Matrix<F> aug(field_, equations_, unknowns_ + equations_);
  for (std::size_t r = 0; r < unknowns_; ++r)
    for (std::size_t c = 0; c < equations_; ++c) aug(c, r) = generators(r, c);
  for (std::size_t c = 0; c < equations_; ++c) aug(c, unknowns_ + c) = field_.one();
  pivots_ = gauss_jordan(aug, unknowns_);
  transform_ = Matrix<F>(field_, equations_, equations_);
  for (std::size_t i = 0; i < equations_; ++i)
    for (std::size_t j = 0; j < equations_; ++j) transform_(i, j) = aug(i, unknowns_ + j);
}

template <class F>
std::optional<Vector<F>> MembershipSolver<F>::solve(std::span<const Element> target) const {
  if (target.size() != equations_) throw MismatchedAmbient("target length does not match generator length");
  Vector<F> u = transform_.apply(target);
  for (std::size_t i = pivots_.size(); i < equations_; ++i)
    if (!field_.is_zero(u[i])) return std::nullopt;
  Vector<F> x = zero_vector(field_, unknowns_);
  for (std::size_t i = 0; i < pivots_.size(); ++i) x[pivots_[i]] = u[i];
  return x;
}

template <class F>
std::optional<Vector<F>> solve_membership(std::span<const typename F::Element> target, const Matrix<F>& generators) {
  return MembershipSolver<F>(generators).solve(target);
}

template <class F>
Vector<F> EchelonAccumulator<F>::reduce(std::span<const Element> v) const {
  if (v.size() != ambient_) throw MismatchedAmbient("vector length does not match ambient dimension");
  Vector<F> out(v.begin(), v.end());
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    Element c = out[pivots_[i]];
    if (!field_.is_zero(c)) axpy<F>(field_, out, field_.neg(c), rows_[i]);
  }
  return out;
}

template <class F>
bool EchelonAccumulator<F>::is_independent(std::span<const Element> v) const {
  auto r = reduce(v);
  return !is_zero_vector<F>(field_, r);
}

template <class F>
bool EchelonAccumulator<F>::insert(std::span<const Element> v) {
  auto r = reduce(v);
  std::size_t p = 0;
  while (p < r.size() && field_.is_zero(r[p])) ++p;
  if (p == r.size()) return false;
  auto inv = field_.inv(r[p]);
  for (auto& x : r)
    if (!field_.is_zero(x)) x = field_.mul(x, inv);
  rows_.push_back(std::move(r));
  pivots_.push_back(p);
  return true;
}

template <class F>
Subspace<F> EchelonAccumulator<F>::span() const {
  return Subspace<F>::span(field_, ambient_, rows_);
}

#define KOSZULCONE_INSTANTIATE_LINALG(F)                                                                  \
  template std::vector<std::size_t> reduce_to_rref<F>(Matrix<F>&);                                       \
  template std::size_t rank<F>(const Matrix<F>&);                                                        \
  template class Subspace<F>;                                                                            \
  template EchelonForm<F> echelonize<F>(const Matrix<F>&);                                               \
  template Subspace<F> kernel<F>(const Matrix<F>&);                                                      \
  template Subspace<F> intersect_subspaces<F>(std::span<const Subspace<F>>, const F&, std::size_t);      \
  template Subspace<F> sum_subspaces<F>(std::span<const Subspace<F>>, const F&, std::size_t);            \
  template std::optional<Vector<F>> solve_membership<F>(std::span<const F::Element>, const Matrix<F>&); \
  template class MembershipSolver<F>;                                                                    \
  template class EchelonAccumulator<F>;

KOSZULCONE_INSTANTIATE_LINALG(PrimeField)
KOSZULCONE_INSTANTIATE_LINALG(RationalField)

}  // namespace koszulcone
