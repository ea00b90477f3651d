#pragma once

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "koszulcone/field.hpp"

namespace koszulcone {

template <class F>
using Vector = std::vector<typename F::Element>;

template <class F>
Vector<F> zero_vector(const F& field, std::size_t n) {
  return Vector<F>(n, field.zero());
}

template <class F>
bool is_zero_vector(const F& field, std::span<const typename F::Element> v) {
  return std::all_of(v.begin(), v.end(), [&](const auto& x) { return field.is_zero(x); });
}

// y += c * x
template <class F>
void axpy(const F& field, std::span<typename F::Element> y, const typename F::Element& c,
          std::span<const typename F::Element> x) {
  assert(y.size() == x.size());
  if (field.is_zero(c)) return;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!field.is_zero(x[i])) y[i] = field.fma(y[i], c, x[i]);
}

/// Dense row-major matrix over a field.
template <class F>
class Matrix {
 public:
  using Element = typename F::Element;

  Matrix() = default;
  Matrix(F field, std::size_t rows, std::size_t cols)
      : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, field_.zero()) {}

  static Matrix identity(const F& field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
    return m;
  }

  static Matrix from_rows(const F& field, std::size_t cols, const std::vector<Vector<F>>& rows) {
    Matrix m(field, 0, cols);
    for (const auto& r : rows) m.append_row(r);
    return m;
  }

  const F& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  Element& operator()(std::size_t r, std::size_t c) {
    assert(r < rows_ && c < cols_);
    return data_[r * cols_ + c];
  }
  const Element& operator()(std::size_t r, std::size_t c) const {
    assert(r < rows_ && c < cols_);
    return data_[r * cols_ + c];
  }

  std::span<Element> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Element> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  Vector<F> row_vector(std::size_t r) const { return Vector<F>(row(r).begin(), row(r).end()); }

  void append_row(std::span<const Element> values) {
    if (values.size() != cols_) throw std::invalid_argument("row length does not match column count");
    data_.insert(data_.end(), values.begin(), values.end());
    ++rows_;
  }
  void append_row(const Vector<F>& values) { append_row(std::span<const Element>(values)); }

  /// Keeps only the first `n` rows.
  void truncate_rows(std::size_t n) {
    if (n >= rows_) return;
    data_.resize(n * cols_);
    rows_ = n;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap(data_[a * cols_ + c], data_[b * cols_ + c]);
  }

  Matrix transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  Matrix operator*(const Matrix& other) const {
    if (cols_ != other.rows_) throw std::invalid_argument("matrix product dimension mismatch");
    Matrix out(field_, rows_, other.cols_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t k = 0; k < cols_; ++k) {
        const Element& a = (*this)(r, k);
        if (field_.is_zero(a)) continue;
        axpy<F>(field_, out.row(r), a, other.row(k));
      }
    return out;
  }

  /// m * v
  Vector<F> apply(std::span<const Element> v) const {
    if (v.size() != cols_) throw std::invalid_argument("vector length does not match column count");
    Vector<F> out(rows_, field_.zero());
    for (std::size_t r = 0; r < rows_; ++r) {
      Element acc = field_.zero();
      for (std::size_t c = 0; c < cols_; ++c) {
        const Element& a = (*this)(r, c);
        if (!field_.is_zero(a) && !field_.is_zero(v[c])) acc = field_.fma(acc, a, v[c]);
      }
      out[r] = acc;
    }
    return out;
  }

  /// v^T * m
  Vector<F> apply_left(std::span<const Element> v) const {
    if (v.size() != rows_) throw std::invalid_argument("vector length does not match row count");
    Vector<F> out(cols_, field_.zero());
    for (std::size_t r = 0; r < rows_; ++r) axpy<F>(field_, out, v[r], row(r));
    return out;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [&](const Element& x) { return field_.is_zero(x); });
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (std::size_t i = 0; i < a.data_.size(); ++i)
      if (!a.field_.equal(a.data_[i], b.data_[i])) return false;
    return true;
  }

 private:
  F field_{};
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Element> data_;
};

}  // namespace koszulcone
