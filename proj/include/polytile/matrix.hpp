#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "polytile/error.hpp"
#include "polytile/field.hpp"

namespace polytile {

/// Dense row-major matrix over an exact field.
template <class T>
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  [[nodiscard]] bool empty() const { return rows_ == 0; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  [[nodiscard]] std::span<const T> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  [[nodiscard]] std::span<T> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }

  void append_row(std::span<const T> values) {
    if (rows_ == 0 && cols_ == 0) cols_ = values.size();
    if (values.size() != cols_) throw InputError("row length mismatch");
    data_.insert(data_.end(), values.begin(), values.end());
    ++rows_;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }

  void truncate_rows(std::size_t n) {
    rows_ = std::min(rows_, n);
    data_.resize(rows_ * cols_);
  }

  /// An empty matrix that still remembers its column count.
  static Matrix with_cols(std::size_t cols) {
    Matrix m;
    m.cols_ = cols;
    return m;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <ExactField F>
using MatrixOf = Matrix<typename F::value_type>;

template <ExactField F>
MatrixOf<F> identity(const F& field, std::size_t n) {
  MatrixOf<F> m(n, n, field.zero());
  for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
  return m;
}

template <ExactField F>
MatrixOf<F> multiply(const F& field, const MatrixOf<F>& a, const MatrixOf<F>& b) {
  if (a.cols() != b.rows()) throw InputError("matrix product shape mismatch");
  MatrixOf<F> out(a.rows(), b.cols(), field.zero());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (field.is_zero(a(i, k))) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

template <ExactField F>
std::vector<typename F::value_type> apply(const F& field, const MatrixOf<F>& a,
                                          std::span<const typename F::value_type> x) {
  if (a.cols() != x.size()) throw InputError("matrix-vector shape mismatch");
  std::vector<typename F::value_type> out(a.rows(), field.zero());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) out[i] += a(i, k) * x[k];
  return out;
}

template <ExactField F>
MatrixOf<F> transpose(const F& field, const MatrixOf<F>& a) {
  MatrixOf<F> t(a.cols(), a.rows(), field.zero());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

template <ExactField F>
MatrixOf<F> scaled(const F& field, const MatrixOf<F>& a, const typename F::value_type& s) {
  MatrixOf<F> out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) * s;
  (void)field;
  return out;
}

template <ExactField F>
bool is_zero_matrix(const F& field, const MatrixOf<F>& a) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!field.is_zero(a(i, j))) return false;
  return true;
}

/// Reduced row-echelon form in place; zero rows are dropped. Returns the pivot
/// columns, one per surviving row.
template <ExactField F>
std::vector<std::size_t> rref_in_place(const F& field, MatrixOf<F>& m) {
  std::vector<std::size_t> pivots;
  std::size_t lead = 0;
  for (std::size_t col = 0; col < m.cols() && lead < m.rows(); ++col) {
    std::size_t sel = lead;
    while (sel < m.rows() && field.is_zero(m(sel, col))) ++sel;
    if (sel == m.rows()) continue;
    m.swap_rows(sel, lead);
    typename F::value_type inv = field.one() / m(lead, col);
    for (std::size_t c = col; c < m.cols(); ++c) m(lead, c) = m(lead, c) * inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == lead || field.is_zero(m(r, col))) continue;
      typename F::value_type factor = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) m(r, c) -= factor * m(lead, c);
    }
    pivots.push_back(col);
    ++lead;
  }
  m.truncate_rows(lead);
  return pivots;
}

template <ExactField F>
std::size_t rank(const F& field, MatrixOf<F> m) {
  return rref_in_place(field, m).size();
}

/// Basis of the right kernel {x : A x = 0}, one vector per row of the result.
template <ExactField F>
MatrixOf<F> nullspace(const F& field, const MatrixOf<F>& a) {
  MatrixOf<F> r = a;
  auto pivots = rref_in_place(field, r);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  auto out = MatrixOf<F>::with_cols(a.cols());
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<typename F::value_type> v(a.cols(), field.zero());
    v[free] = field.one();
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r(i, free);
    out.append_row(v);
  }
  return out;
}

template <ExactField F>
MatrixOf<F> vstack(const MatrixOf<F>& a, const MatrixOf<F>& b) {
  if (a.rows() == 0 && a.cols() == 0) return b;
  auto out = a;
  for (std::size_t i = 0; i < b.rows(); ++i) out.append_row(b.row(i));
  return out;
}

/// Inverse of a square matrix; throws ArithmeticError when singular.
template <ExactField F>
MatrixOf<F> inverse(const F& field, const MatrixOf<F>& a) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw InputError("inverse of a non-square matrix");
  MatrixOf<F> aug(n, 2 * n, field.zero());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = field.one();
  }
  auto pivots = rref_in_place(field, aug);
  if (pivots.size() < n || pivots[n - 1] >= n) throw ArithmeticError("singular matrix");
  MatrixOf<F> inv(n, n, field.zero());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

/// If b == lambda * a for some scalar lambda, returns lambda (zero allowed
/// only when b is zero). Returns nullopt otherwise, including when a == 0 != b.
template <ExactField F>
std::optional<typename F::value_type> proportionality(const F& field, const MatrixOf<F>& a,
                                                      const MatrixOf<F>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw InputError("shape mismatch");
  std::optional<typename F::value_type> lambda;
  for (std::size_t i = 0; i < a.rows() && !lambda; ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!field.is_zero(a(i, j))) {
        lambda = typename F::value_type(b(i, j) / a(i, j));
        break;
      }
  if (!lambda) {
    if (is_zero_matrix(field, b)) return field.zero();
    return std::nullopt;
  }
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!(a(i, j) * *lambda == b(i, j))) return std::nullopt;
  return lambda;
}

}  // namespace polytile
