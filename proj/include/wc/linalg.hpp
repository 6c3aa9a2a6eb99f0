#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace wc {

// Dense row-major matrix over an exact field.
template <class K> class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const K& fill) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  K& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const K& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  const std::vector<K>& data() const { return data_; }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<K> data_;
};

template <class F> Matrix<typename F::value_type> identity_matrix(const F& field, std::size_t n) {
  Matrix<typename F::value_type> m(n, n, field.zero());
  for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
  return m;
}

template <class F>
Matrix<typename F::value_type> multiply(const F& field, const Matrix<typename F::value_type>& a,
                                        const Matrix<typename F::value_type>& b) {
  Matrix<typename F::value_type> c(a.rows(), b.cols(), field.zero());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const typename F::value_type& aik = a(i, k);
      if (field.is_zero(aik)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

// In-place reduced row echelon form; returns pivot columns.
template <class F> std::vector<std::size_t> row_reduce(const F& field, Matrix<typename F::value_type>& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && field.is_zero(m(p, col))) ++p;
    if (p == m.rows()) continue;
    if (p != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
    const typename F::value_type inv = field.one() / m(row, col);
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) = m(row, j) * inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || field.is_zero(m(r, col))) continue;
      const typename F::value_type f = m(r, col);
      for (std::size_t j = col; j < m.cols(); ++j) m(r, j) -= f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class F> std::size_t rank(const F& field, Matrix<typename F::value_type> m) {
  return row_reduce(field, m).size();
}

// Basis of the right kernel {v : m v = 0}, one vector per free column.
template <class F>
std::vector<std::vector<typename F::value_type>> kernel(const F& field, Matrix<typename F::value_type> m) {
  const auto pivots = row_reduce(field, m);
  std::vector<char> is_pivot(m.cols(), 0);
  for (auto c : pivots) is_pivot[c] = 1;
  std::vector<std::vector<typename F::value_type>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<typename F::value_type> v(m.cols(), field.zero());
    v[free] = field.one();
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

// Inverse of a square matrix, or false if singular.
template <class F>
bool invert(const F& field, const Matrix<typename F::value_type>& m, Matrix<typename F::value_type>& out) {
  const std::size_t n = m.rows();
  Matrix<typename F::value_type> aug(n, 2 * n, field.zero());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = field.one();
  }
  const auto pivots = row_reduce(field, aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) return false;
  out = Matrix<typename F::value_type>(n, n, field.zero());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = aug(i, n + j);
  return true;
}

} // namespace wc
