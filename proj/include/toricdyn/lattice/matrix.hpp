#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "toricdyn/error.hpp"

namespace toricdyn {

using BigInt = mpz_class;
using Rational = mpq_class;

/// A point of the lattice Z^n (or a covector of its dual).
using LatticeVector = std::vector<BigInt>;
using RationalVector = std::vector<Rational>;

namespace lattice {

/// Dense row-major matrix over an exact ring.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<long>> rows);

  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols);
  static Matrix from_columns(const std::vector<std::vector<T>>& columns, std::size_t rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<T>& data() const noexcept { return data_; }

  std::vector<T> row(std::size_t i) const;
  std::vector<T> column(std::size_t j) const;

  Matrix transpose() const;
  Matrix operator*(const Matrix& rhs) const;
  std::vector<T> operator*(const std::vector<T>& x) const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntegerMatrix = Matrix<BigInt>;
using RationalMatrix = Matrix<Rational>;

RationalMatrix to_rational(const IntegerMatrix& a);

/// Integer power by repeated squaring; requires a square matrix.
IntegerMatrix power(const IntegerMatrix& a, unsigned exponent);

BigInt max_abs_entry(const IntegerMatrix& a);

std::string to_string(const IntegerMatrix& a);

/// Strictly increasing subset of {0, ..., n-1}. Printed 1-based.
class IndexSet {
 public:
  IndexSet() = default;
  explicit IndexSet(std::vector<int> elements);

  const std::vector<int>& elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }
  bool empty() const noexcept { return elements_.empty(); }
  bool contains(int i) const;

  /// {0..n-1} minus this set.
  IndexSet complement(int n) const;

  std::string to_string() const;

  friend auto operator<=>(const IndexSet&, const IndexSet&) = default;

 private:
  std::vector<int> elements_;
};

/// All k-element subsets of {0..n-1} in lexicographic order.
std::vector<IndexSet> k_subsets(int n, int k);

BigInt binomial(int n, int k);

// ---- template implementation ----

template <class T>
Matrix<T>::Matrix(std::initializer_list<std::initializer_list<long>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(ErrorKind::DimensionMismatch, "ragged matrix literal");
    for (long v : r) data_.emplace_back(v);
  }
}

template <class T>
Matrix<T> Matrix<T>::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

template <class T>
Matrix<T> Matrix<T>::from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols) {
  Matrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw Error(ErrorKind::DimensionMismatch, "row length mismatch");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

template <class T>
Matrix<T> Matrix<T>::from_columns(const std::vector<std::vector<T>>& columns, std::size_t rows) {
  Matrix m(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != rows) throw Error(ErrorKind::DimensionMismatch, "column length mismatch");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
  }
  return m;
}

template <class T>
std::vector<T> Matrix<T>::row(std::size_t i) const {
  return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
}

template <class T>
std::vector<T> Matrix<T>::column(std::size_t j) const {
  std::vector<T> c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

template <class T>
Matrix<T> Matrix<T>::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

template <class T>
Matrix<T> Matrix<T>::operator*(const Matrix& rhs) const {
  if (cols_ != rhs.rows_) throw Error(ErrorKind::DimensionMismatch, "matrix product shape mismatch");
  Matrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const T& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
    }
  return out;
}

template <class T>
std::vector<T> Matrix<T>::operator*(const std::vector<T>& x) const {
  if (cols_ != x.size()) throw Error(ErrorKind::DimensionMismatch, "matrix-vector shape mismatch");
  std::vector<T> y(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) y[i] += (*this)(i, j) * x[j];
  return y;
}

template <class T>
void Matrix<T>::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

template <class T>
void Matrix<T>::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

}  // namespace lattice
}  // namespace toricdyn
