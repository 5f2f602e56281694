#include "toricdyn/lattice/minors.hpp"

#include <omp.h>

namespace toricdyn::lattice {

namespace {

void require_square(const IntegerMatrix& a, const char* what) {
  if (!a.is_square()) throw Error(ErrorKind::DimensionMismatch, std::string(what) + " needs a square matrix");
}

IntegerMatrix submatrix(const IntegerMatrix& a, const IndexSet& rows, const IndexSet& cols) {
  IntegerMatrix s(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j)
      s(i, j) = a(static_cast<std::size_t>(rows.elements()[i]), static_cast<std::size_t>(cols.elements()[j]));
  return s;
}

void check_subsets(const IntegerMatrix& a, const IndexSet& rows, const IndexSet& cols) {
  if (rows.size() != cols.size()) throw Error(ErrorKind::DimensionMismatch, "minor needs |rows| = |cols|");
  if (!rows.empty() && static_cast<std::size_t>(rows.elements().back()) >= a.rows())
    throw Error(ErrorKind::OutOfRange, "row index out of range");
  if (!cols.empty() && static_cast<std::size_t>(cols.elements().back()) >= a.cols())
    throw Error(ErrorKind::OutOfRange, "column index out of range");
}

}  // namespace

BigInt determinant(const IntegerMatrix& a) {
  require_square(a, "determinant");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntegerMatrix m = a;
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        BigInt t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(m(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = m(k, k);
  }
  return sign > 0 ? BigInt(m(n - 1, n - 1)) : BigInt(-m(n - 1, n - 1));
}

Rational determinant(const RationalMatrix& a) {
  if (!a.is_square()) throw Error(ErrorKind::DimensionMismatch, "determinant needs a square matrix");
  const std::size_t n = a.rows();
  RationalMatrix m = a;
  Rational det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && m(p, k) == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      m.swap_rows(k, p);
      det = -det;
    }
    det *= m(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (m(i, k) == 0) continue;
      Rational f = m(i, k) / m(k, k);
      for (std::size_t j = k; j < n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return det;
}

BigInt minor(const IntegerMatrix& a, const IndexSet& rows, const IndexSet& cols) {
  check_subsets(a, rows, cols);
  if (rows.empty()) return 1;
  return determinant(submatrix(a, rows, cols));
}

RationalMatrix inverse(const IntegerMatrix& a) {
  require_square(a, "inverse");
  const std::size_t n = a.rows();
  RationalMatrix m = to_rational(a);
  RationalMatrix inv = RationalMatrix::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && m(p, k) == 0) ++p;
    if (p == n) throw Error(ErrorKind::Singular, "matrix " + to_string(a) + " is singular");
    m.swap_rows(k, p);
    inv.swap_rows(k, p);
    Rational pivot = m(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      m(k, j) /= pivot;
      inv(k, j) /= pivot;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || m(i, k) == 0) continue;
      Rational f = m(i, k);
      for (std::size_t j = 0; j < n; ++j) {
        m(i, j) -= f * m(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

namespace {

void check_compound_args(const IntegerMatrix& a, int k) {
  require_square(a, "compound_matrix");
  if (k < 0 || static_cast<std::size_t>(k) > a.rows())
    throw Error(ErrorKind::OutOfRange, "compound order k=" + std::to_string(k) + " outside [0, n]");
}

}  // namespace

IntegerMatrix compound_matrix(const IntegerMatrix& a, int k) {
  check_compound_args(a, k);
  const auto subsets = k_subsets(static_cast<int>(a.rows()), k);
  const auto size = static_cast<std::ptrdiff_t>(subsets.size());
  IntegerMatrix out(subsets.size(), subsets.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t idx = 0; idx < size * size; ++idx) {
    const auto r = static_cast<std::size_t>(idx / size);
    const auto c = static_cast<std::size_t>(idx % size);
    out(r, c) = minor(a, subsets[r], subsets[c]);
  }
  return out;
}

namespace reference {

IntegerMatrix compound_matrix(const IntegerMatrix& a, int k) {
  check_compound_args(a, k);
  const auto subsets = k_subsets(static_cast<int>(a.rows()), k);
  IntegerMatrix out(subsets.size(), subsets.size());
  for (std::size_t r = 0; r < subsets.size(); ++r)
    for (std::size_t c = 0; c < subsets.size(); ++c) out(r, c) = minor(a, subsets[r], subsets[c]);
  return out;
}

}  // namespace reference

ComplementaryMinor complementary_minor(const IntegerMatrix& a, const IndexSet& alpha,
                                       const IndexSet& beta) {
  require_square(a, "complementary_minor");
  check_subsets(a, alpha, beta);
  const int n = static_cast<int>(a.rows());
  BigInt det = determinant(a);
  if (det == 0) throw Error(ErrorKind::Singular, "matrix " + to_string(a) + " is singular");

  RationalMatrix inv = inverse(a);
  RationalMatrix sub(alpha.size(), beta.size());
  for (std::size_t i = 0; i < alpha.size(); ++i)
    for (std::size_t j = 0; j < beta.size(); ++j)
      sub(i, j) = inv(static_cast<std::size_t>(alpha.elements()[i]), static_cast<std::size_t>(beta.elements()[j]));

  ComplementaryMinor out;
  out.lhs = abs(Rational(det) * determinant(sub));
  out.rhs = Rational(abs(minor(a, beta.complement(n), alpha.complement(n))));
  return out;
}

}  // namespace toricdyn::lattice
