#include "toricdyn/lattice/smith.hpp"

#include <algorithm>

namespace toricdyn::lattice {

namespace {

void add_row_multiple(IntegerMatrix& m, std::size_t target, std::size_t source, const BigInt& q) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(target, j) -= q * m(source, j);
}

void add_col_multiple(IntegerMatrix& m, std::size_t target, std::size_t source, const BigInt& q) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, target) -= q * m(i, source);
}

}  // namespace

std::size_t SmithForm::rank() const {
  std::size_t r = 0;
  for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i)
    if (D(i, i) != 0) ++r;
  return r;
}

std::vector<BigInt> SmithForm::invariant_factors() const {
  std::vector<BigInt> out;
  for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) out.push_back(D(i, i));
  return out;
}

SmithForm smith_normal_form(const IntegerMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  SmithForm s{IntegerMatrix::identity(m), a, IntegerMatrix::identity(n)};
  IntegerMatrix& D = s.D;
  IntegerMatrix& U = s.U;
  IntegerMatrix& V = s.V;

  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    while (true) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      std::size_t pi = m, pj = n;
      BigInt best;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j) {
          if (D(i, j) == 0) continue;
          BigInt v = abs(D(i, j));
          if (pi == m || v < best) {
            best = v;
            pi = i;
            pj = j;
          }
        }
      if (pi == m) return s;

      D.swap_rows(t, pi);
      U.swap_rows(t, pi);
      D.swap_cols(t, pj);
      V.swap_cols(t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (D(i, t) == 0) continue;
        BigInt q = D(i, t) / D(t, t);
        add_row_multiple(D, i, t, q);
        add_row_multiple(U, i, t, q);
        if (D(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (D(t, j) == 0) continue;
        BigInt q = D(t, j) / D(t, t);
        add_col_multiple(D, j, t, q);
        add_col_multiple(V, j, t, q);
        if (D(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Divisibility: pull an offending row into the pivot row and redo.
      bool divides = true;
      for (std::size_t i = t + 1; i < m && divides; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (D(i, j) % D(t, t) != 0) {
            add_row_multiple(D, t, i, BigInt(-1));
            add_row_multiple(U, t, i, BigInt(-1));
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (D(t, t) < 0) {
      for (std::size_t j = 0; j < n; ++j) D(t, j) = -D(t, j);
      for (std::size_t j = 0; j < m; ++j) U(t, j) = -U(t, j);
    }
  }
  return s;
}

LatticeIndex lattice_index_sum(const std::vector<LatticeVector>& gens_a,
                               const std::vector<LatticeVector>& gens_b, std::size_t n) {
  std::vector<LatticeVector> all;
  all.reserve(gens_a.size() + gens_b.size());
  for (const auto* group : {&gens_a, &gens_b})
    for (const auto& g : *group) {
      if (g.size() != n) throw Error(ErrorKind::DimensionMismatch, "generator length differs from lattice rank");
      all.push_back(g);
    }
  if (n == 0) return BigInt(1);
  if (all.empty()) return std::nullopt;
  SmithForm s = smith_normal_form(IntegerMatrix::from_columns(all, n));
  if (s.rank() < n) return std::nullopt;
  BigInt index = 1;
  for (std::size_t i = 0; i < n; ++i) index *= s.D(i, i);
  return index;
}

std::vector<LatticeVector> integer_kernel(const std::vector<LatticeVector>& gens, std::size_t n) {
  // Rows of G^T are the generators; kernel basis = trailing columns of V.
  for (const auto& g : gens)
    if (g.size() != n) throw Error(ErrorKind::DimensionMismatch, "generator length differs from lattice rank");
  IntegerMatrix gt = IntegerMatrix::from_rows(gens, n);
  SmithForm s = smith_normal_form(gt);
  std::vector<LatticeVector> out;
  for (std::size_t j = s.rank(); j < n; ++j) out.push_back(s.V.column(j));
  return out;
}

std::vector<LatticeVector> saturated_basis(const std::vector<LatticeVector>& gens, std::size_t n) {
  return integer_kernel(integer_kernel(gens, n), n);
}

std::size_t rank_of(const std::vector<LatticeVector>& vectors, std::size_t n) {
  std::vector<RationalVector> rows;
  for (const auto& v : vectors) {
    if (v.size() != n) throw Error(ErrorKind::DimensionMismatch, "vector length differs from rank");
    rows.emplace_back(v.begin(), v.end());
  }
  std::size_t rank = 0;
  for (std::size_t col = 0; col < n && rank < rows.size(); ++col) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][col] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    for (std::size_t i = rank + 1; i < rows.size(); ++i) {
      if (rows[i][col] == 0) continue;
      Rational f = rows[i][col] / rows[rank][col];
      for (std::size_t j = col; j < n; ++j) rows[i][j] -= f * rows[rank][j];
    }
    ++rank;
  }
  return rank;
}

BigInt dot(const LatticeVector& a, const LatticeVector& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::DimensionMismatch, "dot product length mismatch");
  BigInt s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

LatticeVector primitive(LatticeVector v) {
  BigInt g = 0;
  for (const auto& x : v) g = gcd(g, x);
  if (g == 0 || g == 1) return v;
  for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  return v;
}

bool is_zero(const LatticeVector& v) {
  return std::all_of(v.begin(), v.end(), [](const BigInt& x) { return x == 0; });
}

}  // namespace toricdyn::lattice
