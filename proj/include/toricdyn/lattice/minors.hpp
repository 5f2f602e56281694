#pragma once

#include <utility>

#include "toricdyn/lattice/matrix.hpp"

namespace toricdyn::lattice {

/// Fraction-free (Bareiss) determinant.
BigInt determinant(const IntegerMatrix& a);
Rational determinant(const RationalMatrix& a);

/// Determinant of the submatrix on the given rows and columns; the empty minor is 1.
BigInt minor(const IntegerMatrix& a, const IndexSet& rows, const IndexSet& cols);

/// Exact inverse; throws Singular when det a = 0.
RationalMatrix inverse(const IntegerMatrix& a);

/// k-th compound (exterior power) of a square matrix, rows and columns indexed by
/// k-subsets in lexicographic order. Entries are computed in parallel.
IntegerMatrix compound_matrix(const IntegerMatrix& a, int k);

namespace reference {
/// Serial compound matrix, kept as the reference for the parallel kernel.
IntegerMatrix compound_matrix(const IntegerMatrix& a, int k);
}  // namespace reference

/// Both sides of |det A * det (A^-1)_{alpha,beta}| = |det A_{beta', alpha'}|,
/// the left through an exact rational inverse, the right through an integer minor.
struct ComplementaryMinor {
  Rational lhs;
  Rational rhs;
};

ComplementaryMinor complementary_minor(const IntegerMatrix& a, const IndexSet& alpha,
                                       const IndexSet& beta);

}  // namespace toricdyn::lattice
