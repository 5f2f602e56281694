#pragma once

#include <vector>

#include "toricdyn/lattice/matrix.hpp"

namespace toricdyn::lattice {

/// Monic characteristic polynomial det(xI - A); coefficients[i] multiplies x^i.
struct CharPoly {
  std::vector<BigInt> coefficients;

  int degree() const { return static_cast<int>(coefficients.size()) - 1; }
  BigInt evaluate(const BigInt& x) const;
};

/// Berkowitz algorithm: division free, exact over the integers.
CharPoly char_poly(const IntegerMatrix& a);

/// Root moduli of the characteristic polynomial, sorted descending, with multiplicity.
struct EigenModuli {
  std::vector<double> moduli;

  /// Product of the k largest moduli.
  double top_product(int k) const;
};

/// Roots are found per square-free factor (exact Yun decomposition), so repeated
/// eigenvalues do not lose accuracy.
EigenModuli eigenvalue_moduli(const IntegerMatrix& a);
EigenModuli polynomial_root_moduli(const CharPoly& p);

/// ||(wedge^k A)^l||^(1/l) for l = 1..lmax in the max-abs-entry norm.
std::vector<double> norm_growth_sequence(const IntegerMatrix& a, int k, int lmax);

/// Natural log of |z|; z must be nonzero.
double log_abs(const BigInt& z);

}  // namespace toricdyn::lattice
