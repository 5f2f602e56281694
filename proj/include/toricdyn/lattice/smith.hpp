#pragma once

#include <optional>
#include <vector>

#include "toricdyn/lattice/matrix.hpp"

namespace toricdyn::lattice {

/// U * A * V = D with U, V unimodular and D diagonal, d_i >= 0, d_i | d_{i+1}.
struct SmithForm {
  IntegerMatrix U;
  IntegerMatrix D;
  IntegerMatrix V;

  /// Number of nonzero diagonal entries.
  std::size_t rank() const;
  std::vector<BigInt> invariant_factors() const;
};

SmithForm smith_normal_form(const IntegerMatrix& a);

/// Index of a sublattice of Z^n. Empty optional means infinite index.
using LatticeIndex = std::optional<BigInt>;

/// [Z^n : span_Z(gens_a + gens_b)].
LatticeIndex lattice_index_sum(const std::vector<LatticeVector>& gens_a,
                               const std::vector<LatticeVector>& gens_b, std::size_t n);

/// Basis of (span_R gens) intersected with Z^n.
std::vector<LatticeVector> saturated_basis(const std::vector<LatticeVector>& gens, std::size_t n);

/// Lattice basis of {u in Z^n : u . g = 0 for all g in gens}.
std::vector<LatticeVector> integer_kernel(const std::vector<LatticeVector>& gens, std::size_t n);

std::size_t rank_of(const std::vector<LatticeVector>& vectors, std::size_t n);

BigInt dot(const LatticeVector& a, const LatticeVector& b);

/// Divides by the gcd of the coordinates; the zero vector is returned unchanged.
LatticeVector primitive(LatticeVector v);

bool is_zero(const LatticeVector& v);

}  // namespace toricdyn::lattice
