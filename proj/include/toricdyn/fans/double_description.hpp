#pragma once

#include <vector>

#include "toricdyn/lattice/matrix.hpp"

namespace toricdyn::fans {

/// Generator form of {x : a.x >= 0 for a in inequalities, e.x = 0 for e in equations}:
/// the cone equals span(lineality) + cone(rays). Rays are primitive and extreme
/// modulo the lineality space.
struct DoubleDescription {
  std::vector<LatticeVector> lineality;
  std::vector<LatticeVector> rays;
};

/// Incremental double description (Motzkin) over the integers.
DoubleDescription double_description(const std::vector<LatticeVector>& inequalities,
                                     const std::vector<LatticeVector>& equations, std::size_t n);

}  // namespace toricdyn::fans
