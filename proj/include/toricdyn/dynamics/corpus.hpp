#pragma once

#include <cstdint>

#include "toricdyn/dynamics/monomial_map.hpp"

namespace toricdyn::dynamics {

/// Nonsingular n x n matrix with entries uniform in [-bound, bound], drawn by rejection
/// from mt19937_64 seeded with seed. Deterministic across runs.
MonomialMap random_map(std::uint64_t seed, int n, int bound);

/// Comparison of the l = lmax term of the norm-growth sequence with lambda_k.
struct LimitCheck {
  int k = 0;
  double lambda = 0.0;
  double last = 0.0;
  double relative_error = 0.0;
  /// |mu_k| and |mu_{k+1}| agree to 1e-9 relative; convergence is then only polynomial.
  bool tie = false;
  /// For ties: the late window (l in [0.7 lmax, lmax]) deviates from lambda_k no more
  /// than the early window (l in [lmax/6, lmax/2]) in log scale, up to 1e-9.
  bool trend_ok = true;
  bool pass = false;
};

LimitCheck check_norm_limit(const MonomialMap& map, int k, int lmax = 30, double tolerance = 0.05);

}  // namespace toricdyn::dynamics
