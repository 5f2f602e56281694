#include "toricdyn/dynamics/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "toricdyn/lattice/minors.hpp"
#include "toricdyn/lattice/spectral.hpp"

namespace toricdyn::dynamics {

MonomialMap random_map(std::uint64_t seed, int n, int bound) {
  if (n < 1 || bound < 1) throw Error(ErrorKind::OutOfRange, "random_map needs n >= 1 and bound >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> entry(-bound, bound);
  while (true) {
    lattice::IntegerMatrix m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = entry(rng);
    if (lattice::determinant(m) != 0) return MonomialMap(std::move(m));
  }
}

LimitCheck check_norm_limit(const MonomialMap& map, int k, int lmax, double tolerance) {
  if (k < 1 || k > map.n()) throw Error(ErrorKind::OutOfRange, "k must lie in [1, n]");
  if (lmax < 6) throw Error(ErrorKind::OutOfRange, "lmax must be at least 6");
  LimitCheck out;
  out.k = k;
  const auto moduli = lattice::eigenvalue_moduli(map.psi());
  out.lambda = moduli.top_product(k);
  const auto seq = lattice::norm_growth_sequence(map.psi(), k, lmax);
  out.last = seq.back();
  out.relative_error = std::abs(out.last - out.lambda) / out.lambda;
  if (k < map.n()) {
    const double a = moduli.moduli[k - 1], b = moduli.moduli[k];
    out.tie = std::abs(a - b) <= 1e-9 * std::max(a, 1.0);
  }
  if (out.tie) {
    auto window = [&](int lo, int hi) {
      double worst = 0;
      for (int l = lo; l <= hi; ++l) worst = std::max(worst, std::abs(std::log(seq[l - 1] / out.lambda)));
      return worst;
    };
    const int early_lo = std::max(1, lmax / 6), early_hi = lmax / 2;
    const int late_lo = static_cast<int>(std::ceil(0.7 * lmax));
    out.trend_ok = window(late_lo, lmax) <= window(early_lo, early_hi) + 1e-9;
    out.pass = out.trend_ok;
  } else {
    out.pass = out.relative_error <= tolerance;
  }
  return out;
}

}  // namespace toricdyn::dynamics
