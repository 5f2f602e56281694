#include "toricdyn/dynamics/monomial_map.hpp"

#include <cmath>

#include "toricdyn/lattice/minors.hpp"
#include "toricdyn/lattice/spectral.hpp"

namespace toricdyn::dynamics {

using lattice::IndexSet;
using lattice::IntegerMatrix;
using weights::FanPtr;

MonomialMap::MonomialMap(IntegerMatrix psi) : psi_(std::move(psi)) {
  if (!psi_.is_square() || psi_.rows() == 0) throw Error(ErrorKind::DimensionMismatch, "psi must be a nonempty square matrix");
  det_ = lattice::determinant(psi_);
  if (det_ == 0) throw Error(ErrorKind::Singular, "det psi = 0: the map is not dominant");
}

MonomialMap MonomialMap::power(unsigned l) const { return MonomialMap(lattice::power(psi_, l)); }

namespace {

void check_k(const MonomialMap& map, int k) {
  if (k < 0 || k > map.n()) throw Error(ErrorKind::OutOfRange, "k must lie in [0, n]");
}

}  // namespace

PullbackMatrix pullback_matrix_closed(const MonomialMap& map, int k) {
  check_k(map, k);
  const int n = map.n();
  PullbackMatrix out{n, k, lattice::k_subsets(n, n - k), {}};
  const std::size_t size = out.basis.size();
  out.entries = IntegerMatrix(size, size);
  for (std::size_t a = 0; a < size; ++a)
    for (std::size_t b = 0; b < size; ++b) {
      BigInt m = lattice::minor(map.psi(), out.basis[b].complement(n), out.basis[a].complement(n));
      out.entries(a, b) = abs(m);
    }
  return out;
}

PipelineContext::PipelineContext(const MonomialMap& map, FanPtr target, PipelineOptions options)
    : psi_(map.psi()), target_(std::move(target)) {
  if (static_cast<int>(target_->rank()) != map.n()) throw Error(ErrorKind::DimensionMismatch, "target rank differs from n");
  refined_ = std::make_shared<const fans::Fan>(fans::common_refinement(*target_, psi_, {.smooth = options.smooth}));
  generic_ = weights::pick_generic_vector({refined_}, options.seed);
  filter_ = weights::MeetFilter(*refined_);
}

std::vector<BigInt> PipelineContext::pull_push(const weights::MinkowskiWeight& c) const {
  auto pulled = weights::pullback_along_morphism(psi_, refined_, c);
  auto basis = weights::standard_weight_basis(target_, c.codim());
  return weights::pushforward_to_target(pulled, basis, generic_.v, filter_);
}

IntegerMatrix PipelineContext::pullback_matrix(int k) const {
  auto basis = weights::standard_weight_basis(target_, k);
  const std::size_t size = basis.elements.size();
  IntegerMatrix out(size, size);
  for (std::size_t b = 0; b < size; ++b) {
    auto column = pull_push(basis.elements[b].weight);
    for (std::size_t a = 0; a < size; ++a) out(a, b) = column[a];
  }
  return out;
}

PullbackMatrix pullback_matrix_pipeline(const MonomialMap& map, int k, PipelineOptions options) {
  check_k(map, k);
  const int n = map.n();
  PipelineContext context(map, std::make_shared<const fans::Fan>(fans::fan_p1n(n)), options);
  return {n, k, lattice::k_subsets(n, n - k), context.pullback_matrix(k)};
}

DegreeReport dynamical_degrees(const MonomialMap& map, int lmax) {
  DegreeReport r;
  r.n = map.n();
  r.det = map.det();
  auto moduli = lattice::eigenvalue_moduli(map.psi());
  r.moduli = moduli.moduli;
  for (int k = 0; k <= r.n; ++k) r.lambdas.push_back(moduli.top_product(k));
  for (double m : r.moduli)
    if (m > 1.0) r.entropy += std::log(m);
  if (lmax > 0)
    for (int k = 1; k <= r.n; ++k) r.norm_sequences.push_back(lattice::norm_growth_sequence(map.psi(), k, lmax));
  return r;
}

std::vector<BigInt> cremona_degrees(int n, PipelineOptions options) {
  if (n < 1) throw Error(ErrorKind::OutOfRange, "cremona_degrees requires n >= 1");
  IntegerMatrix minus(n, n);
  for (int i = 0; i < n; ++i) minus(i, i) = -1;
  auto target = std::make_shared<const fans::Fan>(fans::fan_pn(n));
  PipelineContext context(MonomialMap(minus), target, options);
  std::vector<BigInt> degrees;
  for (int k = 0; k <= n; ++k) {
    auto basis = weights::standard_weight_basis(target, k);
    degrees.push_back(context.pull_push(basis.elements.front().weight).front());
  }
  return degrees;
}

GrowthFit degree_growth_pn(const MonomialMap& map, int k, int lmax, PipelineOptions options) {
  check_k(map, k);
  if (lmax < 3) throw Error(ErrorKind::OutOfRange, "lmax must be at least 3");
  GrowthFit fit;
  fit.n = map.n();
  fit.k = k;
  fit.lambda = lattice::eigenvalue_moduli(map.psi()).top_product(k);
  auto target = std::make_shared<const fans::Fan>(fans::fan_pn(fit.n));
  const auto ck = weights::standard_weight_basis(target, k).elements.front().weight;
  for (int l = 1; l <= lmax; ++l) {
    PipelineContext context(map.power(static_cast<unsigned>(l)), target, options);
    fit.degrees.push_back(context.pull_push(ck).front());
  }

  std::vector<double> xs, ys;
  bool positive = true;
  for (int l = 1; l <= lmax; ++l) {
    const BigInt& d = fit.degrees[l - 1];
    if (d <= 0) {
      positive = false;
      break;
    }
    xs.push_back(std::log(static_cast<double>(l)));
    ys.push_back(lattice::log_abs(d) - l * std::log(fit.lambda));
  }
  if (!positive) {
    fit.degenerate = true;
    return fit;
  }
  const double count = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  fit.m = (count * sxy - sx * sy) / (count * sxx - sx * sx);
  fit.c = (sy - fit.m * sx) / count;
  double ss = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double e = ys[i] - fit.m * xs[i] - fit.c;
    ss += e * e;
  }
  fit.residual_rms = std::sqrt(ss / count);
  const double cap = lattice::binomial(fit.n, k).get_d() + 0.5;
  fit.degenerate = fit.residual_rms > 0.1 || fit.m < -0.5 || fit.m > cap;
  return fit;
}

}  // namespace toricdyn::dynamics
