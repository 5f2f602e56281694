#pragma once

#include <cstdint>
#include <vector>

#include "toricdyn/fans/fan.hpp"
#include "toricdyn/lattice/matrix.hpp"
#include "toricdyn/weights/displacement.hpp"

namespace toricdyn::dynamics {

/// Dominant monomial map of the torus given by an integer matrix acting on exponents.
class MonomialMap {
 public:
  /// Throws DIMENSION_MISMATCH for non-square input and SINGULAR when det psi = 0.
  explicit MonomialMap(lattice::IntegerMatrix psi);

  const lattice::IntegerMatrix& psi() const noexcept { return psi_; }
  int n() const noexcept { return static_cast<int>(psi_.rows()); }
  const BigInt& det() const noexcept { return det_; }

  MonomialMap power(unsigned l) const;

 private:
  lattice::IntegerMatrix psi_;
  BigInt det_;
};

/// Matrix of f^* on A^k((P^1)^n) in the basis c_alpha, |alpha| = n-k, lexicographic.
struct PullbackMatrix {
  int n = 0;
  int k = 0;
  std::vector<lattice::IndexSet> basis;
  lattice::IntegerMatrix entries;
};

/// entry(alpha, beta) = |det psi_{beta', alpha'}|.
PullbackMatrix pullback_matrix_closed(const MonomialMap& map, int k);

struct PipelineOptions {
  std::uint64_t seed = 0;
  bool smooth = false;
};

/// Refinement of a standard target compatible with psi, plus a generic vector for it.
/// Built once per psi and reused for every weight pushed through.
class PipelineContext {
 public:
  PipelineContext(const MonomialMap& map, weights::FanPtr target, PipelineOptions options = {});

  const weights::FanPtr& target() const noexcept { return target_; }
  const weights::FanPtr& refined() const noexcept { return refined_; }
  const weights::GenericVector& generic() const noexcept { return generic_; }

  /// Coordinates of pi_* f~^* c in the standard basis of A^k of the target.
  std::vector<BigInt> pull_push(const weights::MinkowskiWeight& c) const;
  /// pull_push applied to every standard basis weight of A^k; column j images basis j.
  lattice::IntegerMatrix pullback_matrix(int k) const;

 private:
  lattice::IntegerMatrix psi_;
  weights::FanPtr target_;
  weights::FanPtr refined_;
  weights::GenericVector generic_;
  weights::MeetFilter filter_;
};

/// Same matrix as the closed form, computed through refinement, pullback of weights,
/// and the fan displacement rule.
PullbackMatrix pullback_matrix_pipeline(const MonomialMap& map, int k, PipelineOptions options = {});

struct DegreeReport {
  int n = 0;
  BigInt det;
  std::vector<double> moduli;
  /// lambda_0 .. lambda_n.
  std::vector<double> lambdas;
  double entropy = 0.0;
  /// norm_sequences[k-1] holds the norm-growth sequence for k = 1..n.
  std::vector<std::vector<double>> norm_sequences;
};

DegreeReport dynamical_degrees(const MonomialMap& map, int lmax = 30);

/// deg_k of the Cremona involution on P^n for k = 0..n, through the full pipeline.
std::vector<BigInt> cremona_degrees(int n, PipelineOptions options = {});

struct GrowthFit {
  int n = 0;
  int k = 0;
  /// deg_k of f^l on P^n for l = 1..lmax.
  std::vector<BigInt> degrees;
  double lambda = 0.0;
  /// Least-squares fit of log deg - l log lambda = m log l + c.
  double m = 0.0;
  double c = 0.0;
  double residual_rms = 0.0;
  /// Fit rejected: residuals above 0.1 or m outside [-0.5, C(n,k) + 0.5].
  bool degenerate = false;
};

/// Runs the P^n pipeline afresh for every power of psi.
GrowthFit degree_growth_pn(const MonomialMap& map, int k, int lmax, PipelineOptions options = {});

}  // namespace toricdyn::dynamics
