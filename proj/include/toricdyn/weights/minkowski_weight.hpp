#pragma once

#include <memory>
#include <vector>

#include "toricdyn/fans/fan.hpp"
#include "toricdyn/lattice/matrix.hpp"

namespace toricdyn::weights {

using FanPtr = std::shared_ptr<const fans::Fan>;

/// Integer function on the codimension-k cones of a fan. Values are stored in the
/// order of fan.cones_of_codim(k).
class MinkowskiWeight {
 public:
  MinkowskiWeight(FanPtr fan, int codim);
  MinkowskiWeight(FanPtr fan, int codim, std::vector<BigInt> values);

  const fans::Fan& fan() const noexcept { return *fan_; }
  const FanPtr& fan_ptr() const noexcept { return fan_; }
  int codim() const noexcept { return codim_; }

  /// Cone indices carrying a value, aligned with values().
  const std::vector<std::size_t>& cones() const { return fan_->cones_of_codim(codim_); }
  const std::vector<BigInt>& values() const noexcept { return values_; }

  /// Value on the cone with the given fan index, which must have codimension k.
  const BigInt& at(std::size_t cone_index) const;
  BigInt& at(std::size_t cone_index);
  BigInt value(const fans::ConeKey& key) const;

  bool is_zero() const;

  MinkowskiWeight& operator+=(const MinkowskiWeight& other);
  friend MinkowskiWeight operator+(MinkowskiWeight a, const MinkowskiWeight& b) { return a += b; }
  friend MinkowskiWeight operator*(const BigInt& s, MinkowskiWeight a) {
    for (auto& v : a.values_) v *= s;
    return a;
  }
  friend bool operator==(const MinkowskiWeight& a, const MinkowskiWeight& b) {
    return a.codim_ == b.codim_ && a.fan_->cones() == b.fan_->cones() && a.values_ == b.values_;
  }

 private:
  std::size_t slot(std::size_t cone_index) const;

  FanPtr fan_;
  int codim_;
  std::vector<BigInt> values_;
};

struct BalancingViolation {
  fans::ConeKey tau;
  LatticeVector u;
  BigInt sum;
};

struct WeightReport {
  std::vector<BalancingViolation> violations;
  bool ok() const noexcept { return violations.empty(); }
};

/// Checks sum over sigma > tau of <u, n_{sigma,tau}> c(sigma) = 0 for every tau of
/// codimension k+1 and every u in a lattice basis of tau-perp.
WeightReport verify_weight(const MinkowskiWeight& c);

/// One basis weight of A^k of a standard target, with its Poincare-dual data.
struct BasisElement {
  lattice::IndexSet label;
  MinkowskiWeight weight;
  /// Cone of codimension n-k whose orbit closure is dual to weight.
  fans::ConeKey dual_cone;
  /// Weight of codimension n-k pairing to one with weight and to zero with the others.
  MinkowskiWeight dual_class;
};

struct DualBasis {
  FanPtr target;
  fans::StandardFan kind = fans::StandardFan::None;
  int k = 0;
  std::vector<BasisElement> elements;
};

/// c_alpha for |alpha| = n-k on (P^1)^n, or the constant weight c_k on P^n.
/// Throws UNSUPPORTED_TARGET for other fans.
DualBasis standard_weight_basis(const FanPtr& target, int k);

/// (psi^* c)(tau') = [N : psi(N) + N_tau] c(tau) for tau the smallest cone of dst
/// containing psi(tau'), when tau has codimension k; zero otherwise.
MinkowskiWeight pullback_along_morphism(const lattice::IntegerMatrix& psi, const FanPtr& src,
                                        const MinkowskiWeight& c);

}  // namespace toricdyn::weights
