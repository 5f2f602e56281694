#pragma once

#include <cstdint>
#include <vector>

#include "toricdyn/weights/minkowski_weight.hpp"

namespace toricdyn::weights {

struct GenericVector {
  LatticeVector v;
  std::uint64_t seed = 0;
  std::size_t attempts = 0;
};

/// Sign profiles of cones against the covectors in {-1,0,1}^n. A pair (sigma, tau)
/// can only meet after translation by v when every covector positive on v is
/// positive somewhere on sigma or negative somewhere on tau (and symmetrically).
/// Pairs rejected here are certainly EMPTY; survivors still get the exact test.
class MeetFilter {
 public:
  MeetFilter() = default;
  explicit MeetFilter(const fans::Fan& fan);

  struct Profile {
    std::vector<std::uint64_t> pos;
    std::vector<std::uint64_t> neg;
  };

  const Profile& cone(std::size_t index) const { return cones_.at(index); }
  Profile vector(const LatticeVector& v) const;
  bool may_meet(const Profile& sigma, const Profile& tau, const Profile& v) const;

 private:
  Profile profile(const std::vector<LatticeVector>& points) const;

  std::size_t n_ = 0;
  std::vector<std::vector<int>> covectors_;
  std::vector<Profile> cones_;
};

/// Seeded search for v whose translate meets no complementary pair of any given fan
/// non-transversally. Throws EXHAUSTED after 1000 rejections.
GenericVector pick_generic_vector(const std::vector<FanPtr>& fans, std::uint64_t seed);

/// True when no complementary cone pair of fan meets degenerately after translation by v.
bool is_generic(const fans::Fan& fan, const LatticeVector& v);

/// Fan displacement rule: sum of [N : N_sigma + N_tau] c1(sigma) c2(tau) over pairs
/// with sigma meeting tau + v in a point of both relative interiors. Pairs are
/// split across threads. Throws GENERICITY_FAILURE on a degenerate meet.
BigInt cup_at_zero(const MinkowskiWeight& c1, const MinkowskiWeight& c2, const LatticeVector& v);
BigInt cup_at_zero(const MinkowskiWeight& c1, const MinkowskiWeight& c2, const LatticeVector& v,
                   const MeetFilter& filter);

namespace reference {
/// Serial displacement sum over every nonzero pair, without the meet filter.
BigInt cup_at_zero(const MinkowskiWeight& c1, const MinkowskiWeight& c2, const LatticeVector& v);
}  // namespace reference

/// Coordinates of pi_* c in the standard basis of the target, where pi is induced by the
/// identity of N from the fan of c to basis.target. Each coordinate is the cup of c with
/// the pulled-back dual class.
std::vector<BigInt> pushforward_to_target(const MinkowskiWeight& c, const DualBasis& basis,
                                          const LatticeVector& v);
std::vector<BigInt> pushforward_to_target(const MinkowskiWeight& c, const DualBasis& basis,
                                          const LatticeVector& v, const MeetFilter& filter);

}  // namespace toricdyn::weights
