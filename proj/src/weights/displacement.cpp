#include "toricdyn/weights/displacement.hpp"

#include <algorithm>
#include <random>
#include <string>
#include <utility>

#include "toricdyn/lattice/smith.hpp"

namespace toricdyn::weights {

using fans::Cone;
using fans::Fan;
using fans::Meet;

MeetFilter::MeetFilter(const Fan& fan) : n_(fan.rank()) {
  const int n = static_cast<int>(n_);
  if (n <= 6) {
    std::vector<int> u(n, -1);
    while (true) {
      auto first = std::find_if(u.begin(), u.end(), [](int x) { return x != 0; });
      if (first != u.end() && *first == 1) covectors_.push_back(u);
      int i = 0;
      while (i < n && u[i] == 1) u[i++] = -1;
      if (i == n) break;
      ++u[i];
    }
  } else {
    for (int i = 0; i < n; ++i) {
      std::vector<int> e(n, 0);
      e[i] = 1;
      covectors_.push_back(e);
    }
  }
  cones_.reserve(fan.size());
  for (const auto& c : fan.cones()) cones_.push_back(profile(c.rays()));
}

MeetFilter::Profile MeetFilter::profile(const std::vector<LatticeVector>& points) const {
  const std::size_t words = (covectors_.size() + 63) / 64;
  Profile p{std::vector<std::uint64_t>(words), std::vector<std::uint64_t>(words)};
  BigInt s;
  for (std::size_t j = 0; j < covectors_.size(); ++j) {
    const auto& u = covectors_[j];
    for (const auto& x : points) {
      s = 0;
      for (std::size_t i = 0; i < n_; ++i) {
        if (u[i] > 0) s += x[i];
        else if (u[i] < 0) s -= x[i];
      }
      if (s > 0) p.pos[j / 64] |= std::uint64_t{1} << (j % 64);
      if (s < 0) p.neg[j / 64] |= std::uint64_t{1} << (j % 64);
    }
  }
  return p;
}

MeetFilter::Profile MeetFilter::vector(const LatticeVector& v) const {
  if (v.size() != n_) throw Error(ErrorKind::DimensionMismatch, "vector length differs from fan rank");
  return profile({v});
}

bool MeetFilter::may_meet(const Profile& sigma, const Profile& tau, const Profile& v) const {
  for (std::size_t w = 0; w < v.pos.size(); ++w) {
    if (v.pos[w] & ~(sigma.pos[w] | tau.neg[w])) return false;
    if (v.neg[w] & ~(sigma.neg[w] | tau.pos[w])) return false;
  }
  return true;
}

namespace {

bool generic_with(const Fan& fan, const MeetFilter& filter, const LatticeVector& v) {
  const int n = static_cast<int>(fan.rank());
  const auto vp = filter.vector(v);
  bool generic = true;
  for (int d = 0; d <= n && generic; ++d) {
    const auto& left = fan.cones_of_dim(d);
    const auto& right = fan.cones_of_dim(n - d);
    const long count = static_cast<long>(left.size());
#pragma omp parallel for schedule(dynamic, 8) reduction(&& : generic)
    for (long a = 0; a < count; ++a) {
      const auto s = left[a];
      for (auto t : right) {
        if (!filter.may_meet(filter.cone(s), filter.cone(t), vp)) continue;
        if (fans::translated_meet(fan.cone(s), fan.cone(t), v).kind == Meet::Kind::Degenerate) {
          generic = false;
          break;
        }
      }
    }
  }
  return generic;
}

struct Term {
  std::size_t cone;
  const BigInt* value;
};

std::vector<Term> support(const MinkowskiWeight& c) {
  std::vector<Term> out;
  const auto& cones = c.cones();
  for (std::size_t i = 0; i < cones.size(); ++i)
    if (c.values()[i] != 0) out.push_back({cones[i], &c.values()[i]});
  return out;
}

void check_pair(const MinkowskiWeight& c1, const MinkowskiWeight& c2, const LatticeVector& v) {
  if (c1.fan().cones() != c2.fan().cones()) throw Error(ErrorKind::DimensionMismatch, "weights live on different fans");
  if (c1.codim() + c2.codim() != static_cast<int>(c1.fan().rank()))
    throw Error(ErrorKind::DimensionMismatch, "codimensions are not complementary");
  if (v.size() != c1.fan().rank()) throw Error(ErrorKind::DimensionMismatch, "vector length differs from fan rank");
}

// Contribution of one pair; false when the meet is degenerate.
bool accumulate(const Cone& sigma, const Cone& tau, const BigInt& a, const BigInt& b, const LatticeVector& v,
                BigInt& sum) {
  auto meet = fans::translated_meet(sigma, tau, v);
  if (meet.kind == Meet::Kind::Degenerate) return false;
  if (meet.kind == Meet::Kind::Point) {
    auto index = lattice::lattice_index_sum(sigma.lattice_basis(), tau.lattice_basis(), sigma.ambient_dim());
    sum += *index * a * b;
  }
  return true;
}

[[noreturn]] void genericity_failure(const Cone& sigma, const Cone& tau, const LatticeVector& v) {
  auto keys = [](const Cone& c) {
    std::string s = "{";
    for (const auto& r : c.rays()) {
      s += "(";
      for (std::size_t i = 0; i < r.size(); ++i) s += (i ? "," : "") + r[i].get_str();
      s += ")";
    }
    return s + "}";
  };
  std::string vs;
  for (std::size_t i = 0; i < v.size(); ++i) vs += (i ? "," : "") + v[i].get_str();
  throw Error(ErrorKind::GenericityFailure,
              "translate by (" + vs + ") meets cones " + keys(sigma) + " and " + keys(tau) + " degenerately");
}

}  // namespace

bool is_generic(const Fan& fan, const LatticeVector& v) { return generic_with(fan, MeetFilter(fan), v); }

GenericVector pick_generic_vector(const std::vector<FanPtr>& fan_list, std::uint64_t seed) {
  if (fan_list.empty()) throw Error(ErrorKind::InvalidInput, "no fans supplied");
  const std::size_t n = fan_list.front()->rank();
  std::vector<MeetFilter> filters;
  for (const auto& f : fan_list) {
    if (f->rank() != n) throw Error(ErrorKind::DimensionMismatch, "fans of different rank");
    filters.emplace_back(*f);
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> coord(-1000000, 1000000);
  GenericVector out;
  out.seed = seed;
  for (std::size_t rejected = 0; rejected < 1000;) {
    LatticeVector v(n);
    for (auto& x : v) x = coord(rng);
    ++out.attempts;
    bool ok = true;
    for (std::size_t i = 0; i < fan_list.size() && ok; ++i) ok = generic_with(*fan_list[i], filters[i], v);
    if (ok) {
      out.v = std::move(v);
      return out;
    }
    ++rejected;
  }
  throw Error(ErrorKind::Exhausted, "no generic vector after 1000 rejections");
}

BigInt cup_at_zero(const MinkowskiWeight& c1, const MinkowskiWeight& c2, const LatticeVector& v,
                   const MeetFilter& filter) {
  check_pair(c1, c2, v);
  const Fan& fan = c1.fan();
  const auto left = support(c1);
  const auto right = support(c2);
  const auto vp = filter.vector(v);

  BigInt total = 0;
  long bad_sigma = -1, bad_tau = -1;
  const long count = static_cast<long>(left.size());
#pragma omp parallel
  {
    BigInt local = 0;
#pragma omp for schedule(dynamic, 4) nowait
    for (long a = 0; a < count; ++a) {
      const Cone& sigma = fan.cone(left[a].cone);
      for (const auto& t : right) {
        if (!filter.may_meet(filter.cone(left[a].cone), filter.cone(t.cone), vp)) continue;
        if (!accumulate(sigma, fan.cone(t.cone), *left[a].value, *t.value, v, local)) {
#pragma omp critical(toricdyn_cup_failure)
          {
            const auto s = static_cast<long>(left[a].cone), u = static_cast<long>(t.cone);
            if (bad_sigma < 0 || std::pair(s, u) < std::pair(bad_sigma, bad_tau)) {
              bad_sigma = s;
              bad_tau = u;
            }
          }
        }
      }
    }
#pragma omp critical(toricdyn_cup_sum)
    total += local;
  }
  if (bad_sigma >= 0) genericity_failure(fan.cone(bad_sigma), fan.cone(bad_tau), v);
  return total;
}

BigInt cup_at_zero(const MinkowskiWeight& c1, const MinkowskiWeight& c2, const LatticeVector& v) {
  return cup_at_zero(c1, c2, v, MeetFilter(c1.fan()));
}

namespace reference {

BigInt cup_at_zero(const MinkowskiWeight& c1, const MinkowskiWeight& c2, const LatticeVector& v) {
  check_pair(c1, c2, v);
  const Fan& fan = c1.fan();
  BigInt total = 0;
  for (const auto& s : support(c1))
    for (const auto& t : support(c2))
      if (!accumulate(fan.cone(s.cone), fan.cone(t.cone), *s.value, *t.value, v, total))
        genericity_failure(fan.cone(s.cone), fan.cone(t.cone), v);
  return total;
}

}  // namespace reference

std::vector<BigInt> pushforward_to_target(const MinkowskiWeight& c, const DualBasis& basis, const LatticeVector& v,
                                          const MeetFilter& filter) {
  if (basis.kind == fans::StandardFan::None) throw Error(ErrorKind::UnsupportedTarget, "no dual basis for target");
  if (c.codim() != basis.k) throw Error(ErrorKind::DimensionMismatch, "weight codim differs from basis degree");
  const auto identity = lattice::IntegerMatrix::identity(c.fan().rank());
  std::vector<BigInt> coords;
  coords.reserve(basis.elements.size());
  for (const auto& e : basis.elements) {
    auto dual = pullback_along_morphism(identity, c.fan_ptr(), e.dual_class);
    coords.push_back(cup_at_zero(c, dual, v, filter));
  }
  return coords;
}

std::vector<BigInt> pushforward_to_target(const MinkowskiWeight& c, const DualBasis& basis,
                                          const LatticeVector& v) {
  return pushforward_to_target(c, basis, v, MeetFilter(c.fan()));
}

}  // namespace toricdyn::weights
