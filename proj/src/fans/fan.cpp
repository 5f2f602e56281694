#include "toricdyn/fans/fan.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "toricdyn/lattice/smith.hpp"

namespace toricdyn::fans {

namespace {

ConeKey facet_key(const Cone& c, const std::vector<std::size_t>& idx) {
  ConeKey key;
  key.reserve(idx.size());
  for (auto i : idx) key.push_back(c.rays()[i]);
  return key;
}

LatticeVector unit(std::size_t n, std::size_t i, long sign = 1) {
  LatticeVector e(n);
  e[i] = sign;
  return e;
}

}  // namespace

Fan Fan::from_maximal(std::size_t rank, const std::vector<Cone>& cones, bool complete) {
  std::map<ConeKey, Cone> closed;
  std::vector<Cone> work;
  for (const auto& c : cones) {
    if (c.ambient_dim() != rank) throw Error(ErrorKind::DimensionMismatch, "cone rank differs from fan rank");
    work.push_back(c);
  }
  while (!work.empty()) {
    Cone c = std::move(work.back());
    work.pop_back();
    if (closed.count(c.key())) continue;
    for (const auto& idx : c.facet_ray_sets()) {
      ConeKey key = facet_key(c, idx);
      if (closed.count(key)) continue;
      work.push_back(make_cone(key, rank));
    }
    ConeKey key = c.key();
    closed.emplace(std::move(key), std::move(c));
  }
  std::vector<Cone> all;
  all.reserve(closed.size());
  for (auto& [key, c] : closed) all.push_back(std::move(c));
  return from_cones(rank, std::move(all), complete);
}

Fan Fan::from_cones(std::size_t rank, std::vector<Cone> cones, bool complete) {
  Fan f;
  f.rank_ = rank;
  f.complete_ = complete;
  for (const auto& c : cones)
    if (c.ambient_dim() != rank) throw Error(ErrorKind::DimensionMismatch, "cone rank differs from fan rank");
  std::sort(cones.begin(), cones.end());
  cones.erase(std::unique(cones.begin(), cones.end()), cones.end());
  f.cones_ = std::move(cones);
  f.index();
  return f;
}

void Fan::index() {
  by_dim_.assign(rank_ + 1, {});
  cofacets_.assign(cones_.size(), {});
  lookup_.clear();
  for (std::size_t i = 0; i < cones_.size(); ++i) {
    by_dim_[cones_[i].dim()].push_back(i);
    lookup_.emplace(cones_[i].key(), i);
  }
  for (std::size_t i = 0; i < cones_.size(); ++i)
    for (const auto& idx : cones_[i].facet_ray_sets()) {
      auto hit = lookup_.find(facet_key(cones_[i], idx));
      if (hit != lookup_.end()) cofacets_[hit->second].push_back(i);
    }
  maximal_.clear();
  for (std::size_t i = 0; i < cones_.size(); ++i)
    if (cofacets_[i].empty()) maximal_.push_back(i);
}

const std::vector<std::size_t>& Fan::cones_of_dim(int d) const {
  if (d < 0 || static_cast<std::size_t>(d) > rank_) throw Error(ErrorKind::OutOfRange, "cone dimension out of range");
  return by_dim_[d];
}

const std::vector<std::size_t>& Fan::cones_of_codim(int k) const {
  return cones_of_dim(static_cast<int>(rank_) - k);
}

std::optional<std::size_t> Fan::find(const ConeKey& key) const {
  auto hit = lookup_.find(key);
  if (hit == lookup_.end()) return std::nullopt;
  return hit->second;
}

std::optional<std::size_t> Fan::smallest_containing(const std::vector<LatticeVector>& points) const {
  for (const auto& layer : by_dim_)
    for (auto i : layer)
      if (std::all_of(points.begin(), points.end(), [&](const LatticeVector& p) { return cones_[i].contains(p); }))
        return i;
  return std::nullopt;
}

std::vector<LatticeVector> Fan::rays() const {
  std::vector<LatticeVector> out;
  if (by_dim_.size() > 1)
    for (auto i : by_dim_[1]) out.push_back(cones_[i].rays().front());
  std::sort(out.begin(), out.end());
  return out;
}

std::string to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::FaceClosure: return "FACE_CLOSURE";
    case ViolationKind::Intersection: return "INTERSECTION";
    case ViolationKind::Incomplete: return "INCOMPLETE";
  }
  return "UNKNOWN";
}

ValidationReport fan_validate(const Fan& fan, std::uint64_t seed) {
  ValidationReport report;
  const auto& cones = fan.cones();
  const std::size_t n = fan.rank();

  for (const auto& c : cones)
    for (const auto& idx : c.facet_ray_sets()) {
      ConeKey key = facet_key(c, idx);
      if (!fan.find(key)) report.violations.push_back({ViolationKind::FaceClosure, {c.key(), key}, "missing facet"});
    }

  const auto& maximal = fan.maximal();
  for (std::size_t a = 0; a < maximal.size(); ++a)
    for (std::size_t b = a + 1; b < maximal.size(); ++b) {
      const Cone& x = cones[maximal[a]];
      const Cone& y = cones[maximal[b]];
      Cone meet = cone_intersection(x, y);
      if (!meet.is_face_of(x) || !meet.is_face_of(y))
        report.violations.push_back(
            {ViolationKind::Intersection, {x.key(), y.key()}, "intersection is not a common face"});
    }

  if (!fan.complete()) return report;

  const auto& top = fan.cones_of_dim(static_cast<int>(n));
  if (top.empty()) {
    report.violations.push_back({ViolationKind::Incomplete, {}, "no full-dimensional cone"});
    return report;
  }
  for (auto i : fan.cones_of_codim(1)) {
    std::size_t count = 0;
    for (auto j : fan.cofacets(i))
      if (cones[j].dim() == static_cast<int>(n)) ++count;
    if (count != 2)
      report.violations.push_back({ViolationKind::Incomplete, {cones[i].key()},
                                   "codimension-one cone lies in " + std::to_string(count) + " maximal cones"});
  }

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> coord(-1000000, 1000000);
  std::size_t samples = 10;
  for (std::size_t i = 0; i < n; ++i) samples *= 3;
  for (std::size_t s = 0; s < samples; ++s) {
    LatticeVector d(n);
    for (auto& x : d) x = coord(rng);
    bool covered = std::any_of(top.begin(), top.end(), [&](std::size_t i) { return cones[i].contains(d); });
    if (!covered) {
      report.violations.push_back({ViolationKind::Incomplete, {{d}}, "sampled direction lies in no cone"});
      break;
    }
  }
  return report;
}

Fan fan_p1n(int n) {
  if (n < 1) throw Error(ErrorKind::OutOfRange, "fan_p1n requires n >= 1");
  const auto rank = static_cast<std::size_t>(n);
  std::vector<Cone> top;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    std::vector<LatticeVector> gens;
    for (std::size_t i = 0; i < rank; ++i) gens.push_back(unit(rank, i, (mask >> i) & 1u ? -1 : 1));
    top.push_back(make_cone(gens, rank));
  }
  return Fan::from_maximal(rank, top, true);
}

Fan fan_pn(int n) {
  if (n < 1) throw Error(ErrorKind::OutOfRange, "fan_pn requires n >= 1");
  const auto rank = static_cast<std::size_t>(n);
  std::vector<LatticeVector> rays(rank + 1, LatticeVector(rank));
  for (std::size_t i = 0; i < rank; ++i) {
    rays[0][i] = -1;
    rays[i + 1][i] = 1;
  }
  std::vector<Cone> top;
  for (std::size_t skip = 0; skip <= rank; ++skip) {
    std::vector<LatticeVector> gens;
    for (std::size_t i = 0; i <= rank; ++i)
      if (i != skip) gens.push_back(rays[i]);
    top.push_back(make_cone(gens, rank));
  }
  return Fan::from_maximal(rank, top, true);
}

StandardFan identify_standard(const Fan& fan) {
  if (fan.rank() == 0 || !fan.complete()) return StandardFan::None;
  const int n = static_cast<int>(fan.rank());
  auto same = [&](const Fan& other) {
    if (other.size() != fan.size()) return false;
    for (std::size_t i = 0; i < fan.size(); ++i)
      if (!(other.cone(i) == fan.cone(i))) return false;
    return true;
  };
  const std::size_t p1n_size = [&] {
    std::size_t s = 1;
    for (int i = 0; i < n; ++i) s *= 3;
    return s;
  }();
  if (fan.size() == p1n_size && same(fan_p1n(n))) return StandardFan::ProductOfLines;
  if (fan.size() == (std::size_t{2} << n) - 1 && same(fan_pn(n))) return StandardFan::ProjectiveSpace;
  return StandardFan::None;
}

bool is_compatible(const Fan& src, const lattice::IntegerMatrix& psi, const Fan& dst) {
  if (!psi.is_square() || psi.rows() != src.rank() || src.rank() != dst.rank())
    throw Error(ErrorKind::DimensionMismatch, "psi and fan ranks disagree");
  for (auto i : src.maximal()) {
    std::vector<LatticeVector> images;
    for (const auto& r : src.cone(i).rays()) images.push_back(psi * r);
    if (!dst.smallest_containing(images)) return false;
  }
  return true;
}

BigInt multiplicity(const Cone& cone) {
  if (!cone.is_simplicial()) throw Error(ErrorKind::InvalidInput, "multiplicity needs a simplicial cone");
  if (cone.is_zero()) return 1;
  auto snf = lattice::smith_normal_form(lattice::IntegerMatrix::from_columns(cone.rays(), cone.ambient_dim()));
  BigInt m = 1;
  for (const auto& d : snf.invariant_factors())
    if (d != 0) m *= d;
  return m;
}

}  // namespace toricdyn::fans
