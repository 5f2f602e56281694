#include "toricdyn/weights/minkowski_weight.hpp"

#include <algorithm>
#include <map>

#include "toricdyn/lattice/minors.hpp"
#include "toricdyn/lattice/smith.hpp"

namespace toricdyn::weights {

using fans::Cone;
using fans::Fan;

MinkowskiWeight::MinkowskiWeight(FanPtr fan, int codim) : fan_(std::move(fan)), codim_(codim) {
  if (!fan_) throw Error(ErrorKind::InvalidInput, "weight without a fan");
  if (codim_ < 0 || codim_ > static_cast<int>(fan_->rank())) throw Error(ErrorKind::OutOfRange, "codim out of range");
  values_.assign(cones().size(), BigInt(0));
}

MinkowskiWeight::MinkowskiWeight(FanPtr fan, int codim, std::vector<BigInt> values) : MinkowskiWeight(std::move(fan), codim) {
  if (values.size() != values_.size())
    throw Error(ErrorKind::DimensionMismatch, "value count differs from the number of codim-k cones");
  values_ = std::move(values);
}

std::size_t MinkowskiWeight::slot(std::size_t cone_index) const {
  if (fan_->cone(cone_index).codim() != codim_) throw Error(ErrorKind::InvalidInput, "cone has the wrong codimension");
  return fan_->position_in_dim(cone_index);
}

const BigInt& MinkowskiWeight::at(std::size_t cone_index) const { return values_[slot(cone_index)]; }
BigInt& MinkowskiWeight::at(std::size_t cone_index) { return values_[slot(cone_index)]; }

BigInt MinkowskiWeight::value(const fans::ConeKey& key) const {
  auto i = fan_->find(key);
  if (!i) throw Error(ErrorKind::InvalidInput, "cone is not in the fan");
  return at(*i);
}

bool MinkowskiWeight::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](const BigInt& v) { return v == 0; });
}

MinkowskiWeight& MinkowskiWeight::operator+=(const MinkowskiWeight& other) {
  if (codim_ != other.codim_ || fan_->cones() != other.fan_->cones())
    throw Error(ErrorKind::DimensionMismatch, "weights live on different fans or codimensions");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

WeightReport verify_weight(const MinkowskiWeight& c) {
  WeightReport report;
  const Fan& fan = c.fan();
  const int n = static_cast<int>(fan.rank());
  if (c.codim() + 1 > n) return report;
  for (auto t : fan.cones_of_codim(c.codim() + 1)) {
    const Cone& tau = fan.cone(t);
    std::vector<std::size_t> support;
    for (auto s : fan.cofacets(t))
      if (c.at(s) != 0) support.push_back(s);
    if (support.empty()) continue;
    std::vector<LatticeVector> normals;
    for (auto s : support) normals.push_back(fans::lattice_normal(fan.cone(s), tau));
    for (const auto& u : lattice::integer_kernel(tau.rays(), fan.rank())) {
      BigInt sum = 0;
      for (std::size_t j = 0; j < support.size(); ++j) sum += lattice::dot(u, normals[j]) * c.at(support[j]);
      if (sum != 0) report.violations.push_back({tau.key(), u, sum});
    }
  }
  return report;
}

namespace {

LatticeVector unit(std::size_t n, int i) {
  LatticeVector e(n);
  e[i] = 1;
  return e;
}

// c_alpha on (P^1)^n: one on codim-k cones spanned by +-e_i with i in alpha.
MinkowskiWeight coordinate_weight(const FanPtr& fan, const lattice::IndexSet& alpha) {
  const int n = static_cast<int>(fan->rank());
  MinkowskiWeight w(fan, n - static_cast<int>(alpha.size()));
  for (auto i : w.cones()) {
    bool inside = true;
    for (const auto& r : fan->cone(i).rays())
      for (int j = 0; j < n && inside; ++j)
        if (r[j] != 0 && !alpha.contains(j)) inside = false;
    if (inside) w.at(i) = 1;
  }
  return w;
}

MinkowskiWeight constant_weight(const FanPtr& fan, int k) {
  return MinkowskiWeight(fan, k, std::vector<BigInt>(fan->cones_of_codim(k).size(), BigInt(1)));
}

}  // namespace

DualBasis standard_weight_basis(const FanPtr& target, int k) {
  const int n = static_cast<int>(target->rank());
  if (k < 0 || k > n) throw Error(ErrorKind::OutOfRange, "k out of range");
  DualBasis basis;
  basis.target = target;
  basis.k = k;
  basis.kind = fans::identify_standard(*target);
  switch (basis.kind) {
    case fans::StandardFan::ProductOfLines:
      for (const auto& alpha : lattice::k_subsets(n, n - k)) {
        auto comp = alpha.complement(n);
        fans::ConeKey dual;
        for (int i : comp.elements()) dual.push_back(unit(n, i));
        std::sort(dual.begin(), dual.end());
        basis.elements.push_back({alpha, coordinate_weight(target, alpha), dual, coordinate_weight(target, comp)});
      }
      break;
    case fans::StandardFan::ProjectiveSpace: {
      fans::ConeKey dual;
      for (int i = 0; i < k; ++i) dual.push_back(unit(n, i));
      std::sort(dual.begin(), dual.end());
      basis.elements.push_back({lattice::IndexSet{}, constant_weight(target, k), dual, constant_weight(target, n - k)});
      break;
    }
    case fans::StandardFan::None:
      throw Error(ErrorKind::UnsupportedTarget, "target is neither (P^1)^n nor P^n");
  }
  return basis;
}

MinkowskiWeight pullback_along_morphism(const lattice::IntegerMatrix& psi, const FanPtr& src,
                                        const MinkowskiWeight& c) {
  const Fan& dst = c.fan();
  const std::size_t n = dst.rank();
  if (!psi.is_square() || psi.rows() != n || src->rank() != n)
    throw Error(ErrorKind::DimensionMismatch, "psi and fan ranks disagree");
  if (lattice::determinant(psi) == 0) throw Error(ErrorKind::Singular, "det psi = 0");

  if (!fans::is_compatible(*src, psi, dst))
    throw Error(ErrorKind::Incompatible, "psi maps a cone of the source into no single cone of the target");

  std::vector<LatticeVector> psi_columns;
  for (std::size_t j = 0; j < n; ++j) psi_columns.push_back(psi.column(j));

  MinkowskiWeight out(src, c.codim());
  std::map<std::size_t, BigInt> index_cache;
  for (auto i : out.cones()) {
    std::vector<LatticeVector> images;
    for (const auto& r : src->cone(i).rays()) images.push_back(psi * r);
    auto target = dst.smallest_containing(images);
    if (!target) throw Error(ErrorKind::Incompatible, "image of a cone lies in no cone of the target");
    if (dst.cone(*target).codim() != c.codim()) continue;
    const BigInt& value = c.at(*target);
    if (value == 0) continue;
    auto hit = index_cache.find(*target);
    if (hit == index_cache.end()) {
      auto idx = lattice::lattice_index_sum(psi_columns, dst.cone(*target).lattice_basis(), n);
      hit = index_cache.emplace(*target, *idx).first;
    }
    out.at(i) = hit->second * value;
  }
  return out;
}

}  // namespace toricdyn::weights
