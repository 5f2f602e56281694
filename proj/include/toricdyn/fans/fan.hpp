#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "toricdyn/fans/cone.hpp"
#include "toricdyn/lattice/matrix.hpp"

namespace toricdyn::fans {

/// Finite collection of cones in Z^n, ordered by (dim, key).
class Fan {
 public:
  Fan() = default;

  /// Closes the given cones under taking faces.
  static Fan from_maximal(std::size_t rank, const std::vector<Cone>& cones, bool complete);
  /// Keeps exactly the given cones; used to load and validate arbitrary input.
  static Fan from_cones(std::size_t rank, std::vector<Cone> cones, bool complete);

  std::size_t rank() const noexcept { return rank_; }
  bool complete() const noexcept { return complete_; }
  std::size_t size() const noexcept { return cones_.size(); }

  const std::vector<Cone>& cones() const noexcept { return cones_; }
  const Cone& cone(std::size_t i) const { return cones_.at(i); }
  const std::vector<std::size_t>& cones_of_dim(int d) const;
  const std::vector<std::size_t>& cones_of_codim(int k) const;
  /// Cones that are not a facet of another cone of the fan.
  const std::vector<std::size_t>& maximal() const noexcept { return maximal_; }
  /// Cones of one dimension more having cone i as a facet.
  const std::vector<std::size_t>& cofacets(std::size_t i) const { return cofacets_.at(i); }

  /// Position of cone i among the cones of its dimension.
  std::size_t position_in_dim(std::size_t i) const { return i - by_dim_[cones_.at(i).dim()].front(); }

  std::optional<std::size_t> find(const ConeKey& key) const;
  /// Lowest-dimensional cone containing every point; nullopt when none does.
  std::optional<std::size_t> smallest_containing(const std::vector<LatticeVector>& points) const;

  /// Distinct rays of the fan, sorted.
  std::vector<LatticeVector> rays() const;

 private:
  void index();

  std::size_t rank_ = 0;
  bool complete_ = false;
  std::vector<Cone> cones_;
  std::vector<std::vector<std::size_t>> by_dim_;
  std::vector<std::vector<std::size_t>> cofacets_;
  std::vector<std::size_t> maximal_;
  std::map<ConeKey, std::size_t> lookup_;
};

enum class ViolationKind { FaceClosure, Intersection, Incomplete };

std::string to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::vector<ConeKey> witnesses;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const noexcept { return violations.empty(); }
};

/// Face closure, pairwise intersections, and (if flagged) completeness.
ValidationReport fan_validate(const Fan& fan, std::uint64_t seed = 0);

Fan fan_p1n(int n);
Fan fan_pn(int n);

enum class StandardFan { None, ProductOfLines, ProjectiveSpace };
/// Recognizes fan_p1n(n) and fan_pn(n) by their cone sets; P^1 reports ProductOfLines.
StandardFan identify_standard(const Fan& fan);

/// True iff psi maps every cone of src into a single cone of dst.
bool is_compatible(const Fan& src, const lattice::IntegerMatrix& psi, const Fan& dst);

struct RefinementOptions {
  bool smooth = false;
};

/// Complete simplicial refinement of fan on which psi is compatible with fan.
Fan common_refinement(const Fan& fan, const lattice::IntegerMatrix& psi, RefinementOptions options = {});

/// Pulling triangulation of every non-simplicial cone over its own rays.
Fan simplicialize(const Fan& fan);

/// Stellar subdivisions until every maximal cone is unimodular. Requires a simplicial fan.
Fan smooth(const Fan& fan);

/// |det| of the rays of a full-dimensional simplicial cone.
BigInt multiplicity(const Cone& cone);

}  // namespace toricdyn::fans
