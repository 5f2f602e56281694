#pragma once

#include <compare>
#include <optional>
#include <vector>

#include "toricdyn/lattice/matrix.hpp"

namespace toricdyn::fans {

/// Canonical identity of a cone: its primitive ray generators, sorted lexicographically.
using ConeKey = std::vector<LatticeVector>;

/// Strongly convex rational polyhedral cone in Z^n, held in both descriptions.
class Cone {
 public:
  Cone() = default;

  std::size_t ambient_dim() const noexcept { return n_; }
  int dim() const noexcept { return dim_; }
  int codim() const noexcept { return static_cast<int>(n_) - dim_; }

  const std::vector<LatticeVector>& rays() const noexcept { return rays_; }
  const ConeKey& key() const noexcept { return rays_; }
  /// Lattice basis of the orthogonal complement of the span.
  const std::vector<LatticeVector>& equations() const noexcept { return equations_; }
  /// Inward facet normals, one per facet, taken modulo the equations.
  const std::vector<LatticeVector>& facet_normals() const noexcept { return facets_; }
  /// Lattice basis of N_sigma = span(sigma) intersected with Z^n.
  const std::vector<LatticeVector>& lattice_basis() const noexcept { return lattice_basis_; }

  bool is_simplicial() const noexcept { return rays_.size() == static_cast<std::size_t>(dim_); }
  bool is_zero() const noexcept { return dim_ == 0; }

  bool contains(const LatticeVector& x) const;
  bool contains(const RationalVector& x) const;
  bool contains(const Cone& other) const;
  bool contains_in_relative_interior(const LatticeVector& x) const;

  /// Indices of the rays lying on each facet, aligned with facet_normals().
  std::vector<std::vector<std::size_t>> facet_ray_sets() const;
  std::vector<Cone> facets() const;

  /// True when this cone is a face of other (including other itself).
  bool is_face_of(const Cone& other) const;

  friend bool operator==(const Cone& a, const Cone& b) { return a.n_ == b.n_ && a.rays_ == b.rays_; }
  friend auto operator<=>(const Cone& a, const Cone& b) {
    if (a.dim_ != b.dim_) return a.dim_ <=> b.dim_;
    if (a.rays_ < b.rays_) return std::strong_ordering::less;
    if (b.rays_ < a.rays_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  friend Cone make_cone(const std::vector<LatticeVector>&, std::size_t);

  std::size_t n_ = 0;
  int dim_ = 0;
  std::vector<LatticeVector> rays_;
  std::vector<LatticeVector> equations_;
  std::vector<LatticeVector> facets_;
  std::vector<LatticeVector> lattice_basis_;
};

/// x in cone(gens), where gens may span lines.
bool in_generated_cone(const std::vector<LatticeVector>& gens, const LatticeVector& x, std::size_t n);

/// Canonical cone generated by raw vectors in Z^n. Throws NOT_STRONGLY_CONVEX.
Cone make_cone(const std::vector<LatticeVector>& raw_generators, std::size_t n);

/// {x : a.x >= 0, e.x = 0} as a cone; throws NOT_STRONGLY_CONVEX if it contains a line.
Cone cone_from_inequalities(const std::vector<LatticeVector>& inequalities,
                            const std::vector<LatticeVector>& equations, std::size_t n);

Cone cone_intersection(const Cone& a, const Cone& b);

/// n_{sigma,tau}: a lattice point of sigma whose class generates N_sigma / N_tau.
LatticeVector lattice_normal(const Cone& sigma, const Cone& tau);

struct Meet {
  enum class Kind { Empty, Point, Degenerate };
  Kind kind = Kind::Empty;
  RationalVector point;
  bool interior = false;
};

/// Intersection of sigma with tau + v for dim sigma + dim tau = n.
Meet translated_meet(const Cone& sigma, const Cone& tau, const LatticeVector& v);

/// Solves a x = b over Q for square nonsingular a; returns nullopt when singular.
std::optional<RationalVector> solve_rational(const lattice::IntegerMatrix& a, const LatticeVector& b);

}  // namespace toricdyn::fans
