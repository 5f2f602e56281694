#include "toricdyn/fans/cone.hpp"

#include <algorithm>

#include "toricdyn/fans/double_description.hpp"
#include "toricdyn/lattice/minors.hpp"
#include "toricdyn/lattice/smith.hpp"

namespace toricdyn::fans {

using lattice::dot;
using lattice::IntegerMatrix;
using lattice::primitive;
using lattice::rank_of;

namespace {

Rational dot(const LatticeVector& a, const RationalVector& x) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += Rational(a[i]) * x[i];
  return s;
}

void check_length(const LatticeVector& v, std::size_t n) {
  if (v.size() != n) throw Error(ErrorKind::DimensionMismatch, "vector length differs from ambient rank");
}

std::vector<LatticeVector> with(std::vector<LatticeVector> a, const std::vector<LatticeVector>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace

bool in_generated_cone(const std::vector<LatticeVector>& gens, const LatticeVector& x, std::size_t n) {
  check_length(x, n);
  auto dual = double_description(gens, {}, n);
  for (const auto& l : dual.lineality)
    if (dot(l, x) != 0) return false;
  for (const auto& f : dual.rays)
    if (dot(f, x) < 0) return false;
  return true;
}

Cone make_cone(const std::vector<LatticeVector>& raw_generators, std::size_t n) {
  std::vector<LatticeVector> gens;
  for (const auto& g : raw_generators) {
    check_length(g, n);
    if (!lattice::is_zero(g)) gens.push_back(primitive(g));
  }
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());

  Cone c;
  c.n_ = n;
  c.equations_ = lattice::integer_kernel(gens, n);
  c.dim_ = static_cast<int>(n - c.equations_.size());
  if (gens.empty()) return c;

  c.facets_ = double_description(gens, {}, n).rays;
  if (rank_of(with(c.equations_, c.facets_), n) != n)
    throw Error(ErrorKind::NotStronglyConvex, "generators span a line");

  for (const auto& g : gens) {
    std::vector<LatticeVector> tight = c.equations_;
    for (const auto& f : c.facets_)
      if (dot(f, g) == 0) tight.push_back(f);
    if (rank_of(tight, n) == n - 1) c.rays_.push_back(g);
  }
  c.lattice_basis_ = lattice::saturated_basis(c.rays_, n);
  return c;
}

Cone cone_from_inequalities(const std::vector<LatticeVector>& inequalities,
                            const std::vector<LatticeVector>& equations, std::size_t n) {
  auto dd = double_description(inequalities, equations, n);
  if (!dd.lineality.empty()) throw Error(ErrorKind::NotStronglyConvex, "constraint system contains a line");
  return make_cone(dd.rays, n);
}

Cone cone_intersection(const Cone& a, const Cone& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw Error(ErrorKind::DimensionMismatch, "cones of different rank");
  return cone_from_inequalities(with(a.facet_normals(), b.facet_normals()),
                                with(a.equations(), b.equations()), a.ambient_dim());
}

bool Cone::contains(const LatticeVector& x) const {
  check_length(x, n_);
  for (const auto& e : equations_)
    if (dot(e, x) != 0) return false;
  for (const auto& f : facets_)
    if (dot(f, x) < 0) return false;
  return true;
}

bool Cone::contains(const RationalVector& x) const {
  if (x.size() != n_) throw Error(ErrorKind::DimensionMismatch, "vector length differs from ambient rank");
  for (const auto& e : equations_)
    if (dot(e, x) != 0) return false;
  for (const auto& f : facets_)
    if (dot(f, x) < 0) return false;
  return true;
}

bool Cone::contains(const Cone& other) const {
  return std::all_of(other.rays_.begin(), other.rays_.end(), [&](const LatticeVector& r) { return contains(r); });
}

bool Cone::contains_in_relative_interior(const LatticeVector& x) const {
  check_length(x, n_);
  for (const auto& e : equations_)
    if (dot(e, x) != 0) return false;
  for (const auto& f : facets_)
    if (dot(f, x) <= 0) return false;
  return true;
}

std::vector<std::vector<std::size_t>> Cone::facet_ray_sets() const {
  std::vector<std::vector<std::size_t>> out;
  out.reserve(facets_.size());
  for (const auto& f : facets_) {
    std::vector<std::size_t> on;
    for (std::size_t i = 0; i < rays_.size(); ++i)
      if (dot(f, rays_[i]) == 0) on.push_back(i);
    out.push_back(std::move(on));
  }
  return out;
}

std::vector<Cone> Cone::facets() const {
  std::vector<Cone> out;
  for (const auto& idx : facet_ray_sets()) {
    std::vector<LatticeVector> gens;
    for (auto i : idx) gens.push_back(rays_[i]);
    out.push_back(make_cone(gens, n_));
  }
  return out;
}

bool Cone::is_face_of(const Cone& other) const {
  if (n_ != other.n_ || !other.contains(*this)) return false;
  std::vector<const LatticeVector*> supporting;
  for (const auto& f : other.facets_)
    if (std::all_of(rays_.begin(), rays_.end(), [&](const LatticeVector& r) { return dot(f, r) == 0; }))
      supporting.push_back(&f);
  ConeKey face;
  for (const auto& r : other.rays_)
    if (std::all_of(supporting.begin(), supporting.end(), [&](const LatticeVector* f) { return dot(*f, r) == 0; }))
      face.push_back(r);
  return face == rays_;
}

LatticeVector lattice_normal(const Cone& sigma, const Cone& tau) {
  if (sigma.ambient_dim() != tau.ambient_dim()) throw Error(ErrorKind::DimensionMismatch, "cones of different rank");
  if (sigma.dim() != tau.dim() + 1) throw Error(ErrorKind::DimensionGap, "dim sigma must equal dim tau + 1");
  if (!tau.is_face_of(sigma)) throw Error(ErrorKind::InvalidInput, "tau is not a face of sigma");

  const std::size_t n = sigma.ambient_dim();
  const auto& basis = sigma.lattice_basis();
  const auto kernel = lattice::integer_kernel(tau.rays(), n);

  IntegerMatrix y(kernel.size(), basis.size());
  for (std::size_t j = 0; j < kernel.size(); ++j)
    for (std::size_t i = 0; i < basis.size(); ++i) y(j, i) = dot(kernel[j], basis[i]);
  const auto snf = lattice::smith_normal_form(y);
  if (snf.D(0, 0) != 1) throw std::logic_error("lattice_normal: quotient is not cyclic of order one");

  LatticeVector phi(n), w(n);
  for (std::size_t j = 0; j < kernel.size(); ++j)
    for (std::size_t c = 0; c < n; ++c) phi[c] += snf.U(0, j) * kernel[j][c];
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t c = 0; c < n; ++c) w[c] += snf.V(i, 0) * basis[i][c];

  for (const auto& r : sigma.rays()) {
    BigInt s = dot(phi, r);
    if (s == 0) continue;
    if (s < 0)
      for (auto& x : w) x = -x;
    break;
  }

  LatticeVector shift(n);
  for (const auto& r : tau.rays())
    for (std::size_t c = 0; c < n; ++c) shift[c] += r[c];
  BigInt m = 0;
  for (const auto& f : sigma.facet_normals()) {
    BigInt fw = dot(f, w);
    if (fw >= 0) continue;
    BigInt fs = dot(f, shift);
    if (fs <= 0) throw std::logic_error("lattice_normal: cannot move representative into sigma");
    BigInt need = (-fw + fs - 1) / fs;
    if (need > m) m = need;
  }
  for (std::size_t c = 0; c < n; ++c) w[c] += m * shift[c];
  return w;
}

std::optional<RationalVector> solve_rational(const IntegerMatrix& a, const LatticeVector& b) {
  const std::size_t n = a.rows();
  if (!a.is_square() || b.size() != n) throw Error(ErrorKind::DimensionMismatch, "solve_rational shape mismatch");
  std::vector<RationalVector> m(n, RationalVector(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = a(i, j);
    m[i][n] = b[i];
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    while (p < n && m[p][col] == 0) ++p;
    if (p == n) return std::nullopt;
    std::swap(m[p], m[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col] == 0) continue;
      Rational f = m[r][col] / m[col][col];
      for (std::size_t j = col; j <= n; ++j) m[r][j] -= f * m[col][j];
    }
  }
  RationalVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = m[i][n] / m[i][i];
  return x;
}

Meet translated_meet(const Cone& sigma, const Cone& tau, const LatticeVector& v) {
  const std::size_t n = sigma.ambient_dim();
  if (tau.ambient_dim() != n) throw Error(ErrorKind::DimensionMismatch, "cones of different rank");
  check_length(v, n);
  if (static_cast<std::size_t>(sigma.dim() + tau.dim()) != n)
    throw Error(ErrorKind::DimensionMismatch, "dim sigma + dim tau must equal the ambient rank");

  const auto& bs = sigma.lattice_basis();
  const auto& bt = tau.lattice_basis();
  IntegerMatrix m(n, n);
  for (std::size_t i = 0; i < bs.size(); ++i)
    for (std::size_t r = 0; r < n; ++r) m(r, i) = bs[i][r];
  for (std::size_t j = 0; j < bt.size(); ++j)
    for (std::size_t r = 0; r < n; ++r) m(r, bs.size() + j) = -bt[j][r];

  Meet out;
  auto coeffs = solve_rational(m, v);
  if (!coeffs) {
    // Spans do not fill the space: any contact is non-transversal.
    std::vector<LatticeVector> gens = sigma.rays();
    for (const auto& r : tau.rays()) {
      LatticeVector neg(r);
      for (auto& x : neg) x = -x;
      gens.push_back(std::move(neg));
    }
    out.kind = in_generated_cone(gens, v, n) ? Meet::Kind::Degenerate : Meet::Kind::Empty;
    return out;
  }

  RationalVector p(n), q(n);
  for (std::size_t i = 0; i < bs.size(); ++i)
    for (std::size_t r = 0; r < n; ++r) p[r] += (*coeffs)[i] * Rational(bs[i][r]);
  for (std::size_t r = 0; r < n; ++r) q[r] = p[r] - Rational(v[r]);

  bool tight = false;
  auto scan = [&](const Cone& c, const RationalVector& x) {
    for (const auto& f : c.facet_normals()) {
      int s = sgn(dot(f, x));
      if (s < 0) return false;
      if (s == 0) tight = true;
    }
    return true;
  };
  if (!scan(sigma, p) || !scan(tau, q)) return out;
  if (tight) {
    out.kind = Meet::Kind::Degenerate;
    return out;
  }
  out.kind = Meet::Kind::Point;
  out.point = std::move(p);
  out.interior = true;
  return out;
}

}  // namespace toricdyn::fans
