#include <algorithm>
#include <exception>
#include <map>

#include "toricdyn/fans/fan.hpp"
#include "toricdyn/lattice/minors.hpp"
#include "toricdyn/lattice/smith.hpp"

namespace toricdyn::fans {

using lattice::IntegerMatrix;

namespace {

using Simplices = std::vector<ConeKey>;

// Pulling triangulation: cone the smallest ray over the triangulated facets avoiding it.
// A single global order (lexicographic on rays) keeps shared faces consistent.
const Simplices& pull(const Cone& cone, std::map<ConeKey, Simplices>& memo) {
  if (auto hit = memo.find(cone.key()); hit != memo.end()) return hit->second;
  Simplices out;
  if (cone.is_simplicial()) {
    out.push_back(cone.rays());
  } else {
    const LatticeVector& apex = cone.rays().front();
    for (const auto& idx : cone.facet_ray_sets()) {
      if (!idx.empty() && idx.front() == 0) continue;
      ConeKey facet;
      for (auto i : idx) facet.push_back(cone.rays()[i]);
      for (const auto& s : pull(make_cone(facet, cone.ambient_dim()), memo)) {
        ConeKey simplex = s;
        simplex.insert(simplex.begin(), apex);
        out.push_back(std::move(simplex));
      }
    }
  }
  return memo.emplace(cone.key(), std::move(out)).first->second;
}

Rational frac(const Rational& x) {
  BigInt fl;
  mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return x - Rational(fl);
}

}  // namespace

Fan simplicialize(const Fan& fan) {
  const auto& cones = fan.cones();
  if (std::all_of(cones.begin(), cones.end(), [](const Cone& c) { return c.is_simplicial(); })) return fan;
  std::map<ConeKey, Simplices> memo;
  std::vector<Cone> pieces;
  for (auto i : fan.maximal())
    for (const auto& s : pull(cones[i], memo)) pieces.push_back(make_cone(s, fan.rank()));
  return Fan::from_maximal(fan.rank(), pieces, fan.complete());
}

Fan common_refinement(const Fan& fan, const IntegerMatrix& psi, RefinementOptions options) {
  const std::size_t n = fan.rank();
  if (!psi.is_square() || psi.rows() != n) throw Error(ErrorKind::DimensionMismatch, "psi and fan ranks disagree");
  if (!fan.complete()) throw Error(ErrorKind::InvalidInput, "common_refinement needs a complete fan");
  if (lattice::determinant(psi) == 0) throw Error(ErrorKind::Singular, "det psi = 0");

  const IntegerMatrix psi_t = psi.transpose();
  const auto& top = fan.cones_of_dim(static_cast<int>(n));
  // Facets of psi^-1(sigma') are psi^T f for the facets f of sigma'.
  std::vector<std::vector<LatticeVector>> pulled(top.size());
  for (std::size_t j = 0; j < top.size(); ++j)
    for (const auto& f : fan.cone(top[j]).facet_normals()) pulled[j].push_back(psi_t * f);

  const std::size_t pairs = top.size() * top.size();
  std::vector<std::optional<Cone>> pieces(pairs);
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (std::size_t p = 0; p < pairs; ++p) {
    try {
      const Cone& sigma = fan.cone(top[p / top.size()]);
      std::vector<LatticeVector> ineq = sigma.facet_normals();
      const auto& extra = pulled[p % top.size()];
      ineq.insert(ineq.end(), extra.begin(), extra.end());
      Cone meet = cone_from_inequalities(ineq, {}, n);
      if (meet.dim() == static_cast<int>(n)) pieces[p] = std::move(meet);
    } catch (...) {
#pragma omp critical(toricdyn_refinement_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<Cone> kept;
  for (auto& piece : pieces)
    if (piece) kept.push_back(std::move(*piece));
  Fan refined = simplicialize(Fan::from_maximal(n, kept, true));
  if (options.smooth) refined = smooth(refined);
  return refined;
}

Fan smooth(const Fan& input) {
  const std::size_t n = input.rank();
  Fan fan = input;
  for (int round = 0; round < 100000; ++round) {
    const Cone* bad = nullptr;
    for (auto i : fan.maximal()) {
      const Cone& c = fan.cone(i);
      if (c.dim() != static_cast<int>(n) || !c.is_simplicial())
        throw Error(ErrorKind::InvalidInput, "smooth needs full-dimensional simplicial maximal cones");
      if (!bad && multiplicity(c) != 1) bad = &c;
    }
    if (!bad) return fan;

    const IntegerMatrix g = IntegerMatrix::from_columns(bad->rays(), n);
    const auto g_inv = lattice::inverse(g);
    std::optional<RationalVector> best;
    Rational best_sum;
    for (std::size_t i = 0; i < n; ++i) {
      RationalVector lambda(n);
      Rational sum = 0;
      for (std::size_t j = 0; j < n; ++j) {
        lambda[j] = frac(g_inv(j, i));
        sum += lambda[j];
      }
      if (sum == 0) continue;
      if (!best || sum < best_sum) {
        best = lambda;
        best_sum = sum;
      }
    }
    if (!best) throw std::logic_error("smooth: no interior lattice point in a non-unimodular cone");
    LatticeVector w(n);
    for (std::size_t r = 0; r < n; ++r) {
      Rational s = 0;
      for (std::size_t j = 0; j < n; ++j) s += Rational(g(r, j)) * (*best)[j];
      w[r] = s.get_num();
    }
    w = lattice::primitive(w);

    std::vector<Cone> next;
    for (auto i : fan.maximal()) {
      const Cone& c = fan.cone(i);
      const auto inv = lattice::inverse(IntegerMatrix::from_columns(c.rays(), n));
      RationalVector coeff(n);
      bool inside = true;
      for (std::size_t j = 0; j < n && inside; ++j) {
        for (std::size_t r = 0; r < n; ++r) coeff[j] += inv(j, r) * Rational(w[r]);
        inside = coeff[j] >= 0;
      }
      if (!inside) {
        next.push_back(c);
        continue;
      }
      for (std::size_t j = 0; j < n; ++j) {
        if (coeff[j] == 0) continue;
        auto gens = c.rays();
        gens[j] = w;
        next.push_back(make_cone(gens, n));
      }
    }
    fan = Fan::from_maximal(n, next, fan.complete());
  }
  throw Error(ErrorKind::Exhausted, "smoothing did not terminate");
}

}  // namespace toricdyn::fans
