#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "support.hpp"
#include "toricdyn/dynamics/corpus.hpp"
#include "toricdyn/dynamics/monomial_map.hpp"
#include "toricdyn/lattice/minors.hpp"
#include "toricdyn/lattice/spectral.hpp"

using namespace toricdyn;
using namespace toricdyn::dynamics;
using lattice::IntegerMatrix;

namespace {

IntegerMatrix diag(std::initializer_list<long> d) {
  IntegerMatrix m(d.size(), d.size());
  std::size_t i = 0;
  for (long x : d) {
    m(i, i) = x;
    ++i;
  }
  return m;
}

bool close(double a, double b, double rel) { return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)}); }

}  // namespace

TEST_CASE("MonomialMap rejects singular and non-square matrices") {
  try {
    MonomialMap(IntegerMatrix{{1, 2}, {2, 4}});
    FAIL("expected SINGULAR");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Singular);
  }
  try {
    MonomialMap(IntegerMatrix(2, 3));
    FAIL("expected DIMENSION_MISMATCH");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DimensionMismatch);
  }
}

TEST_CASE("closed-form pullback matrices") {
  for (int n = 1; n <= 4; ++n)
    for (int k = 0; k <= n; ++k) {
      auto m = pullback_matrix_closed(MonomialMap(IntegerMatrix::identity(n)), k);
      CHECK(m.entries == IntegerMatrix::identity(m.basis.size()));
    }

  auto d = pullback_matrix_closed(MonomialMap(diag({2, 3})), 1);
  CHECK(d.entries == IntegerMatrix{{3, 0}, {0, 2}});
  CHECK(d.basis[0].to_string() == "{1}");

  MonomialMap f(IntegerMatrix{{2, 1}, {-1, 3}});
  CHECK(pullback_matrix_closed(f, 2).entries == IntegerMatrix{{7}});
  CHECK(pullback_matrix_closed(f, 0).entries == IntegerMatrix{{1}});

  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 3;
    auto g = oracle::random_nonsingular(rng, n, 3);
    MonomialMap map(support::to_matrix(g));
    for (int k = 0; k <= n; ++k) {
      auto m = pullback_matrix_closed(map, k);
      auto subsets = oracle::subsets(n, n - k);
      std::sort(subsets.begin(), subsets.end());
      REQUIRE(m.entries.rows() == subsets.size());
      for (std::size_t a = 0; a < subsets.size(); ++a)
        for (std::size_t b = 0; b < subsets.size(); ++b) {
          std::vector<int> rows, cols;
          for (int i = 0; i < n; ++i) {
            if (std::find(subsets[b].begin(), subsets[b].end(), i) == subsets[b].end()) rows.push_back(i);
            if (std::find(subsets[a].begin(), subsets[a].end(), i) == subsets[a].end()) cols.push_back(i);
          }
          CHECK(m.entries(a, b) == abs(oracle::cofactor_minor(g, rows, cols)));
        }
    }
  }
}

TEST_CASE("pipeline pullback examples") {
  for (int n = 1; n <= 3; ++n)
    for (int k = 0; k <= n; ++k) {
      auto m = pullback_matrix_pipeline(MonomialMap(IntegerMatrix::identity(n)), k);
      CHECK(m.entries == IntegerMatrix::identity(m.basis.size()));
    }
  CHECK(pullback_matrix_pipeline(MonomialMap(diag({2, 3})), 1).entries == IntegerMatrix{{3, 0}, {0, 2}});
  MonomialMap cat(IntegerMatrix{{2, 1}, {1, 1}});
  CHECK(pullback_matrix_pipeline(cat, 1).entries == pullback_matrix_closed(cat, 1).entries);
  CHECK(pullback_matrix_closed(cat, 1).entries == IntegerMatrix{{1, 1}, {1, 2}});
}

TEST_CASE("pipeline equals closed form on random maps") {
  std::mt19937_64 rng(2718);
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 2 + trial % 2;
    MonomialMap map(support::to_matrix(oracle::random_nonsingular(rng, n, 3)));
    CAPTURE(lattice::to_string(map.psi()));
    for (int k = 0; k <= n; ++k)
      CHECK(pullback_matrix_pipeline(map, k).entries == pullback_matrix_closed(map, k).entries);
  }
}

TEST_CASE("smoothing the refinement leaves the pipeline unchanged") {
  std::mt19937_64 rng(16);
  for (int trial = 0; trial < 4; ++trial) {
    const int n = 2 + trial % 2;
    MonomialMap map(support::to_matrix(oracle::random_nonsingular(rng, n, 3)));
    CAPTURE(lattice::to_string(map.psi()));
    for (int k = 0; k <= n; ++k)
      CHECK(pullback_matrix_pipeline(map, k, {.seed = 1, .smooth = true}).entries ==
            pullback_matrix_closed(map, k).entries);
  }
}

TEST_CASE("dynamical degrees examples") {
  auto d = dynamical_degrees(MonomialMap(diag({2, 3})));
  CHECK(d.lambdas.size() == 3);
  CHECK(close(d.lambdas[0], 1, 1e-12));
  CHECK(close(d.lambdas[1], 3, 1e-9));
  CHECK(close(d.lambdas[2], 6, 1e-9));
  CHECK(close(d.entropy, std::log(6.0), 1e-9));

  const double phi = (1 + std::sqrt(5.0)) / 2;
  auto f = dynamical_degrees(MonomialMap(IntegerMatrix{{1, 1}, {1, 0}}));
  CHECK(close(f.lambdas[1], phi, 1e-9));
  CHECK(close(f.lambdas[2], 1, 1e-9));
  CHECK(close(f.entropy, std::log(phi), 1e-9));
  CHECK(f.norm_sequences.size() == 2);
  CHECK(f.norm_sequences[0].size() == 30);

  auto id = dynamical_degrees(MonomialMap(IntegerMatrix::identity(3)));
  for (double l : id.lambdas) CHECK(close(l, 1, 1e-9));
  CHECK(std::abs(id.entropy) < 1e-12);
}

TEST_CASE("dynamical degree invariants on random maps") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + trial % 3;
    MonomialMap map(support::to_matrix(oracle::random_nonsingular(rng, n, 3)));
    auto r = dynamical_degrees(map, 0);
    CAPTURE(lattice::to_string(map.psi()));
    CHECK(close(r.lambdas[n], std::abs(map.det().get_d()), 1e-9));
    double best = 0;
    for (double l : r.lambdas) best = std::max(best, std::log(l));
    CHECK(close(r.entropy, best, 1e-9));
    for (int k = 1; k < n; ++k) CHECK(r.lambdas[k] * r.lambdas[k] >= r.lambdas[k - 1] * r.lambdas[k + 1] * (1 - 1e-9));
    for (unsigned l = 2; l <= 5; ++l) {
      auto p = dynamical_degrees(map.power(l), 0);
      for (int k = 0; k <= n; ++k) CHECK(close(p.lambdas[k], std::pow(r.lambdas[k], l), 1e-9));
    }
  }
}

TEST_CASE("Cremona degrees are binomial coefficients") {
  CHECK(cremona_degrees(1) == std::vector<BigInt>{1, 1});
  CHECK(cremona_degrees(2) == std::vector<BigInt>{1, 2, 1});
  CHECK(cremona_degrees(3) == std::vector<BigInt>{1, 3, 3, 1});
  auto four = cremona_degrees(4);
  CHECK(four == std::vector<BigInt>{1, 4, 6, 4, 1});
  CHECK(std::equal(four.begin(), four.end(), four.rbegin()));
  CHECK(cremona_degrees(3, {.seed = 17}) == std::vector<BigInt>{1, 3, 3, 1});
}

TEST_CASE("degree growth on P^n") {
  auto j = degree_growth_pn(MonomialMap(IntegerMatrix{{-1, 0}, {0, -1}}), 1, 6);
  CHECK(j.degrees == std::vector<BigInt>{2, 1, 2, 1, 2, 1});
  CHECK(j.degenerate);

  auto d = degree_growth_pn(MonomialMap(diag({2, 3})), 1, 10);
  for (int l = 5; l < 10; ++l) {
    const double ratio = d.degrees[l].get_d() / d.degrees[l - 1].get_d();
    CHECK(ratio >= 3 * 0.95);
    CHECK(ratio <= 3 * 1.05);
  }
  CHECK_FALSE(d.degenerate);

  auto id = degree_growth_pn(MonomialMap(IntegerMatrix::identity(2)), 1, 5);
  for (const auto& x : id.degrees) CHECK(x == 1);
  CHECK(std::abs(id.m) < 1e-9);
}

TEST_CASE("pipeline deg_1 on P^n matches direct homogenization") {
  std::mt19937_64 rng(90);
  for (int trial = 0; trial < 8; ++trial) {
    const int n = 2 + trial % 2;
    MonomialMap map(support::to_matrix(oracle::random_nonsingular(rng, n, 2)));
    auto fit = degree_growth_pn(map, 1, 3);
    for (unsigned l = 1; l <= 3; ++l) {
      auto g = support::to_grid(lattice::power(map.psi(), l));
      CAPTURE(lattice::to_string(map.psi()));
      CHECK(fit.degrees[l - 1] == oracle::monomial_degree_pn(g));
    }
  }
}

TEST_CASE("degree growth sandwich on random maps") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 6; ++trial) {
    MonomialMap map(support::to_matrix(oracle::random_nonsingular(rng, 2, 3)));
    auto fit = degree_growth_pn(map, 1, 8);
    CAPTURE(lattice::to_string(map.psi()));
    CHECK(fit.m >= -0.5);
    double lo = 1e300, hi = 0;
    for (int l = 5; l <= 8; ++l) {
      const double r = std::exp(lattice::log_abs(fit.degrees[l - 1]) - fit.m * std::log(double(l)) - l * std::log(fit.lambda));
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    CHECK(hi / lo <= 10.0);
  }
}

TEST_CASE("seeded corpus maps") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto a = random_map(seed, 3, 2);
    CHECK(a.psi() == random_map(seed, 3, 2).psi());
    CHECK(a.det() != 0);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) CHECK(abs(a.psi()(i, j)) <= 2);
  }
  CHECK_THROWS_AS(random_map(0, 2, 0), Error);
}

TEST_CASE("norm limit check") {
  auto d = check_norm_limit(MonomialMap(diag({2, 3})), 1);
  CHECK(d.pass);
  CHECK_FALSE(d.tie);
  CHECK(d.relative_error < 1e-12);

  // Eigenvalues 2 and 2 exp(+-i pi/3): every modulus ties and psi^6 = 64 I.
  auto rot = check_norm_limit(MonomialMap(IntegerMatrix{{1, 1, 2}, {1, 1, -2}, {-1, 1, 2}}), 2);
  CHECK(rot.tie);
  CHECK(rot.pass);

  // Simple top eigenvalue with spectral projector entries near 7.9: slow but convergent.
  MonomialMap slow(IntegerMatrix{{-2, 0, 0}, {3, -2, 1}, {-2, 1, 0}});
  auto s30 = check_norm_limit(slow, 1, 30);
  CHECK_FALSE(s30.tie);
  CHECK(s30.relative_error > 0.05);
  auto s120 = check_norm_limit(slow, 1, 120);
  CHECK(s120.relative_error < s30.relative_error / 3);
}
