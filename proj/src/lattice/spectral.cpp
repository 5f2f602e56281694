#include "toricdyn/lattice/spectral.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>

#include "toricdyn/lattice/minors.hpp"

namespace toricdyn::lattice {

BigInt CharPoly::evaluate(const BigInt& x) const {
  BigInt acc = 0;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * x + *it;
  return acc;
}

CharPoly char_poly(const IntegerMatrix& a) {
  if (!a.is_square()) throw Error(ErrorKind::DimensionMismatch, "char_poly needs a square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return CharPoly{{BigInt(1)}};

  // p holds coefficients from the leading one down; starts with the trailing 1x1 block.
  std::vector<BigInt> p{BigInt(1), BigInt(-a(n - 1, n - 1))};
  for (std::size_t i = n - 1; i-- > 0;) {
    const std::size_t s = n - 1 - i;
    // Toeplitz column: 1, -a_ii, -R C, -R M C, ..., -R M^{s-1} C
    std::vector<BigInt> t(s + 2);
    t[0] = 1;
    t[1] = -a(i, i);
    std::vector<BigInt> mc(s);
    for (std::size_t r = 0; r < s; ++r) mc[r] = a(i + 1 + r, i);
    for (std::size_t power = 0; power < s; ++power) {
      BigInt rc = 0;
      for (std::size_t r = 0; r < s; ++r) rc += a(i, i + 1 + r) * mc[r];
      t[power + 2] = -rc;
      if (power + 1 < s) {
        std::vector<BigInt> next(s);
        for (std::size_t r = 0; r < s; ++r)
          for (std::size_t c = 0; c < s; ++c) next[r] += a(i + 1 + r, i + 1 + c) * mc[c];
        mc = std::move(next);
      }
    }
    std::vector<BigInt> q(s + 2);
    for (std::size_t r = 0; r < s + 2; ++r)
      for (std::size_t c = 0; c <= std::min(r, s); ++c) q[r] += t[r - c] * p[c];
    p = std::move(q);
  }
  std::reverse(p.begin(), p.end());
  return CharPoly{std::move(p)};
}

namespace {

// Dense polynomial over Q, coefficient i multiplies x^i, no trailing zeros.
using QPoly = std::vector<Rational>;

void trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int degree(const QPoly& p) { return static_cast<int>(p.size()) - 1; }

QPoly derivative(const QPoly& p) {
  QPoly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
  trim(d);
  return d;
}

// Quotient and remainder; divisor must be nonzero.
std::pair<QPoly, QPoly> divmod(QPoly num, const QPoly& den) {
  QPoly quot;
  if (degree(num) < degree(den)) return {quot, num};
  quot.assign(num.size() - den.size() + 1, Rational(0));
  while (!num.empty() && degree(num) >= degree(den)) {
    const std::size_t shift = num.size() - den.size();
    Rational f = num.back() / den.back();
    quot[shift] = f;
    for (std::size_t i = 0; i < den.size(); ++i) num[shift + i] -= f * den[i];
    num.pop_back();
    trim(num);
  }
  trim(quot);
  return {quot, num};
}

QPoly monic(QPoly p) {
  if (p.empty()) return p;
  Rational lead = p.back();
  for (auto& c : p) c /= lead;
  return p;
}

QPoly gcd_poly(QPoly a, QPoly b) {
  while (!b.empty()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

QPoly sub(const QPoly& a, const QPoly& b) {
  QPoly r(std::max(a.size(), b.size()), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

// Yun's square-free decomposition: f = prod a_i^i.
std::vector<std::pair<QPoly, int>> squarefree_decomposition(const QPoly& f) {
  std::vector<std::pair<QPoly, int>> out;
  QPoly fp = derivative(f);
  QPoly b = gcd_poly(f, fp);
  QPoly c = divmod(f, b).first;
  QPoly d = sub(divmod(fp, b).first, derivative(c));
  int i = 1;
  while (degree(c) > 0) {
    QPoly g = gcd_poly(c, d);
    if (degree(g) > 0) out.emplace_back(g, i);
    c = divmod(c, g).first;
    d = sub(divmod(d, g).first, derivative(c));
    ++i;
  }
  return out;
}

using Complex = std::complex<long double>;

// Roots of a square-free polynomial: companion-matrix eigenvalues, then Newton polishing.
std::vector<Complex> simple_roots(const QPoly& p) {
  const int deg = degree(p);
  QPoly mp = monic(p);
  std::vector<long double> coeffs(mp.size());
  for (std::size_t i = 0; i < mp.size(); ++i)
    coeffs[i] = static_cast<long double>(mpz_get_d(mp[i].get_num_mpz_t())) /
                static_cast<long double>(mpz_get_d(mp[i].get_den_mpz_t()));
  if (deg == 1) return {Complex(-coeffs[0], 0.0L)};

  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(deg, deg);
  for (int i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < deg; ++i) companion(i, deg - 1) = -static_cast<double>(coeffs[i]);
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  const auto& ev = solver.eigenvalues();

  std::vector<Complex> roots;
  for (int i = 0; i < deg; ++i) {
    Complex z(ev[i].real(), ev[i].imag());
    for (int iter = 0; iter < 50; ++iter) {
      Complex value = 0, slope = 0;
      for (int j = deg; j >= 0; --j) {
        slope = slope * z + value;
        value = value * z + coeffs[j];
      }
      if (slope == Complex(0)) break;
      Complex step = value / slope;
      z -= step;
      if (std::abs(step) <= 1e-18L * std::max(1.0L, std::abs(z))) break;
    }
    roots.push_back(z);
  }
  return roots;
}

}  // namespace

double EigenModuli::top_product(int k) const {
  double p = 1.0;
  for (int i = 0; i < k && i < static_cast<int>(moduli.size()); ++i) p *= moduli[i];
  return p;
}

EigenModuli polynomial_root_moduli(const CharPoly& poly) {
  QPoly f;
  for (const auto& c : poly.coefficients) f.emplace_back(c);
  trim(f);
  EigenModuli out;
  if (degree(f) <= 0) return out;
  for (const auto& [factor, multiplicity] : squarefree_decomposition(f)) {
    for (const Complex& z : simple_roots(factor))
      for (int m = 0; m < multiplicity; ++m) out.moduli.push_back(static_cast<double>(std::abs(z)));
  }
  std::sort(out.moduli.begin(), out.moduli.end(), std::greater<>());
  return out;
}

EigenModuli eigenvalue_moduli(const IntegerMatrix& a) { return polynomial_root_moduli(char_poly(a)); }

double log_abs(const BigInt& z) {
  if (z == 0) throw Error(ErrorKind::OutOfRange, "log of zero");
  long exponent = 0;
  double mantissa = mpz_get_d_2exp(&exponent, z.get_mpz_t());
  return std::log(std::fabs(mantissa)) + static_cast<double>(exponent) * std::log(2.0);
}

std::vector<double> norm_growth_sequence(const IntegerMatrix& a, int k, int lmax) {
  if (!a.is_square()) throw Error(ErrorKind::DimensionMismatch, "norm_growth_sequence needs a square matrix");
  if (k < 1 || static_cast<std::size_t>(k) > a.rows())
    throw Error(ErrorKind::OutOfRange, "k must lie in [1, n]");
  if (determinant(a) == 0) throw Error(ErrorKind::Singular, "matrix " + to_string(a) + " is singular");
  const IntegerMatrix c = compound_matrix(a, k);
  IntegerMatrix p = c;
  std::vector<double> out;
  for (int l = 1; l <= lmax; ++l) {
    out.push_back(std::exp(log_abs(max_abs_entry(p)) / l));
    if (l < lmax) p = p * c;
  }
  return out;
}

}  // namespace toricdyn::lattice
