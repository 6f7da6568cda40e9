#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <span>
#include <vector>

#include "spectile/domains.hpp"
#include "spectile/pointsets.hpp"

namespace oracle {

using spectile::BoxUnionDomain;
using spectile::Interval;
using spectile::Rational;
using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;

/// Integral of exp(-2 pi i x t) over [a, b] from the antiderivative.
inline cplx gram_1d(double a, double b, double x) {
  if (x == 0) return b - a;
  cplx i(0, 1);
  return (std::exp(-2.0 * pi * i * x * b) - std::exp(-2.0 * pi * i * x * a)) / (-2.0 * pi * i * x);
}

inline cplx gram_ft(const BoxUnionDomain& dom, std::span<const double> x) {
  cplx total = 0;
  for (const auto& b : dom.boxes()) {
    cplx term = 1;
    for (std::size_t k = 0; k < dom.dim(); ++k) term *= gram_1d(b[k].lo().get_d(), b[k].hi().get_d(), x[k]);
    total += term;
  }
  return total;
}

/// The same integral by adaptive Gauss-Kronrod quadrature of cos and sin.
inline cplx quad_1d(double a, double b, double x) {
  using boost::math::quadrature::gauss_kronrod;
  auto re = [x](double t) { return std::cos(2.0 * pi * x * t); };
  auto im = [x](double t) { return -std::sin(2.0 * pi * x * t); };
  double r = gauss_kronrod<double, 61>::integrate(re, a, b, 15, 1e-14);
  double s = gauss_kronrod<double, 61>::integrate(im, a, b, 15, 1e-14);
  return {r, s};
}

inline cplx quad_ft(const BoxUnionDomain& dom, std::span<const double> x) {
  cplx total = 0;
  for (const auto& b : dom.boxes()) {
    cplx term = 1;
    for (std::size_t k = 0; k < dom.dim(); ++k) term *= quad_1d(b[k].lo().get_d(), b[k].hi().get_d(), x[k]);
    total += term;
  }
  return total;
}

/// Sum of |hat chi([0,1])|^2 (x - k) = sin^2(pi x) / (pi (x - k))^2 over R < |k| <= K.
inline double sinc2_tail(double x, long R, long K) {
  long double s2 = std::sin(pi * x);
  s2 *= s2;
  long double sum = 0;
  for (long k = K; k > R; --k) {
    long double u = x - static_cast<long double>(k), v = x + static_cast<long double>(k);
    sum += 1.0L / (u * u) + 1.0L / (v * v);
  }
  return static_cast<double>(s2 * sum / (pi * pi));
}

/// Random rational p / q with q in [1, max_den] and value in [lo, hi]. Falls
/// back to ceil(lo * max_den) / max_den when no such value exists.
inline Rational random_rational(std::mt19937_64& rng, double lo, double hi, long max_den) {
  std::uniform_int_distribution<long> den(1, max_den);
  long q = 1, pmin = 0, pmax = -1;
  while (pmax < pmin) {
    q = den(rng);
    pmin = static_cast<long>(std::ceil(lo * static_cast<double>(q)));
    pmax = static_cast<long>(std::floor(hi * static_cast<double>(q)));
    if (q == max_den && pmax < pmin) pmax = pmin;
  }
  std::uniform_int_distribution<long> num(pmin, pmax);
  Rational r(num(rng), q);
  r.canonicalize();
  return r;
}

/// Random box union with up to max_boxes boxes, kept disjoint by placing box i
/// in the slab [2i, 2i + 2) along the first axis.
inline BoxUnionDomain random_domain(std::mt19937_64& rng, std::size_t dim, std::size_t max_boxes) {
  std::uniform_int_distribution<std::size_t> count(1, max_boxes);
  std::size_t n = count(rng);
  std::vector<spectile::Box> boxes;
  for (std::size_t i = 0; i < n; ++i) {
    spectile::Box b;
    for (std::size_t k = 0; k < dim; ++k) {
      Rational base = k == 0 ? Rational(static_cast<long>(2 * i)) : Rational(0);
      Rational lo = random_rational(rng, -0.5, 0.9, 8);
      Rational hi = random_rational(rng, lo.get_d() + 0.1, 1.9, 8);
      if (hi <= lo) hi = lo + Rational(1, 8);
      if (k == 0) {
        lo = lo < 0 ? Rational(0) : lo;
        if (hi <= lo) hi = lo + Rational(1, 8);
      }
      b.emplace_back(base + lo, base + hi);
    }
    boxes.push_back(std::move(b));
  }
  return BoxUnionDomain(dim, std::move(boxes));
}

/// Number of points of lam in the axis-aligned box [lo, hi].
inline std::size_t count_in_box(const spectile::PeriodicPointSet& lam, std::span<const double> lo,
                                std::span<const double> hi) {
  std::size_t n = 0;
  std::vector<double> a(lo.size()), b(hi.size());
  for (const auto& o : lam.offsets()) {
    for (std::size_t i = 0; i < lo.size(); ++i) {
      a[i] = lo[i] - o[i];
      b[i] = hi[i] - o[i];
    }
    n += spectile::lattice_coefficients_in_box(lam.basis(), lam.inverse(), a, b).size();
  }
  return n;
}

/// Evaluates  sum over lattice points l with |x - l|_inf <= radius  of f(x - l) directly.
template <class F>
double brute_periodic_sum(F f, const spectile::PeriodicPointSet& lam, std::span<const double> x, double radius) {
  double total = 0;
  std::vector<double> lo(x.size()), hi(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    lo[i] = x[i] - radius;
    hi[i] = x[i] + radius;
  }
  for (const auto& o : lam.offsets()) {
    std::vector<double> shifted_lo(x.size()), shifted_hi(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      shifted_lo[i] = lo[i] - o[i];
      shifted_hi[i] = hi[i] - o[i];
    }
    for (const auto& k : spectile::lattice_coefficients_in_box(lam.basis(), lam.inverse(), shifted_lo, shifted_hi)) {
      std::vector<double> y(x.begin(), x.end());
      for (std::size_t i = 0; i < x.size(); ++i) {
        double l = o[i];
        for (std::size_t j = 0; j < k.size(); ++j) {
          l += lam.basis()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * static_cast<double>(k[j]);
        }
        y[i] -= l;
      }
      total += f(y);
    }
  }
  return total;
}

}  // namespace oracle
