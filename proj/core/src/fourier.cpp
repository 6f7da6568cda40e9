#include "spectile/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <set>

namespace spectile {

namespace {

constexpr double kPi = std::numbers::pi;

// cos(pi r) for r in [0, 1/2].
double cos_core(double r) {
  if (r == 0.5) return 0.0;
  if (r > 0.25) return std::sin(kPi * (0.5 - r));
  return std::cos(kPi * r);
}

// One-dimensional transform of [a, b] at x.
Complex interval_ft(double a, double b, double x) {
  if (x == 0.0) return {b - a, 0.0};
  double mag = sinpi((b - a) * x) / (kPi * x);
  double theta = (a + b) * x;
  return {mag * cospi(theta), -mag * sinpi(theta)};
}

// Per-axis sums of the cell bound min(L^2, 1 / (pi^2 (|k| - 1/2)^2 s^2)).
double psi_sup(long k, double L, double s) {
  if (k == 0) return L * L;
  double t = (static_cast<double>(std::labs(k)) - 0.5) * s;
  return std::min(L * L, 1.0 / (kPi * kPi * t * t));
}

double tail_sum_from(long K, double L, double s) {
  constexpr long kExplicit = 4000;
  double total = 0;
  long start = K;
  if (K == 0) {
    total += L * L;
    start = 1;
  }
  double one_side = 0;
  long last = start + kExplicit - 1;
  for (long k = start; k <= last; ++k) one_side += psi_sup(k, L, s);
  one_side += 1.0 / (kPi * kPi * s * s) / (static_cast<double>(last) - 0.5);
  return total + 2 * one_side;
}

Rational ceil_q(const Rational& q) { return -floor(Rational(-q)); }

bool centrally_symmetric(const BoxUnionDomain& dom, std::vector<Rational>& center) {
  Box bb = dom.bounding_box();
  center.clear();
  for (const auto& iv : bb) center.push_back(iv.midpoint());
  auto key = [](const Box& b) {
    std::vector<std::pair<Rational, Rational>> k;
    for (const auto& iv : b) k.emplace_back(iv.lo(), iv.hi());
    return k;
  };
  std::vector<std::vector<std::pair<Rational, Rational>>> original, reflected;
  std::vector<Box> boxes = dom.boxes();
  if (dom.dim() == 1) {
    boxes.clear();
    for (const auto& iv : dom.merged_intervals()) boxes.push_back(Box{iv});
  }
  for (const auto& b : boxes) {
    original.push_back(key(b));
    Box r;
    for (std::size_t i = 0; i < b.size(); ++i) {
      r.emplace_back(Rational(2 * center[i] - b[i].hi()), Rational(2 * center[i] - b[i].lo()));
    }
    reflected.push_back(key(r));
  }
  std::sort(original.begin(), original.end());
  std::sort(reflected.begin(), reflected.end());
  return original == reflected;
}

double bisect_root(const std::function<double(double)>& F, double a, double b) {
  double fa = F(a);
  for (int it = 0; it < 200; ++it) {
    double m = 0.5 * (a + b);
    if (m <= a || m >= b) break;
    double fm = F(m);
    if (fm == 0.0) return m;
    if ((fm < 0) == (fa < 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

double golden_min(const std::function<double(double)>& w, double a, double b) {
  const double g = (std::sqrt(5.0) - 1) / 2;
  double c = b - g * (b - a);
  double d = a + g * (b - a);
  double fc = w(c), fd = w(d);
  for (int it = 0; it < 200 && b - a > 1e-16 * std::max(1.0, std::abs(a)); ++it) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = w(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = w(d);
    }
  }
  return fc <= fd ? c : d;
}

}  // namespace

double sinpi(double x) {
  if (!std::isfinite(x)) return std::numeric_limits<double>::quiet_NaN();
  double r = std::fmod(x, 2.0);
  if (r > 1.0) r -= 2.0;
  if (r < -1.0) r += 2.0;
  if (r > 0.5) r = 1.0 - r;
  if (r < -0.5) r = -1.0 - r;
  if (r == 0.0) return 0.0;
  return std::sin(kPi * r);
}

double cospi(double x) {
  if (!std::isfinite(x)) return std::numeric_limits<double>::quiet_NaN();
  double r = std::fmod(std::abs(x), 2.0);
  if (r > 1.0) r = 2.0 - r;
  if (r > 0.5) return -cos_core(1.0 - r);
  return cos_core(r);
}

TransformProfile::TransformProfile(BoxUnionDomain dom)
    : dom_(std::move(dom)), measure_(to_double(dom_.measure())), factors_(dom_.product_factors()) {
  for (const auto& b : dom_.boxes()) {
    for (const auto& iv : b) {
      lo_.push_back(to_double(iv.lo()));
      hi_.push_back(to_double(iv.hi()));
    }
  }
}

Complex TransformProfile::value(std::span<const double> x) const {
  const std::size_t d = dim();
  if (x.size() != d) throw DomainError("evaluation point has wrong dimension");
  Complex total = 0;
  const std::size_t n = dom_.box_count();
  for (std::size_t b = 0; b < n; ++b) {
    Complex term = 1;
    for (std::size_t i = 0; i < d; ++i) term *= interval_ft(lo_[b * d + i], hi_[b * d + i], x[i]);
    total += term;
  }
  return total;
}

Complex TransformProfile::value(double x) const { return value(std::span<const double>(&x, 1)); }

double TransformProfile::power(std::span<const double> x) const {
  if (dom_.box_count() != 1) return std::norm(value(x));
  // A single box has modulus prod |sin(pi l_i x_i) / (pi x_i)|; the phase drops out.
  double p = 1;
  for (std::size_t i = 0; i < dim(); ++i) {
    double l = hi_[i] - lo_[i];
    double s = x[i] == 0.0 ? l : sinpi(l * x[i]) / (kPi * x[i]);
    p *= s * s;
  }
  return p;
}

double TransformProfile::power(double x) const { return power(std::span<const double>(&x, 1)); }

double TransformProfile::weighted_modulus(std::span<const double> x) const {
  double w = std::abs(value(x));
  for (double xi : x) w *= std::max(1.0, kPi * std::abs(xi));
  return w;
}

double TransformProfile::weighted_modulus(double x) const {
  return weighted_modulus(std::span<const double>(&x, 1));
}

Complex eval_ft(const BoxUnionDomain& dom, std::span<const double> x) { return TransformProfile(dom).value(x); }

Complex eval_ft(const BoxUnionDomain& dom, double x) { return TransformProfile(dom).value(x); }

double eval_power(const BoxUnionDomain& dom, std::span<const double> x) { return std::norm(eval_ft(dom, x)); }

double eval_power(const BoxUnionDomain& dom, double x) { return std::norm(eval_ft(dom, x)); }

double power_tail_beyond(const BoxUnionDomain& dom, double r, double delta0, double scale) {
  if (!(delta0 > 0)) throw DomainError("separation bound must be positive");
  const std::size_t d = dom.dim();
  const double s = delta0 / std::sqrt(static_cast<double>(d));
  const double N = static_cast<double>(dom.box_count());
  std::vector<double> L(d, 0.0);
  for (const auto& b : dom.boxes()) {
    for (std::size_t i = 0; i < d; ++i) L[i] = std::max(L[i], to_double(b[i].length()));
  }
  long K = 0;
  if (r > 0) K = std::max(0L, static_cast<long>(std::ceil(r / s - 0.5)));
  std::vector<double> full(d), outer(d);
  double all = 1;
  for (std::size_t i = 0; i < d; ++i) {
    full[i] = tail_sum_from(0, L[i], s);
    outer[i] = tail_sum_from(K, L[i], s);
    all *= full[i];
  }
  double unioned = 0;
  for (std::size_t i = 0; i < d; ++i) {
    double term = outer[i];
    for (std::size_t j = 0; j < d; ++j) {
      if (j != i) term *= full[j];
    }
    unioned += term;
  }
  return std::abs(scale) * N * N * std::min(all, unioned);
}

double tail_bound(const BoxUnionDomain& dom, double R, double delta0) {
  if (!(R > 0)) throw DomainError("tail_bound radius must be positive");
  return power_tail_beyond(dom, 0.75 * R, delta0);
}

std::string to_string(ZeroKind k) {
  switch (k) {
    case ZeroKind::analytic:
      return "analytic";
    case ZeroKind::numeric:
      return "numeric";
    case ZeroKind::suspect:
      return "suspect";
  }
  return "numeric";
}

std::string to_string(ZeroSetKind k) {
  switch (k) {
    case ZeroSetKind::analytic_single_interval:
      return "analytic-single-interval";
    case ZeroSetKind::analytic_two_interval:
      return "analytic-two-interval";
    case ZeroSetKind::numeric_scan:
      return "numeric-scan";
  }
  return "numeric-scan";
}

std::vector<Rational> Progression::members(const Rational& lo, const Rational& hi) const {
  std::vector<Rational> out;
  Rational k0 = ceil_q(Rational((lo - start) / step));
  Rational k1 = floor(Rational((hi - start) / step));
  for (Rational k = k0; k <= k1; k += 1) {
    Rational x = start + k * step;
    x.canonicalize();
    if (x <= lo || x >= hi) continue;
    if (excludes_zero && x == 0) continue;
    out.push_back(x);
  }
  return out;
}

bool Progression::contains(const Rational& x) const {
  if (excludes_zero && x == 0) return false;
  return is_integer(Rational((x - start) / step));
}

bool ZeroSet1D::is_zero(const Rational& x, double window) const {
  if (kind != ZeroSetKind::numeric_scan) {
    return std::any_of(generators.begin(), generators.end(), [&](const Progression& p) { return p.contains(x); });
  }
  double xd = to_double(x);
  return std::any_of(zeros.begin(), zeros.end(), [&](const ZeroPoint& z) { return std::abs(z.x - xd) <= window; });
}

std::vector<ZeroPoint> numeric_zero_scan(const BoxUnionDomain& dom, double lo, double hi, ZeroScanOptions options) {
  if (dom.dim() != 1) throw DomainError("zero scan requires a one-dimensional domain");
  if (!(hi > lo)) throw DomainError("zero scan range is degenerate");
  if (!(options.step > 0)) throw DomainError("zero scan step must be positive");
  TransformProfile prof(dom);
  std::vector<Rational> center;
  const bool symmetric = centrally_symmetric(dom, center);
  const double c = symmetric ? to_double(center[0]) : 0.0;

  auto w = [&](double x) { return prof.weighted_modulus(x); };
  std::function<double(double)> real_part = [&](double x) {
    Complex phase{cospi(2 * c * x), sinpi(2 * c * x)};
    return (phase * prof.value(x)).real();
  };

  const auto n = static_cast<std::size_t>(std::ceil((hi - lo) / options.step));
  const double h = (hi - lo) / static_cast<double>(n);
  std::vector<double> xs(n + 1), ws(n + 1), fs;
  for (std::size_t k = 0; k <= n; ++k) {
    xs[k] = k == n ? hi : lo + static_cast<double>(k) * h;
    ws[k] = w(xs[k]);
  }
  std::vector<double> roots;
  if (symmetric) {
    fs.resize(n + 1);
    for (std::size_t k = 0; k <= n; ++k) fs[k] = real_part(xs[k]);
    for (std::size_t k = 0; k < n; ++k) {
      if (fs[k] == 0.0) {
        roots.push_back(xs[k]);
      } else if ((fs[k] < 0) != (fs[k + 1] < 0) && fs[k + 1] != 0.0) {
        roots.push_back(bisect_root(real_part, xs[k], xs[k + 1]));
      }
    }
  }
  for (std::size_t k = 1; k < n; ++k) {
    if (ws[k] <= ws[k - 1] && ws[k] <= ws[k + 1]) roots.push_back(golden_min(w, xs[k - 1], xs[k + 1]));
  }

  std::vector<ZeroPoint> found;
  for (double x : roots) {
    if (!(x > lo && x < hi)) continue;
    double m = w(x);
    if (m <= options.zero_tol) {
      found.push_back({x, ZeroKind::numeric, m, std::nullopt});
    } else if (m <= options.suspect_tol) {
      found.push_back({x, ZeroKind::suspect, m, std::nullopt});
    }
  }
  std::sort(found.begin(), found.end(), [](const ZeroPoint& a, const ZeroPoint& b) { return a.x < b.x; });
  std::vector<ZeroPoint> out;
  for (const auto& z : found) {
    if (!out.empty() && std::abs(z.x - out.back().x) <= 1e-7 * std::max(1.0, std::abs(z.x))) {
      if (z.modulus < out.back().modulus) out.back() = z;
      continue;
    }
    out.push_back(z);
  }
  return out;
}

ZeroSet1D zero_set_1d(const BoxUnionDomain& dom, double X, ZeroScanOptions options) {
  if (dom.dim() != 1) throw DomainError("zero_set_1d requires a one-dimensional domain");
  if (!(X > 0) || !std::isfinite(X)) throw DomainError("zero range is degenerate");
  ZeroSet1D zs;
  zs.range = X;
  zs.options = options;
  auto parts = dom.merged_intervals();
  zs.merged = parts.size() < dom.box_count();
  const BoxUnionDomain merged = BoxUnionDomain::intervals(parts);
  const TransformProfile prof(merged);

  if (parts.size() == 1) {
    zs.kind = ZeroSetKind::analytic_single_interval;
    zs.generators.push_back({Rational(0), Rational(1 / parts[0].length()), true});
  } else if (parts.size() == 2 && parts[0].length() == parts[1].length()) {
    zs.kind = ZeroSetKind::analytic_two_interval;
    Rational gap = abs(Rational(parts[1].midpoint() - parts[0].midpoint()));
    zs.generators.push_back({Rational(0), Rational(1 / parts[0].length()), true});
    zs.generators.push_back({Rational(1 / (2 * gap)), Rational(1 / gap), false});
  } else {
    zs.kind = ZeroSetKind::numeric_scan;
  }

  if (zs.kind != ZeroSetKind::numeric_scan) {
    Rational hi = from_double(X);
    Rational lo = -hi;
    std::set<Rational> exact;
    for (const auto& g : zs.generators) {
      for (auto& x : g.members(lo, hi)) exact.insert(x);
    }
    for (const auto& x : exact) {
      double xd = to_double(x);
      zs.zeros.push_back({xd, ZeroKind::analytic, prof.weighted_modulus(xd), x});
    }
    return zs;
  }

  zs.zeros = numeric_zero_scan(merged, -X, X, options);
  if (parts.size() == 2) {
    const double unit = 1.0 / to_double(merged.measure());
    auto inner = numeric_zero_scan(merged, -unit, unit, options);
    zs.no_zero_below_unit = std::none_of(inner.begin(), inner.end(), [&](const ZeroPoint& z) {
      return std::abs(z.x) < unit * (1 - 1e-7);
    });
  }
  return zs;
}

}  // namespace spectile
