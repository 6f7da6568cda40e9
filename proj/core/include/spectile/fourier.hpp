#pragma once

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spectile/domains.hpp"

namespace spectile {

using Complex = std::complex<double>;

/// sin(pi x) and cos(pi x) with exact range reduction, so sinpi(k) == 0 for integers k.
double sinpi(double x);
double cospi(double x);

/// Evaluator for the Fourier transform of the indicator of a box union,
/// with the convention  hat f(x) = integral f(t) exp(-2 pi i x.t) dt.
class TransformProfile {
 public:
  explicit TransformProfile(BoxUnionDomain dom);

  const BoxUnionDomain& domain() const { return dom_; }
  std::size_t dim() const { return dom_.dim(); }
  double measure() const { return measure_; }

  /// True when the domain is a Cartesian product of one-dimensional unions.
  bool factorized() const { return factors_.has_value(); }
  const std::optional<std::vector<BoxUnionDomain>>& factors() const { return factors_; }

  Complex value(std::span<const double> x) const;
  Complex value(double x) const;
  double power(std::span<const double> x) const;
  double power(double x) const;

  /// |hat chi(x)| * prod_i max(1, pi |x_i|). Used as the zero criterion, since the
  /// plain modulus tends to zero at infinity.
  double weighted_modulus(std::span<const double> x) const;
  double weighted_modulus(double x) const;

 private:
  BoxUnionDomain dom_;
  double measure_;
  std::optional<std::vector<BoxUnionDomain>> factors_;
  std::vector<double> lo_;  // boxes x dim, row major
  std::vector<double> hi_;
};

Complex eval_ft(const BoxUnionDomain& dom, std::span<const double> x);
Complex eval_ft(const BoxUnionDomain& dom, double x);
double eval_power(const BoxUnionDomain& dom, std::span<const double> x);
double eval_power(const BoxUnionDomain& dom, double x);

/// Upper bound on sum_{y in Y, |y|_inf >= r} scale * |hat chi(y)|^2 for every set Y
/// whose points are at least delta0 apart (Euclidean distance).
double power_tail_beyond(const BoxUnionDomain& dom, double r, double delta0, double scale = 1.0);

/// Upper bound on sum_{|lambda|_inf > R} |hat chi(x - lambda)|^2 over any
/// delta0-separated set, uniformly for x in [-R/4, R/4]^d.
double tail_bound(const BoxUnionDomain& dom, double R, double delta0);

enum class ZeroKind { analytic, numeric, suspect };
enum class ZeroSetKind { analytic_single_interval, analytic_two_interval, numeric_scan };

std::string to_string(ZeroKind k);
std::string to_string(ZeroSetKind k);

struct ZeroPoint {
  double x;
  ZeroKind kind;
  /// Weighted modulus at x.
  double modulus;
  std::optional<Rational> exact;
};

/// The set start + step * Z, optionally without 0.
struct Progression {
  Rational start;
  Rational step;
  bool excludes_zero = false;

  /// Members in the open range (lo, hi), increasing.
  std::vector<Rational> members(const Rational& lo, const Rational& hi) const;
  bool contains(const Rational& x) const;
};

struct ZeroScanOptions {
  double step = 1e-3;
  double zero_tol = 1e-9;
  double suspect_tol = 1e-6;
};

struct ZeroSet1D {
  ZeroSetKind kind = ZeroSetKind::numeric_scan;
  double range = 0;
  std::vector<Progression> generators;
  /// Zeros in (-range, range), increasing.
  std::vector<ZeroPoint> zeros;
  /// Touching intervals were merged before classification.
  bool merged = false;
  /// For two intervals of unequal length: no zero in (-1/|A|, 1/|A|) was found.
  std::optional<bool> no_zero_below_unit;
  ZeroScanOptions options;

  /// True when x is a listed zero: exact membership for analytic sets, or
  /// within `window` of a numeric zero.
  bool is_zero(const Rational& x, double window = 1e-9) const;
};

/// Zeros of hat chi on the open range (-X, X) for a one-dimensional domain.
ZeroSet1D zero_set_1d(const BoxUnionDomain& dom, double X, ZeroScanOptions options = {});

/// Grid scan for zeros of hat chi in (lo, hi): sign changes of the real
/// transform (centrally symmetric domains) refined by bisection, plus local
/// minima of the weighted modulus refined by golden-section search.
std::vector<ZeroPoint> numeric_zero_scan(const BoxUnionDomain& dom, double lo, double hi,
                                         ZeroScanOptions options = {});

}  // namespace spectile
