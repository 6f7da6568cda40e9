#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "spectile/domains.hpp"
#include "spectile/fourier.hpp"
#include "spectile/pointsets.hpp"

namespace spectile {

/// x -> sum over lambda of f(x - lambda) for a fixed periodic set.
class PeriodicSum {
 public:
  virtual ~PeriodicSum() = default;

  virtual double value(std::span<const double> x) const = 0;

  /// Values at origin + basis * u with u_j = (i_j + 1/2) / n_j, iterated with
  /// the first index fastest.
  virtual std::vector<double> grid_values(std::span<const double> origin, std::span<const std::size_t> n) const;

  /// Bound on |dS/dx_i| for each axis; infinite for discontinuous f.
  virtual Vec lipschitz() const = 0;

  /// Integral of the sum over the cube center + [-side/2, side/2]^d.
  virtual double window_integral(std::span<const double> center, double side) const = 0;

  virtual std::string route() const = 0;

  /// Largest frequency (dual route) or lattice radius used in the finite sum.
  virtual double truncation_radius() const = 0;

  const PeriodicPointSet& lattice() const { return lam_; }

 protected:
  explicit PeriodicSum(PeriodicPointSet lam) : lam_(std::move(lam)) {}

  PeriodicPointSet lam_;
};

/// A nonnegative integrable function on R^d that can be summed over point sets.
class LatticeSummable {
 public:
  virtual ~LatticeSummable() = default;

  virtual std::string kind() const = 0;
  virtual const BoxUnionDomain& domain() const = 0;
  virtual double scale() const = 0;
  std::size_t dim() const { return domain().dim(); }

  virtual double value(std::span<const double> x) const = 0;
  virtual double integral() const = 0;

  /// Upper bound on sum_{y in Y, |y|_inf >= r} f(y) for any set Y with
  /// pairwise distances at least delta0.
  virtual double tail_beyond(double r, double delta0) const = 0;

  /// Bound on |df/dx_i(y)| valid whenever |y_j| >= dist_j for all j.
  virtual Vec derivative_envelope(std::span<const double> dist) const = 0;

  /// Sup-norm radius outside of which f vanishes; infinite when unbounded.
  virtual double support_radius() const = 0;
  virtual bool continuous() const = 0;

  virtual std::unique_ptr<PeriodicSum> periodize(const PeriodicPointSet& lam) const = 0;

  /// Periodic sum truncated to lattice points with |x - lambda|_inf <= radius,
  /// used as an independent cross-check of periodize().
  std::unique_ptr<PeriodicSum> periodize_truncated(const PeriodicPointSet& lam, double radius) const;

  std::string describe() const;
};

/// scale * indicator of a box union (half-open boxes).
class IndicatorFunction final : public LatticeSummable {
 public:
  explicit IndicatorFunction(BoxUnionDomain dom, double scale = 1.0);

  std::string kind() const override { return "indicator"; }
  const BoxUnionDomain& domain() const override { return dom_; }
  double scale() const override { return scale_; }
  double value(std::span<const double> x) const override;
  double integral() const override;
  double tail_beyond(double r, double delta0) const override;
  Vec derivative_envelope(std::span<const double> dist) const override;
  double support_radius() const override { return radius_; }
  bool continuous() const override { return false; }
  std::unique_ptr<PeriodicSum> periodize(const PeriodicPointSet& lam) const override;

 private:
  BoxUnionDomain dom_;
  double scale_;
  double radius_;
};

/// scale * |hat chi_Omega|^2.
class PowerSpectrum final : public LatticeSummable {
 public:
  explicit PowerSpectrum(BoxUnionDomain dom, double scale = 1.0);

  /// |hat chi_Omega|^2 / |Omega|, which integrates to 1.
  static PowerSpectrum normalized(BoxUnionDomain dom);

  std::string kind() const override { return "power"; }
  const BoxUnionDomain& domain() const override { return profile_.domain(); }
  double scale() const override { return scale_; }
  const TransformProfile& profile() const { return profile_; }
  double value(std::span<const double> x) const override;
  double integral() const override;
  double tail_beyond(double r, double delta0) const override;
  Vec derivative_envelope(std::span<const double> dist) const override;
  double support_radius() const override;
  bool continuous() const override { return true; }
  std::unique_ptr<PeriodicSum> periodize(const PeriodicPointSet& lam) const override;

  /// Fourier transform of f at a frequency: scale * |Omega cap (Omega + g)|.
  double autocorrelation(std::span<const double> g) const;

 private:
  TransformProfile profile_;
  double scale_;
  std::vector<double> moment_;  // 2 pi * integral over Omega of |t_i|
};

/// Sum over an explicit finite point set, x -> sum_p f(x - p).
double finite_sum(const LatticeSummable& f, const FinitePointSet& pts, std::span<const double> x);

/// Per-axis Lipschitz bound of the finite sum on the cube center + Q_side.
Vec finite_sum_lipschitz(const LatticeSummable& f, const FinitePointSet& pts, std::span<const double> center,
                         double side);

}  // namespace spectile
