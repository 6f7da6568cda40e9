#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spectile/domains.hpp"
#include "spectile/fourier.hpp"
#include "spectile/pointsets.hpp"
#include "spectile/spectra.hpp"

namespace spectile {

/// Bounded open set D in R, a finite union of open intervals.
///
/// The intervals of D come from a one-dimensional domain. D - D is kept as a
/// list of open intervals: overlapping ones are merged, touching ones are not,
/// since the common endpoint is missing from the union.
class WindowRegion {
 public:
  explicit WindowRegion(BoxUnionDomain set);

  /// The centered interval (-half_width, half_width).
  static WindowRegion centered(const Rational& half_width);

  const BoxUnionDomain& set() const { return set_; }
  const BoxUnionDomain& difference_set() const { return difference_; }
  Rational measure() const { return set_.measure(); }
  /// sup |x| over D - D.
  Rational difference_extent() const;

  bool contains(const Rational& x) const;
  bool contains(double x) const;
  bool difference_contains(const Rational& x) const;
  bool difference_contains(double x) const;

 private:
  BoxUnionDomain set_;
  BoxUnionDomain difference_;
};

/// Verifies that no zero of hat chi_A lies in D - D, scanning zeros on (-X, X).
Verdict check_orthogonal_packing_region(const BoxUnionDomain& A, const WindowRegion& D, double X,
                                        ZeroScanOptions opt = {});

struct RegionBound {
  Verdict verdict;
  /// |D| equals 1 / density.
  bool tight = false;
  /// |D| > 1 / |A|, so A cannot be spectral.
  bool obstruction = false;
  Rational region_measure;
  double bound = 0;
};

/// Size test |D| <= 1 / lam_density for a verified orthogonal packing region.
RegionBound packing_region_bound(const BoxUnionDomain& A, const WindowRegion& D, double lam_density);

/// Projection of a periodic set in R^{1+n} onto its last n coordinates,
/// restricted to points whose first coordinate lies in a + D. The result is
/// periodic; its offsets carry multiplicities.
struct ProjectedSet {
  Matrix basis;
  std::vector<Vec> offsets;
  std::vector<std::uint64_t> multiplicity;

  std::size_t dim() const { return static_cast<std::size_t>(basis.rows()); }
  std::uint64_t total_count() const;
  bool has_repeats() const;
  bool empty() const { return offsets.empty(); }
  /// Points per unit volume, multiplicities included.
  double density() const;
  /// Offsets with repeated multiplicity collapsed; throws when empty.
  PeriodicPointSet as_periodic() const;
  FinitePointSet truncated(double side) const;
};

/// Points of lam with first coordinate in a + D, projected to the remaining
/// coordinates. Multiplicities are kept unless dedupe is set.
FinitePointSet window_projection(const FinitePointSet& lam, const WindowRegion& D, double a, bool dedupe = false);
ProjectedSet window_projection(const PeriodicPointSet& lam, const WindowRegion& D, double a, bool dedupe = false);

struct SweepResult {
  double a = 0;
  double alpha = 0;
  /// |D| times the density of lam: the average of alpha over one period.
  double mean = 0;
  double period = 0;
  std::size_t evaluations = 0;
};

/// Maximises the projected density over translates a of D across one period.
/// The grid a = k * sweep_step is joined by the midpoints between breakpoints
/// of the counting function, so the maximum is exact; ties go to the smallest |a|.
SweepResult best_window_sweep(const PeriodicPointSet& lam, const WindowRegion& D, double sweep_step = 1e-3);

struct FactorExtraction {
  ProjectedSet L;
  SweepResult sweep;
  Verdict lam_orthogonal;
  Verdict region;
  /// Two points of lam share their projection.
  bool contradiction = false;
  Verdict verdict;
};

/// Orthogonal set for the right factor of omega, cut out of lam by the best
/// translate of D.
FactorExtraction extract_factor_orthogonal_set(const ProductDomain& omega, const PeriodicPointSet& lam,
                                               const WindowRegion& D, double sweep_step = 1e-3);

/// Two disjoint, non-touching closed intervals of total length 1.
class TwoIntervalSpec {
 public:
  TwoIntervalSpec(Interval I, Interval J);

  const Interval& I() const { return I_; }
  const Interval& J() const { return J_; }
  Rational l1() const { return I_.length(); }
  Rational l2() const { return J_.length(); }
  Rational m1() const { return I_.midpoint(); }
  Rational m2() const { return J_.midpoint(); }
  Rational gap() const { return abs(m2() - m1()); }
  /// 1 / (2 |m1 - m2|) for equal lengths.
  std::optional<Rational> delta() const;
  BoxUnionDomain domain() const;

 private:
  Interval I_;
  Interval J_;
};

enum class TwoIntervalCase { unequal_lengths, equal_lengths };
enum class Answer { yes, no, not_applicable };

std::string to_string(TwoIntervalCase c);
std::string to_string(Answer a);

struct ClassificationVerdict {
  TwoIntervalCase kind = TwoIntervalCase::unequal_lengths;
  WindowRegion D_used = WindowRegion::centered(Rational(1, 2));
  Rational D_measure;
  Answer a_spectral = Answer::no;
  Answer product_spectral_possible = Answer::no;
  Answer b_spectral_implied = Answer::not_applicable;
  std::optional<PeriodicPointSet> tiling_witness;
  std::optional<PeriodicPointSet> spectrum;
  /// hat chi_A(1) = 0, decided exactly (unequal lengths only).
  std::optional<bool> chi_hat_one_zero;
  /// The answer for A rests on the size obstruction alone.
  bool a_verdict_computed = false;
  Verdict region;
  RegionBound bound;
  std::string note;
};

ClassificationVerdict classify_two_intervals(const TwoIntervalSpec& spec);

struct SpectralPair {
  BoxUnionDomain domain;
  PeriodicPointSet spectrum;
};

struct ProductSpectrum {
  std::optional<ProductDomain> domain;
  std::optional<PeriodicPointSet> spectrum;
  Verdict factor_a;
  Verdict factor_b;
  Verdict product;
  bool rejected = false;
  std::string reason;
};

/// Cartesian product of two spectral pairs. Each factor is verified first;
/// the product spectrum is then checked directly.
ProductSpectrum product_spectrum(const SpectralPair& a, const SpectralPair& b, SpectrumOptions opt = {});

/// Block-diagonal product of two periodic sets.
PeriodicPointSet product_set(const PeriodicPointSet& a, const PeriodicPointSet& b);

}  // namespace spectile
