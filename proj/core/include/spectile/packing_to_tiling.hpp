#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "spectile/pointsets.hpp"
#include "spectile/spectra.hpp"
#include "spectile/summable.hpp"

namespace spectile {

/// Probe cube [-half_width, half_width]^d sampled at `step`, coarsened so that
/// at most `max_points` samples are taken.
struct ProbeGrid {
  double half_width = 4.0;
  double step = 1e-3;
  std::size_t max_points = 1'000'000;
};

struct AssumptionProfile {
  double integral = 0;
  double mass_above_half = 0;
  /// Side of an axis-aligned cube on which f > 1/2; translates in a packing at
  /// level 1 are then at least this far apart.
  double delta0 = 0;
  double min_value = 0;
  Status status = Status::inconclusive;
  std::string reason;
  std::optional<Vec> witness;

  bool accepted() const { return status == Status::holds; }
};

AssumptionProfile verify_assumptions(const LatticeSummable& f, ProbeGrid probe = {});

/// Upper bound on the integral over the cube Q_side of sum_{lambda not in Q_R} f(x - lambda).
double tail_mass(const LatticeSummable& f, const FinitePointSet& lam, double side, double R);

/// |Q_R| minus the integral of f * delta_lam over center + Q_R.
double window_deficit(const LatticeSummable& f, const PeriodicPointSet& lam, double R, std::span<const double> center = {});

struct AdmissibilityRecord {
  double delta0 = 0;
  std::vector<long> index;
  std::vector<double> densities;
  bool densities_nondecreasing = true;
};

/// Finite family n0 <= n <= n1 of periodic candidate packings of f at a level.
class PackingSequence {
 public:
  using Generator = std::function<PeriodicPointSet(long)>;

  PackingSequence(std::shared_ptr<const LatticeSummable> f, Level level, long n0, long n1, Generator gen,
                  std::string description);

  /// (1 + 1/n) Z^d.
  static PackingSequence stretched_lattice(std::shared_ptr<const LatticeSummable> f, long n0, long n1,
                                           Level level = Level(1.0));
  /// scale * Z^d for every n.
  static PackingSequence fixed_lattice(std::shared_ptr<const LatticeSummable> f, double scale, long n0, long n1,
                                       Level level = Level(1.0));

  const LatticeSummable& f() const { return *f_; }
  std::shared_ptr<const LatticeSummable> f_ptr() const { return f_; }
  Level level() const { return level_; }
  long n0() const { return n0_; }
  long n1() const { return n1_; }
  PeriodicPointSet member(long n) const { return gen_(n); }
  const std::string& description() const { return description_; }

  AdmissibilityRecord admissibility() const;

 private:
  std::shared_ptr<const LatticeSummable> f_;
  Level level_;
  long n0_, n1_;
  Generator gen_;
  std::string description_;
};

struct MemberTrace {
  long n = 0;
  double density = 0;
  /// max(0, sup f * delta - level) on the packing grid.
  double packing_excess = 0;
  Status packing_status = Status::inconclusive;
  Vec shift;
  double window_deficit = 0;
};

struct ExtractionOptions {
  GridOptions packing_grid;
  double translation_step = 1e-3;
  double density_tol = 1e-2;
  /// Largest packing excess accepted for the final member; negative means density_tol.
  double packing_tol = -1;
  /// Reject the sequence as soon as one member fails its packing check.
  bool strict_packing = false;
  double limit_tol = 0.05;
  /// Sup radius kept for members outside the final third (trace only).
  double trace_radius = 20;
  double max_known_radius = 2e5;
  double cube_grid_step = 1e-2;
  ProbeGrid probe;
};

struct ExtractionResult {
  Status status = Status::inconclusive;
  bool rejected = false;
  std::string reason;
  AssumptionProfile assumptions;
  AdmissibilityRecord admissibility;
  std::vector<MemberTrace> members;
  DiagonalLimit limit;
  /// Sup radius within which the limit is complete.
  double known_radius = 0;
  Verdict tiling;
  Verdict packing;
  /// Point of the limit closest to the origin.
  Vec anchor;
};

/// Translates each member to nearly maximise its window integral over Q_n,
/// truncates, extracts the diagonal limit, and checks that the limit tiles the
/// cube Q_side at the sequence level with tolerance tol.
ExtractionResult extract_tiling(const PackingSequence& seq, double side, double tol, ExtractionOptions opt = {});

}  // namespace spectile
