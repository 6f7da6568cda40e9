#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "spectile/domains.hpp"
#include "spectile/pointsets.hpp"
#include "spectile/summable.hpp"

namespace spectile {

enum class Status { holds, fails, inconclusive };

std::string to_string(Status s);

/// Outcome of a numeric check.
///
/// On a grid, `sup_error` is the largest observed deviation plus the certified
/// tail of any truncated sum. The verdict holds when sup_error <= tolerance and
/// fails when the observed deviation exceeds tolerance + tail + grid allowance;
/// anything in between is inconclusive.
struct Verdict {
  Status status = Status::inconclusive;
  std::optional<Vec> witness;
  double sup_error = 0;
  double truncation_radius = 0;
  double tail_bound_used = 0;
  double grid_allowance = 0;
  double tolerance = 0;
  std::string route;
  std::string reason;
  std::size_t evaluations = 0;
  /// Set when the function is discontinuous, so only grid values are certified.
  bool grid_only = false;

  bool holds() const { return status == Status::holds; }
  bool fails() const { return status == Status::fails; }
};

/// Positive level of a packing or tiling.
class Level {
 public:
  explicit Level(double value);
  double value() const { return value_; }

 private:
  double value_;
};

struct OrthogonalityOptions {
  double zero_tol = 1e-9;
  /// Sup-norm radius for differences of a periodic set; 0 picks 12 times the
  /// longest basis column.
  double difference_radius = 0;
};

/// Every nonzero difference lambda - mu must be a zero of hat chi_dom, with the
/// weighted modulus |hat chi| * prod max(1, pi |x_i|) as the zero criterion.
Verdict check_orthogonal(const BoxUnionDomain& dom, const FinitePointSet& lam, OrthogonalityOptions opt = {});
Verdict check_orthogonal(const BoxUnionDomain& dom, const PeriodicPointSet& lam, OrthogonalityOptions opt = {});

enum class SumRoute { automatic, truncated };

struct GridOptions {
  double grid_step = 1e-3;
  double tolerance = 1e-6;
  /// Truncated sums grow their radius until the tail bound is below this.
  double tail_target = 1e-8;
  std::size_t max_points = 1'000'000;
  /// Shift of the evaluation grid; empty means the origin.
  Vec origin;
  SumRoute route = SumRoute::automatic;
  /// Explicit radius for the truncated route; 0 derives it from tail_target.
  double truncation_radius = 0;
  double max_truncation_radius = 1e6;
};

Verdict check_packing(const LatticeSummable& f, const PeriodicPointSet& lam, Level level, GridOptions opt = {});
Verdict check_tiling(const LatticeSummable& f, const PeriodicPointSet& lam, Level level, GridOptions opt = {});

/// Checks f * delta_lam against the level on the cube center + Q_side for a
/// finite set. Points of the underlying infinite set outside the sup-norm ball
/// of radius `known_radius` are missing from lam; their contribution is
/// bounded with f.tail_beyond and the separation delta0.
Verdict check_tiling_on_cube(const LatticeSummable& f, const FinitePointSet& lam, Level level, double side,
                             double known_radius, double delta0, GridOptions opt = {});
Verdict check_packing_on_cube(const LatticeSummable& f, const FinitePointSet& lam, Level level, double side,
                              double known_radius, double delta0, GridOptions opt = {});

struct CubeCheck {
  Verdict tiling;
  Verdict packing;
};

/// Both cube checks from a single pass over the grid.
CubeCheck check_on_cube(const LatticeSummable& f, const FinitePointSet& lam, Level level, double side,
                        double known_radius, double delta0, GridOptions opt = {});

struct SpectrumOptions {
  GridOptions grid;
  OrthogonalityOptions orthogonality;
  double density_tol = 1e-12;
};

/// Orthogonality, tiling of |hat chi|^2 at level |dom|^2, and density = |dom|.
Verdict check_spectrum(const BoxUnionDomain& dom, const PeriodicPointSet& lam, SpectrumOptions opt = {});

struct Sample {
  Vec x;
  double value;
};

/// Values of the periodic sum on the grid used by the checks, for plotting.
std::vector<Sample> sample_periodic_sum(const LatticeSummable& f, const PeriodicPointSet& lam, GridOptions opt = {});

}  // namespace spectile
