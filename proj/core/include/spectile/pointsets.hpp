#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "spectile/lattice.hpp"

namespace spectile {

class PointSetError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Finite multiset of points in R^d. Points are distinct as stored keys; repeated
/// points are represented by their multiplicity. Coordinates are stored flat.
class FinitePointSet {
 public:
  explicit FinitePointSet(std::size_t dim);
  FinitePointSet(std::size_t dim, std::vector<double> coords, std::vector<std::uint64_t> mult = {});

  /// Builds a multiset, folding exactly equal points into multiplicities.
  static FinitePointSet merging(std::size_t dim, std::vector<double> coords,
                                std::vector<std::uint64_t> mult = {});

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return coords_.size() / dim_; }
  bool empty() const { return coords_.empty(); }
  std::span<const double> point(std::size_t i) const { return {coords_.data() + i * dim_, dim_}; }
  std::uint64_t multiplicity(std::size_t i) const { return mult_.empty() ? 1 : mult_[i]; }
  std::uint64_t total_count() const;
  bool has_repeats() const;
  const std::vector<double>& coords() const { return coords_; }

  /// Points (with multiplicity) inside the closed cube center + [-R/2, R/2]^d.
  FinitePointSet restricted(double side, std::span<const double> center = {}) const;

  bool operator==(const FinitePointSet& other) const;

 private:
  std::size_t dim_;
  std::vector<double> coords_;
  std::vector<std::uint64_t> mult_;  // empty means every multiplicity is 1
};

/// A lattice-periodic set: union of offset + L over the offsets, where L is
/// generated by the columns of `basis`.
class PeriodicPointSet {
 public:
  PeriodicPointSet(Matrix basis, std::vector<Vec> offsets);

  static PeriodicPointSet lattice(Matrix basis);
  /// scale * Z^d.
  static PeriodicPointSet scaled_integer_lattice(std::size_t dim, double scale = 1.0);

  std::size_t dim() const { return static_cast<std::size_t>(basis_.rows()); }
  const Matrix& basis() const { return basis_; }
  const Matrix& inverse() const { return inverse_; }
  /// |det basis|, the volume of a fundamental cell.
  double covolume() const { return covolume_; }
  const std::vector<Vec>& offsets() const { return offsets_; }
  std::size_t offset_count() const { return offsets_.size(); }

  /// Basis of the dual lattice {g : g.l in Z for all l}, as columns.
  Matrix dual_basis() const { return inverse_.transpose(); }

  /// Lattice coordinates of x reduced to [0, 1).
  Vec fractional(std::span<const double> x) const;

  PeriodicPointSet translated(std::span<const double> shift) const;

 private:
  Matrix basis_;
  Matrix inverse_;
  double covolume_;
  std::vector<Vec> offsets_;
};

/// Exact density |offsets| / covolume.
double density(const PeriodicPointSet& ps);

struct Window {
  Vec center;
  double side;
};

/// max over the windows of (count with multiplicity) / side^d. A lower estimate
/// of the upper density of whatever infinite set `ps` was cut from.
double upper_density_estimate(const FinitePointSet& ps, std::span<const Window> windows);

/// Points of ps in the closed cube center + [-R/2, R/2]^d, each once.
FinitePointSet truncate(const PeriodicPointSet& ps, double side, std::span<const double> center = {});

struct SeparationCertificate {
  /// Minimum distance between distinct points; +infinity when fewer than two points exist.
  double delta0 = std::numeric_limits<double>::infinity();
  bool degenerate() const { return delta0 == std::numeric_limits<double>::infinity(); }
};

/// Exact minimum Euclidean distance between distinct stored points.
SeparationCertificate separation(const FinitePointSet& ps);
/// Minimum of |o_i - o_j + l| over offsets and lattice vectors, excluding zero.
SeparationCertificate separation(const PeriodicPointSet& ps);

/// Smallest eps with a cap Q_R within b + Q_eps and b cap Q_R within a + Q_eps,
/// Q_eps = [-eps/2, eps/2]^d. Infinite when some point has no partner at all.
double weak_distance(const FinitePointSet& a, const FinitePointSet& b, double side);

struct LimitOptions {
  /// Fit value = L + c / index over the final third and emit L; otherwise emit the final value.
  bool extrapolate = true;
};

struct DiagonalLimit {
  FinitePointSet limit{1};
  /// Magnitude ranks whose sequences failed to stabilise.
  std::vector<std::size_t> unstable;
  /// Ranks present in some but not all members of the final third.
  std::size_t incomplete = 0;
  /// Largest fit residual among stable ranks.
  double max_residual = 0;
  /// Per rank, the largest magnitude seen across the whole sequence.
  std::vector<double> max_magnitude;
  /// Magnitude (in the final member) of the first rank that was not emitted.
  double first_missing_magnitude = std::numeric_limits<double>::infinity();
};

/// Empirical weak limit. Points of each member are numbered by increasing
/// magnitude; a rank is emitted when its values over the final third of the
/// sequence fit within tol.
DiagonalLimit diagonal_limit(std::span<const FinitePointSet> seq, double tol,
                             std::span<const double> index = {}, LimitOptions options = {});

}  // namespace spectile
