#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "spectile/rational.hpp"

namespace spectile {

class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Nondegenerate interval with rational endpoints, lo < hi. Whether the
/// endpoints belong to the set is not tracked; boundaries are null sets.
class Interval {
 public:
  Interval(Rational lo, Rational hi);

  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  Rational length() const { return hi_ - lo_; }
  Rational midpoint() const { return (lo_ + hi_) / 2; }

  /// True when the open intervals share a point.
  bool overlaps(const Interval& other) const { return lo_ < other.hi_ && other.lo_ < hi_; }

  bool operator==(const Interval& other) const = default;

 private:
  Rational lo_;
  Rational hi_;
};

using Box = std::vector<Interval>;

/// A finite union of axis-aligned boxes in R^d with pairwise disjoint interiors.
class BoxUnionDomain {
 public:
  BoxUnionDomain(std::size_t dim, std::vector<Box> boxes);

  static BoxUnionDomain interval(Rational lo, Rational hi);
  static BoxUnionDomain intervals(std::vector<Interval> parts);
  static BoxUnionDomain cube(std::size_t dim, Rational lo, Rational hi);

  std::size_t dim() const { return dim_; }
  const std::vector<Box>& boxes() const { return boxes_; }
  std::size_t box_count() const { return boxes_.size(); }

  Rational measure() const;

  /// Smallest box containing the domain.
  Box bounding_box() const;

  /// Uniform scaling about the origin by s != 0 on every axis.
  BoxUnionDomain scaled(const Rational& s) const;
  /// Scaling of each axis by its own factor.
  BoxUnionDomain scaled(std::span<const Rational> per_axis) const;
  BoxUnionDomain translated(std::span<const Rational> shift) const;

  /// Intervals of a one-dimensional domain, sorted, with touching intervals merged.
  std::vector<Interval> merged_intervals() const;

  /// Per-axis 1-d factors when the box list is exactly a Cartesian product of
  /// per-axis interval lists; empty otherwise.
  std::optional<std::vector<BoxUnionDomain>> product_factors() const;

  /// Half-open membership test: box [lo, hi) on each axis.
  bool contains(std::span<const double> x) const;

  bool operator==(const BoxUnionDomain& other) const;

 private:
  std::size_t dim_;
  std::vector<Box> boxes_;
};

struct NormalizedDomain {
  BoxUnionDomain domain;
  /// Scale applied to each axis.
  std::vector<Rational> axis_scale;
  /// True when all axis scales are equal.
  bool isotropic;
};

Rational measure(const BoxUnionDomain& dom);

/// Rescales about the origin to unit measure. Uses the exact isotropic factor
/// |dom|^(-1/d) when it is rational, otherwise stretches the first axis only.
NormalizedDomain normalize_to_unit_measure(const BoxUnionDomain& dom);

/// Cartesian product in dimension a.dim() + b.dim(); boxes are all pairwise products.
BoxUnionDomain product(const BoxUnionDomain& a, const BoxUnionDomain& b);

class ProductDomain {
 public:
  ProductDomain(BoxUnionDomain left, BoxUnionDomain right);

  const BoxUnionDomain& left() const { return left_; }
  const BoxUnionDomain& right() const { return right_; }
  const BoxUnionDomain& combined() const { return combined_; }
  Rational measure() const { return left_.measure() * right_.measure(); }

 private:
  BoxUnionDomain left_;
  BoxUnionDomain right_;
  BoxUnionDomain combined_;
};

std::string describe(const BoxUnionDomain& dom);

}  // namespace spectile
