#pragma once

#include <Eigen/Dense>

#include <functional>
#include <span>
#include <vector>

namespace spectile {

using Vec = std::vector<double>;
using Matrix = Eigen::MatrixXd;

/// Calls visit(point) for every point origin + basis * k (k integer) whose
/// coordinates all lie in [lo_i, hi_i]. `basis` holds the generators as columns.
void for_each_lattice_point_in_box(const Matrix& basis, const Matrix& inverse,
                                   std::span<const double> origin, std::span<const double> lo,
                                   std::span<const double> hi,
                                   const std::function<void(std::span<const double>)>& visit);

/// Integer coefficient vectors k with basis * k inside the box [lo, hi].
std::vector<std::vector<long>> lattice_coefficients_in_box(const Matrix& basis, const Matrix& inverse,
                                                           std::span<const double> lo,
                                                           std::span<const double> hi);

double sup_norm(std::span<const double> x);
double euclidean_norm(std::span<const double> x);

}  // namespace spectile
