#include "spectile/lattice.hpp"

#include <cmath>
#include <stdexcept>

namespace spectile {

namespace {

// Range of each coefficient k_j = sum_i inv(j,i) * y_i over the box y - origin in [lo, hi].
void coefficient_ranges(const Matrix& inverse, std::span<const double> lo, std::span<const double> hi,
                        std::vector<long>& kmin, std::vector<long>& kmax) {
  const auto d = static_cast<std::size_t>(inverse.rows());
  kmin.assign(d, 0);
  kmax.assign(d, 0);
  for (std::size_t j = 0; j < d; ++j) {
    double mn = 0, mx = 0;
    for (std::size_t i = 0; i < d; ++i) {
      double c = inverse(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i));
      double a = c * lo[i], b = c * hi[i];
      mn += std::min(a, b);
      mx += std::max(a, b);
    }
    // Slack absorbs rounding in the inverse; points are filtered exactly afterwards.
    double slack = 1e-9 * (1.0 + std::abs(mn) + std::abs(mx));
    kmin[j] = static_cast<long>(std::floor(mn - slack));
    kmax[j] = static_cast<long>(std::ceil(mx + slack));
  }
}

}  // namespace

void for_each_lattice_point_in_box(const Matrix& basis, const Matrix& inverse,
                                   std::span<const double> origin, std::span<const double> lo,
                                   std::span<const double> hi,
                                   const std::function<void(std::span<const double>)>& visit) {
  const auto d = static_cast<std::size_t>(basis.rows());
  std::vector<double> rlo(d), rhi(d);
  for (std::size_t i = 0; i < d; ++i) {
    rlo[i] = lo[i] - origin[i];
    rhi[i] = hi[i] - origin[i];
    if (rlo[i] > rhi[i]) return;
  }
  std::vector<long> kmin, kmax;
  coefficient_ranges(inverse, rlo, rhi, kmin, kmax);
  double count = 1;
  for (std::size_t j = 0; j < d; ++j) count *= static_cast<double>(kmax[j] - kmin[j] + 1);
  if (count > 5e8) throw std::length_error("lattice enumeration box is too large");

  std::vector<long> k = kmin;
  std::vector<double> p(d);
  while (true) {
    for (std::size_t i = 0; i < d; ++i) {
      double s = origin[i];
      for (std::size_t j = 0; j < d; ++j) {
        s += basis(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * static_cast<double>(k[j]);
      }
      p[i] = s;
    }
    bool inside = true;
    for (std::size_t i = 0; i < d && inside; ++i) inside = p[i] >= lo[i] && p[i] <= hi[i];
    if (inside) visit(p);

    std::size_t j = 0;
    while (j < d) {
      if (++k[j] <= kmax[j]) break;
      k[j] = kmin[j];
      ++j;
    }
    if (j == d) break;
  }
}

std::vector<std::vector<long>> lattice_coefficients_in_box(const Matrix& basis, const Matrix& inverse,
                                                           std::span<const double> lo,
                                                           std::span<const double> hi) {
  const auto d = static_cast<std::size_t>(basis.rows());
  std::vector<long> kmin, kmax;
  coefficient_ranges(inverse, lo, hi, kmin, kmax);
  std::vector<std::vector<long>> out;
  std::vector<long> k = kmin;
  while (true) {
    bool inside = true;
    for (std::size_t i = 0; i < d && inside; ++i) {
      double s = 0;
      for (std::size_t j = 0; j < d; ++j) {
        s += basis(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * static_cast<double>(k[j]);
      }
      inside = s >= lo[i] && s <= hi[i];
    }
    if (inside) out.push_back(k);
    std::size_t j = 0;
    while (j < d) {
      if (++k[j] <= kmax[j]) break;
      k[j] = kmin[j];
      ++j;
    }
    if (j == d) break;
  }
  return out;
}

double sup_norm(std::span<const double> x) {
  double m = 0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

double euclidean_norm(std::span<const double> x) {
  double s = 0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

}  // namespace spectile
