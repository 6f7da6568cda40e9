#include "spectile/pointsets.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace spectile {

namespace {

bool lex_less(std::span<const double> a, std::span<const double> b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

bool same_point(std::span<const double> a, std::span<const double> b) {
  return std::equal(a.begin(), a.end(), b.begin());
}

std::vector<std::size_t> lex_order(const std::vector<double>& coords, std::size_t dim) {
  std::vector<std::size_t> order(coords.size() / dim);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return lex_less({coords.data() + i * dim, dim}, {coords.data() + j * dim, dim});
  });
  return order;
}

double boundary_slack(double side) { return 1e-12 * std::max(1.0, side); }

// Largest sup-norm distance from each point of `from` (inside the cube) to its
// nearest neighbour in `to`. Points of `to` are sorted by the first coordinate.
double directed_gap(const FinitePointSet& from, const FinitePointSet& to, double side) {
  const std::size_t d = from.dim();
  const double half = side / 2 + boundary_slack(side);
  std::vector<std::size_t> order(to.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return to.point(i)[0] < to.point(j)[0]; });
  std::vector<double> first(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) first[k] = to.point(order[k])[0];

  double worst = 0;
  for (std::size_t i = 0; i < from.size(); ++i) {
    auto p = from.point(i);
    if (sup_norm(p) > half) continue;
    if (to.empty()) return std::numeric_limits<double>::infinity();
    double best = std::numeric_limits<double>::infinity();
    auto start = static_cast<std::size_t>(std::lower_bound(first.begin(), first.end(), p[0]) - first.begin());
    auto probe = [&](std::size_t k) {
      auto q = to.point(order[k]);
      double m = 0;
      for (std::size_t c = 0; c < d; ++c) m = std::max(m, std::abs(p[c] - q[c]));
      best = std::min(best, m);
    };
    for (std::size_t k = start; k < first.size() && first[k] - p[0] <= best; ++k) probe(k);
    for (std::size_t k = start; k-- > 0 && p[0] - first[k] <= best;) probe(k);
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace

FinitePointSet::FinitePointSet(std::size_t dim) : dim_(dim) {
  if (dim_ == 0) throw PointSetError("point set dimension must be positive");
}

FinitePointSet::FinitePointSet(std::size_t dim, std::vector<double> coords, std::vector<std::uint64_t> mult)
    : dim_(dim), coords_(std::move(coords)), mult_(std::move(mult)) {
  if (dim_ == 0) throw PointSetError("point set dimension must be positive");
  if (coords_.size() % dim_ != 0) throw PointSetError("coordinate count is not a multiple of the dimension");
  for (double c : coords_) {
    if (!std::isfinite(c)) throw PointSetError("non-finite coordinate");
  }
  if (!mult_.empty()) {
    if (mult_.size() != size()) throw PointSetError("multiplicity list length does not match point count");
    for (auto m : mult_) {
      if (m == 0) throw PointSetError("multiplicities must be positive");
    }
    if (std::all_of(mult_.begin(), mult_.end(), [](auto m) { return m == 1; })) mult_.clear();
  }
  auto order = lex_order(coords_, dim_);
  for (std::size_t k = 1; k < order.size(); ++k) {
    if (same_point(point(order[k - 1]), point(order[k]))) {
      throw PointSetError("duplicate point key at index " + std::to_string(order[k]));
    }
  }
}

FinitePointSet FinitePointSet::merging(std::size_t dim, std::vector<double> coords,
                                       std::vector<std::uint64_t> mult) {
  if (dim == 0) throw PointSetError("point set dimension must be positive");
  const std::size_t n = coords.size() / dim;
  if (!mult.empty() && mult.size() != n) throw PointSetError("multiplicity list length does not match point count");
  auto order = lex_order(coords, dim);
  std::vector<double> out;
  std::vector<std::uint64_t> out_mult;
  out.reserve(coords.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    std::span<const double> p{coords.data() + order[k] * dim, dim};
    std::uint64_t m = mult.empty() ? 1 : mult[order[k]];
    if (!out_mult.empty() && same_point({out.data() + out.size() - dim, dim}, p)) {
      out_mult.back() += m;
    } else {
      out.insert(out.end(), p.begin(), p.end());
      out_mult.push_back(m);
    }
  }
  return FinitePointSet(dim, std::move(out), std::move(out_mult));
}

std::uint64_t FinitePointSet::total_count() const {
  if (mult_.empty()) return size();
  return std::accumulate(mult_.begin(), mult_.end(), std::uint64_t{0});
}

bool FinitePointSet::has_repeats() const { return !mult_.empty(); }

FinitePointSet FinitePointSet::restricted(double side, std::span<const double> center) const {
  const double half = side / 2 + boundary_slack(side);
  std::vector<double> out;
  std::vector<std::uint64_t> m;
  for (std::size_t i = 0; i < size(); ++i) {
    auto p = point(i);
    bool inside = true;
    for (std::size_t c = 0; c < dim_ && inside; ++c) {
      double o = center.empty() ? 0.0 : center[c];
      inside = std::abs(p[c] - o) <= half;
    }
    if (inside) {
      out.insert(out.end(), p.begin(), p.end());
      m.push_back(multiplicity(i));
    }
  }
  return FinitePointSet(dim_, std::move(out), std::move(m));
}

bool FinitePointSet::operator==(const FinitePointSet& other) const {
  if (dim_ != other.dim_ || size() != other.size()) return false;
  auto a = lex_order(coords_, dim_);
  auto b = lex_order(other.coords_, dim_);
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (!same_point(point(a[k]), other.point(b[k]))) return false;
    if (multiplicity(a[k]) != other.multiplicity(b[k])) return false;
  }
  return true;
}

PeriodicPointSet::PeriodicPointSet(Matrix basis, std::vector<Vec> offsets)
    : basis_(std::move(basis)), offsets_(std::move(offsets)) {
  if (basis_.rows() == 0 || basis_.rows() != basis_.cols()) {
    throw PointSetError("lattice basis must be a nonempty square matrix");
  }
  double det = basis_.determinant();
  if (!std::isfinite(det) || std::abs(det) < 1e-14) throw PointSetError("lattice basis is singular");
  covolume_ = std::abs(det);
  inverse_ = basis_.inverse();
  if (offsets_.empty()) throw PointSetError("periodic set needs at least one offset");
  for (const auto& o : offsets_) {
    if (o.size() != dim()) throw PointSetError("offset has wrong dimension");
  }
  for (std::size_t i = 0; i < offsets_.size(); ++i) {
    for (std::size_t j = i + 1; j < offsets_.size(); ++j) {
      Eigen::VectorXd diff(static_cast<Eigen::Index>(dim()));
      for (std::size_t c = 0; c < dim(); ++c) diff[static_cast<Eigen::Index>(c)] = offsets_[i][c] - offsets_[j][c];
      Eigen::VectorXd u = inverse_ * diff;
      bool integral = true;
      for (Eigen::Index c = 0; c < u.size() && integral; ++c) integral = std::abs(u[c] - std::round(u[c])) < 1e-9;
      if (integral) {
        throw PointSetError("offsets " + std::to_string(i) + " and " + std::to_string(j) +
                            " coincide modulo the lattice");
      }
    }
  }
}

PeriodicPointSet PeriodicPointSet::lattice(Matrix basis) {
  const auto d = static_cast<std::size_t>(basis.rows());
  return PeriodicPointSet(std::move(basis), {Vec(d, 0.0)});
}

PeriodicPointSet PeriodicPointSet::scaled_integer_lattice(std::size_t dim, double scale) {
  Matrix b = Matrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim)) * scale;
  return lattice(std::move(b));
}

Vec PeriodicPointSet::fractional(std::span<const double> x) const {
  Eigen::VectorXd v(static_cast<Eigen::Index>(dim()));
  for (std::size_t c = 0; c < dim(); ++c) v[static_cast<Eigen::Index>(c)] = x[c];
  Eigen::VectorXd u = inverse_ * v;
  Vec out(dim());
  for (std::size_t c = 0; c < dim(); ++c) {
    double f = u[static_cast<Eigen::Index>(c)];
    f -= std::floor(f);
    if (f >= 1.0) f = 0.0;
    out[c] = f;
  }
  return out;
}

PeriodicPointSet PeriodicPointSet::translated(std::span<const double> shift) const {
  auto offs = offsets_;
  for (auto& o : offs) {
    for (std::size_t c = 0; c < dim(); ++c) o[c] += shift[c];
  }
  return PeriodicPointSet(basis_, std::move(offs));
}

double density(const PeriodicPointSet& ps) { return static_cast<double>(ps.offset_count()) / ps.covolume(); }

double upper_density_estimate(const FinitePointSet& ps, std::span<const Window> windows) {
  if (windows.empty()) throw PointSetError("upper_density_estimate needs at least one window");
  double best = 0;
  for (const auto& w : windows) {
    if (!(w.side > 0)) throw PointSetError("window side must be positive");
    if (w.center.size() != ps.dim()) throw PointSetError("window center has wrong dimension");
    auto inside = ps.restricted(w.side, w.center);
    double v = static_cast<double>(inside.total_count()) / std::pow(w.side, static_cast<double>(ps.dim()));
    best = std::max(best, v);
  }
  return best;
}

FinitePointSet truncate(const PeriodicPointSet& ps, double side, std::span<const double> center) {
  if (!(side > 0)) throw PointSetError("truncation side must be positive");
  const std::size_t d = ps.dim();
  const double half = side / 2 + boundary_slack(side);
  Vec lo(d), hi(d);
  for (std::size_t c = 0; c < d; ++c) {
    double o = center.empty() ? 0.0 : center[c];
    lo[c] = o - half;
    hi[c] = o + half;
  }
  std::vector<double> coords;
  for (const auto& off : ps.offsets()) {
    for_each_lattice_point_in_box(ps.basis(), ps.inverse(), off, lo, hi, [&](std::span<const double> p) {
      coords.insert(coords.end(), p.begin(), p.end());
    });
  }
  return FinitePointSet(d, std::move(coords));
}

SeparationCertificate separation(const FinitePointSet& ps) {
  SeparationCertificate cert;
  const std::size_t d = ps.dim();
  if (ps.has_repeats()) {
    cert.delta0 = 0;
    return cert;
  }
  std::vector<std::size_t> order(ps.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return ps.point(i)[0] < ps.point(j)[0]; });
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < order.size(); ++a) {
    auto p = ps.point(order[a]);
    for (std::size_t b = a + 1; b < order.size(); ++b) {
      auto q = ps.point(order[b]);
      if (q[0] - p[0] >= best) break;
      double s = 0;
      for (std::size_t c = 0; c < d; ++c) s += (p[c] - q[c]) * (p[c] - q[c]);
      best = std::min(best, std::sqrt(s));
    }
  }
  cert.delta0 = best;
  return cert;
}

SeparationCertificate separation(const PeriodicPointSet& ps) {
  const std::size_t d = ps.dim();
  double rho = std::numeric_limits<double>::infinity();
  for (Eigen::Index j = 0; j < ps.basis().cols(); ++j) rho = std::min(rho, ps.basis().col(j).norm());
  double best = rho;
  const auto& offs = ps.offsets();
  Vec lo(d), hi(d), origin(d, 0.0);
  for (std::size_t i = 0; i < offs.size(); ++i) {
    for (std::size_t j = 0; j < offs.size(); ++j) {
      Vec diff(d);
      for (std::size_t c = 0; c < d; ++c) {
        diff[c] = offs[i][c] - offs[j][c];
        lo[c] = -diff[c] - best;
        hi[c] = -diff[c] + best;
      }
      for_each_lattice_point_in_box(ps.basis(), ps.inverse(), origin, lo, hi, [&](std::span<const double> l) {
        double s = 0;
        for (std::size_t c = 0; c < d; ++c) s += (diff[c] + l[c]) * (diff[c] + l[c]);
        double n = std::sqrt(s);
        if (i == j && n < 1e-12) return;
        best = std::min(best, n);
      });
    }
  }
  return SeparationCertificate{best};
}

double weak_distance(const FinitePointSet& a, const FinitePointSet& b, double side) {
  if (a.dim() != b.dim()) throw PointSetError("weak_distance needs point sets of equal dimension");
  if (!(side > 0)) throw PointSetError("weak_distance side must be positive");
  return 2.0 * std::max(directed_gap(a, b, side), directed_gap(b, a, side));
}

DiagonalLimit diagonal_limit(std::span<const FinitePointSet> seq, double tol, std::span<const double> index,
                             LimitOptions options) {
  if (seq.empty()) throw PointSetError("diagonal_limit needs a nonempty sequence");
  if (!(tol > 0)) throw PointSetError("diagonal_limit tolerance must be positive");
  if (!index.empty() && index.size() != seq.size()) throw PointSetError("index list length does not match sequence");
  const std::size_t d = seq.front().dim();
  const std::size_t n = seq.size();

  // Each member, expanded by multiplicity and ordered by (|p|, lexicographic).
  std::vector<std::vector<double>> ranked(n);
  for (std::size_t s = 0; s < n; ++s) {
    const auto& ps = seq[s];
    if (ps.dim() != d) throw PointSetError("diagonal_limit members differ in dimension");
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < ps.size(); ++i) {
      for (std::uint64_t m = 0; m < ps.multiplicity(i); ++m) order.push_back(i);
    }
    std::vector<double> mag(ps.size());
    for (std::size_t i = 0; i < ps.size(); ++i) mag[i] = euclidean_norm(ps.point(i));
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
      if (mag[i] != mag[j]) return mag[i] < mag[j];
      return lex_less(ps.point(i), ps.point(j));
    });
    auto& out = ranked[s];
    out.reserve(order.size() * d);
    for (auto i : order) {
      auto p = ps.point(i);
      out.insert(out.end(), p.begin(), p.end());
    }
  }

  const std::size_t tail = (n + 2) / 3;
  const std::size_t first = n - tail;
  std::size_t complete = std::numeric_limits<std::size_t>::max();
  std::size_t longest = 0;
  for (std::size_t s = first; s < n; ++s) {
    complete = std::min(complete, ranked[s].size() / d);
    longest = std::max(longest, ranked[s].size() / d);
  }

  DiagonalLimit out;
  out.incomplete = longest - complete;
  std::size_t max_rank = 0;
  for (const auto& r : ranked) max_rank = std::max(max_rank, r.size() / d);
  out.max_magnitude.assign(max_rank, 0.0);
  for (const auto& r : ranked) {
    for (std::size_t j = 0; j < r.size() / d; ++j) {
      out.max_magnitude[j] = std::max(out.max_magnitude[j], euclidean_norm({r.data() + j * d, d}));
    }
  }

  std::vector<double> t(tail);
  for (std::size_t k = 0; k < tail; ++k) t[k] = index.empty() ? static_cast<double>(first + k + 1) : index[first + k];
  // Least squares for v = L + c * (1/t).
  std::vector<double> w(tail);
  double wmean = 0;
  for (std::size_t k = 0; k < tail; ++k) {
    w[k] = 1.0 / t[k];
    wmean += w[k];
  }
  wmean /= static_cast<double>(tail);
  double sww = 0;
  for (double x : w) sww += (x - wmean) * (x - wmean);
  const bool fit = options.extrapolate && tail >= 3 && sww > 0;

  std::vector<double> emitted;
  const std::vector<double>& last = ranked[n - 1];
  for (std::size_t j = 0; j < complete; ++j) {
    double residual = 0;
    std::vector<double> value(d);
    for (std::size_t c = 0; c < d; ++c) {
      std::vector<double> v(tail);
      for (std::size_t k = 0; k < tail; ++k) v[k] = ranked[first + k][j * d + c];
      if (fit) {
        double vmean = 0;
        for (double x : v) vmean += x;
        vmean /= static_cast<double>(tail);
        double swv = 0;
        for (std::size_t k = 0; k < tail; ++k) swv += (w[k] - wmean) * (v[k] - vmean);
        double slope = swv / sww;
        double intercept = vmean - slope * wmean;
        for (std::size_t k = 0; k < tail; ++k) residual = std::max(residual, std::abs(v[k] - intercept - slope * w[k]));
        value[c] = intercept;
      } else {
        for (std::size_t k = 0; k < tail; ++k) residual = std::max(residual, std::abs(v[k] - v.back()));
        value[c] = v.back();
      }
    }
    if (residual <= tol) {
      emitted.insert(emitted.end(), value.begin(), value.end());
      out.max_residual = std::max(out.max_residual, residual);
    } else {
      out.unstable.push_back(j);
      out.first_missing_magnitude =
          std::min(out.first_missing_magnitude, euclidean_norm({last.data() + j * d, d}));
    }
  }
  if (complete < last.size() / d) {
    out.first_missing_magnitude =
        std::min(out.first_missing_magnitude, euclidean_norm({last.data() + complete * d, d}));
  }
  out.limit = FinitePointSet::merging(d, std::move(emitted));
  return out;
}

}  // namespace spectile
