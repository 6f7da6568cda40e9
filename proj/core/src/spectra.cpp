#include "spectile/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "spectile/fourier.hpp"

namespace spectile {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct PeriodicGrid {
  Vec origin;
  std::vector<std::size_t> n;
  Vec spacing;  // per-axis displacement bound to the nearest grid point
  bool coarsened = false;
};

PeriodicGrid make_grid(const PeriodicPointSet& lam, const GridOptions& opt) {
  if (!(opt.grid_step > 0) || !std::isfinite(opt.grid_step)) throw std::invalid_argument("grid_step must be positive");
  const std::size_t d = lam.dim();
  PeriodicGrid g;
  g.origin = opt.origin.empty() ? Vec(d, 0.0) : opt.origin;
  if (g.origin.size() != d) throw std::invalid_argument("grid origin has wrong dimension");
  g.n.resize(d);
  double total = 1;
  for (std::size_t j = 0; j < d; ++j) {
    double len = lam.basis().col(static_cast<Eigen::Index>(j)).norm();
    g.n[j] = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(len / opt.grid_step)));
    total *= static_cast<double>(g.n[j]);
  }
  if (total > static_cast<double>(opt.max_points)) {
    double shrink = std::pow(total / static_cast<double>(opt.max_points), 1.0 / static_cast<double>(d));
    for (auto& m : g.n) m = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(static_cast<double>(m) / shrink)));
    g.coarsened = true;
  }
  g.spacing.assign(d, 0.0);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      g.spacing[i] += std::abs(lam.basis()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))) * 0.5 /
                      static_cast<double>(g.n[j]);
    }
  }
  return g;
}

Vec grid_point(const PeriodicPointSet& lam, const PeriodicGrid& g, std::size_t flat) {
  const std::size_t d = lam.dim();
  Vec u(d);
  for (std::size_t j = 0; j < d; ++j) {
    u[j] = (static_cast<double>(flat % g.n[j]) + 0.5) / static_cast<double>(g.n[j]);
    flat /= g.n[j];
  }
  Vec x = g.origin;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) x[i] += lam.basis()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * u[j];
  }
  return x;
}

double allowance(const Vec& lip, const Vec& spacing, bool& grid_only) {
  double a = 0;
  for (std::size_t i = 0; i < lip.size(); ++i) {
    if (!std::isfinite(lip[i])) {
      grid_only = true;
      return 0;
    }
    a += lip[i] * spacing[i];
  }
  return a;
}

void decide(Verdict& v, double deviation) {
  v.sup_error = deviation + v.tail_bound_used;
  if (v.sup_error <= v.tolerance) {
    v.status = Status::holds;
    v.witness.reset();
  } else if (deviation > v.tolerance + v.tail_bound_used + v.grid_allowance) {
    v.status = Status::fails;
  } else {
    v.status = Status::inconclusive;
    if (v.reason.empty()) v.reason = "deviation inside the uncertainty band";
  }
}

struct PreparedSum {
  std::unique_ptr<PeriodicSum> sum;
  double tail = 0;
};

PreparedSum prepare(const LatticeSummable& f, const PeriodicPointSet& lam, const GridOptions& opt) {
  if (lam.dim() != f.dim()) throw PointSetError("point set dimension does not match the function");
  PreparedSum p;
  if (opt.route == SumRoute::automatic) {
    p.sum = f.periodize(lam);
    return p;
  }
  const double delta0 = separation(lam).delta0;
  double r = opt.truncation_radius;
  if (r <= 0) {
    r = 0;
    for (Eigen::Index j = 0; j < lam.basis().cols(); ++j) r = std::max(r, 8 * lam.basis().col(j).norm());
    while (f.tail_beyond(r, delta0) > opt.tail_target && r < opt.max_truncation_radius) {
      r = std::min(2 * r, opt.max_truncation_radius);
    }
  }
  p.sum = f.periodize_truncated(lam, r);
  p.tail = f.tail_beyond(r, delta0);
  return p;
}

Verdict periodic_check(const LatticeSummable& f, const PeriodicPointSet& lam, Level level, const GridOptions& opt,
                       bool tiling) {
  PreparedSum p = prepare(f, lam, opt);
  PeriodicGrid g = make_grid(lam, opt);
  Verdict v;
  v.tolerance = opt.tolerance;
  v.route = p.sum->route();
  v.truncation_radius = p.sum->truncation_radius();
  v.tail_bound_used = p.tail;
  v.grid_allowance = allowance(p.sum->lipschitz(), g.spacing, v.grid_only);

  std::vector<double> vals = p.sum->grid_values(g.origin, g.n);
  v.evaluations = vals.size();
  double worst = tiling ? 0.0 : -kInf;
  std::size_t at = 0;
  for (std::size_t k = 0; k < vals.size(); ++k) {
    double dev = tiling ? std::abs(vals[k] - level.value()) : vals[k] - level.value();
    if (dev > worst) {
      worst = dev;
      at = k;
    }
  }
  v.witness = grid_point(lam, g, at);
  if (g.coarsened) v.reason = "grid coarsened to respect max_points";
  decide(v, std::max(0.0, worst));
  if (v.grid_only && v.status == Status::holds) v.reason = "certified on grid points only";
  return v;
}

CubeCheck cube_check(const LatticeSummable& f, const FinitePointSet& lam, Level level, double side,
                     double known_radius, double delta0, const GridOptions& opt) {
  if (!(opt.grid_step > 0)) throw std::invalid_argument("grid_step must be positive");
  if (!(side > 0)) throw std::invalid_argument("cube side must be positive");
  if (lam.dim() != f.dim()) throw PointSetError("point set dimension does not match the function");
  const std::size_t d = f.dim();
  Vec center = opt.origin.empty() ? Vec(d, 0.0) : opt.origin;
  auto per_axis = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(side / opt.grid_step)));
  double total = std::pow(static_cast<double>(per_axis), static_cast<double>(d));
  Verdict v;
  if (total > static_cast<double>(opt.max_points)) {
    double root = std::pow(static_cast<double>(opt.max_points), 1.0 / static_cast<double>(d));
    per_axis = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(root)));
    v.reason = "grid coarsened to respect max_points";
  }
  const double h = side / static_cast<double>(per_axis);
  v.tolerance = opt.tolerance;
  v.route = "direct-truncated";
  v.truncation_radius = known_radius;
  v.tail_bound_used = f.tail_beyond(known_radius - side / 2, delta0);
  Vec lip = finite_sum_lipschitz(f, lam, center, side);
  v.grid_allowance = allowance(lip, Vec(d, h / 2), v.grid_only);

  std::vector<std::size_t> idx(d, 0);
  Vec x(d);
  double worst_tile = 0, worst_pack = -kInf;
  Vec at_tile, at_pack;
  while (true) {
    for (std::size_t i = 0; i < d; ++i) x[i] = center[i] - side / 2 + (static_cast<double>(idx[i]) + 0.5) * h;
    double s = finite_sum(f, lam, x);
    ++v.evaluations;
    if (std::abs(s - level.value()) > worst_tile) {
      worst_tile = std::abs(s - level.value());
      at_tile = x;
    }
    if (s - level.value() > worst_pack) {
      worst_pack = s - level.value();
      at_pack = x;
    }
    std::size_t j = 0;
    while (j < d) {
      if (++idx[j] < per_axis) break;
      idx[j] = 0;
      ++j;
    }
    if (j == d) break;
  }
  CubeCheck out{v, v};
  if (at_tile.empty()) at_tile = x;
  out.tiling.witness = at_tile;
  out.packing.witness = at_pack;
  decide(out.tiling, worst_tile);
  decide(out.packing, std::max(0.0, worst_pack));
  for (Verdict* w : {&out.tiling, &out.packing}) {
    if (w->grid_only && w->status == Status::holds) w->reason = "certified on grid points only";
  }
  return out;
}

void orth_visit(const TransformProfile& prof, std::span<const double> diff, Verdict& v, double& best_norm) {
  double w = prof.weighted_modulus(diff);
  ++v.evaluations;
  v.sup_error = std::max(v.sup_error, w);
  if (w > v.tolerance) {
    double n = euclidean_norm(diff);
    if (!v.witness || n < best_norm) {
      v.witness = Vec(diff.begin(), diff.end());
      best_norm = n;
    }
  }
}

}  // namespace

std::string to_string(Status s) {
  switch (s) {
    case Status::holds:
      return "holds";
    case Status::fails:
      return "fails";
    case Status::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

Level::Level(double value) : value_(value) {
  if (!(value > 0) || !std::isfinite(value)) throw std::invalid_argument("level must be positive");
}

Verdict check_orthogonal(const BoxUnionDomain& dom, const FinitePointSet& lam, OrthogonalityOptions opt) {
  if (lam.dim() != dom.dim()) throw PointSetError("point set dimension does not match the domain");
  Verdict v;
  v.tolerance = opt.zero_tol;
  v.route = "pairwise";
  for (std::size_t i = 0; i < lam.size(); ++i) {
    if (lam.multiplicity(i) > 1) {
      auto p = lam.point(i);
      v.status = Status::fails;
      v.witness = Vec(p.begin(), p.end());
      v.reason = "duplicate exponential (multiplicity " + std::to_string(lam.multiplicity(i)) + ")";
      return v;
    }
  }
  TransformProfile prof(dom);
  const std::size_t d = dom.dim();
  Vec diff(d);
  double best = kInf;
  for (std::size_t i = 0; i < lam.size(); ++i) {
    for (std::size_t j = i + 1; j < lam.size(); ++j) {
      for (std::size_t c = 0; c < d; ++c) diff[c] = lam.point(i)[c] - lam.point(j)[c];
      orth_visit(prof, diff, v, best);
    }
  }
  for (std::size_t i = 0; i < lam.size(); ++i) {
    for (std::size_t c = 0; c < d; ++c) v.truncation_radius = std::max(v.truncation_radius, std::abs(lam.point(i)[c]));
  }
  v.truncation_radius *= 2;
  v.status = v.witness ? Status::fails : Status::holds;
  if (v.witness) v.reason = "difference is not a zero of the transform";
  return v;
}

Verdict check_orthogonal(const BoxUnionDomain& dom, const PeriodicPointSet& lam, OrthogonalityOptions opt) {
  if (lam.dim() != dom.dim()) throw PointSetError("point set dimension does not match the domain");
  const std::size_t d = dom.dim();
  double rho = opt.difference_radius;
  if (rho <= 0) {
    for (Eigen::Index j = 0; j < lam.basis().cols(); ++j) rho = std::max(rho, 12 * lam.basis().col(j).norm());
  }
  Verdict v;
  v.tolerance = opt.zero_tol;
  v.route = "differences-within-radius";
  v.truncation_radius = rho;
  TransformProfile prof(dom);
  double best = kInf;
  Vec lo(d), hi(d), origin(d, 0.0), diff(d);
  const auto& offs = lam.offsets();
  for (std::size_t i = 0; i < offs.size(); ++i) {
    for (std::size_t j = 0; j < offs.size(); ++j) {
      Vec base(d);
      for (std::size_t c = 0; c < d; ++c) {
        base[c] = offs[i][c] - offs[j][c];
        lo[c] = -rho - base[c];
        hi[c] = rho - base[c];
      }
      for_each_lattice_point_in_box(lam.basis(), lam.inverse(), origin, lo, hi, [&](std::span<const double> l) {
        for (std::size_t c = 0; c < d; ++c) diff[c] = base[c] + l[c];
        if (sup_norm(diff) <= 1e-12) return;
        orth_visit(prof, diff, v, best);
      });
    }
  }
  v.status = v.witness ? Status::fails : Status::holds;
  if (v.witness) v.reason = "difference is not a zero of the transform";
  return v;
}

Verdict check_packing(const LatticeSummable& f, const PeriodicPointSet& lam, Level level, GridOptions opt) {
  return periodic_check(f, lam, level, opt, false);
}

Verdict check_tiling(const LatticeSummable& f, const PeriodicPointSet& lam, Level level, GridOptions opt) {
  return periodic_check(f, lam, level, opt, true);
}

Verdict check_tiling_on_cube(const LatticeSummable& f, const FinitePointSet& lam, Level level, double side,
                             double known_radius, double delta0, GridOptions opt) {
  return cube_check(f, lam, level, side, known_radius, delta0, opt).tiling;
}

Verdict check_packing_on_cube(const LatticeSummable& f, const FinitePointSet& lam, Level level, double side,
                              double known_radius, double delta0, GridOptions opt) {
  return cube_check(f, lam, level, side, known_radius, delta0, opt).packing;
}

CubeCheck check_on_cube(const LatticeSummable& f, const FinitePointSet& lam, Level level, double side,
                        double known_radius, double delta0, GridOptions opt) {
  return cube_check(f, lam, level, side, known_radius, delta0, opt);
}

Verdict check_spectrum(const BoxUnionDomain& dom, const PeriodicPointSet& lam, SpectrumOptions opt) {
  const double m = to_double(dom.measure());
  const double dens = density(lam);
  if (std::abs(dens - m) > opt.density_tol * std::max(1.0, m)) {
    Verdict v;
    v.status = Status::fails;
    v.tolerance = opt.density_tol;
    v.sup_error = std::abs(dens - m);
    v.route = "density";
    std::ostringstream os;
    os.precision(17);
    os << "density mismatch: density " << dens << " but measure " << m;
    v.reason = os.str();
    return v;
  }
  Verdict orth = check_orthogonal(dom, lam, opt.orthogonality);
  if (!orth.holds()) {
    orth.reason = "not orthogonal: " + orth.reason;
    return orth;
  }
  PowerSpectrum f(dom);
  Verdict v = check_tiling(f, lam, Level(m * m), opt.grid);
  if (v.status == Status::fails) v.reason = "not complete: power spectrum does not tile at level |dom|^2";
  return v;
}

std::vector<Sample> sample_periodic_sum(const LatticeSummable& f, const PeriodicPointSet& lam, GridOptions opt) {
  PreparedSum p = prepare(f, lam, opt);
  PeriodicGrid g = make_grid(lam, opt);
  std::vector<double> vals = p.sum->grid_values(g.origin, g.n);
  std::vector<Sample> out;
  out.reserve(vals.size());
  for (std::size_t k = 0; k < vals.size(); ++k) out.push_back({grid_point(lam, g, k), vals[k]});
  return out;
}

}  // namespace spectile
