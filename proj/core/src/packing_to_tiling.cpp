#include "spectile/packing_to_tiling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace spectile {

namespace {

constexpr double kHuge = 1e150;

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

double usable_separation(double delta0) { return std::isfinite(delta0) ? delta0 : kHuge; }

}  // namespace

AssumptionProfile verify_assumptions(const LatticeSummable& f, ProbeGrid probe) {
  if (!(probe.half_width > 0) || !(probe.step > 0)) throw std::invalid_argument("probe grid must be nondegenerate");
  const std::size_t d = f.dim();
  AssumptionProfile a;
  a.integral = f.integral();

  auto per_axis = static_cast<std::size_t>(std::ceil(2 * probe.half_width / probe.step));
  double total = std::pow(static_cast<double>(per_axis), static_cast<double>(d));
  if (total > static_cast<double>(probe.max_points)) {
    per_axis = static_cast<std::size_t>(std::floor(std::pow(static_cast<double>(probe.max_points), 1.0 / static_cast<double>(d))));
  }
  const double h = 2 * probe.half_width / static_cast<double>(per_axis);
  std::size_t count = 1;
  for (std::size_t i = 0; i < d; ++i) count *= per_axis;

  auto coord = [&](std::size_t k) { return -probe.half_width + (static_cast<double>(k) + 0.5) * h; };
  std::vector<double> vals(count);
  std::vector<std::size_t> idx(d, 0);
  Vec x(d), centroid(d, 0.0);
  double above = 0;
  a.min_value = std::numeric_limits<double>::infinity();
  for (std::size_t flat = 0; flat < count; ++flat) {
    std::size_t rem = flat;
    for (std::size_t i = 0; i < d; ++i) {
      idx[i] = rem % per_axis;
      rem /= per_axis;
      x[i] = coord(idx[i]);
    }
    double v = f.value(x);
    vals[flat] = v;
    if (v < a.min_value) {
      a.min_value = v;
      if (v < 0) a.witness = x;
    }
    if (v > 0.5) {
      above += 1;
      for (std::size_t i = 0; i < d; ++i) centroid[i] += x[i];
    }
  }
  a.mass_above_half = above * std::pow(h, static_cast<double>(d));

  if (std::abs(a.integral - 1) > 1e-9) {
    a.status = Status::fails;
    a.reason = "integral of f is " + fmt(a.integral) + ", expected 1";
    return a;
  }
  if (a.min_value < 0) {
    a.status = Status::fails;
    a.reason = "f takes the negative value " + fmt(a.min_value);
    return a;
  }
  if (above == 0) {
    a.status = Status::fails;
    a.reason = "f never exceeds 1/2 on the probe grid";
    return a;
  }

  // Largest index cube around the centroid of {f > 1/2} on which every sample exceeds 1/2.
  std::vector<long> c(d);
  auto flat_of = [&](const std::vector<long>& k) {
    std::size_t flat = 0;
    for (std::size_t i = d; i-- > 0;) flat = flat * per_axis + static_cast<std::size_t>(k[i]);
    return flat;
  };
  for (std::size_t i = 0; i < d; ++i) {
    double ci = centroid[i] / above;
    c[i] = std::clamp(static_cast<long>(std::lround((ci + probe.half_width) / h - 0.5)), 0L,
                      static_cast<long>(per_axis) - 1);
  }
  if (!(vals[flat_of(c)] > 0.5)) {
    std::size_t best = static_cast<std::size_t>(std::max_element(vals.begin(), vals.end()) - vals.begin());
    for (std::size_t i = 0; i < d; ++i) {
      c[i] = static_cast<long>(best % per_axis);
      best /= per_axis;
    }
  }
  long r = 0;
  while (true) {
    long next = r + 1;
    bool ok = true;
    for (std::size_t i = 0; i < d && ok; ++i) ok = c[i] - next >= 0 && c[i] + next < static_cast<long>(per_axis);
    if (ok) {
      std::vector<long> k(d);
      for (std::size_t i = 0; i < d; ++i) k[i] = c[i] - next;
      while (ok) {
        bool shell = false;
        for (std::size_t i = 0; i < d; ++i) shell = shell || std::labs(k[i] - c[i]) == next;
        if (shell && !(vals[flat_of(k)] > 0.5)) ok = false;
        std::size_t j = 0;
        while (j < d) {
          if (++k[j] <= c[j] + next) break;
          k[j] = c[j] - next;
          ++j;
        }
        if (j == d) break;
      }
    }
    if (!ok) break;
    r = next;
  }
  a.delta0 = 2 * static_cast<double>(r) * h;
  a.status = Status::holds;
  return a;
}

double tail_mass(const LatticeSummable& f, const FinitePointSet& lam, double side, double R) {
  if (!(side > 0) || !(R > 0)) throw std::invalid_argument("tail_mass needs positive sizes");
  if (lam.empty()) return 0.0;
  bool outside = false;
  for (std::size_t k = 0; k < lam.size() && !outside; ++k) outside = sup_norm(lam.point(k)) > R / 2;
  if (!outside) return 0.0;
  SeparationCertificate cert = separation(lam);
  if (!(cert.delta0 > 0)) throw PointSetError("tail_mass requires a separated point set");
  double vol = std::pow(side, static_cast<double>(lam.dim()));
  return vol * f.tail_beyond(R / 2 - side / 2, usable_separation(cert.delta0));
}

double window_deficit(const LatticeSummable& f, const PeriodicPointSet& lam, double R, std::span<const double> center) {
  if (!(R > 0)) throw std::invalid_argument("window side must be positive");
  Vec c = center.empty() ? Vec(lam.dim(), 0.0) : Vec(center.begin(), center.end());
  return std::pow(R, static_cast<double>(lam.dim())) - f.periodize(lam)->window_integral(c, R);
}

PackingSequence::PackingSequence(std::shared_ptr<const LatticeSummable> f, Level level, long n0, long n1,
                                 Generator gen, std::string description)
    : f_(std::move(f)), level_(level), n0_(n0), n1_(n1), gen_(std::move(gen)), description_(std::move(description)) {
  if (!f_) throw std::invalid_argument("packing sequence needs a function");
  if (n0_ < 1 || n1_ < n0_) throw std::invalid_argument("packing sequence index range is empty");
}

PackingSequence PackingSequence::stretched_lattice(std::shared_ptr<const LatticeSummable> f, long n0, long n1,
                                                   Level level) {
  const std::size_t d = f->dim();
  return PackingSequence(
      f, level, n0, n1,
      [d](long n) { return PeriodicPointSet::scaled_integer_lattice(d, 1.0 + 1.0 / static_cast<double>(n)); },
      "stretched-lattice");
}

PackingSequence PackingSequence::fixed_lattice(std::shared_ptr<const LatticeSummable> f, double scale, long n0,
                                               long n1, Level level) {
  if (!(scale > 0)) throw std::invalid_argument("lattice scale must be positive");
  const std::size_t d = f->dim();
  return PackingSequence(
      f, level, n0, n1, [d, scale](long) { return PeriodicPointSet::scaled_integer_lattice(d, scale); },
      "fixed-lattice");
}

AdmissibilityRecord PackingSequence::admissibility() const {
  AdmissibilityRecord rec;
  rec.delta0 = std::numeric_limits<double>::infinity();
  for (long n = n0_; n <= n1_; ++n) {
    PeriodicPointSet ps = member(n);
    rec.index.push_back(n);
    rec.delta0 = std::min(rec.delta0, separation(ps).delta0);
    double dens = density(ps);
    if (!rec.densities.empty() && dens < rec.densities.back()) rec.densities_nondecreasing = false;
    rec.densities.push_back(dens);
  }
  return rec;
}

ExtractionResult extract_tiling(const PackingSequence& seq, double side, double tol, ExtractionOptions opt) {
  if (!(side > 0) || !(tol > 0)) throw std::invalid_argument("extract_tiling needs a positive cube and tolerance");
  const LatticeSummable& f = seq.f();
  const std::size_t d = f.dim();
  const double level = seq.level().value();
  const double packing_tol = opt.packing_tol < 0 ? opt.density_tol : opt.packing_tol;
  ExtractionResult res;
  auto reject = [&](std::string why) {
    res.rejected = true;
    res.status = Status::fails;
    res.reason = std::move(why);
    return res;
  };

  res.assumptions = verify_assumptions(f, opt.probe);
  if (!res.assumptions.accepted()) return reject("assumptions violated: " + res.assumptions.reason);

  res.admissibility = seq.admissibility();
  const double target = level / res.assumptions.integral;
  const double final_density = res.admissibility.densities.back();
  if (final_density < target - opt.density_tol) {
    return reject("final density " + fmt(final_density) + " does not approach " + fmt(target));
  }

  // Packing check and translation search per member.
  std::vector<PeriodicPointSet> shifted;
  for (long n = seq.n0(); n <= seq.n1(); ++n) {
    PeriodicPointSet ps = seq.member(n);
    MemberTrace tr;
    tr.n = n;
    tr.density = density(ps);
    Verdict pv = check_packing(f, ps, seq.level(), opt.packing_grid);
    tr.packing_status = pv.status;
    tr.packing_excess = std::max(0.0, pv.sup_error - pv.tail_bound_used);
    if (opt.strict_packing && pv.status != Status::holds) {
      res.members.push_back(tr);
      return reject("member " + std::to_string(n) + " is not a packing at the sequence level");
    }

    auto sum = f.periodize(ps);
    const double window = static_cast<double>(n);
    std::vector<std::size_t> m(d);
    std::size_t cells = 1;
    for (std::size_t j = 0; j < d; ++j) {
      double len = ps.basis().col(static_cast<Eigen::Index>(j)).norm();
      m[j] = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(len / opt.translation_step)));
      cells *= m[j];
    }
    if (cells > 200'000) {
      double shrink = std::pow(static_cast<double>(cells) / 200'000.0, 1.0 / static_cast<double>(d));
      cells = 1;
      for (auto& mj : m) {
        mj = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(static_cast<double>(mj) / shrink)));
        cells *= mj;
      }
    }
    std::vector<Vec> shifts;
    std::vector<double> integrals;
    shifts.reserve(cells);
    for (std::size_t flat = 0; flat < cells; ++flat) {
      std::size_t rem = flat;
      Vec u(d);
      for (std::size_t j = 0; j < d; ++j) {
        long i = static_cast<long>(rem % m[j]) - static_cast<long>(m[j] / 2);
        rem /= m[j];
        u[j] = static_cast<double>(i) / static_cast<double>(m[j]);
      }
      Vec t(d, 0.0), neg(d);
      for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) t[i] += ps.basis()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * u[j];
        neg[i] = -t[i];
      }
      integrals.push_back(sum->window_integral(neg, window));
      shifts.push_back(std::move(t));
    }
    const double best = *std::max_element(integrals.begin(), integrals.end());
    const double slack = 1.0 / static_cast<double>(n);
    std::size_t pick = 0;
    double pick_norm = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < shifts.size(); ++k) {
      if (integrals[k] < best - slack) continue;
      double nrm = euclidean_norm(shifts[k]);
      if (nrm < pick_norm || (nrm == pick_norm && shifts[k] < shifts[pick])) {
        pick = k;
        pick_norm = nrm;
      }
    }
    tr.shift = shifts[pick];
    tr.window_deficit = std::pow(window, static_cast<double>(d)) - integrals[pick];
    res.members.push_back(tr);
    shifted.push_back(ps.translated(tr.shift));
  }
  const double final_excess = res.members.back().packing_excess;
  if (final_excess > packing_tol) {
    return reject("packing excess " + fmt(final_excess) + " of the final member exceeds " + fmt(packing_tol));
  }

  // Truncation radius for the final third: large enough that the missing tail is below tol / 2.
  const double seq_delta = usable_separation(res.admissibility.delta0);
  double known = std::max(opt.trace_radius, side) + 10;
  while (f.tail_beyond(known - side / 2, seq_delta) > tol / 2 && known < opt.max_known_radius) {
    known = std::min(2 * known, opt.max_known_radius);
  }

  const std::size_t count = shifted.size();
  const std::size_t final_third = (count + 2) / 3;
  std::vector<FinitePointSet> truncated;
  std::vector<double> index;
  truncated.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    double radius = k + final_third >= count ? known : opt.trace_radius;
    truncated.push_back(truncate(shifted[k], 2 * radius));
    index.push_back(static_cast<double>(res.members[k].n));
  }
  shifted.clear();
  res.limit = diagonal_limit(truncated, opt.limit_tol, index);
  truncated.clear();

  const FinitePointSet& lim = res.limit.limit;
  if (lim.empty()) {
    res.status = Status::inconclusive;
    res.reason = "diagonal limit is empty";
    return res;
  }
  double max_mag = 0, min_mag = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < lim.size(); ++k) {
    double mag = euclidean_norm(lim.point(k));
    max_mag = std::max(max_mag, mag);
    if (mag < min_mag) {
      min_mag = mag;
      auto p = lim.point(k);
      res.anchor.assign(p.begin(), p.end());
    }
  }
  double reach = res.limit.unstable.empty() ? max_mag : std::min(max_mag, res.limit.first_missing_magnitude);
  res.known_radius = reach / std::sqrt(static_cast<double>(d));

  const double lim_delta = usable_separation(separation(lim).delta0);
  GridOptions cube;
  cube.grid_step = opt.cube_grid_step;
  cube.tolerance = tol;
  if (!(lim_delta > 0)) {
    res.status = Status::inconclusive;
    res.reason = "diagonal limit has repeated points";
    return res;
  }
  CubeCheck cc = check_on_cube(f, lim, seq.level(), side, res.known_radius, lim_delta, cube);
  res.tiling = cc.tiling;
  res.packing = cc.packing;
  res.status = res.tiling.status;
  if (!res.limit.unstable.empty()) {
    res.status = Status::inconclusive;
    res.reason = std::to_string(res.limit.unstable.size()) + " ranks failed to stabilise";
  } else if (res.status != Status::holds) {
    res.reason = "limit does not tile the cube: " + res.tiling.reason;
  }
  return res;
}

}  // namespace spectile
