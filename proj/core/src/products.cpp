#include "spectile/products.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "spectile/summable.hpp"

namespace spectile {

namespace {

std::vector<Interval> parts_of(const BoxUnionDomain& dom) {
  std::vector<Interval> out;
  out.reserve(dom.box_count());
  for (const auto& b : dom.boxes()) out.push_back(b[0]);
  std::sort(out.begin(), out.end(), [](const Interval& x, const Interval& y) { return x.lo() < y.lo(); });
  return out;
}

BoxUnionDomain difference_of(const std::vector<Interval>& parts) {
  std::vector<std::pair<Rational, Rational>> raw;
  for (const auto& p : parts) {
    for (const auto& q : parts) raw.emplace_back(p.lo() - q.hi(), p.hi() - q.lo());
  }
  std::sort(raw.begin(), raw.end());
  std::vector<Interval> merged;
  Rational lo = raw.front().first, hi = raw.front().second;
  for (std::size_t i = 1; i < raw.size(); ++i) {
    if (raw[i].first < hi) {
      hi = std::max(hi, raw[i].second);
    } else {
      merged.emplace_back(lo, hi);
      lo = raw[i].first;
      hi = raw[i].second;
    }
  }
  merged.emplace_back(lo, hi);
  return BoxUnionDomain::intervals(std::move(merged));
}

bool open_contains(const BoxUnionDomain& dom, const Rational& x) {
  for (const auto& b : dom.boxes()) {
    if (b[0].lo() < x && x < b[0].hi()) return true;
  }
  return false;
}

bool open_contains(const BoxUnionDomain& dom, double x) {
  for (const auto& b : dom.boxes()) {
    double lo = to_double(b[0].lo()), hi = to_double(b[0].hi());
    double eps = 1e-12 * std::max({1.0, std::abs(lo), std::abs(hi)});
    if (lo + eps < x && x < hi - eps) return true;
  }
  return false;
}

struct SeparableForm {
  double period;  // first coordinate of the generator b0, positive
  Vec shift;      // remaining coordinates of b0
  Matrix gamma;   // lattice of the remaining coordinates
};

SeparableForm separable_form(const Matrix& basis) {
  const Eigen::Index d = basis.rows();
  if (d < 2) throw PointSetError("window projection needs dimension at least 2");
  Matrix M = basis;
  double scale = M.row(0).cwiseAbs().maxCoeff();
  double eps = 1e-12 * std::max(1.0, scale);
  for (int iter = 0; iter < 512; ++iter) {
    std::vector<Eigen::Index> live;
    for (Eigen::Index j = 0; j < d; ++j) {
      if (std::abs(M(0, j)) > eps) {
        live.push_back(j);
      } else {
        M(0, j) = 0.0;
      }
    }
    if (live.empty()) throw PointSetError("lattice basis is singular");
    if (live.size() == 1) {
      Eigen::Index c = live.front();
      if (M(0, c) < 0) M.col(c) *= -1.0;
      SeparableForm out;
      out.period = M(0, c);
      out.shift.resize(static_cast<std::size_t>(d - 1));
      out.gamma.resize(d - 1, d - 1);
      Eigen::Index col = 0;
      for (Eigen::Index j = 0; j < d; ++j) {
        if (j == c) {
          for (Eigen::Index r = 1; r < d; ++r) out.shift[static_cast<std::size_t>(r - 1)] = M(r, j);
        } else {
          out.gamma.col(col++) = M.block(1, j, d - 1, 1);
        }
      }
      return out;
    }
    auto by_size = [&](Eigen::Index x, Eigen::Index y) { return std::abs(M(0, x)) < std::abs(M(0, y)); };
    Eigen::Index small = *std::min_element(live.begin(), live.end(), by_size);
    Eigen::Index big = *std::max_element(live.begin(), live.end(), by_size);
    if (small == big) big = live[live[0] == small ? 1 : 0];
    double q = std::round(M(0, big) / M(0, small));
    M.col(big) -= q * M.col(small);
  }
  throw PointSetError("first coordinates of the lattice basis are not commensurable");
}

std::size_t window_count(const WindowRegion& D, double first, double period, double a) {
  std::size_t count = 0;
  for (const auto& b : D.set().boxes()) {
    double lo = to_double(b[0].lo()), hi = to_double(b[0].hi());
    auto k0 = static_cast<long>(std::floor((lo + a - first) / period)) - 1;
    auto k1 = static_cast<long>(std::ceil((hi + a - first) / period)) + 1;
    for (long k = k0; k <= k1; ++k) {
      double t = first + static_cast<double>(k) * period - a;
      double eps = 1e-12 * std::max({1.0, std::abs(lo), std::abs(hi)});
      if (lo + eps < t && t < hi - eps) ++count;
    }
  }
  return count;
}

}  // namespace

WindowRegion::WindowRegion(BoxUnionDomain set)
    : set_(std::move(set)), difference_(BoxUnionDomain::interval(0, 1)) {
  if (set_.dim() != 1) throw DomainError("window region must be one-dimensional");
  difference_ = difference_of(parts_of(set_));
}

WindowRegion WindowRegion::centered(const Rational& half_width) {
  if (half_width <= 0) throw DomainError("window half width must be positive");
  return WindowRegion(BoxUnionDomain::interval(-half_width, half_width));
}

Rational WindowRegion::difference_extent() const {
  Rational ext = 0;
  for (const auto& b : difference_.boxes()) ext = std::max({ext, abs(b[0].lo()), abs(b[0].hi())});
  return ext;
}

bool WindowRegion::contains(const Rational& x) const { return open_contains(set_, x); }
bool WindowRegion::contains(double x) const { return open_contains(set_, x); }
bool WindowRegion::difference_contains(const Rational& x) const { return open_contains(difference_, x); }
bool WindowRegion::difference_contains(double x) const { return open_contains(difference_, x); }

Verdict check_orthogonal_packing_region(const BoxUnionDomain& A, const WindowRegion& D, double X,
                                        ZeroScanOptions opt) {
  if (A.dim() != 1) throw DomainError("packing region check needs a one-dimensional domain");
  Verdict v;
  v.tolerance = opt.zero_tol;
  v.truncation_radius = X;
  double extent = to_double(D.difference_extent());
  if (extent > X) {
    v.status = Status::inconclusive;
    v.reason = "D - D reaches " + std::to_string(extent) + ", beyond the scanned range " + std::to_string(X);
    return v;
  }
  ZeroSet1D zs = zero_set_1d(A, X, opt);
  v.evaluations = zs.zeros.size();

  if (zs.kind != ZeroSetKind::numeric_scan) {
    v.route = "analytic-zero-set";
    for (const auto& b : D.difference_set().boxes()) {
      for (const auto& g : zs.generators) {
        auto hits = g.members(b[0].lo(), b[0].hi());
        if (!hits.empty()) {
          Rational z = hits.front();
          for (const auto& h : hits) {
            if (abs(h) < abs(z)) z = h;
          }
          v.status = Status::fails;
          v.witness = Vec{to_double(z)};
          v.reason = "zero " + to_string(z) + " of the transform lies in D - D";
          return v;
        }
      }
    }
    v.status = Status::holds;
    v.reason = "no zero of the transform lies in D - D";
    return v;
  }

  v.route = "numeric-zero-scan";
  TransformProfile prof(A);
  const double margin = 1e-6;
  std::optional<double> failing, doubtful;
  for (const auto& z : zs.zeros) {
    std::optional<Rational> endpoint;
    for (const auto& b : D.difference_set().boxes()) {
      for (const Rational* e : {&b[0].lo(), &b[0].hi()}) {
        if (std::abs(to_double(*e) - z.x) <= margin) endpoint = *e;
      }
    }
    if (endpoint) {
      if (prof.weighted_modulus(to_double(*endpoint)) <= opt.zero_tol) {
        if (D.difference_contains(*endpoint) && !failing) failing = to_double(*endpoint);
      } else if (!doubtful) {
        doubtful = z.x;
      }
      continue;
    }
    if (!D.difference_contains(z.x)) continue;
    if (z.kind == ZeroKind::suspect) {
      if (!doubtful) doubtful = z.x;
    } else if (!failing || std::abs(z.x) < std::abs(*failing)) {
      failing = z.x;
    }
  }
  if (failing) {
    v.status = Status::fails;
    v.witness = Vec{*failing};
    v.reason = "zero near " + std::to_string(*failing) + " of the transform lies in D - D";
  } else if (doubtful) {
    v.status = Status::inconclusive;
    v.witness = Vec{*doubtful};
    v.reason = "near-zero of the transform at " + std::to_string(*doubtful) + " could not be placed relative to D - D";
  } else {
    v.status = Status::holds;
    v.reason = "no zero of the transform lies in D - D";
  }
  return v;
}

RegionBound packing_region_bound(const BoxUnionDomain& A, const WindowRegion& D, double lam_density) {
  if (!(lam_density > 0) || !std::isfinite(lam_density)) {
    throw std::invalid_argument("density must be positive and finite");
  }
  RegionBound r;
  r.region_measure = D.measure();
  r.bound = 1.0 / lam_density;
  double m = to_double(r.region_measure);
  r.tight = std::abs(m - r.bound) <= 1e-12;
  r.obstruction = r.region_measure * A.measure() > 1;
  r.verdict.tolerance = 1e-12;
  r.verdict.route = "measure";
  r.verdict.sup_error = std::max(0.0, m - r.bound);
  if (m <= r.bound + 1e-12) {
    r.verdict.status = Status::holds;
    r.verdict.reason = r.tight ? "|D| equals 1/density" : "|D| is below 1/density";
  } else {
    r.verdict.status = Status::fails;
    r.verdict.reason = "|D| = " + to_string(r.region_measure) + " exceeds 1/density";
  }
  if (r.obstruction) r.verdict.reason += "; |D| > 1/|A|, so A cannot be spectral";
  return r;
}

std::uint64_t ProjectedSet::total_count() const {
  std::uint64_t n = 0;
  for (auto m : multiplicity) n += m;
  return n;
}

bool ProjectedSet::has_repeats() const {
  return std::any_of(multiplicity.begin(), multiplicity.end(), [](std::uint64_t m) { return m > 1; });
}

double ProjectedSet::density() const { return static_cast<double>(total_count()) / std::abs(basis.determinant()); }

PeriodicPointSet ProjectedSet::as_periodic() const {
  if (offsets.empty()) throw PointSetError("projected set is empty");
  return PeriodicPointSet(basis, offsets);
}

FinitePointSet ProjectedSet::truncated(double side) const {
  if (offsets.empty()) return FinitePointSet(dim());
  FinitePointSet base = truncate(as_periodic(), side);
  if (!has_repeats()) return base;
  std::vector<double> coords;
  std::vector<std::uint64_t> mult;
  for (std::size_t i = 0; i < offsets.size(); ++i) {
    FinitePointSet part = truncate(PeriodicPointSet(basis, {offsets[i]}), side);
    coords.insert(coords.end(), part.coords().begin(), part.coords().end());
    mult.insert(mult.end(), part.size(), multiplicity[i]);
  }
  return FinitePointSet::merging(dim(), std::move(coords), std::move(mult));
}

FinitePointSet window_projection(const FinitePointSet& lam, const WindowRegion& D, double a, bool dedupe) {
  if (lam.dim() < 2) throw PointSetError("window projection needs dimension at least 2");
  const std::size_t n = lam.dim() - 1;
  std::vector<double> coords;
  std::vector<std::uint64_t> mult;
  for (std::size_t i = 0; i < lam.size(); ++i) {
    auto p = lam.point(i);
    if (!D.contains(p[0] - a)) continue;
    coords.insert(coords.end(), p.begin() + 1, p.end());
    mult.push_back(dedupe ? 1 : lam.multiplicity(i));
  }
  FinitePointSet out = FinitePointSet::merging(n, std::move(coords), std::move(mult));
  if (!dedupe) return out;
  return FinitePointSet(n, out.coords());
}

ProjectedSet window_projection(const PeriodicPointSet& lam, const WindowRegion& D, double a, bool dedupe) {
  SeparableForm form = separable_form(lam.basis());
  const std::size_t n = lam.dim() - 1;
  const auto ni = static_cast<Eigen::Index>(n);
  Matrix ginv = form.gamma.inverse();
  ProjectedSet out;
  out.basis = form.gamma;

  auto reduce = [&](Eigen::VectorXd v) {
    Eigen::VectorXd f = ginv * v;
    for (Eigen::Index c = 0; c < ni; ++c) {
      f[c] -= std::floor(f[c]);
      if (f[c] > 1.0 - 1e-9 || f[c] < 1e-12) f[c] = 0.0;
    }
    return Eigen::VectorXd(form.gamma * f);
  };

  std::vector<Vec> raw;
  for (const auto& o : lam.offsets()) {
    for (const auto& b : D.set().boxes()) {
      double lo = to_double(b[0].lo()), hi = to_double(b[0].hi());
      auto k0 = static_cast<long>(std::floor((lo + a - o[0]) / form.period)) - 1;
      auto k1 = static_cast<long>(std::ceil((hi + a - o[0]) / form.period)) + 1;
      for (long k = k0; k <= k1; ++k) {
        double t = o[0] + static_cast<double>(k) * form.period - a;
        double eps = 1e-12 * std::max({1.0, std::abs(lo), std::abs(hi)});
        if (!(lo + eps < t && t < hi - eps)) continue;
        Eigen::VectorXd v(ni);
        for (std::size_t c = 0; c < n; ++c) {
          v[static_cast<Eigen::Index>(c)] = o[c + 1] + static_cast<double>(k) * form.shift[c];
        }
        Eigen::VectorXd r = reduce(v);
        raw.emplace_back(r.data(), r.data() + ni);
      }
    }
  }
  std::sort(raw.begin(), raw.end());
  for (const auto& p : raw) {
    bool same = false;
    for (std::size_t i = 0; i < out.offsets.size() && !same; ++i) {
      Eigen::VectorXd diff(ni);
      for (std::size_t c = 0; c < n; ++c) diff[static_cast<Eigen::Index>(c)] = p[c] - out.offsets[i][c];
      Eigen::VectorXd u = ginv * diff;
      same = true;
      for (Eigen::Index c = 0; c < ni && same; ++c) same = std::abs(u[c] - std::round(u[c])) < 1e-9;
      if (same && !dedupe) ++out.multiplicity[i];
    }
    if (!same) {
      out.offsets.push_back(p);
      out.multiplicity.push_back(1);
    }
  }
  return out;
}

SweepResult best_window_sweep(const PeriodicPointSet& lam, const WindowRegion& D, double sweep_step) {
  if (!(sweep_step > 0) || !std::isfinite(sweep_step)) throw std::invalid_argument("sweep step must be positive");
  SeparableForm form = separable_form(lam.basis());
  const double p = form.period;
  const double vol = std::abs(form.gamma.determinant());

  SweepResult best;
  best.period = p;
  best.mean = to_double(D.measure()) * density(lam);
  best.alpha = -1;

  auto reduce = [p](double a) {
    double r = a - p * std::floor(a / p + 0.5);
    return r >= p / 2 ? r - p : r;
  };
  auto alpha_at = [&](double a) {
    std::size_t count = 0;
    for (const auto& o : lam.offsets()) count += window_count(D, o[0], p, a);
    return static_cast<double>(count) / vol;
  };
  auto consider = [&](double a) {
    double val = alpha_at(a);
    ++best.evaluations;
    bool better = val > best.alpha + 1e-12;
    bool tie = std::abs(val - best.alpha) <= 1e-12 &&
               (std::abs(a) < std::abs(best.a) || (std::abs(a) == std::abs(best.a) && a < best.a));
    if (better || tie) {
      best.alpha = std::max(val, best.alpha);
      best.a = a;
    }
  };

  auto kmin = static_cast<long>(std::ceil(-p / 2 / sweep_step));
  auto kmax = static_cast<long>(std::floor(p / 2 / sweep_step));
  for (long k = kmin; k <= kmax; ++k) consider(static_cast<double>(k) * sweep_step);

  std::vector<double> events;
  for (const auto& o : lam.offsets()) {
    for (const auto& b : D.set().boxes()) {
      events.push_back(reduce(o[0] - to_double(b[0].lo())));
      events.push_back(reduce(o[0] - to_double(b[0].hi())));
    }
  }
  std::sort(events.begin(), events.end());
  for (std::size_t i = 0; i < events.size(); ++i) {
    double next = i + 1 < events.size() ? events[i + 1] : events.front() + p;
    if (next - events[i] > 1e-12) consider(reduce(0.5 * (events[i] + next)));
  }
  return best;
}

FactorExtraction extract_factor_orthogonal_set(const ProductDomain& omega, const PeriodicPointSet& lam,
                                               const WindowRegion& D, double sweep_step) {
  if (omega.left().dim() != 1) throw DomainError("factor extraction needs a one-dimensional left factor");
  if (lam.dim() != omega.combined().dim()) throw PointSetError("point set dimension does not match the domain");
  FactorExtraction r;
  r.lam_orthogonal = check_orthogonal(omega.combined(), lam);
  r.region = check_orthogonal_packing_region(omega.left(), D, to_double(D.difference_extent()) + 1.0);
  r.sweep = best_window_sweep(lam, D, sweep_step);
  r.L = window_projection(lam, D, r.sweep.a);

  Verdict& v = r.verdict;
  v.route = "window-projection";
  if (r.L.has_repeats()) {
    r.contradiction = true;
    v.status = Status::fails;
    for (std::size_t i = 0; i < r.L.offsets.size(); ++i) {
      if (r.L.multiplicity[i] > 1) {
        v.witness = r.L.offsets[i];
        break;
      }
    }
    v.reason = "two points of lam share a projection";
    if (!r.lam_orthogonal.holds()) v.reason += "; lam is not orthogonal for omega";
    if (!r.region.holds()) v.reason += "; D is not a verified orthogonal packing region";
    return r;
  }
  if (r.L.empty()) {
    v.status = Status::inconclusive;
    v.reason = "the window contains no points of lam";
    return r;
  }
  v = check_orthogonal(omega.right(), r.L.as_periodic());
  v.route = "window-projection/" + v.route;
  if (v.holds() && !(r.lam_orthogonal.holds() && r.region.holds())) {
    v.status = Status::inconclusive;
    v.reason = "projection is orthogonal but a precondition failed";
  }
  return r;
}

TwoIntervalSpec::TwoIntervalSpec(Interval I, Interval J) : I_(std::move(I)), J_(std::move(J)) {
  if (I_.overlaps(J_)) throw DomainError("intervals overlap");
  if (I_.hi() == J_.lo() || J_.hi() == I_.lo()) throw DomainError("intervals touch");
  if (I_.length() + J_.length() != 1) {
    throw DomainError("intervals are not normalized: total length " + to_string(I_.length() + J_.length()));
  }
}

std::optional<Rational> TwoIntervalSpec::delta() const {
  if (l1() != l2()) return std::nullopt;
  return Rational(1) / (2 * gap());
}

BoxUnionDomain TwoIntervalSpec::domain() const {
  std::vector<Interval> parts{I_, J_};
  if (J_.lo() < I_.lo()) std::swap(parts[0], parts[1]);
  return BoxUnionDomain::intervals(std::move(parts));
}

std::string to_string(TwoIntervalCase c) {
  return c == TwoIntervalCase::unequal_lengths ? "unequal-lengths" : "equal-lengths";
}

std::string to_string(Answer a) {
  switch (a) {
    case Answer::yes: return "yes";
    case Answer::no: return "no";
    case Answer::not_applicable: return "n/a";
  }
  return "n/a";
}

namespace {

PeriodicPointSet integers() { return PeriodicPointSet::scaled_integer_lattice(1, 1.0); }

PeriodicPointSet one_dim(double period, std::vector<double> offsets) {
  Matrix b(1, 1);
  b(0, 0) = period;
  std::vector<Vec> offs;
  for (double o : offsets) offs.push_back({o});
  return PeriodicPointSet(b, std::move(offs));
}

Rational dyadic_floor(double x) {
  const double scale = 1048576.0;
  return Rational(static_cast<long>(std::floor(x * scale)), 1048576L);
}

}  // namespace

ClassificationVerdict classify_two_intervals(const TwoIntervalSpec& spec) {
  ClassificationVerdict out;
  BoxUnionDomain A = spec.domain();
  Rational gap = spec.gap();

  if (spec.l1() != spec.l2()) {
    out.kind = TwoIntervalCase::unequal_lengths;
    bool zero_at_one = is_integer(gap - Rational(1, 2));
    out.chi_hat_one_zero = zero_at_one;
    if (zero_at_one) {
      out.D_used = WindowRegion::centered(Rational(1, 2));
      out.a_spectral = Answer::yes;
      out.product_spectral_possible = Answer::yes;
      out.b_spectral_implied = Answer::yes;
      out.tiling_witness = integers();
      out.spectrum = integers();
      out.note = "hat chi_A(1) = 0: |m1 - m2| = " + to_string(gap) + " is a half-integer and A tiles with Z";
    } else {
      double X = 4;
      std::optional<double> nearest;
      while (!nearest && X <= 1024) {
        for (const auto& z : zero_set_1d(A, X).zeros) {
          if (std::abs(z.x) > 1 && (!nearest || std::abs(z.x) < *nearest)) nearest = std::abs(z.x);
        }
        X *= 4;
      }
      Rational eps = nearest ? dyadic_floor((*nearest - 1) / 4) : Rational(1, 1048576);
      if (eps <= 0) eps = Rational(1, 1048576);
      out.D_used = WindowRegion::centered(Rational(1, 2) + eps);
      out.a_spectral = Answer::no;
      out.a_verdict_computed = true;
      out.product_spectral_possible = Answer::no;
      out.b_spectral_implied = Answer::not_applicable;
      out.note = "hat chi_A(1) != 0: the window (-1/2 - eps, 1/2 + eps) with eps = " + to_string(eps) +
                 " is an orthogonal packing region of measure above 1";
    }
  } else {
    out.kind = TwoIntervalCase::equal_lengths;
    Rational delta = *spec.delta();
    std::vector<Interval> parts;
    for (long n = 0;; ++n) {
      Rational lo = 2 * n * delta;
      if (lo >= 2) break;
      Rational hi = std::min(Rational((2 * n + 1) * delta), Rational(2));
      if (lo < hi) parts.emplace_back(lo, hi);
    }
    out.D_used = WindowRegion(BoxUnionDomain::intervals(std::move(parts)));
    Rational twice = 2 * gap;
    if (out.D_used.measure() == 1) {
      out.a_spectral = Answer::yes;
      out.product_spectral_possible = Answer::yes;
      out.b_spectral_implied = Answer::yes;
      long k = twice.get_num().get_si() / twice.get_den().get_si();
      if (k % 2 == 1) {
        out.tiling_witness = integers();
        out.spectrum = integers();
      } else {
        std::vector<double> offs;
        for (long j = 0; j < k; ++j) offs.push_back(0.5 * static_cast<double>(j));
        out.tiling_witness = one_dim(static_cast<double>(k), offs);
        out.spectrum = one_dim(2.0, {0.0, 1.0 / static_cast<double>(k)});
      }
      out.note = "|m1 - m2| = " + to_string(gap) + " is a multiple of 1/2; D is a tight orthogonal packing region";
    } else {
      out.a_spectral = Answer::no;
      out.product_spectral_possible = Answer::no;
      out.b_spectral_implied = Answer::not_applicable;
      out.note = "|m1 - m2| = " + to_string(gap) + " is not a multiple of 1/2; |D| = " +
                 to_string(out.D_used.measure()) + " exceeds 1";
    }
  }
  out.D_measure = out.D_used.measure();
  out.region = check_orthogonal_packing_region(A, out.D_used, to_double(out.D_used.difference_extent()) + 1.0);
  out.bound = packing_region_bound(A, out.D_used, 1.0);
  return out;
}

PeriodicPointSet product_set(const PeriodicPointSet& a, const PeriodicPointSet& b) {
  const auto da = a.basis().rows(), db = b.basis().rows();
  Matrix basis = Matrix::Zero(da + db, da + db);
  basis.topLeftCorner(da, da) = a.basis();
  basis.bottomRightCorner(db, db) = b.basis();
  std::vector<Vec> offsets;
  for (const auto& x : a.offsets()) {
    for (const auto& y : b.offsets()) {
      Vec o = x;
      o.insert(o.end(), y.begin(), y.end());
      offsets.push_back(std::move(o));
    }
  }
  return PeriodicPointSet(std::move(basis), std::move(offsets));
}

ProductSpectrum product_spectrum(const SpectralPair& a, const SpectralPair& b, SpectrumOptions opt) {
  ProductSpectrum out;
  out.factor_a = check_spectrum(a.domain, a.spectrum, opt);
  out.factor_b = check_spectrum(b.domain, b.spectrum, opt);
  if (!out.factor_a.holds() || !out.factor_b.holds()) {
    out.rejected = true;
    out.reason = !out.factor_a.holds() ? "first factor: " + out.factor_a.reason : "second factor: " + out.factor_b.reason;
    return out;
  }
  out.domain.emplace(a.domain, b.domain);
  out.spectrum = product_set(a.spectrum, b.spectrum);
  out.product = check_spectrum(out.domain->combined(), *out.spectrum, opt);
  return out;
}

}  // namespace spectile
