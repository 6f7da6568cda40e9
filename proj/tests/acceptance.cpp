#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "spectile/fourier.hpp"
#include "spectile/packing_to_tiling.hpp"
#include "spectile/pointsets.hpp"
#include "spectile/products.hpp"
#include "spectile/spectra.hpp"

using namespace spectile;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

Rational q(long p, long d = 1) { return Rational(p, d); }

PeriodicPointSet one_dim(double period, std::vector<double> offsets) {
  Matrix b(1, 1);
  b(0, 0) = period;
  std::vector<Vec> offs;
  for (double o : offsets) offs.push_back({o});
  return PeriodicPointSet(b, offs);
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Outcome criterion_spectrum() {
  Outcome o;
  auto t0 = Clock::now();
  double worst = 0;
  for (std::size_t d : {1u, 2u}) {
    auto v = check_spectrum(BoxUnionDomain::cube(d, 0, 1), PeriodicPointSet::scaled_integer_lattice(d));
    o.require(v.holds(), "check_spectrum on the unit cube, d=" + std::to_string(d) + ": " + v.reason);
    o.require(v.sup_error <= 1e-6, "sup error " + std::to_string(v.sup_error));
    worst = std::max(worst, v.sup_error);
  }
  double t = seconds_since(t0);
  o.require(t < 10, "runtime");
  o.detail << "d=1,2 hold, max sup error " << worst << ", " << t << " s";
  return o;
}

Outcome criterion_zero_sets(std::mt19937_64& rng) {
  Outcome o;
  std::size_t analytic_zeros = 0;
  for (int trial = 0; trial < 25; ++trial) {
    Rational a = oracle::random_rational(rng, -2, 2, 12);
    Rational gap = oracle::random_rational(rng, 0.55, 3.5, 12);
    if (gap <= q(1, 2)) gap = q(1, 2) + q(1, 12);
    auto dom = BoxUnionDomain::intervals({Interval(a, a + q(1, 2)), Interval(a + gap, a + gap + q(1, 2))});
    auto z = zero_set_1d(dom, 10);
    o.require(z.kind == ZeroSetKind::analytic_two_interval, "analytic branch");
    auto scan = numeric_zero_scan(dom, -10, 10);
    for (const auto& p : z.zeros) {
      double x = p.x;
      std::vector<double> xv{x};
      double weighted = std::abs(oracle::gram_ft(dom, xv)) * std::max(1.0, oracle::pi * std::abs(x));
      o.require(weighted <= 1e-9, "analytic zero " + std::to_string(x) + " has modulus " + std::to_string(weighted));
      bool matched = false;
      for (const auto& s : scan) matched = matched || std::abs(s.x - x) <= 1e-6;
      o.require(matched, "missed zero " + std::to_string(x));
      ++analytic_zeros;
    }
    for (const auto& s : scan) {
      bool matched = false;
      for (const auto& p : z.zeros) matched = matched || std::abs(s.x - p.x) <= 1e-6;
      o.require(matched, "extra zero " + std::to_string(s.x));
    }
  }
  for (int trial = 0; trial < 25; ++trial) {
    Rational l1 = oracle::random_rational(rng, 0.05, 0.95, 16);
    if (l1 == q(1, 2)) l1 = q(7, 16);
    Rational a = oracle::random_rational(rng, -2, 2, 12);
    Rational gap = oracle::random_rational(rng, 0.05, 2.5, 12);
    auto dom = BoxUnionDomain::intervals({Interval(a, a + l1), Interval(a + l1 + gap, a + 1 + gap)});
    auto z = zero_set_1d(dom, 1);
    o.require(z.zeros.empty(), "zero inside (-1, 1)");
    auto scan = numeric_zero_scan(dom, -1, 1);
    o.require(scan.empty(), "scan found a zero inside (-1, 1)");
  }
  o.detail << "25 equal-length unions: " << analytic_zeros << " analytic zeros matched on (-10,10); "
           << "25 unequal-length unions: no zero in (-1,1)";
  return o;
}

struct OrthPair {
  BoxUnionDomain dom;
  PeriodicPointSet lam;
  std::string kind;
};

OrthPair random_orthogonal_pair(std::mt19937_64& rng, int kind) {
  std::uniform_int_distribution<int> small(1, 3);
  std::uniform_real_distribution<double> shift(-1, 1);
  switch (kind) {
    case 0: {
      Rational l = oracle::random_rational(rng, 0.5, 2.5, 6);
      Rational a = oracle::random_rational(rng, -1, 1, 6);
      double m = small(rng);
      return {BoxUnionDomain::interval(a, a + l), one_dim(m / l.get_d(), {shift(rng)}), "interval"};
    }
    case 1: {
      Rational l1 = oracle::random_rational(rng, 0.5, 2, 4), l2 = oracle::random_rational(rng, 0.5, 2, 4);
      Box b{Interval(q(0), l1), Interval(q(0), l2)};
      std::uniform_int_distribution<int> e(-1, 2);
      Eigen::Matrix2d M;
      do {
        M << e(rng), e(rng), e(rng), e(rng);
      } while (std::abs(M.determinant()) < 0.5);
      Eigen::Matrix2d S = Eigen::Vector2d(1 / l1.get_d(), 1 / l2.get_d()).asDiagonal();
      Matrix B = S * M;
      return {BoxUnionDomain(2, {b}), PeriodicPointSet(B, {Vec{shift(rng), shift(rng)}}), "box"};
    }
    case 2: {
      std::uniform_int_distribution<int> kk(2, 6);
      int k = kk(rng);
      Rational a = oracle::random_rational(rng, -1, 1, 4);
      Rational g(k, 2);
      auto dom = BoxUnionDomain::intervals({Interval(a, a + q(1, 2)), Interval(a + g, a + g + q(1, 2))});
      double period = 2.0 * small(rng);
      if (k % 2 == 1) return {dom, one_dim(static_cast<double>(small(rng)), {0.0}), "two-interval"};
      return {dom, one_dim(period, {0.0, 1.0 / k}), "two-interval"};
    }
    default: {
      Rational l1 = oracle::random_rational(rng, 0.1, 0.9, 10);
      if (l1 == q(1, 2)) l1 = q(3, 10);
      std::uniform_int_distribution<int> kk(0, 3);
      Rational half_gap = q(kk(rng)) + q(1, 2);
      Rational m1 = l1 / 2, m2 = m1 + half_gap;
      Rational l2 = 1 - l1;
      if (m2 - l2 / 2 <= l1) m2 += 1;
      auto dom = BoxUnionDomain::intervals({Interval(q(0), l1), Interval(m2 - l2 / 2, m2 + l2 / 2)});
      return {dom, one_dim(static_cast<double>(small(rng)), {shift(rng)}), "uneven-pair"};
    }
  }
}

Outcome criterion_packing(std::mt19937_64& rng) {
  Outcome o;
  int verified = 0, attempts = 0;
  double worst_margin = -1e300;
  while (verified < 50 && attempts < 500) {
    ++attempts;
    OrthPair p = random_orthogonal_pair(rng, attempts % 4);
    if (!check_orthogonal(p.dom, p.lam).holds()) continue;
    ++verified;
    double m = p.dom.measure().get_d();
    PowerSpectrum f(p.dom);
    auto v = check_packing(f, p.lam, Level(m * m));
    o.require(v.holds(), p.kind + " pair: " + to_string(v.status) + " " + v.reason);
    worst_margin = std::max(worst_margin, v.sup_error - v.tolerance);
  }
  o.require(verified == 50, "could not generate 50 verified pairs");
  o.detail << verified << " verified orthogonal pairs, all packings hold (from " << attempts << " candidates)";
  return o;
}

Outcome criterion_window_density(std::mt19937_64& rng) {
  Outcome o;
  const double step = 1e-3;
  int evaluated = 0;
  double min_gap = 1e300;
  std::uniform_int_distribution<int> e(-1, 1), cnt(1, 3);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 20; ++i) {
    double p = oracle::random_rational(rng, 0.5, 2.5, 4).get_d();
    double s = u(rng), h = oracle::random_rational(rng, 0.5, 2, 4).get_d();
    Matrix B(2, 2);
    B << p, 0, s, h;
    Matrix U(2, 2);
    int t = e(rng);
    U << 1, t, 0, 1;
    if (i % 2) U << 1, 0, e(rng), 1;
    B = B * U;
    std::vector<Vec> offsets{Vec{0, 0}};
    int n = cnt(rng);
    for (int k = 1; k < n; ++k) offsets.push_back(Vec{u(rng) * p, u(rng) * h});
    PeriodicPointSet lam(B, offsets);
    double tau = static_cast<double>(offsets.size()) / std::abs(B.determinant());
    for (int j = 0; j < 10; ++j) {
      Rational lo = oracle::random_rational(rng, -2, 1, 6);
      Rational hi = oracle::random_rational(rng, lo.get_d() + 0.1, lo.get_d() + 1.5, 6);
      if (hi <= lo) hi = lo + q(1, 6);
      std::vector<Interval> parts{Interval(lo, hi)};
      if (j % 2) {
        Rational lo2 = hi + oracle::random_rational(rng, 0.1, 1, 6);
        parts.emplace_back(lo2, lo2 + oracle::random_rational(rng, 0.1, 1, 6));
      }
      WindowRegion D(BoxUnionDomain::intervals(parts));
      auto sw = best_window_sweep(lam, D, step);
      double bound = D.measure().get_d() * tau;
      o.require(sw.alpha >= bound - 2 * step, "alpha below |D| tau");
      o.require(std::abs(sw.mean - bound) <= 1e-9, "mean |D| tau");
      auto L = window_projection(lam, D, sw.a);
      o.require(std::abs(L.density() - sw.alpha) <= 1e-9, "projection density equals alpha");
      const double H = 2000;
      std::size_t count = 0;
      for (const auto& piece : D.set().boxes()) {
        double lo[2] = {piece[0].lo().get_d() + sw.a, -H / 2}, hi[2] = {piece[0].hi().get_d() + sw.a, H / 2};
        count += oracle::count_in_box(lam, lo, hi);
      }
      double empirical = static_cast<double>(count) / H;
      o.require(std::abs(empirical - sw.alpha) <= 0.05 * std::max(1.0, sw.alpha), "enumeration oracle");
      min_gap = std::min(min_gap, sw.alpha - bound);
      ++evaluated;
    }
  }
  o.detail << evaluated << " (lattice, window) pairs, min alpha - |D| tau = " << min_gap;
  return o;
}

Outcome criterion_factor() {
  Outcome o;
  auto unit = BoxUnionDomain::interval(0, 1);
  ProductDomain sq(unit, unit);
  auto r = extract_factor_orthogonal_set(sq, PeriodicPointSet::scaled_integer_lattice(2), WindowRegion::centered(q(1, 2)));
  o.require(r.verdict.holds(), "extraction verdict: " + r.verdict.reason);
  o.require(r.L.density() == 1.0, "density(L) = 1");
  o.require(!r.L.empty() && check_orthogonal(unit, r.L.as_periodic()).holds(), "L orthogonal for [0,1]");
  PeriodicPointSet corrupted(Matrix::Identity(2, 2), {Vec{0, 0}, Vec{0.1, 0}});
  auto bad = extract_factor_orthogonal_set(sq, corrupted, WindowRegion::centered(q(1, 2)));
  o.require(bad.contradiction && bad.verdict.fails(), "contradiction on corrupted lambda");
  o.detail << "L = Z with density " << r.L.density() << "; corrupted lambda: " << bad.verdict.reason;
  return o;
}

void check_classification(Outcome& o, const TwoIntervalSpec& spec, int& witnesses) {
  auto c = classify_two_intervals(spec);
  BoxUnionDomain A = spec.domain();
  std::string tag = "[" + to_string(spec.I().lo()) + "," + to_string(spec.I().hi()) + "]u[" + to_string(spec.J().lo()) +
                    "," + to_string(spec.J().hi()) + "]";
  o.require(c.region.holds(), tag + ": D is not a verified packing region");
  if (c.D_measure > 1) {
    o.require(c.a_spectral == Answer::no && c.product_spectral_possible == Answer::no, tag + ": |D|>1 flags");
    o.require(c.bound.obstruction, tag + ": obstruction flag");
  }
  if (c.tiling_witness) {
    ++witnesses;
    o.require(check_tiling(IndicatorFunction(A), *c.tiling_witness, Level(1)).holds(), tag + ": tiling witness");
  }
  if (c.spectrum) o.require(check_spectrum(A, *c.spectrum).holds(), tag + ": spectrum");
  if (c.kind == TwoIntervalCase::equal_lengths) {
    o.require(c.D_measure >= 1, tag + ": |D| >= 1");
    o.require((c.D_measure == 1) == is_integer(2 * spec.gap()), tag + ": equality condition");
  } else {
    bool numeric_zero = std::abs(eval_ft(A, 1.0)) < 1e-12;
    o.require(c.chi_hat_one_zero.has_value() && *c.chi_hat_one_zero == numeric_zero, tag + ": hat chi(1) test");
    o.require(numeric_zero == is_integer(spec.gap() - q(1, 2)), tag + ": half-integer gap");
  }
}

Outcome criterion_classifier(std::mt19937_64& rng) {
  Outcome o;
  int witnesses = 0;
  std::vector<TwoIntervalSpec> worked{
      TwoIntervalSpec(Interval(q(0), q(1, 2)), Interval(q(1), q(3, 2))),
      TwoIntervalSpec(Interval(q(0), q(1, 2)), Interval(q(3, 5), q(11, 10))),
      TwoIntervalSpec(Interval(q(0), q(1, 4)), Interval(q(5, 4), q(2))),
  };
  auto c1 = classify_two_intervals(worked[0]);
  o.require(c1.D_measure == 1 && c1.a_spectral == Answer::yes && c1.b_spectral_implied == Answer::yes, "example 1");
  auto c2 = classify_two_intervals(worked[1]);
  o.require(c2.D_measure == q(7, 6) && c2.a_spectral == Answer::no && c2.product_spectral_possible == Answer::no,
            "example 2");
  auto c3 = classify_two_intervals(worked[2]);
  o.require(c3.kind == TwoIntervalCase::unequal_lengths && c3.a_spectral == Answer::yes && c3.tiling_witness,
            "example 3");
  for (const auto& s : worked) check_classification(o, s, witnesses);

  std::uniform_int_distribution<int> coin(0, 1);
  std::vector<long> dens{1, 2, 3, 4, 5, 6, 10};
  std::uniform_int_distribution<std::size_t> pick(0, dens.size() - 1);
  int equal = 0;
  for (int i = 0; i < 100; ++i) {
    Rational a = oracle::random_rational(rng, -2, 2, 4);
    long den = dens[pick(rng)];
    Rational l1 = q(1, 2);
    if (coin(rng)) {
      ++equal;
    } else {
      l1 = oracle::random_rational(rng, 0.05, 0.95, 8);
      if (l1 == q(1, 2)) l1 = q(3, 8);
    }
    Rational l2 = 1 - l1;
    Rational gap = oracle::random_rational(rng, 0.1, 3, den);
    if (gap <= 0) gap = q(1, den);
    Interval I(a, a + l1), J(a + l1 + gap, a + l1 + gap + l2);
    TwoIntervalSpec spec = coin(rng) ? TwoIntervalSpec(I, J) : TwoIntervalSpec(J, I);
    check_classification(o, spec, witnesses);
  }
  o.detail << "3 worked examples + 100 random specs (" << equal << " equal-length), " << witnesses
           << " tiling witnesses verified";
  return o;
}

Outcome criterion_pipeline() {
  Outcome o;
  auto t0 = Clock::now();
  auto unit = BoxUnionDomain::interval(0, 1);
  std::vector<std::pair<std::string, std::shared_ptr<const LatticeSummable>>> fs{
      {"indicator", std::make_shared<IndicatorFunction>(unit)},
      {"sinc^2", std::make_shared<PowerSpectrum>(unit)},
  };
  for (const auto& [name, f] : fs) {
    auto r = extract_tiling(PackingSequence::stretched_lattice(f, 10, 200), 5, 1e-5);
    o.require(!r.rejected && r.tiling.holds(), name + " tiling verdict: " + r.reason + " " + r.tiling.reason);
    o.require(r.tiling.sup_error <= 1e-5, name + " sup error");
    std::vector<double> z;
    double anchor = r.anchor.empty() ? 0.0 : r.anchor[0];
    for (int k = -14; k <= 14; ++k) z.push_back(k + anchor);
    double wd = weak_distance(r.limit.limit, FinitePointSet(1, z), 20);
    o.require(wd <= 0.02, name + " weak distance " + std::to_string(wd));
    o.detail << name << ": weak distance " << wd << ", sup error " << r.tiling.sup_error << "; ";
  }
  auto deficient = extract_tiling(PackingSequence::fixed_lattice(fs[1].second, 2.0, 10, 200), 5, 1e-5);
  o.require(deficient.rejected, "2Z must be rejected");
  o.detail << "2Z rejected (" << deficient.reason << "), " << seconds_since(t0) << " s";
  return o;
}

Outcome criterion_oracles(std::mt19937_64& rng) {
  Outcome o;
  double worst = 0;
  std::uniform_real_distribution<double> u(-8, 8);
  std::uniform_int_distribution<std::size_t> dim(1, 3);
  for (int i = 0; i < 20; ++i) {
    auto dom = oracle::random_domain(rng, dim(rng), 3);
    for (int j = 0; j < 20; ++j) {
      std::vector<double> x(dom.dim());
      for (auto& c : x) c = u(rng);
      double err = std::abs(eval_ft(dom, x) - oracle::quad_ft(dom, x));
      worst = std::max(worst, err);
    }
  }
  o.require(worst <= 1e-8, "eval_ft vs quadrature " + std::to_string(worst));

  auto unit = BoxUnionDomain::interval(0, 1);
  std::uniform_real_distribution<double> radius(20, 200);
  double tightest = 1e300;
  for (int i = 0; i < 100; ++i) {
    double R = i < 50 ? 50.0 : std::floor(radius(rng));
    std::uniform_real_distribution<double> ux(-R / 4, R / 4);
    double x = ux(rng);
    double brute = oracle::sinc2_tail(x, static_cast<long>(R), 1000000);
    double bound = tail_bound(unit, R, 1.0);
    o.require(brute <= bound, "tail bound at x=" + std::to_string(x));
    tightest = std::min(tightest, bound / brute);
  }
  o.detail << "max |eval_ft - quadrature| = " << worst << " over 400 points; tail bound dominates at 100 points "
           << "(smallest ratio bound/tail " << tightest << ")";
  return o;
}

}  // namespace

int main() {
  std::mt19937_64 rng(20240601);
  struct Entry {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  std::vector<Entry> entries{
      {1, "spectrum verification", [] { return criterion_spectrum(); }},
      {2, "zero-set exactness", [&] { return criterion_zero_sets(rng); }},
      {3, "packing never exceeded", [&] { return criterion_packing(rng); }},
      {4, "window-density bound", [&] { return criterion_window_density(rng); }},
      {5, "factor extraction", [] { return criterion_factor(); }},
      {6, "two-interval classifier", [&] { return criterion_classifier(rng); }},
      {7, "packing-to-tiling pipeline", [] { return criterion_pipeline(); }},
      {8, "oracle equivalence", [&] { return criterion_oracles(rng); }},
  };
  int failures = 0;
  for (const auto& e : entries) {
    auto t0 = Clock::now();
    Outcome o;
    try {
      o = e.run();
    } catch (const std::exception& ex) {
      o.pass = false;
      o.detail << "exception: " << ex.what();
    }
    failures += o.pass ? 0 : 1;
    std::printf("%s %d %s: %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", e.id, e.name, o.detail.str().c_str(),
                seconds_since(t0));
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
