#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "spectile/fourier.hpp"
#include "spectile/spectra.hpp"

using namespace spectile;

namespace {

Rational q(long p, long d = 1) { return Rational(p, d); }
const BoxUnionDomain unit = BoxUnionDomain::interval(0, 1);
const BoxUnionDomain half_pair = BoxUnionDomain::intervals({Interval(q(0), q(1, 2)), Interval(q(1), q(3, 2))});

PeriodicPointSet one_dim(double period, std::vector<double> offsets) {
  Matrix b(1, 1);
  b(0, 0) = period;
  std::vector<Vec> offs;
  for (double o : offsets) offs.push_back({o});
  return PeriodicPointSet(b, offs);
}

PeriodicPointSet Z(std::size_t d = 1, double s = 1.0) { return PeriodicPointSet::scaled_integer_lattice(d, s); }

}  // namespace

TEST_CASE("level must be positive") {
  CHECK_THROWS(Level(0));
  CHECK_THROWS(Level(-1));
  CHECK(Level(2).value() == 2);
}

TEST_CASE("orthogonality of exponentials") {
  CHECK(check_orthogonal(unit, Z()).holds());
  CHECK(check_orthogonal(BoxUnionDomain::cube(2, 0, 1), Z(2)).holds());
  auto bad = check_orthogonal(unit, FinitePointSet(1, {0.0, 0.5}));
  CHECK(bad.fails());
  REQUIRE(bad.witness.has_value());
  CHECK(std::abs((*bad.witness)[0]) == doctest::Approx(0.5));
  CHECK(std::abs(eval_ft(unit, 0.5)) == doctest::Approx(2 / oracle::pi));
  CHECK(check_orthogonal(unit, FinitePointSet::merging(1, {1.0, 1.0})).fails());
  CHECK(check_orthogonal(half_pair, one_dim(2, {0, 0.5})).holds());
  CHECK(check_orthogonal(half_pair, Z()).fails());
  CHECK(check_orthogonal(unit, Z(1, 2.0)).holds());
  CHECK(check_orthogonal(unit, FinitePointSet(1, {-3.0, 0.0, 4.0, 7.0})).holds());
}

TEST_CASE("packing of the power spectrum") {
  PowerSpectrum f(unit);
  auto z = check_packing(f, Z(), Level(1));
  CHECK(z.holds());
  auto two = check_packing(f, Z(1, 2.0), Level(1));
  CHECK(two.holds());
  auto half = check_packing(f, Z(1, 0.5), Level(1));
  CHECK(half.fails());
  REQUIRE(half.witness.has_value());
}

TEST_CASE("tiling checks") {
  IndicatorFunction chi(unit);
  auto t = check_tiling(chi, Z(), Level(1));
  CHECK(t.holds());
  CHECK(t.grid_only);
  auto gap = check_tiling(chi, Z(1, 2.0), Level(1));
  CHECK(gap.fails());
  REQUIRE(gap.witness.has_value());
  double w = gap.witness->at(0);
  double r = w - 2 * std::floor(w / 2);
  CHECK(r >= 1.0);

  PowerSpectrum f(unit);
  auto dual = check_tiling(f, Z(), Level(1));
  CHECK(dual.holds());
  CHECK(dual.sup_error <= 1e-6);

  GridOptions truncated;
  truncated.route = SumRoute::truncated;
  truncated.truncation_radius = 1e4;
  truncated.grid_step = 1e-2;
  auto direct = check_tiling(f, Z(), Level(1), truncated);
  CHECK(direct.status == Status::inconclusive);
  CHECK(direct.tail_bound_used > 1e-5);
  CHECK(direct.sup_error - direct.tail_bound_used <= direct.tail_bound_used);
}

TEST_CASE("direct and dual periodic sums agree with a brute-force oracle") {
  PowerSpectrum f(half_pair);
  auto lam = one_dim(2, {0, 0.5});
  auto dual = f.periodize(lam);
  auto direct = f.periodize_truncated(lam, 2000);
  TransformProfile prof(half_pair);
  auto power = [&](const std::vector<double>& y) { return std::norm(oracle::gram_ft(half_pair, y)); };
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int i = 0; i < 10; ++i) {
    std::vector<double> x{u(rng)};
    double a = dual->value(x), b = direct->value(x);
    double c = oracle::brute_periodic_sum(power, lam, x, 2000);
    CHECK(a == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::abs(b - c) < 1e-9);
    CHECK(std::abs(a - b) < 1e-3);
  }
}

TEST_CASE("spectrum verification") {
  CHECK(check_spectrum(unit, Z()).holds());
  CHECK(check_spectrum(BoxUnionDomain::cube(2, 0, 1), Z(2)).holds());
  auto dens = check_spectrum(unit, Z(1, 2.0));
  CHECK(dens.fails());
  CHECK(dens.reason.find("density") != std::string::npos);
  CHECK(check_spectrum(half_pair, one_dim(2, {0, 0.5})).holds());
  CHECK(check_spectrum(half_pair, Z()).fails());
}

TEST_CASE("scaling covariance of spectra") {
  for (long s : {2L, 3L, 5L}) {
    auto dom = unit.scaled(q(s));
    CHECK(check_spectrum(dom, Z(1, 1.0 / static_cast<double>(s))).holds());
    CHECK(check_spectrum(half_pair.scaled(q(1, s)), one_dim(2.0 * static_cast<double>(s), {0, 0.5 * static_cast<double>(s)}))
              .holds());
  }
}

TEST_CASE("cube checks for finite sets") {
  IndicatorFunction chi(unit);
  auto pts = truncate(Z(), 40);
  auto c = check_on_cube(chi, pts, Level(1), 5, 20, 1);
  CHECK(c.tiling.holds());
  CHECK(c.packing.holds());
  PowerSpectrum f(unit);
  auto big = truncate(Z(), 1e5);
  GridOptions g;
  g.grid_step = 1e-2;
  g.tolerance = 1e-5;
  auto s = check_tiling_on_cube(f, big, Level(1), 5, 5e4, 1, g);
  CHECK(s.holds());
  CHECK(s.sup_error <= 1e-5);
}

TEST_CASE("samples lie on the check grid") {
  IndicatorFunction chi(unit);
  GridOptions g;
  g.grid_step = 0.1;
  auto samples = sample_periodic_sum(chi, Z(), g);
  CHECK(samples.size() == 10);
  for (const auto& s : samples) CHECK(s.value == doctest::Approx(1));
}
