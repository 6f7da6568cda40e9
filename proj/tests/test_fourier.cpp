#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "spectile/fourier.hpp"

using namespace spectile;

namespace {
Rational q(long p, long d = 1) { return Rational(p, d); }
const BoxUnionDomain unit = BoxUnionDomain::interval(0, 1);
const BoxUnionDomain half_pair = BoxUnionDomain::intervals({Interval(q(0), q(1, 2)), Interval(q(1), q(3, 2))});
const BoxUnionDomain uneven = BoxUnionDomain::intervals({Interval(q(0), q(1, 4)), Interval(q(1, 2), q(5, 4))});
}  // namespace

TEST_CASE("sinpi reduces exactly") {
  for (long k = -50; k <= 50; ++k) {
    CHECK(sinpi(static_cast<double>(k)) == 0.0);
    CHECK(std::abs(cospi(static_cast<double>(k))) == 1.0);
  }
  CHECK(sinpi(0.5) == 1.0);
  CHECK(cospi(0.5) == 0.0);
  CHECK(sinpi(1e6 + 0.25) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
}

TEST_CASE("transform values at the reference points") {
  CHECK(eval_ft(unit, 0.0) == Complex(1, 0));
  for (long k = 1; k < 20; ++k) CHECK(std::abs(eval_ft(unit, static_cast<double>(k))) < 1e-15);
  CHECK(std::abs(eval_ft(half_pair, 0.5)) < 1e-15);
  CHECK(eval_power(unit, 0.0) == doctest::Approx(1));
  CHECK(eval_power(unit, 0.5) == doctest::Approx(4 / (oracle::pi * oracle::pi)).epsilon(1e-14));
  auto sq = BoxUnionDomain::cube(2, 0, 1);
  std::vector<double> x{0.5, 0.0};
  CHECK(eval_power(sq, x) == doctest::Approx(4 / (oracle::pi * oracle::pi)).epsilon(1e-14));
}

TEST_CASE("transform agrees with the antiderivative and quadrature oracles") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-6, 6);
  for (std::size_t dim = 1; dim <= 3; ++dim) {
    for (int trial = 0; trial < 4; ++trial) {
      auto dom = oracle::random_domain(rng, dim, 3);
      TransformProfile prof(dom);
      for (int i = 0; i < 10; ++i) {
        std::vector<double> x(dim);
        for (auto& c : x) c = u(rng);
        Complex v = prof.value(x);
        CHECK(std::abs(v - oracle::gram_ft(dom, x)) < 1e-12);
        CHECK(std::abs(v - oracle::quad_ft(dom, x)) < 1e-9);
        CHECK(prof.power(x) == doctest::Approx(std::norm(v)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("weighted modulus") {
  TransformProfile prof(unit);
  CHECK(prof.weighted_modulus(0.0) == doctest::Approx(1));
  CHECK(prof.weighted_modulus(2.5) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(prof.weighted_modulus(3.0) < 1e-12);
}

TEST_CASE("zeros of a single interval") {
  auto z = zero_set_1d(unit, 5);
  CHECK(z.kind == ZeroSetKind::analytic_single_interval);
  REQUIRE(z.zeros.size() == 8);
  std::vector<double> expect{-4, -3, -2, -1, 1, 2, 3, 4};
  for (std::size_t i = 0; i < 8; ++i) CHECK(z.zeros[i].x == expect[i]);
  CHECK(z.is_zero(q(3)));
  CHECK_FALSE(z.is_zero(q(0)));
  CHECK_FALSE(z.is_zero(q(1, 2)));
  auto wide = zero_set_1d(BoxUnionDomain::interval(0, 2), 2);
  CHECK(wide.zeros.size() == 6);
  CHECK(wide.zeros[0].x == -1.5);
}

TEST_CASE("zeros of two equal intervals") {
  auto z = zero_set_1d(half_pair, 3);
  CHECK(z.kind == ZeroSetKind::analytic_two_interval);
  std::vector<double> expect{-2.5, -2, -1.5, -0.5, 0.5, 1.5, 2, 2.5};
  REQUIRE(z.zeros.size() == expect.size());
  for (std::size_t i = 0; i < expect.size(); ++i) CHECK(z.zeros[i].x == doctest::Approx(expect[i]));
  auto scan = numeric_zero_scan(half_pair, -3, 3);
  REQUIRE(scan.size() == expect.size());
  for (std::size_t i = 0; i < expect.size(); ++i) CHECK(scan[i].x == doctest::Approx(expect[i]).epsilon(1e-9));
}

TEST_CASE("zeros of two unequal intervals avoid (-1, 1)") {
  auto z = zero_set_1d(uneven, 1);
  CHECK(z.kind == ZeroSetKind::numeric_scan);
  CHECK(z.zeros.empty());
  auto wider = zero_set_1d(uneven, 6);
  REQUIRE(wider.no_zero_below_unit.has_value());
  CHECK(*wider.no_zero_below_unit);
  bool found_four = false;
  for (const auto& p : wider.zeros) {
    CHECK(std::abs(p.x) >= 1);
    found_four = found_four || std::abs(std::abs(p.x) - 4) < 1e-9;
  }
  CHECK(found_four);
}

TEST_CASE("touching intervals are merged before classification") {
  auto touching = BoxUnionDomain::intervals({Interval(q(0), q(1, 2)), Interval(q(1, 2), q(1))});
  auto z = zero_set_1d(touching, 3);
  CHECK(z.merged);
  CHECK(z.kind == ZeroSetKind::analytic_single_interval);
  CHECK(z.zeros.size() == 4);
}

TEST_CASE("degenerate range is rejected") {
  CHECK_THROWS(zero_set_1d(unit, 0));
  CHECK_THROWS(zero_set_1d(BoxUnionDomain::cube(2, 0, 1), 3));
}

TEST_CASE("tail bound decreases and dominates brute-force tails") {
  double prev = tail_bound(unit, 10, 1);
  for (double R : {20.0, 50.0, 100.0, 200.0, 1e4}) {
    double b = tail_bound(unit, R, 1);
    CHECK(b <= prev);
    prev = b;
  }
  CHECK(tail_bound(unit, 1e6, 1) < 1e-5);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-12.5, 12.5);
  double bound = tail_bound(unit, 50, 1);
  for (int i = 0; i < 10; ++i) {
    double x = u(rng);
    CHECK(oracle::sinc2_tail(x, 50, 200000) <= bound);
  }
  CHECK_THROWS(tail_bound(unit, 0, 1));
}

TEST_CASE("power tail is monotone in the radius") {
  auto sq = BoxUnionDomain::cube(2, 0, 1);
  double a = power_tail_beyond(sq, 10, 1), b = power_tail_beyond(sq, 40, 1);
  CHECK(b < a);
  CHECK(power_tail_beyond(sq, 40, 1, 2.0) == doctest::Approx(2 * b));
}
