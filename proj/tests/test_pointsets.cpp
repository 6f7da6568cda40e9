#include <doctest.h>

#include <cmath>
#include <vector>

#include "spectile/pointsets.hpp"

using namespace spectile;

namespace {

PeriodicPointSet one_dim(double period, std::vector<double> offsets) {
  Matrix b(1, 1);
  b(0, 0) = period;
  std::vector<Vec> offs;
  for (double o : offsets) offs.push_back({o});
  return PeriodicPointSet(b, offs);
}

FinitePointSet integers(long lo, long hi, double shift = 0) {
  std::vector<double> c;
  for (long k = lo; k <= hi; ++k) c.push_back(static_cast<double>(k) + shift);
  return FinitePointSet(1, c);
}

}  // namespace

TEST_CASE("periodic density") {
  CHECK(density(PeriodicPointSet::scaled_integer_lattice(1)) == doctest::Approx(1));
  CHECK(density(one_dim(2, {0, 0.5})) == doctest::Approx(1));
  for (int n : {1, 5, 40}) {
    CHECK(density(PeriodicPointSet::scaled_integer_lattice(1, 1.0 + 1.0 / n)) == doctest::Approx(n / (n + 1.0)));
  }
  CHECK_THROWS_AS(one_dim(1, {0, 1}), PointSetError);
  CHECK_THROWS_AS(PeriodicPointSet(Matrix::Zero(2, 2), {Vec{0, 0}}), PointSetError);
}

TEST_CASE("finite sets reject duplicate keys and keep multiplicities") {
  CHECK_THROWS_AS(FinitePointSet(1, {0.0, 0.0}), PointSetError);
  FinitePointSet m = FinitePointSet::merging(1, {0.0, 0.0, 0.0});
  CHECK(m.size() == 1);
  CHECK(m.total_count() == 3);
  CHECK(m.has_repeats());
  std::vector<Window> w{Window{{0.0}, 1.0}};
  CHECK(upper_density_estimate(m, w) == doctest::Approx(3));
  CHECK(upper_density_estimate(FinitePointSet(1), w) == 0);
  std::vector<Window> w100{Window{{0.0}, 100.0}};
  CHECK(upper_density_estimate(integers(-50, 50), w100) == doctest::Approx(1.01));
}

TEST_CASE("truncation uses the closed cube") {
  auto z = PeriodicPointSet::scaled_integer_lattice(1);
  auto t = truncate(z, 3);
  CHECK(t == integers(-1, 1));
  CHECK(truncate(PeriodicPointSet::scaled_integer_lattice(2), 2).size() == 9);
  auto t2 = truncate(PeriodicPointSet::scaled_integer_lattice(1, 2.0), 3);
  CHECK(t2.size() == 1);
  for (double R : {10.0, 100.0, 1000.0}) {
    auto s = truncate(one_dim(2, {0, 0.5}), R);
    CHECK(std::abs(static_cast<double>(s.size()) / R - 1.0) <= 2.0 / R);
  }
  std::vector<double> center{0.5};
  CHECK(truncate(z, 1, center).size() == 2);
}

TEST_CASE("separation") {
  CHECK(separation(PeriodicPointSet::scaled_integer_lattice(1)).delta0 == doctest::Approx(1));
  CHECK(separation(one_dim(2, {0, 0.5})).delta0 == doctest::Approx(0.5));
  CHECK(separation(integers(-3, 3)).delta0 == doctest::Approx(1));
  CHECK(separation(FinitePointSet(1, {0.0})).degenerate());
  Matrix hex(2, 2);
  hex << 1, 0.5, 0, std::sqrt(3.0) / 2;
  CHECK(separation(PeriodicPointSet::lattice(hex)).delta0 == doctest::Approx(1));
}

TEST_CASE("weak distance") {
  auto a = integers(-5, 5);
  CHECK(weak_distance(a, a, 10) == 0);
  auto za = integers(-3, 3);
  auto zb = integers(-3, 3, 0.1);
  CHECK(weak_distance(za, zb, 4) == doctest::Approx(0.2));
  CHECK(weak_distance(FinitePointSet(1, {0.0}), FinitePointSet(1, {1.0}), 4) == doctest::Approx(2));
  CHECK(std::isinf(weak_distance(FinitePointSet(1, {0.0}), FinitePointSet(1), 4)));
}

TEST_CASE("diagonal limit of stretched lattices") {
  std::vector<FinitePointSet> seq;
  std::vector<double> index;
  for (int n = 10; n <= 100; ++n) {
    seq.push_back(truncate(PeriodicPointSet::scaled_integer_lattice(1, 1.0 + 1.0 / n), 40));
    index.push_back(n);
  }
  auto lim = diagonal_limit(seq, 0.05, index);
  auto target = integers(-10, 10);
  CHECK(weak_distance(lim.limit, integers(-12, 12), 20) <= 0.02);
  CHECK(weak_distance(target, lim.limit, 20) <= 0.02);
  CHECK(lim.unstable.empty());

  LimitOptions plain;
  plain.extrapolate = false;
  auto raw = diagonal_limit(seq, 0.05, index, plain);
  CHECK(weak_distance(raw.limit, integers(-12, 12), 20) <= 0.25);
}

TEST_CASE("diagonal limit of constant and alternating sequences") {
  std::vector<FinitePointSet> same(6, integers(-5, 5));
  auto lim = diagonal_limit(same, 1e-9);
  CHECK(lim.limit == integers(-5, 5));

  std::vector<FinitePointSet> alt;
  for (int i = 0; i < 12; ++i) alt.push_back(FinitePointSet(1, {static_cast<double>(i % 2)}));
  auto bad = diagonal_limit(alt, 0.1);
  CHECK(bad.limit.empty());
  CHECK_FALSE(bad.unstable.empty());
}

TEST_CASE("translation and fractional coordinates") {
  auto p = one_dim(2, {0, 0.5});
  std::vector<double> s{0.25};
  auto t = p.translated(s);
  CHECK(t.offsets()[1][0] == doctest::Approx(0.75));
  std::vector<double> x{3.5};
  CHECK(p.fractional(x)[0] == doctest::Approx(0.75));
}
