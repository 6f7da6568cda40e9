#include "spectile/summable.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace spectile {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct BoxesD {
  std::size_t dim = 0;
  std::vector<double> lo, hi;  // box-major
  Vec bb_lo, bb_hi;

  explicit BoxesD(const BoxUnionDomain& dom) : dim(dom.dim()), bb_lo(dom.dim(), kInf), bb_hi(dom.dim(), -kInf) {
    for (const auto& b : dom.boxes()) {
      for (std::size_t i = 0; i < dim; ++i) {
        double a = to_double(b[i].lo()), c = to_double(b[i].hi());
        lo.push_back(a);
        hi.push_back(c);
        bb_lo[i] = std::min(bb_lo[i], a);
        bb_hi[i] = std::max(bb_hi[i], c);
      }
    }
  }

  std::size_t count() const { return lo.size() / dim; }

  bool contains(std::span<const double> x) const {
    for (std::size_t b = 0; b < count(); ++b) {
      bool inside = true;
      for (std::size_t i = 0; i < dim && inside; ++i) inside = lo[b * dim + i] <= x[i] && x[i] < hi[b * dim + i];
      if (inside) return true;
    }
    return false;
  }

  // |Omega cap (Omega + g)|
  double overlap_shift(std::span<const double> g) const {
    double total = 0;
    const std::size_t n = count();
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = 0; q < n; ++q) {
        double v = 1;
        for (std::size_t i = 0; i < dim && v > 0; ++i) {
          double a = std::max(lo[p * dim + i], lo[q * dim + i] + g[i]);
          double c = std::min(hi[p * dim + i], hi[q * dim + i] + g[i]);
          v *= std::max(0.0, c - a);
        }
        total += v;
      }
    }
    return total;
  }

  // |Q cap (Omega + t)| for the cube Q = [qlo, qhi].
  double overlap_cube(std::span<const double> qlo, std::span<const double> qhi, std::span<const double> t) const {
    double total = 0;
    for (std::size_t b = 0; b < count(); ++b) {
      double v = 1;
      for (std::size_t i = 0; i < dim && v > 0; ++i) {
        double a = std::max(qlo[i], lo[b * dim + i] + t[i]);
        double c = std::min(qhi[i], hi[b * dim + i] + t[i]);
        v *= std::max(0.0, c - a);
      }
      total += v;
    }
    return total;
  }
};

Complex expi2pi(double theta) { return {cospi(2 * theta), sinpi(2 * theta)}; }

template <class F>
void for_each_grid_index(std::span<const std::size_t> n, F&& visit) {
  const std::size_t d = n.size();
  std::vector<std::size_t> idx(d, 0);
  std::size_t flat = 0;
  while (true) {
    visit(idx, flat++);
    std::size_t j = 0;
    while (j < d) {
      if (++idx[j] < n[j]) break;
      idx[j] = 0;
      ++j;
    }
    if (j == d) break;
  }
}

// Sum of |Omega cap (Omega + g)| e^{2 pi i g.(x - o)} / covolume over the dual lattice.
class DualPowerSum final : public PeriodicSum {
 public:
  DualPowerSum(const PeriodicPointSet& lam, const BoxUnionDomain& dom, double scale)
      : PeriodicSum(lam), dim_(lam.dim()) {
    BoxesD boxes(dom);
    const std::size_t d = dim_;
    Matrix dual = lam.dual_basis();
    Matrix dual_inv = lam.basis().transpose();
    Vec lo(d), hi(d), origin(d, 0.0);
    for (std::size_t i = 0; i < d; ++i) {
      double w = boxes.bb_hi[i] - boxes.bb_lo[i];
      lo[i] = -w;
      hi[i] = w;
    }
    for_each_lattice_point_in_box(dual, dual_inv, origin, lo, hi, [&](std::span<const double> g) {
      double ac = boxes.overlap_shift(g);
      if (!(ac > 0)) return;
      Complex phase = 0;
      for (const auto& o : lam.offsets()) {
        double t = 0;
        for (std::size_t i = 0; i < d; ++i) t += g[i] * o[i];
        phase += expi2pi(-t);
      }
      Complex c = scale * ac / lam.covolume() * phase;
      if (std::abs(c) == 0.0) return;
      Term term;
      term.gamma.assign(g.begin(), g.end());
      term.coef = c;
      // Integer coordinates of g against the primal basis: k = B^T g.
      for (std::size_t j = 0; j < d; ++j) {
        double s = 0;
        for (std::size_t i = 0; i < d; ++i) s += lam.basis()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * g[i];
        term.k.push_back(std::lround(s));
      }
      radius_ = std::max(radius_, sup_norm(g));
      terms_.push_back(std::move(term));
    });
    lip_.assign(d, 0.0);
    for (const auto& t : terms_) {
      for (std::size_t i = 0; i < d; ++i) lip_[i] += std::abs(t.coef) * 2 * kPi * std::abs(t.gamma[i]);
    }
  }

  double value(std::span<const double> x) const override {
    Complex s = 0;
    for (const auto& t : terms_) {
      double th = 0;
      for (std::size_t i = 0; i < dim_; ++i) th += t.gamma[i] * x[i];
      s += t.coef * expi2pi(th);
    }
    return s.real();
  }

  std::vector<double> grid_values(std::span<const double> origin, std::span<const std::size_t> n) const override {
    const std::size_t d = dim_;
    std::size_t total = 1;
    for (auto m : n) total *= m;
    std::vector<double> out(total, 0.0);
    std::vector<std::vector<Complex>> table(d);
    for (const auto& t : terms_) {
      double th = 0;
      for (std::size_t i = 0; i < d; ++i) th += t.gamma[i] * origin[i];
      Complex base = t.coef * expi2pi(th);
      for (std::size_t j = 0; j < d; ++j) {
        table[j].resize(n[j]);
        for (std::size_t i = 0; i < n[j]; ++i) {
          // k_j * (i + 1/2) / n_j reduced exactly modulo 1 in integer arithmetic.
          long num = (t.k[j] * static_cast<long>(2 * i + 1)) % static_cast<long>(2 * n[j]);
          table[j][i] = expi2pi(static_cast<double>(num) / static_cast<double>(2 * n[j]));
        }
      }
      for_each_grid_index(n, [&](const std::vector<std::size_t>& idx, std::size_t flat) {
        Complex v = base;
        for (std::size_t j = 0; j < d; ++j) v *= table[j][idx[j]];
        out[flat] += v.real();
      });
    }
    return out;
  }

  Vec lipschitz() const override { return lip_; }

  double window_integral(std::span<const double> center, double side) const override {
    Complex s = 0;
    for (const auto& t : terms_) {
      Complex v = t.coef;
      for (std::size_t i = 0; i < dim_; ++i) {
        double g = t.gamma[i];
        double part = g == 0.0 ? side : sinpi(g * side) / (kPi * g);
        v *= part * expi2pi(g * center[i]);
      }
      s += v;
    }
    return s.real();
  }

  std::string route() const override { return "dual-exact"; }
  double truncation_radius() const override { return radius_; }

 private:
  struct Term {
    Vec gamma;
    std::vector<long> k;
    Complex coef;
  };
  std::size_t dim_;
  std::vector<Term> terms_;
  Vec lip_;
  double radius_ = 0;
};

class IndicatorPeriodicSum final : public PeriodicSum {
 public:
  IndicatorPeriodicSum(const PeriodicPointSet& lam, const BoxUnionDomain& dom, double scale, double radius)
      : PeriodicSum(lam), boxes_(dom), scale_(scale), radius_(radius) {}

  double value(std::span<const double> x) const override {
    const std::size_t d = boxes_.dim;
    Vec lo(d), hi(d), y(d), origin(d, 0.0);
    double count = 0;
    for (const auto& o : lam_.offsets()) {
      for (std::size_t i = 0; i < d; ++i) {
        lo[i] = x[i] - o[i] - boxes_.bb_hi[i];
        hi[i] = x[i] - o[i] - boxes_.bb_lo[i];
      }
      for_each_lattice_point_in_box(lam_.basis(), lam_.inverse(), origin, lo, hi, [&](std::span<const double> l) {
        for (std::size_t i = 0; i < d; ++i) y[i] = x[i] - o[i] - l[i];
        if (boxes_.contains(y)) count += 1;
      });
    }
    return scale_ * count;
  }

  Vec lipschitz() const override { return Vec(boxes_.dim, kInf); }

  double window_integral(std::span<const double> center, double side) const override {
    const std::size_t d = boxes_.dim;
    Vec qlo(d), qhi(d), lo(d), hi(d), origin(d, 0.0), t(d);
    for (std::size_t i = 0; i < d; ++i) {
      qlo[i] = center[i] - side / 2;
      qhi[i] = center[i] + side / 2;
    }
    double total = 0;
    for (const auto& o : lam_.offsets()) {
      for (std::size_t i = 0; i < d; ++i) {
        lo[i] = qlo[i] - o[i] - boxes_.bb_hi[i];
        hi[i] = qhi[i] - o[i] - boxes_.bb_lo[i];
      }
      for_each_lattice_point_in_box(lam_.basis(), lam_.inverse(), origin, lo, hi, [&](std::span<const double> l) {
        for (std::size_t i = 0; i < d; ++i) t[i] = o[i] + l[i];
        total += boxes_.overlap_cube(qlo, qhi, t);
      });
    }
    return scale_ * total;
  }

  std::string route() const override { return "direct-exact"; }
  double truncation_radius() const override { return radius_; }

 private:
  BoxesD boxes_;
  double scale_;
  double radius_;
};

class TruncatedPeriodicSum final : public PeriodicSum {
 public:
  TruncatedPeriodicSum(const PeriodicPointSet& lam, const LatticeSummable& f, double radius)
      : PeriodicSum(lam), f_(f), radius_(radius) {}

  double value(std::span<const double> x) const override {
    const std::size_t d = lam_.dim();
    Vec lo(d), hi(d), y(d), origin(d, 0.0);
    double s = 0;
    for (const auto& o : lam_.offsets()) {
      for (std::size_t i = 0; i < d; ++i) {
        lo[i] = x[i] - o[i] - radius_;
        hi[i] = x[i] - o[i] + radius_;
      }
      for_each_lattice_point_in_box(lam_.basis(), lam_.inverse(), origin, lo, hi, [&](std::span<const double> l) {
        for (std::size_t i = 0; i < d; ++i) y[i] = x[i] - o[i] - l[i];
        s += f_.value(y);
      });
    }
    return s;
  }

  Vec lipschitz() const override { return Vec(lam_.dim(), kInf); }

  double window_integral(std::span<const double>, double) const override {
    throw std::logic_error("window integrals are not available on the truncated route");
  }

  std::string route() const override { return "direct-truncated"; }
  double truncation_radius() const override { return radius_; }

 private:
  const LatticeSummable& f_;
  double radius_;
};

}  // namespace

std::vector<double> PeriodicSum::grid_values(std::span<const double> origin, std::span<const std::size_t> n) const {
  const std::size_t d = lam_.dim();
  std::size_t total = 1;
  for (auto m : n) total *= m;
  std::vector<double> out(total);
  Vec x(d);
  for_each_grid_index(n, [&](const std::vector<std::size_t>& idx, std::size_t flat) {
    for (std::size_t i = 0; i < d; ++i) {
      double s = origin[i];
      for (std::size_t j = 0; j < d; ++j) {
        s += lam_.basis()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) *
             ((static_cast<double>(idx[j]) + 0.5) / static_cast<double>(n[j]));
      }
      x[i] = s;
    }
    out[flat] = value(x);
  });
  return out;
}

std::unique_ptr<PeriodicSum> LatticeSummable::periodize_truncated(const PeriodicPointSet& lam, double radius) const {
  if (lam.dim() != dim()) throw PointSetError("point set dimension does not match the function");
  if (!(radius > 0)) throw std::invalid_argument("truncation radius must be positive");
  return std::make_unique<TruncatedPeriodicSum>(lam, *this, radius);
}

std::string LatticeSummable::describe() const {
  std::ostringstream os;
  os << kind() << "(" << spectile::describe(domain());
  if (scale() != 1.0) os << ", scale " << scale();
  os << ")";
  return os.str();
}

IndicatorFunction::IndicatorFunction(BoxUnionDomain dom, double scale) : dom_(std::move(dom)), scale_(scale) {
  if (!(scale_ > 0) || !std::isfinite(scale_)) throw std::invalid_argument("scale must be positive");
  radius_ = 0;
  for (const auto& b : dom_.boxes()) {
    for (const auto& iv : b) {
      radius_ = std::max({radius_, std::abs(to_double(iv.lo())), std::abs(to_double(iv.hi()))});
    }
  }
}

double IndicatorFunction::value(std::span<const double> x) const { return dom_.contains(x) ? scale_ : 0.0; }

double IndicatorFunction::integral() const { return scale_ * to_double(dom_.measure()); }

double IndicatorFunction::tail_beyond(double r, double delta0) const {
  if (!(delta0 > 0)) throw std::invalid_argument("separation bound must be positive");
  if (r > radius_) return 0.0;
  const double d = static_cast<double>(dim());
  const double s = delta0 / std::sqrt(d);
  return scale_ * std::pow(std::ceil(2 * radius_ / s) + 1, d);
}

Vec IndicatorFunction::derivative_envelope(std::span<const double>) const { return Vec(dim(), kInf); }

std::unique_ptr<PeriodicSum> IndicatorFunction::periodize(const PeriodicPointSet& lam) const {
  if (lam.dim() != dim()) throw PointSetError("point set dimension does not match the function");
  return std::make_unique<IndicatorPeriodicSum>(lam, dom_, scale_, radius_);
}

PowerSpectrum::PowerSpectrum(BoxUnionDomain dom, double scale) : profile_(std::move(dom)), scale_(scale) {
  if (!(scale_ > 0) || !std::isfinite(scale_)) throw std::invalid_argument("scale must be positive");
}

PowerSpectrum PowerSpectrum::normalized(BoxUnionDomain dom) {
  double m = to_double(dom.measure());
  return PowerSpectrum(std::move(dom), 1.0 / m);
}

double PowerSpectrum::value(std::span<const double> x) const { return scale_ * profile_.power(x); }

double PowerSpectrum::integral() const { return scale_ * profile_.measure(); }

double PowerSpectrum::tail_beyond(double r, double delta0) const {
  return power_tail_beyond(domain(), r, delta0, scale_);
}

Vec PowerSpectrum::derivative_envelope(std::span<const double> dist) const {
  const std::size_t d = dim();
  Vec L(d, 0.0), M(d, 0.0);
  for (const auto& b : domain().boxes()) {
    for (std::size_t i = 0; i < d; ++i) {
      L[i] = std::max(L[i], to_double(b[i].length()));
      M[i] = std::max(M[i], std::abs(to_double(b[i].lo())) + std::abs(to_double(b[i].hi())));
    }
  }
  const double N = static_cast<double>(domain().box_count());
  Vec E(d), D(d);
  for (std::size_t i = 0; i < d; ++i) {
    double t = dist[i];
    E[i] = t > 0 ? std::min(L[i], 1.0 / (kPi * t)) : L[i];
    double near = 2 * kPi * M[i] * L[i];
    D[i] = t > 0 ? std::min(near, M[i] / t + 1.0 / (kPi * t * t)) : near;
  }
  Vec out(d);
  for (std::size_t i = 0; i < d; ++i) {
    double v = 2 * scale_ * N * N * D[i] * E[i];
    for (std::size_t j = 0; j < d; ++j) {
      if (j != i) v *= E[j] * E[j];
    }
    out[i] = v;
  }
  return out;
}

double PowerSpectrum::support_radius() const { return kInf; }

std::unique_ptr<PeriodicSum> PowerSpectrum::periodize(const PeriodicPointSet& lam) const {
  if (lam.dim() != dim()) throw PointSetError("point set dimension does not match the function");
  return std::make_unique<DualPowerSum>(lam, domain(), scale_);
}

double PowerSpectrum::autocorrelation(std::span<const double> g) const {
  return scale_ * BoxesD(domain()).overlap_shift(g);
}

double finite_sum(const LatticeSummable& f, const FinitePointSet& pts, std::span<const double> x) {
  const std::size_t d = f.dim();
  Vec y(d);
  double s = 0;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    auto p = pts.point(k);
    for (std::size_t i = 0; i < d; ++i) y[i] = x[i] - p[i];
    double v = f.value(y);
    if (v != 0.0) s += static_cast<double>(pts.multiplicity(k)) * v;
  }
  return s;
}

Vec finite_sum_lipschitz(const LatticeSummable& f, const FinitePointSet& pts, std::span<const double> center,
                         double side) {
  const std::size_t d = f.dim();
  Vec total(d, 0.0), dist(d);
  if (!f.continuous()) return Vec(d, kInf);
  for (std::size_t k = 0; k < pts.size(); ++k) {
    auto p = pts.point(k);
    for (std::size_t i = 0; i < d; ++i) {
      double c = center.empty() ? 0.0 : center[i];
      dist[i] = std::max(0.0, std::abs(p[i] - c) - side / 2);
    }
    Vec e = f.derivative_envelope(dist);
    for (std::size_t i = 0; i < d; ++i) total[i] += static_cast<double>(pts.multiplicity(k)) * e[i];
  }
  return total;
}

}  // namespace spectile
