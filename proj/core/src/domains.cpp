#include "spectile/domains.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace spectile {

Interval::Interval(Rational lo, Rational hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  lo_.canonicalize();
  hi_.canonicalize();
  if (!(lo_ < hi_)) {
    throw DomainError("degenerate interval [" + to_string(lo_) + ", " + to_string(hi_) + "]");
  }
}

namespace {

bool boxes_overlap(const Box& a, const Box& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i].overlaps(b[i])) return false;
  }
  return true;
}

Rational box_volume(const Box& b) {
  Rational v = 1;
  for (const auto& iv : b) v *= iv.length();
  return v;
}

// Exact rational k-th root of a positive rational, if one exists.
std::optional<Rational> rational_root(const Rational& q, unsigned long k) {
  mpz_class rn, rd;
  if (mpz_root(rn.get_mpz_t(), q.get_num_mpz_t(), k) == 0) return std::nullopt;
  if (mpz_root(rd.get_mpz_t(), q.get_den_mpz_t(), k) == 0) return std::nullopt;
  Rational r(rn, rd);
  r.canonicalize();
  return r;
}

}  // namespace

BoxUnionDomain::BoxUnionDomain(std::size_t dim, std::vector<Box> boxes)
    : dim_(dim), boxes_(std::move(boxes)) {
  if (dim_ == 0) throw DomainError("domain dimension must be positive");
  if (boxes_.empty()) throw DomainError("domain has no boxes");
  for (std::size_t i = 0; i < boxes_.size(); ++i) {
    if (boxes_[i].size() != dim_) {
      throw DomainError("box " + std::to_string(i) + " has " + std::to_string(boxes_[i].size()) +
                        " intervals, expected " + std::to_string(dim_));
    }
  }
  for (std::size_t i = 0; i < boxes_.size(); ++i) {
    for (std::size_t j = i + 1; j < boxes_.size(); ++j) {
      if (boxes_overlap(boxes_[i], boxes_[j])) {
        throw DomainError("boxes " + std::to_string(i) + " and " + std::to_string(j) +
                          " have overlapping interiors");
      }
    }
  }
}

BoxUnionDomain BoxUnionDomain::interval(Rational lo, Rational hi) {
  return BoxUnionDomain(1, {Box{Interval(std::move(lo), std::move(hi))}});
}

BoxUnionDomain BoxUnionDomain::intervals(std::vector<Interval> parts) {
  std::vector<Box> boxes;
  boxes.reserve(parts.size());
  for (auto& p : parts) boxes.push_back(Box{std::move(p)});
  return BoxUnionDomain(1, std::move(boxes));
}

BoxUnionDomain BoxUnionDomain::cube(std::size_t dim, Rational lo, Rational hi) {
  return BoxUnionDomain(dim, {Box(dim, Interval(std::move(lo), std::move(hi)))});
}

Rational BoxUnionDomain::measure() const {
  Rational total = 0;
  for (const auto& b : boxes_) total += box_volume(b);
  return total;
}

Box BoxUnionDomain::bounding_box() const {
  Box out = boxes_.front();
  for (const auto& b : boxes_) {
    for (std::size_t i = 0; i < dim_; ++i) {
      out[i] = Interval(std::min(out[i].lo(), b[i].lo()), std::max(out[i].hi(), b[i].hi()));
    }
  }
  return out;
}

BoxUnionDomain BoxUnionDomain::scaled(const Rational& s) const {
  std::vector<Rational> per(dim_, s);
  return scaled(per);
}

BoxUnionDomain BoxUnionDomain::scaled(std::span<const Rational> per_axis) const {
  if (per_axis.size() != dim_) throw DomainError("scale vector has wrong dimension");
  std::vector<Box> out;
  out.reserve(boxes_.size());
  for (const auto& b : boxes_) {
    Box nb;
    for (std::size_t i = 0; i < dim_; ++i) {
      const Rational& s = per_axis[i];
      if (s == 0) throw DomainError("zero scale factor");
      Rational a = b[i].lo() * s, c = b[i].hi() * s;
      if (s < 0) std::swap(a, c);
      nb.emplace_back(a, c);
    }
    out.push_back(std::move(nb));
  }
  return BoxUnionDomain(dim_, std::move(out));
}

BoxUnionDomain BoxUnionDomain::translated(std::span<const Rational> shift) const {
  if (shift.size() != dim_) throw DomainError("shift vector has wrong dimension");
  std::vector<Box> out;
  for (const auto& b : boxes_) {
    Box nb;
    for (std::size_t i = 0; i < dim_; ++i) nb.emplace_back(b[i].lo() + shift[i], b[i].hi() + shift[i]);
    out.push_back(std::move(nb));
  }
  return BoxUnionDomain(dim_, std::move(out));
}

std::vector<Interval> BoxUnionDomain::merged_intervals() const {
  if (dim_ != 1) throw DomainError("merged_intervals requires a one-dimensional domain");
  std::vector<Interval> parts;
  for (const auto& b : boxes_) parts.push_back(b[0]);
  std::sort(parts.begin(), parts.end(),
            [](const Interval& a, const Interval& b) { return a.lo() < b.lo(); });
  std::vector<Interval> merged;
  for (const auto& p : parts) {
    if (!merged.empty() && merged.back().hi() == p.lo()) {
      merged.back() = Interval(merged.back().lo(), p.hi());
    } else {
      merged.push_back(p);
    }
  }
  return merged;
}

std::optional<std::vector<BoxUnionDomain>> BoxUnionDomain::product_factors() const {
  std::vector<std::vector<Interval>> axis(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (const auto& b : boxes_) {
      if (std::find(axis[i].begin(), axis[i].end(), b[i]) == axis[i].end()) axis[i].push_back(b[i]);
    }
  }
  std::size_t combos = 1;
  for (const auto& a : axis) combos *= a.size();
  if (combos != boxes_.size()) return std::nullopt;
  // Every box is a distinct combination, so equal counts mean the list is the full product.
  std::vector<BoxUnionDomain> factors;
  for (auto& a : axis) {
    for (std::size_t p = 0; p < a.size(); ++p) {
      for (std::size_t q = p + 1; q < a.size(); ++q) {
        if (a[p].overlaps(a[q])) return std::nullopt;
      }
    }
    factors.push_back(BoxUnionDomain::intervals(a));
  }
  return factors;
}

bool BoxUnionDomain::contains(std::span<const double> x) const {
  for (const auto& b : boxes_) {
    bool inside = true;
    for (std::size_t i = 0; i < dim_ && inside; ++i) {
      inside = to_double(b[i].lo()) <= x[i] && x[i] < to_double(b[i].hi());
    }
    if (inside) return true;
  }
  return false;
}

bool BoxUnionDomain::operator==(const BoxUnionDomain& other) const {
  return dim_ == other.dim_ && boxes_ == other.boxes_;
}

Rational measure(const BoxUnionDomain& dom) { return dom.measure(); }

NormalizedDomain normalize_to_unit_measure(const BoxUnionDomain& dom) {
  Rational m = dom.measure();
  if (m <= 0) throw DomainError("cannot normalize a domain of zero measure");
  const std::size_t d = dom.dim();
  if (auto root = rational_root(m, d)) {
    Rational s = 1 / *root;
    s.canonicalize();
    std::vector<Rational> per(d, s);
    return {dom.scaled(per), per, true};
  }
  std::vector<Rational> per(d, Rational(1));
  per[0] = 1 / m;
  per[0].canonicalize();
  return {dom.scaled(per), per, d == 1};
}

BoxUnionDomain product(const BoxUnionDomain& a, const BoxUnionDomain& b) {
  std::vector<Box> boxes;
  boxes.reserve(a.box_count() * b.box_count());
  for (const auto& ba : a.boxes()) {
    for (const auto& bb : b.boxes()) {
      Box p = ba;
      p.insert(p.end(), bb.begin(), bb.end());
      boxes.push_back(std::move(p));
    }
  }
  return BoxUnionDomain(a.dim() + b.dim(), std::move(boxes));
}

ProductDomain::ProductDomain(BoxUnionDomain left, BoxUnionDomain right)
    : left_(std::move(left)), right_(std::move(right)), combined_(product(left_, right_)) {}

std::string describe(const BoxUnionDomain& dom) {
  std::ostringstream os;
  for (std::size_t k = 0; k < dom.boxes().size(); ++k) {
    if (k) os << " u ";
    const auto& b = dom.boxes()[k];
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (i) os << "x";
      os << "[" << to_string(b[i].lo()) << "," << to_string(b[i].hi()) << "]";
    }
  }
  return os.str();
}

}  // namespace spectile
