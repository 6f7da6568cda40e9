#include "spectile/json_io.hpp"

#include <cmath>
#include <limits>

namespace spectile {

JsonError::JsonError(std::string path, const std::string& message)
    : std::runtime_error(path + ": " + message), path_(std::move(path)) {}

namespace {

std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }
std::string at(const std::string& path, const char* key) { return path + "." + key; }

const Json& field(const Json& j, const std::string& path, const char* key) {
  if (!j.is_object()) throw JsonError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw JsonError(at(path, key), "missing field");
  return *it;
}

const Json& array(const Json& j, const std::string& path) {
  if (!j.is_array()) throw JsonError(path, "expected an array");
  return j;
}

Vec vec_from_json(const Json& j, const std::string& path, std::size_t expected = 0) {
  array(j, path);
  if (expected != 0 && j.size() != expected) {
    throw JsonError(path, "expected " + std::to_string(expected) + " coordinates, got " + std::to_string(j.size()));
  }
  Vec out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number_from_json(j[i], at(path, i)));
  return out;
}

Json opt(const std::optional<Vec>& v) { return v ? to_json(*v) : Json(nullptr); }

Json answer(Answer a) { return to_string(a); }

}  // namespace

Json to_json(const Rational& q) { return to_string(q); }

Rational rational_from_json(const Json& j, const std::string& path) {
  try {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.dump());
    if (j.is_number_float()) return parse_rational(j.dump());
  } catch (const std::invalid_argument& e) {
    throw JsonError(path, e.what());
  }
  throw JsonError(path, "expected a rational number");
}

Json number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

double number_from_json(const Json& j, const std::string& path) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    try {
      return to_double(parse_rational(s));
    } catch (const std::invalid_argument& e) {
      throw JsonError(path, e.what());
    }
  }
  throw JsonError(path, "expected a number");
}

Json to_json(const BoxUnionDomain& dom) {
  Json boxes = Json::array();
  for (const auto& b : dom.boxes()) {
    Json box = Json::array();
    for (const auto& iv : b) box.push_back(Json::array({to_json(iv.lo()), to_json(iv.hi())}));
    boxes.push_back(std::move(box));
  }
  return Json{{"dim", dom.dim()}, {"boxes", std::move(boxes)}};
}

BoxUnionDomain domain_from_json(const Json& j, const std::string& path) {
  if (!j.is_object()) throw JsonError(path, "expected an object");
  auto interval_at = [](const Json& pair, const std::string& p) {
    array(pair, p);
    if (pair.size() != 2) throw JsonError(p, "expected [lo, hi]");
    Rational lo = rational_from_json(pair[0], at(p, std::size_t{0}));
    Rational hi = rational_from_json(pair[1], at(p, std::size_t{1}));
    if (!(lo < hi)) throw JsonError(p, "interval needs lo < hi");
    return Interval(lo, hi);
  };
  try {
    if (j.contains("intervals")) {
      std::string p = at(path, "intervals");
      const Json& list = array(j["intervals"], p);
      if (list.empty()) throw JsonError(p, "domain needs at least one interval");
      std::vector<Interval> parts;
      for (std::size_t i = 0; i < list.size(); ++i) parts.push_back(interval_at(list[i], at(p, i)));
      return BoxUnionDomain::intervals(std::move(parts));
    }
    const Json& dj = field(j, path, "dim");
    if (!dj.is_number_unsigned() || dj.get<std::size_t>() == 0) {
      throw JsonError(at(path, "dim"), "expected a positive integer");
    }
    auto dim = dj.get<std::size_t>();
    std::string p = at(path, "boxes");
    const Json& list = array(field(j, path, "boxes"), p);
    if (list.empty()) throw JsonError(p, "domain needs at least one box");
    std::vector<Box> boxes;
    for (std::size_t i = 0; i < list.size(); ++i) {
      std::string bp = at(p, i);
      array(list[i], bp);
      if (list[i].size() != dim) throw JsonError(bp, "box has " + std::to_string(list[i].size()) + " sides");
      Box b;
      for (std::size_t k = 0; k < dim; ++k) b.push_back(interval_at(list[i][k], at(bp, k)));
      boxes.push_back(std::move(b));
    }
    return BoxUnionDomain(dim, std::move(boxes));
  } catch (const DomainError& e) {
    throw JsonError(path, e.what());
  }
}

Json to_json(const Vec& v) {
  Json out = Json::array();
  for (double x : v) out.push_back(number(x));
  return out;
}

Json to_json(const FinitePointSet& ps) {
  Json pts = Json::array();
  bool plain = true;
  Json mult = Json::array();
  for (std::size_t i = 0; i < ps.size(); ++i) {
    auto p = ps.point(i);
    pts.push_back(to_json(Vec(p.begin(), p.end())));
    mult.push_back(ps.multiplicity(i));
    plain = plain && ps.multiplicity(i) == 1;
  }
  Json out{{"kind", "finite"}, {"dim", ps.dim()}, {"points", std::move(pts)}};
  if (!plain) out["multiplicity"] = std::move(mult);
  return out;
}

Json to_json(const PeriodicPointSet& ps) {
  Json basis = Json::array();
  for (Eigen::Index r = 0; r < ps.basis().rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < ps.basis().cols(); ++c) row.push_back(number(ps.basis()(r, c)));
    basis.push_back(std::move(row));
  }
  Json offs = Json::array();
  for (const auto& o : ps.offsets()) offs.push_back(to_json(o));
  return Json{{"kind", "periodic"}, {"basis", std::move(basis)}, {"offsets", std::move(offs)}};
}

Json to_json(const PointSet& ps) {
  return std::visit([](const auto& s) { return to_json(s); }, ps);
}

PeriodicPointSet periodic_from_json(const Json& j, const std::string& path) {
  std::string bp = at(path, "basis");
  const Json& basis = array(field(j, path, "basis"), bp);
  const std::size_t d = basis.size();
  if (d == 0) throw JsonError(bp, "basis must be nonempty");
  Matrix B(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t r = 0; r < d; ++r) {
    Vec row = vec_from_json(basis[r], at(bp, r), d);
    for (std::size_t c = 0; c < d; ++c) B(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = row[c];
  }
  std::vector<Vec> offsets;
  if (j.contains("offsets")) {
    std::string op = at(path, "offsets");
    const Json& list = array(j["offsets"], op);
    for (std::size_t i = 0; i < list.size(); ++i) offsets.push_back(vec_from_json(list[i], at(op, i), d));
  } else {
    offsets.push_back(Vec(d, 0.0));
  }
  try {
    return PeriodicPointSet(std::move(B), std::move(offsets));
  } catch (const PointSetError& e) {
    throw JsonError(path, e.what());
  }
}

PointSet pointset_from_json(const Json& j, const std::string& path) {
  const Json& kind = field(j, path, "kind");
  if (kind == "periodic") return periodic_from_json(j, path);
  if (kind != "finite") throw JsonError(at(path, "kind"), "expected \"finite\" or \"periodic\"");
  const Json& dj = field(j, path, "dim");
  if (!dj.is_number_unsigned() || dj.get<std::size_t>() == 0) {
    throw JsonError(at(path, "dim"), "expected a positive integer");
  }
  auto d = dj.get<std::size_t>();
  std::string pp = at(path, "points");
  const Json& list = array(field(j, path, "points"), pp);
  std::vector<double> coords;
  for (std::size_t i = 0; i < list.size(); ++i) {
    Vec p = vec_from_json(list[i], at(pp, i), d);
    coords.insert(coords.end(), p.begin(), p.end());
  }
  std::vector<std::uint64_t> mult;
  if (j.contains("multiplicity")) {
    std::string mp = at(path, "multiplicity");
    const Json& m = array(j["multiplicity"], mp);
    if (m.size() != list.size()) throw JsonError(mp, "needs one entry per point");
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (!m[i].is_number_unsigned() || m[i].get<std::uint64_t>() == 0) {
        throw JsonError(at(mp, i), "expected a positive integer");
      }
      mult.push_back(m[i].get<std::uint64_t>());
    }
  }
  try {
    return FinitePointSet(d, std::move(coords), std::move(mult));
  } catch (const PointSetError& e) {
    throw JsonError(path, e.what());
  }
}

Json to_json(const LatticeSummable& f) {
  return Json{{"kind", f.kind()}, {"domain", to_json(f.domain())}, {"scale", number(f.scale())}};
}

std::shared_ptr<const LatticeSummable> function_from_json(const Json& j, const std::string& path) {
  const Json& kind = field(j, path, "kind");
  BoxUnionDomain dom = domain_from_json(field(j, path, "domain"), at(path, "domain"));
  std::optional<double> scale;
  if (j.contains("scale")) {
    scale = number_from_json(j["scale"], at(path, "scale"));
    if (!(*scale > 0) || !std::isfinite(*scale)) throw JsonError(at(path, "scale"), "scale must be positive");
  }
  if (kind == "indicator") return std::make_shared<IndicatorFunction>(std::move(dom), scale.value_or(1.0));
  if (kind == "power") {
    double s = scale.value_or(1.0 / to_double(dom.measure()));
    return std::make_shared<PowerSpectrum>(std::move(dom), s);
  }
  throw JsonError(at(path, "kind"), "expected \"indicator\" or \"power\"");
}

Json to_json(const Verdict& v) {
  return Json{{"status", to_string(v.status)},
              {"route", v.route},
              {"sup_error", number(v.sup_error)},
              {"tolerance", number(v.tolerance)},
              {"tail_bound", number(v.tail_bound_used)},
              {"grid_allowance", number(v.grid_allowance)},
              {"truncation_radius", number(v.truncation_radius)},
              {"evaluations", v.evaluations},
              {"grid_only", v.grid_only},
              {"witness", opt(v.witness)},
              {"reason", v.reason}};
}

Json to_json(const ZeroSet1D& z) {
  Json gens = Json::array();
  for (const auto& g : z.generators) {
    gens.push_back(Json{{"start", to_json(g.start)}, {"step", to_json(g.step)}, {"excludes_zero", g.excludes_zero}});
  }
  Json zeros = Json::array();
  for (const auto& p : z.zeros) {
    zeros.push_back(Json{{"x", number(p.x)},
                         {"kind", to_string(p.kind)},
                         {"modulus", number(p.modulus)},
                         {"exact", p.exact ? to_json(*p.exact) : Json(nullptr)}});
  }
  Json out{{"kind", to_string(z.kind)}, {"range", number(z.range)}, {"merged", z.merged},
           {"generators", std::move(gens)}, {"zeros", std::move(zeros)}};
  out["no_zero_below_unit"] = z.no_zero_below_unit ? Json(*z.no_zero_below_unit) : Json(nullptr);
  return out;
}

Json to_json(const WindowRegion& D) {
  Json out{{"set", to_json(D.set())}, {"difference_set", to_json(D.difference_set())},
           {"measure", to_json(D.measure())}};
  return out;
}

WindowRegion window_from_json(const Json& j, const std::string& path) {
  const Json& body = j.is_object() && j.contains("set") ? j["set"] : j;
  std::string p = j.is_object() && j.contains("set") ? at(path, "set") : path;
  try {
    return WindowRegion(domain_from_json(body, p));
  } catch (const DomainError& e) {
    throw JsonError(p, e.what());
  }
}

Json to_json(const RegionBound& b) {
  return Json{{"verdict", to_json(b.verdict)},  {"tight", b.tight},
              {"obstruction", b.obstruction},   {"region_measure", to_json(b.region_measure)},
              {"bound", number(b.bound)}};
}

Json to_json(const ProjectedSet& p) {
  Json out;
  if (p.empty()) {
    out = Json{{"kind", "empty"}, {"dim", p.dim()}};
  } else {
    out = to_json(p.as_periodic());
  }
  Json mult = Json::array();
  for (auto m : p.multiplicity) mult.push_back(m);
  out["multiplicity"] = std::move(mult);
  out["density"] = number(p.density());
  return out;
}

Json to_json(const SweepResult& s) {
  return Json{{"a", number(s.a)},           {"alpha", number(s.alpha)}, {"mean", number(s.mean)},
              {"period", number(s.period)}, {"evaluations", s.evaluations}};
}

Json to_json(const FactorExtraction& f) {
  return Json{{"L", to_json(f.L)},
              {"sweep", to_json(f.sweep)},
              {"contradiction", f.contradiction},
              {"lambda_orthogonal", to_json(f.lam_orthogonal)},
              {"region", to_json(f.region)},
              {"verdict", to_json(f.verdict)}};
}

Json to_json(const ClassificationVerdict& c) {
  Json out{{"case", to_string(c.kind)},
           {"D_used", to_json(c.D_used)},
           {"D_measure", to_json(c.D_measure)},
           {"a_spectral", answer(c.a_spectral)},
           {"product_spectral_possible", answer(c.product_spectral_possible)},
           {"b_spectral_implied", answer(c.b_spectral_implied)},
           {"tiling_witness", c.tiling_witness ? to_json(*c.tiling_witness) : Json(nullptr)},
           {"spectrum", c.spectrum ? to_json(*c.spectrum) : Json(nullptr)},
           {"chi_hat_one_zero", c.chi_hat_one_zero ? Json(*c.chi_hat_one_zero) : Json(nullptr)},
           {"a_verdict_computed", c.a_verdict_computed},
           {"region", to_json(c.region)},
           {"bound", to_json(c.bound)},
           {"note", c.note}};
  return out;
}

Json to_json(const ProductSpectrum& p) {
  Json out{{"rejected", p.rejected}, {"reason", p.reason}};
  out["domain"] = p.domain ? to_json(p.domain->combined()) : Json(nullptr);
  out["spectrum"] = p.spectrum ? to_json(*p.spectrum) : Json(nullptr);
  out["factor_a"] = to_json(p.factor_a);
  out["factor_b"] = to_json(p.factor_b);
  out["product"] = p.rejected ? Json(nullptr) : to_json(p.product);
  return out;
}

Json to_json(const AssumptionProfile& a) {
  return Json{{"status", to_string(a.status)},
              {"integral", number(a.integral)},
              {"mass_above_half", number(a.mass_above_half)},
              {"delta0", number(a.delta0)},
              {"min_value", number(a.min_value)},
              {"witness", opt(a.witness)},
              {"reason", a.reason}};
}

Json to_json(const ExtractionResult& r) {
  Json members = Json::array();
  for (const auto& m : r.members) {
    members.push_back(Json{{"n", m.n},
                           {"density", number(m.density)},
                           {"packing_excess", number(m.packing_excess)},
                           {"packing_status", to_string(m.packing_status)},
                           {"shift", to_json(m.shift)},
                           {"window_deficit", number(m.window_deficit)}});
  }
  Json adm{{"delta0", number(r.admissibility.delta0)},
           {"densities_nondecreasing", r.admissibility.densities_nondecreasing}};
  Json out{{"status", to_string(r.status)},
           {"rejected", r.rejected},
           {"reason", r.reason},
           {"assumptions", to_json(r.assumptions)},
           {"admissibility", std::move(adm)},
           {"members", std::move(members)},
           {"limit_size", r.limit.limit.size()},
           {"limit_unstable", r.limit.unstable.size()},
           {"limit_residual", number(r.limit.max_residual)},
           {"known_radius", number(r.known_radius)},
           {"anchor", to_json(r.anchor)},
           {"tiling", to_json(r.tiling)},
           {"packing", to_json(r.packing)}};
  return out;
}

}  // namespace spectile
