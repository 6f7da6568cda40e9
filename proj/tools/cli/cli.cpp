#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <sstream>

#include "spectile/json_io.hpp"

namespace spectile::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double env_positive(const char* name, double fallback) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return fallback;
  char* end = nullptr;
  double v = std::strtod(raw, &end);
  if (end == raw || *end != '\0' || !(v > 0)) {
    throw UsageError(std::string(name) + " must be a positive number, got \"" + raw + "\"");
  }
  return v;
}

Json load_json(const std::string& arg, const std::string& field) {
  std::string text;
  auto first = arg.find_first_not_of(" \t\n");
  if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) {
    text = arg;
  } else {
    std::ifstream in(arg);
    if (!in) throw JsonError(field, "cannot read \"" + arg + "\"");
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw JsonError(field, std::string("invalid JSON: ") + e.what());
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

Vec parse_vector(const std::string& s, const std::string& field) {
  Vec out;
  for (const auto& part : split(s, ',')) {
    try {
      out.push_back(to_double(parse_rational(part)));
    } catch (const std::invalid_argument& e) {
      throw JsonError(field, e.what());
    }
  }
  if (out.empty()) throw JsonError(field, "expected a comma-separated list of numbers");
  return out;
}

Interval parse_interval(const std::string& s, const std::string& field) {
  auto parts = split(s, ',');
  if (parts.size() != 2) throw JsonError(field, "expected lo,hi");
  try {
    Rational lo = parse_rational(parts[0]), hi = parse_rational(parts[1]);
    if (!(lo < hi)) throw JsonError(field, "interval needs lo < hi");
    return Interval(lo, hi);
  } catch (const std::invalid_argument& e) {
    throw JsonError(field, e.what());
  }
}

int exit_for(Status s) {
  switch (s) {
    case Status::holds: return exit_holds;
    case Status::fails: return exit_fails;
    case Status::inconclusive: return exit_inconclusive;
  }
  return exit_inconclusive;
}

Json config_json(const RunConfig& cfg) {
  return Json{{"grid_step", number(cfg.grid_step)},
              {"zero_tol", number(cfg.zero_tol)},
              {"tail_target", number(cfg.tail_target)},
              {"seed", cfg.seed}};
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw UsageError("cannot write \"" + path + "\"");
  f << text;
}

std::string csv_number(double x) {
  std::ostringstream s;
  s.precision(17);
  s << x;
  return s.str();
}

GridOptions grid_options(const RunConfig& cfg) {
  GridOptions g;
  g.grid_step = cfg.grid_step;
  g.tail_target = cfg.tail_target;
  return g;
}

OrthogonalityOptions orth_options(const RunConfig& cfg) {
  OrthogonalityOptions o;
  o.zero_tol = cfg.zero_tol;
  return o;
}

struct Args {
  std::string domain, lambda, function, omega, window, family = "stretched", format = "csv";
  std::string interval_i, interval_j, a_domain, a_lambda, b_domain, b_lambda;
  std::vector<std::string> points;
  double range = 10, level = 0, tolerance = 1e-6, scale = 2.0, side = 5.0, tol = 1e-5, sweep_step = 1e-3;
  double window_side = 0;
  long n0 = 10, n1 = 200;
};

struct Outcome {
  Outcome(Json r, int c = exit_holds, std::string data = {})
      : result(std::move(r)), code(c), csv(std::move(data)) {}

  Json result;
  int code;
  std::string csv;
};

std::string samples_csv(const std::vector<Sample>& samples, std::size_t dim) {
  std::ostringstream s;
  for (std::size_t i = 0; i < dim; ++i) s << "x" << i << ",";
  s << "value\n";
  for (const auto& p : samples) {
    for (double c : p.x) s << csv_number(c) << ",";
    s << csv_number(p.value) << "\n";
  }
  return s.str();
}

std::string points_csv(const FinitePointSet& ps) {
  std::ostringstream s;
  for (std::size_t i = 0; i < ps.dim(); ++i) s << "x" << i << ",";
  s << "multiplicity\n";
  for (std::size_t i = 0; i < ps.size(); ++i) {
    for (double c : ps.point(i)) s << csv_number(c) << ",";
    s << ps.multiplicity(i) << "\n";
  }
  return s.str();
}

std::string zeros_csv(const ZeroSet1D& z) {
  std::ostringstream s;
  s << "x,kind,modulus,exact\n";
  for (const auto& p : z.zeros) {
    s << csv_number(p.x) << "," << to_string(p.kind) << "," << csv_number(p.modulus) << ","
      << (p.exact ? to_string(*p.exact) : "") << "\n";
  }
  return s.str();
}

double default_level(const LatticeSummable& f, const PeriodicPointSet& lam, double requested) {
  if (requested > 0) return requested;
  return f.integral() * density(lam);
}

Outcome cmd_ft(const Args& a, const RunConfig&) {
  BoxUnionDomain dom = domain_from_json(load_json(a.domain, "domain"));
  TransformProfile prof(dom);
  Json values = Json::array();
  std::ostringstream csv;
  for (std::size_t i = 0; i < dom.dim(); ++i) csv << "x" << i << ",";
  csv << "re,im,power\n";
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    std::string field = "x[" + std::to_string(i) + "]";
    Vec x = parse_vector(a.points[i], field);
    if (x.size() != dom.dim()) throw JsonError(field, "point dimension does not match the domain");
    Complex v = prof.value(x);
    values.push_back(Json{{"x", to_json(x)},
                          {"re", number(v.real())},
                          {"im", number(v.imag())},
                          {"power", number(std::norm(v))}});
    for (double c : x) csv << csv_number(c) << ",";
    csv << csv_number(v.real()) << "," << csv_number(v.imag()) << "," << csv_number(std::norm(v)) << "\n";
  }
  return {Json{{"domain", to_json(dom)}, {"values", std::move(values)}}, exit_holds, csv.str()};
}

Outcome cmd_zeros(const Args& a, const RunConfig& cfg) {
  BoxUnionDomain dom = domain_from_json(load_json(a.domain, "domain"));
  ZeroScanOptions opt;
  opt.zero_tol = cfg.zero_tol;
  ZeroSet1D z = zero_set_1d(dom, a.range, opt);
  return {to_json(z), exit_holds, zeros_csv(z)};
}

Outcome cmd_measure(const Args& a, const RunConfig&) {
  BoxUnionDomain dom = domain_from_json(load_json(a.domain, "domain"));
  NormalizedDomain n = normalize_to_unit_measure(dom);
  Json scales = Json::array();
  for (const auto& s : n.axis_scale) scales.push_back(to_json(s));
  return {Json{{"dim", dom.dim()},
               {"measure", to_json(dom.measure())},
               {"normalized", Json{{"domain", to_json(n.domain)},
                                   {"axis_scale", std::move(scales)},
                                   {"isotropic", n.isotropic}}}}};
}

Outcome cmd_density(const Args& a, const RunConfig&) {
  PointSet ps = pointset_from_json(load_json(a.lambda, "lambda"));
  if (auto* p = std::get_if<PeriodicPointSet>(&ps)) {
    return {Json{{"kind", "periodic"},
                 {"density", number(density(*p))},
                 {"covolume", number(p->covolume())},
                 {"offsets", p->offset_count()},
                 {"separation", number(separation(*p).delta0)}}};
  }
  const auto& f = std::get<FinitePointSet>(ps);
  Json out{{"kind", "finite"},
           {"points", f.size()},
           {"total_count", f.total_count()},
           {"separation", number(separation(f).delta0)}};
  if (a.window_side > 0) {
    std::vector<Window> w{Window{Vec(f.dim(), 0.0), a.window_side}};
    out["window_side"] = number(a.window_side);
    out["window_density"] = number(upper_density_estimate(f, w));
  }
  return {std::move(out)};
}

Outcome cmd_check_orth(const Args& a, const RunConfig& cfg) {
  BoxUnionDomain dom = domain_from_json(load_json(a.domain, "domain"));
  PointSet ps = pointset_from_json(load_json(a.lambda, "lambda"));
  Verdict v = std::visit([&](const auto& s) { return check_orthogonal(dom, s, orth_options(cfg)); }, ps);
  return {to_json(v), exit_for(v.status)};
}

Outcome cmd_check_sum(const Args& a, const RunConfig& cfg, bool tiling) {
  auto f = function_from_json(load_json(a.function, "function"));
  PeriodicPointSet lam = periodic_from_json(load_json(a.lambda, "lambda"));
  GridOptions g = grid_options(cfg);
  g.tolerance = a.tolerance;
  Level level(default_level(*f, lam, a.level));
  Verdict v = tiling ? check_tiling(*f, lam, level, g) : check_packing(*f, lam, level, g);
  Json out{{"function", to_json(*f)}, {"level", number(level.value())}, {"verdict", to_json(v)}};
  std::string csv = cfg.csv.empty() ? "" : samples_csv(sample_periodic_sum(*f, lam, g), f->dim());
  return {std::move(out), exit_for(v.status), csv};
}

Outcome cmd_check_spectrum(const Args& a, const RunConfig& cfg) {
  BoxUnionDomain dom = domain_from_json(load_json(a.domain, "domain"));
  PeriodicPointSet lam = periodic_from_json(load_json(a.lambda, "lambda"));
  SpectrumOptions opt;
  opt.grid = grid_options(cfg);
  opt.grid.tolerance = a.tolerance;
  opt.orthogonality = orth_options(cfg);
  Verdict v = check_spectrum(dom, lam, opt);
  return {to_json(v), exit_for(v.status)};
}

Outcome cmd_pack_to_tile(const Args& a, const RunConfig& cfg) {
  auto f = function_from_json(load_json(a.function, "function"));
  if (a.n0 < 1 || a.n1 < a.n0) throw UsageError("need 1 <= n0 <= n1");
  std::optional<PackingSequence> seq;
  if (a.family == "stretched") {
    seq.emplace(PackingSequence::stretched_lattice(f, a.n0, a.n1));
  } else if (a.family == "fixed") {
    seq.emplace(PackingSequence::fixed_lattice(f, a.scale, a.n0, a.n1));
  } else {
    throw UsageError("--family must be \"stretched\" or \"fixed\"");
  }
  ExtractionOptions opt;
  opt.packing_grid = grid_options(cfg);
  ExtractionResult r = extract_tiling(*seq, a.side, a.tol, opt);
  Json out{{"function", to_json(*f)}, {"family", seq->description()}, {"side", number(a.side)},
           {"tolerance", number(a.tol)}, {"extraction", to_json(r)}};
  int code = r.rejected ? static_cast<int>(exit_fails) : exit_for(r.status);
  return {std::move(out), code, cfg.csv.empty() ? "" : points_csv(r.limit.limit)};
}

Outcome cmd_two_intervals(const Args& a, const RunConfig&) {
  Interval I = parse_interval(a.interval_i, "I");
  Interval J = parse_interval(a.interval_j, "J");
  std::optional<TwoIntervalSpec> spec;
  try {
    spec.emplace(I, J);
  } catch (const DomainError& e) {
    throw JsonError("I,J", e.what());
  }
  ClassificationVerdict c = classify_two_intervals(*spec);
  int code = c.region.status == Status::inconclusive ? static_cast<int>(exit_inconclusive) : exit_holds;
  return {to_json(c), code};
}

WindowRegion window_argument(const std::string& arg) {
  auto first = arg.find_first_not_of(" \t");
  if (first != std::string::npos && arg[first] != '{') {
    std::vector<Interval> parts;
    auto pieces = split(arg, ';');
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      parts.push_back(parse_interval(pieces[i], "D[" + std::to_string(i) + "]"));
    }
    try {
      return WindowRegion(BoxUnionDomain::intervals(std::move(parts)));
    } catch (const DomainError& e) {
      throw JsonError("D", e.what());
    }
  }
  return window_from_json(load_json(arg, "D"));
}

Outcome cmd_extract_factor(const Args& a, const RunConfig&) {
  Json om = load_json(a.omega, "omega");
  if (!om.is_object() || !om.contains("left") || !om.contains("right")) {
    throw JsonError("omega", "expected {\"left\": domain, \"right\": domain}");
  }
  ProductDomain omega(domain_from_json(om["left"], "omega.left"), domain_from_json(om["right"], "omega.right"));
  PeriodicPointSet lam = periodic_from_json(load_json(a.lambda, "lambda"));
  WindowRegion D = window_argument(a.window);
  FactorExtraction fx = extract_factor_orthogonal_set(omega, lam, D, a.sweep_step);
  std::string csv;
  if (!fx.L.empty()) csv = points_csv(fx.L.truncated(10.0));
  return {to_json(fx), exit_for(fx.verdict.status), csv};
}

Outcome cmd_product(const Args& a, const RunConfig& cfg) {
  SpectralPair pa{domain_from_json(load_json(a.a_domain, "a-domain"), "a-domain"),
                  periodic_from_json(load_json(a.a_lambda, "a-lambda"), "a-lambda")};
  SpectralPair pb{domain_from_json(load_json(a.b_domain, "b-domain"), "b-domain"),
                  periodic_from_json(load_json(a.b_lambda, "b-lambda"), "b-lambda")};
  SpectrumOptions opt;
  opt.grid = grid_options(cfg);
  opt.orthogonality = orth_options(cfg);
  ProductSpectrum p = product_spectrum(pa, pb, opt);
  int code = p.rejected ? static_cast<int>(exit_fails) : exit_for(p.product.status);
  return {to_json(p), code};
}

constexpr const char* footer =
    "Environment:\n"
    "  SPECTILE_GRID_STEP    default grid step (1e-3)\n"
    "  SPECTILE_ZERO_TOL     default zero tolerance on the weighted modulus (1e-9)\n"
    "  SPECTILE_TAIL_TARGET  default tail target for truncated sums (1e-8)\n"
    "Exit codes: 0 holds, 1 fails, 2 inconclusive, 64 usage error, 65 malformed input.";

}  // namespace

RunConfig RunConfig::from_environment() {
  RunConfig cfg;
  cfg.grid_step = env_positive("SPECTILE_GRID_STEP", cfg.grid_step);
  cfg.zero_tol = env_positive("SPECTILE_ZERO_TOL", cfg.zero_tol);
  cfg.tail_target = env_positive("SPECTILE_TAIL_TARGET", cfg.tail_target);
  return cfg;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = RunConfig::from_environment();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  }
  Args a;

  CLI::App app{"Verification toolkit for spectral sets, tilings and packings", "spectile"};
  app.footer(footer);
  app.require_subcommand(1);
  app.fallthrough();
  app.option_defaults()->always_capture_default();
  app.add_option("--grid-step", cfg.grid_step, "Grid step for packing and tiling checks")->check(CLI::PositiveNumber);
  app.add_option("--zero-tol", cfg.zero_tol, "Zero tolerance on the weighted modulus")->check(CLI::PositiveNumber);
  app.add_option("--tail-target", cfg.tail_target, "Tail target for truncated sums")->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "Seed recorded in the report");
  app.add_option("--output,-o", cfg.output, "Write the report here instead of stdout");
  app.add_option("--csv", cfg.csv, "Write grid or point data as CSV");

  std::map<std::string, std::function<Outcome()>> handlers;
  auto sub = [&](const char* name, const char* help, std::function<Outcome()> fn) {
    handlers[name] = std::move(fn);
    return app.add_subcommand(name, help);
  };

  auto* ft = sub("ft", "Fourier transform of an indicator", [&] { return cmd_ft(a, cfg); });
  ft->add_option("--domain", a.domain, "Domain JSON (file or inline)")->required();
  ft->add_option("--x", a.points, "Evaluation point x1,x2,...; repeatable")->required();

  auto* zeros = sub("zeros", "Zeros of the transform of a 1-d domain", [&] { return cmd_zeros(a, cfg); });
  zeros->add_option("--domain", a.domain, "Domain JSON")->required();
  zeros->add_option("--range", a.range, "Scan the open range (-X, X)")->check(CLI::PositiveNumber);
  zeros->add_option("--format", a.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  auto* meas = sub("measure", "Measure and unit normalization", [&] { return cmd_measure(a, cfg); });
  meas->add_option("--domain", a.domain, "Domain JSON")->required();

  auto* dens = sub("density", "Density and separation of a point set", [&] { return cmd_density(a, cfg); });
  dens->add_option("--lambda", a.lambda, "Point-set JSON")->required();
  dens->add_option("--side", a.window_side, "Window side for finite sets")->check(CLI::PositiveNumber);

  auto* orth = sub("check-orth", "Orthogonality of exponentials", [&] { return cmd_check_orth(a, cfg); });
  orth->add_option("--domain", a.domain, "Domain JSON")->required();
  orth->add_option("--lambda", a.lambda, "Point-set JSON")->required();

  for (bool tiling : {false, true}) {
    auto* c = sub(tiling ? "check-tiling" : "check-packing", tiling ? "Tiling check" : "Packing check",
                  [&, tiling] { return cmd_check_sum(a, cfg, tiling); });
    c->add_option("--function", a.function, "Function JSON")->required();
    c->add_option("--lambda", a.lambda, "Periodic point-set JSON")->required();
    c->add_option("--level", a.level, "Level; default integral times density")->check(CLI::PositiveNumber);
    c->add_option("--tolerance", a.tolerance, "Tolerance on the sup error")->check(CLI::PositiveNumber);
  }

  auto* spec = sub("check-spectrum", "Spectrum check", [&] { return cmd_check_spectrum(a, cfg); });
  spec->add_option("--domain", a.domain, "Domain JSON")->required();
  spec->add_option("--lambda", a.lambda, "Periodic point-set JSON")->required();
  spec->add_option("--tolerance", a.tolerance, "Tolerance on the sup error")->check(CLI::PositiveNumber);

  auto* ptt = sub("pack-to-tile", "Tiling from a sequence of packings", [&] { return cmd_pack_to_tile(a, cfg); });
  ptt->add_option("--function", a.function, "Function JSON")->required();
  ptt->add_option("--family", a.family, "stretched: (1+1/n)Z^d, fixed: scale*Z^d");
  ptt->add_option("--scale", a.scale, "Lattice scale for the fixed family")->check(CLI::PositiveNumber);
  ptt->add_option("--n0", a.n0, "First index");
  ptt->add_option("--n1", a.n1, "Last index");
  ptt->add_option("--side", a.side, "Side of the cube on which the limit is checked")->check(CLI::PositiveNumber);
  ptt->add_option("--tol", a.tol, "Tiling tolerance")->check(CLI::PositiveNumber);

  auto* two = sub("two-intervals", "Classify a union of two intervals", [&] { return cmd_two_intervals(a, cfg); });
  two->add_option("--I", a.interval_i, "First interval lo,hi")->required();
  two->add_option("--J", a.interval_j, "Second interval lo,hi")->required();

  auto* ext = sub("extract-factor", "Orthogonal set of the right factor", [&] { return cmd_extract_factor(a, cfg); });
  ext->add_option("--omega", a.omega, "{\"left\": domain, \"right\": domain}")->required();
  ext->add_option("--lambda", a.lambda, "Periodic point-set JSON")->required();
  ext->add_option("--D", a.window, "Window region: lo,hi[;lo,hi...] or domain JSON")->required();
  ext->add_option("--sweep-step", a.sweep_step, "Sweep resolution")->check(CLI::PositiveNumber);

  auto* prod = sub("product", "Product of two spectral pairs", [&] { return cmd_product(a, cfg); });
  prod->add_option("--a-domain", a.a_domain, "First domain")->required();
  prod->add_option("--a-lambda", a.a_lambda, "First spectrum")->required();
  prod->add_option("--b-domain", a.b_domain, "Second domain")->required();
  prod->add_option("--b-lambda", a.b_lambda, "Second spectrum")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_holds;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_holds;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  }

  for (auto* s : app.get_subcommands()) cfg.subcommand = s->get_name();

  try {
    Outcome o = handlers.at(cfg.subcommand)();
    if (cfg.subcommand == "zeros" && a.format == "csv") {
      write_text(cfg.output, o.csv, out);
    } else {
      Json report{{"command", cfg.subcommand}, {"config", config_json(cfg)}, {"result", std::move(o.result)}};
      write_text(cfg.output, report.dump(2) + "\n", out);
    }
    if (!cfg.csv.empty() && !o.csv.empty()) write_text(cfg.csv, o.csv, out);
    return o.code;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const JsonError& e) {
    err << "error: " << e.what() << "\n";
    return exit_data;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return exit_data;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_inconclusive;
  }
}

}  // namespace spectile::cli
