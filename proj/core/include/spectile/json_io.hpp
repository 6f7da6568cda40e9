#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <variant>

#include <json.hpp>

#include "spectile/domains.hpp"
#include "spectile/fourier.hpp"
#include "spectile/packing_to_tiling.hpp"
#include "spectile/pointsets.hpp"
#include "spectile/products.hpp"
#include "spectile/spectra.hpp"
#include "spectile/summable.hpp"

namespace spectile {

using Json = nlohmann::ordered_json;

/// Malformed input. `path` names the offending field, e.g. "domain.boxes[1][0]".
class JsonError : public std::runtime_error {
 public:
  JsonError(std::string path, const std::string& message);
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

using PointSet = std::variant<FinitePointSet, PeriodicPointSet>;

/// Rationals are written as "p/q" strings. Input may also be an integer, a
/// JSON number, or a decimal string, each converted exactly.
Json to_json(const Rational& q);
Rational rational_from_json(const Json& j, const std::string& path);

/// Non-finite values become the strings "inf", "-inf" and "nan".
Json number(double x);
double number_from_json(const Json& j, const std::string& path);

/// {"dim": d, "boxes": [[[lo, hi], ...], ...]}; a one-dimensional domain may
/// instead be given as {"intervals": [[lo, hi], ...]}.
Json to_json(const BoxUnionDomain& dom);
BoxUnionDomain domain_from_json(const Json& j, const std::string& path = "domain");

/// {"kind": "finite", "dim": d, "points": [[...], ...], "multiplicity": [...]}
/// or {"kind": "periodic", "basis": [[row], ...], "offsets": [[...], ...]}.
Json to_json(const FinitePointSet& ps);
Json to_json(const PeriodicPointSet& ps);
Json to_json(const PointSet& ps);
PointSet pointset_from_json(const Json& j, const std::string& path = "lambda");
PeriodicPointSet periodic_from_json(const Json& j, const std::string& path = "lambda");

/// {"kind": "indicator" | "power", "domain": {...}, "scale": s}. For "power"
/// the scale defaults to 1/|domain|.
Json to_json(const LatticeSummable& f);
std::shared_ptr<const LatticeSummable> function_from_json(const Json& j, const std::string& path = "function");

Json to_json(const Vec& v);
Json to_json(const Verdict& v);
Json to_json(const ZeroSet1D& z);
Json to_json(const WindowRegion& D);
WindowRegion window_from_json(const Json& j, const std::string& path = "D");
Json to_json(const RegionBound& b);
Json to_json(const ProjectedSet& p);
Json to_json(const SweepResult& s);
Json to_json(const FactorExtraction& f);
Json to_json(const ClassificationVerdict& c);
Json to_json(const ProductSpectrum& p);
Json to_json(const AssumptionProfile& a);
Json to_json(const ExtractionResult& r);

}  // namespace spectile
