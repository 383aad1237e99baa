#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "bvgraph/diagnostics.hpp"

namespace bvg {

using json = nlohmann::ordered_json;

/// Malformed or inconsistent input files.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Integers and "p/q" / decimal strings are exact; JSON floats are not.
Real real_from_json(const json& j);
/// Exact integers as integers, other exact values as "p/q", floats as floats.
json real_to_json(const Real& x);

json load_json_file(const std::string& path);
json parse_json_text(const std::string& text, const std::string& origin);

MetricGraph graph_from_json(const json& j);
json graph_to_json(const MetricGraph& g);

PLFunction function_from_json(const MetricGraph& g, const json& j);
json function_to_json(const MetricGraph& g, const PLFunction& f);

EdgeSubset subset_from_json(const MetricGraph& g, const json& j);
json subset_to_json(const MetricGraph& g, const EdgeSubset& s);

/// "v:ID" or "e:ID:t" (t exact when written as an integer, p/q or decimal).
PointRef parse_point(const std::string& s);
json point_to_json(const PointRef& p);

json to_json(const ArcGadget& gad, const ArcSystem& sys);
json to_json(const TvBracket& b);
json to_json(const CoareaSweep& c);
json to_json(const PerimeterBound& p);
json to_json(const CurveBoundary& c);
json to_json(const DensityProfile& d);
json to_json(const DoublingScan& d);
json to_json(const PoincareResult& p);
json to_json(const MtbScan& m);
json to_json(const Codim1Content& c);
json to_json(const FedererReport& r);

}  // namespace bvg
