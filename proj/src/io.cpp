#include "bvgraph/io.hpp"

#include <fstream>
#include <sstream>

namespace bvg {

Real real_from_json(const json& j) {
  try {
    if (j.is_number_integer()) {
      if (j.is_number_unsigned()) return Real(j.get<unsigned long>());
      return Real(j.get<long long>());
    }
    if (j.is_number_float()) return Real::inexact(j.get<double>());
    if (j.is_string()) return Real::parse(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("bad number: ") + e.what());
  }
  throw InputError("expected a number, got " + j.dump());
}

json real_to_json(const Real& x) {
  if (!x.is_exact()) return x.to_double();
  const mpq_class& q = x.rational();
  if (q.get_den() == 1 && q.get_num().fits_slong_p()) return q.get_num().get_si();
  return q.get_str();
}

json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(origin + ": malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str(), path);
}

namespace {

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw InputError(where + ": missing field \"" + key + "\"");
  return j.at(key);
}

int int_field(const json& j, const char* key, const std::string& where) {
  const json& v = field(j, key, where);
  if (!v.is_number_integer()) throw InputError(where + ": field \"" + key + "\" must be an integer");
  return v.get<int>();
}

}  // namespace

MetricGraph graph_from_json(const json& j) {
  const std::string w = "space";
  MetricMode mode;
  try {
    mode = parse_metric_mode(field(j, "metric", w).get<std::string>());
  } catch (const std::exception& e) {
    throw InputError(w + ": " + e.what());
  }
  std::vector<Vertex> vs;
  for (const auto& v : field(j, "vertices", w)) {
    Vertex x{int_field(v, "id", w + " vertex"), std::nullopt};
    if (v.contains("x") != v.contains("y")) throw InputError(w + ": vertex needs both x and y");
    if (v.contains("x")) x.pos = Point2{real_from_json(v["x"]), real_from_json(v["y"])};
    vs.push_back(std::move(x));
  }
  std::vector<Edge> es;
  for (const auto& e : field(j, "edges", w))
    es.push_back({int_field(e, "id", w + " edge"), int_field(e, "u", w + " edge"), int_field(e, "v", w + " edge"),
                  real_from_json(field(e, "length", w + " edge"))});
  try {
    return MetricGraph(mode, std::move(vs), std::move(es));
  } catch (const GraphError& e) {
    throw InputError(w + ": " + e.what());
  }
}

json graph_to_json(const MetricGraph& g) {
  json j;
  j["metric"] = to_string(g.mode());
  j["vertices"] = json::array();
  for (const auto& v : g.vertices()) {
    json x{{"id", v.id}};
    if (v.pos) {
      x["x"] = real_to_json(v.pos->x);
      x["y"] = real_to_json(v.pos->y);
    }
    j["vertices"].push_back(x);
  }
  j["edges"] = json::array();
  for (const auto& e : g.edges())
    j["edges"].push_back({{"id", e.id}, {"u", e.u}, {"v", e.v}, {"length", real_to_json(e.length)}});
  return j;
}

PLFunction function_from_json(const MetricGraph& g, const json& j) {
  const std::string w = "function";
  PLFunction f;
  f.pieces.assign(g.edge_count(), {});
  f.overrides.assign(g.edge_count(), {});
  f.vertex_values.assign(g.vertex_count(), std::nullopt);
  for (const auto& e : field(j, "edges", w)) {
    int id = int_field(e, "edge", w);
    if (!g.has_edge(id)) throw InputError(w + ": unknown edge " + std::to_string(id));
    auto& ps = f.pieces[g.edge_index(id)];
    if (!ps.empty()) throw InputError(w + ": edge " + std::to_string(id) + " listed twice");
    for (const auto& p : field(e, "pieces", w))
      ps.push_back({real_from_json(field(p, "t0", w)), real_from_json(field(p, "t1", w)),
                    real_from_json(field(p, "v0", w)), real_from_json(field(p, "v1", w))});
  }
  if (j.contains("vertex_values")) {
    for (const auto& [k, v] : j["vertex_values"].items()) {
      int id;
      try {
        id = std::stoi(k);
      } catch (const std::exception&) {
        throw InputError(w + ": bad vertex id " + k);
      }
      if (!g.has_vertex(id)) throw InputError(w + ": unknown vertex " + k);
      f.vertex_values[g.vertex_index(id)] = real_from_json(v);
    }
  }
  if (j.contains("overrides")) {
    for (const auto& o : j["overrides"]) {
      int id = int_field(o, "edge", w);
      if (!g.has_edge(id)) throw InputError(w + ": unknown edge " + std::to_string(id));
      f.overrides[g.edge_index(id)].emplace_back(real_from_json(field(o, "t", w)), real_from_json(field(o, "v", w)));
    }
    for (auto& ov : f.overrides)
      std::sort(ov.begin(), ov.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  }
  try {
    validate_function(g, f);
  } catch (const std::invalid_argument& e) {
    throw InputError(w + ": " + e.what());
  }
  return f;
}

json function_to_json(const MetricGraph& g, const PLFunction& f) {
  json j;
  j["edges"] = json::array();
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    json ps = json::array();
    for (const auto& p : f.pieces[e])
      ps.push_back({{"t0", real_to_json(p.t0)}, {"t1", real_to_json(p.t1)}, {"v0", real_to_json(p.v0)},
                    {"v1", real_to_json(p.v1)}});
    j["edges"].push_back({{"edge", g.edges()[e].id}, {"pieces", ps}});
  }
  j["vertex_values"] = json::object();
  for (std::size_t i = 0; i < g.vertex_count(); ++i)
    if (!f.vertex_values.empty() && f.vertex_values[i])
      j["vertex_values"][std::to_string(g.vertices()[i].id)] = real_to_json(*f.vertex_values[i]);
  j["overrides"] = json::array();
  for (std::size_t e = 0; e < f.overrides.size(); ++e)
    for (const auto& [t, v] : f.overrides[e])
      j["overrides"].push_back({{"edge", g.edges()[e].id}, {"t", real_to_json(t)}, {"v", real_to_json(v)}});
  return j;
}

EdgeSubset subset_from_json(const MetricGraph& g, const json& j) {
  const std::string w = "subset";
  EdgeSubset s = empty_subset(g);
  for (const auto& e : field(j, "edges", w)) {
    int id = int_field(e, "edge", w);
    if (!g.has_edge(id)) throw InputError(w + ": unknown edge " + std::to_string(id));
    auto& iv = s.intervals[g.edge_index(id)];
    for (const auto& pair : field(e, "intervals", w)) {
      if (!pair.is_array() || pair.size() != 2) throw InputError(w + ": intervals are [t0, t1] pairs");
      iv.push_back({real_from_json(pair[0]), real_from_json(pair[1])});
    }
  }
  if (j.contains("vertices"))
    for (const auto& v : j["vertices"]) {
      if (!v.is_number_integer()) throw InputError(w + ": vertex ids must be integers");
      s.vertices.insert(v.get<int>());
    }
  try {
    validate_subset(g, s);
  } catch (const std::invalid_argument& e) {
    throw InputError(w + ": " + e.what());
  }
  return s;
}

json subset_to_json(const MetricGraph& g, const EdgeSubset& s) {
  json j;
  j["edges"] = json::array();
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    if (s.intervals[e].empty()) continue;
    json iv = json::array();
    for (const auto& i : s.intervals[e]) iv.push_back({real_to_json(i.lo), real_to_json(i.hi)});
    j["edges"].push_back({{"edge", g.edges()[e].id}, {"intervals", iv}});
  }
  j["vertices"] = json::array();
  for (int v : s.vertices) j["vertices"].push_back(v);
  return j;
}

PointRef parse_point(const std::string& s) {
  try {
    if (s.rfind("v:", 0) == 0) return PointRef::at_vertex(std::stoi(s.substr(2)));
    if (s.rfind("e:", 0) == 0) {
      auto colon = s.find(':', 2);
      if (colon == std::string::npos) throw InputError("edge point needs e:ID:t");
      return PointRef::on_edge(std::stoi(s.substr(2, colon - 2)), Real::parse(s.substr(colon + 1)));
    }
  } catch (const InputError&) {
    throw;
  } catch (const std::exception&) {
  }
  throw InputError("bad point \"" + s + "\" (expected v:ID or e:ID:t)");
}

json point_to_json(const PointRef& p) {
  if (p.is_vertex()) return {{"vertex", p.id}};
  return {{"edge", p.id}, {"t", real_to_json(p.t)}};
}

namespace {

json reals(const std::vector<Real>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(real_to_json(x));
  return a;
}

json points(const std::vector<PointRef>& v) {
  json a = json::array();
  for (const auto& p : v) a.push_back(point_to_json(p));
  return a;
}

}  // namespace

json to_json(const ArcGadget& gad, const ArcSystem& sys) {
  json arcs = json::array();
  for (const auto& a : sys.arcs) {
    json nodes = json::array();
    for (int n : a.nodes) nodes.push_back(n);
    auto kind = [&](int n) {
      return gad.nodes[n].kind == GadgetNode::Kind::point ? "point" : "half";
    };
    json arc{{"nodes", nodes}, {"value", real_to_json(a.value)}};
    if (a.interior) {
      arc["kind"] = "segment_interior";
      arc["segment"] = gad.nodes[a.nodes.front()].segment;
    } else {
      arc["start"] = {{"kind", kind(a.nodes.front())},
                      {"point", point_to_json(gad.nodes[a.nodes.front()].point)},
                      {"value", real_to_json(gad.nodes[a.nodes.front()].value)}};
      arc["end"] = {{"kind", kind(a.nodes.back())},
                    {"point", point_to_json(gad.nodes[a.nodes.back()].point)},
                    {"value", real_to_json(gad.nodes[a.nodes.back()].value)}};
    }
    arcs.push_back(arc);
  }
  return {{"mode", to_string(sys.mode)},
          {"solver", sys.solver},
          {"search_nodes", sys.search_nodes},
          {"gadget", {{"point_nodes", gad.point_count},
                      {"half_nodes", gad.nodes.size() - gad.point_count},
                      {"segments", gad.segments.size()}}},
          {"total", real_to_json(sys.total)},
          {"arcs", arcs}};
}

json to_json(const TvBracket& b) {
  json costs = json::array();
  for (const auto& c : b.jump_costs)
    costs.push_back({{"point", point_to_json(c.point)}, {"limits", reals(c.limits)},
                     {"median", real_to_json(c.median)}, {"cost", real_to_json(c.cost)}});
  return {{"lower", real_to_json(b.lower)},
          {"upper", real_to_json(b.upper)},
          {"lower_witness", {{"var", real_to_json(b.var)}, {"iv_total", real_to_json(b.iv.total)},
                             {"iv_arcs", b.iv.arcs.size()}}},
          {"upper_witness", {{"edge_integral", real_to_json(b.edge_integral)}, {"jump_costs", costs}}}};
}

json to_json(const CoareaSweep& c) {
  return {{"thresholds", reals(c.thresholds)},
          {"samples", reals(c.samples)},
          {"var_levels", reals(c.var_levels)},
          {"integral", real_to_json(c.integral)}};
}

json to_json(const PerimeterBound& p) {
  return {{"bound", real_to_json(p.bound)}, {"scale", p.scale}, {"points", points(p.points)},
          {"radii", reals(p.radii)}, {"ratios", reals(p.ratios)}};
}

json to_json(const CurveBoundary& c) { return {{"count", c.count}, {"points", points(c.points)}}; }

json to_json(const DensityProfile& d) {
  json s = json::array();
  for (const auto& [r, q] : d.samples) s.push_back({{"r", real_to_json(r)}, {"ratio", real_to_json(q)}});
  return {{"point", point_to_json(d.point)}, {"samples", s}, {"min_ratio", real_to_json(d.min_ratio)},
          {"limit_ratio", real_to_json(d.limit_ratio)}, {"stabilized", d.stabilized}};
}

json to_json(const DoublingScan& d) {
  return {{"max_ratio", real_to_json(d.max_ratio)},
          {"samples", d.samples},
          {"worst_case", {{"center", point_to_json(d.worst.center)}, {"radius", real_to_json(d.worst.radius)},
                          {"ratio", real_to_json(d.worst.ratio)}}}};
}

json to_json(const PoincareResult& p) {
  return {{"lhs", real_to_json(p.lhs)}, {"rhs", real_to_json(p.rhs)}, {"ok", p.ok},
          {"mean", real_to_json(p.mean)}, {"ball_measure", real_to_json(p.ball_measure)},
          {"note", "a pass is evidence for these constants only; a failure refutes them"}};
}

json to_json(const MtbScan& m) {
  json es = json::array();
  for (const auto& e : m.entries)
    es.push_back({{"point", point_to_json(e.point)},
                  {"density_E", real_to_json(e.density_E)},
                  {"density_complement", real_to_json(e.density_complement)},
                  {"grid_density_E", real_to_json(e.grid_density_E)},
                  {"grid_density_complement", real_to_json(e.grid_density_complement)},
                  {"in_boundary", e.in_boundary}});
  return {{"threshold", real_to_json(m.threshold)}, {"block", m.block}, {"radii", reals(m.radii)},
          {"boundary", points(m.boundary)}, {"entries", es}};
}

json to_json(const Codim1Content& c) {
  json ps = json::array();
  for (const auto& p : c.points)
    ps.push_back({{"point", point_to_json(p.point)}, {"ratios", reals(p.ratios)}, {"value", real_to_json(p.value)}});
  return {{"value", real_to_json(c.value)}, {"radii", reals(c.radii)}, {"block", c.block}, {"points", ps}};
}

json to_json(const FedererReport& r) {
  json dens = json::array();
  for (const auto& d : r.densities) dens.push_back(to_json(d));
  json per = json::array();
  for (const auto& [c0, ok] : r.perimeter_scan) per.push_back({{"C0", real_to_json(c0)}, {"certified", ok}});
  json j{{"boundary_content", to_json(r.boundary_content)},
         {"mtb", to_json(r.mtb)},
         {"curve_boundary", to_json(r.curve)},
         {"tv_bracket", to_json(r.tv)},
         {"densities", dens},
         {"perimeter_scan", per},
         {"doubling_ok", r.doubling_ok},
         {"poincare_ok", r.poincare_ok},
         {"quasiconvex_ok", r.quasiconvex_ok},
         {"summary", r.summary},
         {"verdicts", r.verdicts}};
  if (r.inputs.boundary_proxy) j["boundary_scan_space"] = r.inputs.boundary_proxy->label;
  if (r.inputs.quasiconvexity_growth) {
    json gs = json::array();
    for (const auto& [J, x] : *r.inputs.quasiconvexity_growth) gs.push_back({{"J", J}, {"max_ratio", real_to_json(x)}});
    j["quasiconvexity_growth"] = gs;
  }
  if (!r.inputs.doubling_centers.empty()) j["doubling"] = to_json(r.doubling);
  if (r.inputs.doubling_growth) {
    json gs = json::array();
    for (const auto& [J, x] : *r.inputs.doubling_growth) gs.push_back({{"J", J}, {"max_ratio", real_to_json(x)}});
    j["doubling_growth"] = gs;
  }
  if (r.inputs.poincare) {
    const auto& p = *r.inputs.poincare;
    j["poincare"] = {{"samples", p.samples}, {"violations", p.violations}, {"worst_ratio", p.worst_ratio},
                     {"seed", p.seed}, {"p", real_to_json(p.params.p)}, {"C", real_to_json(p.params.C)},
                     {"lambda", real_to_json(p.params.lambda)}};
  }
  if (r.inputs.quasiconvexity)
    j["quasiconvexity"] = {{"max_ratio", real_to_json(r.inputs.quasiconvexity->max_ratio)},
                           {"a", point_to_json(r.inputs.quasiconvexity->a)},
                           {"b", point_to_json(r.inputs.quasiconvexity->b)}};
  return j;
}

}  // namespace bvg
