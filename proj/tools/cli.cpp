#include "cli.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "bvgraph/io.hpp"
#include "bvgraph/star_plan.hpp"
#include "bvgraph/version.hpp"

namespace bvg::cli {

namespace {

struct Options {
  std::string command;
  std::string space, fn, set, gallery;
  std::string mode = "pv";
  std::string out, csv;
  std::vector<std::string> points;
  std::string radius, radii;
  std::string c0, p = "1", C = "4", lambda = "3";
  std::string tv_threshold;
  std::uint64_t seed = 0;
  std::size_t cap_segments = SolveOptions{}.cap_segments;
  std::uint64_t node_budget = SolveOptions{}.node_budget;
  int balls = 20, functions = 64, halvings = 20;
};

/// Input problems detected by the front end itself.
struct UsageError : InputError {
  using InputError::InputError;
};

struct GallerySpec {
  std::string family;
  int depth = 1;
  MetricMode mode = MetricMode::geodesic;
};

GallerySpec parse_gallery(const std::string& s) {
  GallerySpec g;
  auto colon = s.find(':');
  g.family = s.substr(0, colon);
  if (g.family != "star") throw UsageError("unknown gallery family \"" + g.family + "\" (known: star)");
  bool have_depth = false;
  std::stringstream ss(colon == std::string::npos ? "" : s.substr(colon + 1));
  std::string kv;
  while (std::getline(ss, kv, ',')) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) throw UsageError("gallery parameter \"" + kv + "\" needs key=value");
    std::string k = kv.substr(0, eq), v = kv.substr(eq + 1);
    if (k == "J") {
      try {
        g.depth = std::stoi(v);
      } catch (const std::exception&) {
        throw UsageError("gallery depth J must be an integer");
      }
      have_depth = true;
    } else if (k == "metric") {
      if (v == "ambient") v = "ambient_euclidean";
      try {
        g.mode = parse_metric_mode(v);
      } catch (const std::exception& e) {
        throw UsageError(e.what());
      }
    } else {
      throw UsageError("unknown gallery parameter \"" + k + "\"");
    }
  }
  if (!have_depth) throw UsageError("gallery needs J=<depth>");
  if (g.depth < 1 || g.depth > kMaxStarDepth)
    throw UsageError("gallery depth J must lie in 1.." + std::to_string(kMaxStarDepth));
  return g;
}

Real parse_real(const std::string& flag, const std::string& s) {
  try {
    return Real::parse(s);
  } catch (const std::exception&) {
    throw UsageError(flag + ": bad number \"" + s + "\"");
  }
}

std::vector<Real> parse_radii(const std::string& s) {
  auto colon = s.find(':');
  if (colon == std::string::npos) throw UsageError("--radii expects r0:halvings");
  Real r0 = parse_real("--radii", s.substr(0, colon));
  int h;
  try {
    h = std::stoi(s.substr(colon + 1));
  } catch (const std::exception&) {
    throw UsageError("--radii halvings must be an integer");
  }
  if (r0.sign() <= 0 || h < 0 || h > 200) throw UsageError("--radii needs r0 > 0 and 0 <= halvings <= 200");
  return dyadic_radii(r0, h);
}

/// Inputs resolved from --space/--fn/--set or --gallery.
struct Context {
  Options opt;
  std::optional<GallerySpec> gallery;
  std::optional<MetricGraph> graph;
  std::optional<EdgeSubset> set;
  std::optional<PLFunction> fn;
  std::string fn_source;
  json params = json::object();
  std::vector<Real> radii_used;
  std::vector<std::string> csv_lines;

  const MetricGraph& g() const { return *graph; }
  SolveOptions solve() const {
    SolveOptions s;
    s.cap_segments = opt.cap_segments;
    s.node_budget = opt.node_budget;
    return s;
  }
};

void load_space(Context& cx) {
  if (!cx.opt.gallery.empty()) {
    if (!cx.opt.space.empty() && cx.opt.command != "gallery")
      throw UsageError("give either --space or --gallery, not both");
    cx.gallery = parse_gallery(cx.opt.gallery);
    StarSpaceSpec spec{cx.gallery->depth, cx.gallery->mode};
    cx.graph = star_space(spec);
    cx.set = indicator_E(spec);
    return;
  }
  if (cx.opt.space.empty()) throw UsageError("missing --space (or --gallery)");
  cx.graph = graph_from_json(load_json_file(cx.opt.space));
  ValidationReport v = validate_graph(*cx.graph);
  if (!v.ok) throw InputError(cx.opt.space + ": " + v.code + ": " + v.message);
}

void load_set(Context& cx, bool required) {
  if (!cx.opt.set.empty()) {
    if (cx.gallery) throw UsageError("--set cannot be combined with --gallery");
    cx.set = subset_from_json(cx.g(), load_json_file(cx.opt.set));
  }
  if (required && !cx.set) throw UsageError("missing --set");
}

void load_fn(Context& cx, bool required) {
  if (!cx.opt.fn.empty()) {
    cx.fn = function_from_json(cx.g(), load_json_file(cx.opt.fn));
    cx.fn_source = cx.opt.fn;
    return;
  }
  if (cx.gallery) {
    cx.fn = indicator(cx.g(), *cx.set);
    cx.fn_source = "indicator of gallery E";
    return;
  }
  if (required) throw UsageError("missing --fn");
}

std::vector<PointRef> points_of(const Context& cx) {
  std::vector<PointRef> pts;
  for (const auto& s : cx.opt.points) {
    PointRef p = parse_point(s);
    if (p.is_vertex() ? !cx.g().has_vertex(p.id) : !cx.g().has_edge(p.id))
      throw UsageError("point " + s + " is not on the space");
    if (!p.is_vertex()) {
      const Real& L = cx.g().edges()[cx.g().edge_index(p.id)].length;
      if (p.t.sign() < 0 || L < p.t) throw UsageError("point " + s + " lies outside its edge");
    }
    pts.push_back(canonical(cx.g(), p));
  }
  return pts;
}

std::vector<Real> radii_of(Context& cx, const std::function<std::vector<Real>()>& fallback) {
  cx.radii_used = cx.opt.radii.empty() ? fallback() : parse_radii(cx.opt.radii);
  if (cx.radii_used.empty()) throw UsageError("missing --radii");
  return cx.radii_used;
}

Real min_edge_length(const MetricGraph& g) {
  Real m = g.edges().front().length;
  for (const auto& e : g.edges()) m = min(m, e.length);
  return m;
}

std::vector<Real> default_radii(const Context& cx) {
  if (cx.gallery) return star_boundary_radii(cx.gallery->depth);
  return dyadic_radii(min_edge_length(cx.g()) / Real(2), 12);
}

std::vector<PointRef> all_vertices(const MetricGraph& g) {
  std::vector<PointRef> v;
  for (const auto& x : g.vertices()) v.push_back(PointRef::at_vertex(x.id));
  return v;
}

PoincareParams poincare_params(const Context& cx) {
  PoincareParams p{parse_real("--p", cx.opt.p), parse_real("--C", cx.opt.C), parse_real("--lambda", cx.opt.lambda)};
  if (p.p < Real(1) || p.C.sign() <= 0 || p.lambda < Real(1))
    throw UsageError("Poincaré parameters need --p >= 1, --C > 0, --lambda >= 1");
  return p;
}

json reals_json(const std::vector<Real>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(real_to_json(x));
  return a;
}

void csv_row(Context& cx, const std::string& tag, const Real& r, const Real& value) {
  cx.csv_lines.push_back(tag + "," + r.to_string() + "," + std::to_string(value.to_double()));
}

// Commands ------------------------------------------------------------------

json cmd_validate(Context& cx) {
  json j;
  if (cx.gallery) {
    ValidationReport v = validate_graph(cx.g());
    j["space"] = {{"ok", v.ok}, {"code", v.code}, {"message", v.message}};
    if (!v.ok) throw InputError("gallery space: " + v.code + ": " + v.message);
  } else {
    j["space"] = {{"ok", true}};
  }
  load_set(cx, false);
  load_fn(cx, false);
  j["metric"] = to_string(cx.g().mode());
  j["vertices"] = cx.g().vertex_count();
  j["edges"] = cx.g().edge_count();
  j["h1_total"] = real_to_json(h1_total(cx.g()));
  if (cx.fn) j["function"] = {{"ok", true}, {"continuous", is_continuous(cx.g(), *cx.fn)}};
  if (cx.set) j["set"] = {{"ok", true}, {"h1", real_to_json(h1_of_subset(cx.g(), *cx.set))}};
  return j;
}

void write_file(const std::string& path, const json& j) {
  std::ofstream f(path);
  if (!f) throw UsageError("cannot write " + path);
  f << j.dump(2) << "\n";
}

json cmd_gallery(Context& cx) {
  if (!cx.gallery) throw UsageError("gallery needs --gallery star:J=<depth>[,metric=<mode>]");
  json space = graph_to_json(cx.g()), set = subset_to_json(cx.g(), *cx.set);
  // here --space and --set name the files to emit
  if (!cx.opt.space.empty()) write_file(cx.opt.space, space);
  if (!cx.opt.set.empty()) write_file(cx.opt.set, set);
  json j{{"family", cx.gallery->family},
         {"J", cx.gallery->depth},
         {"metric", to_string(cx.gallery->mode)},
         {"vertices", cx.g().vertex_count()},
         {"edges", cx.g().edge_count()},
         {"h1_total", real_to_json(h1_total(cx.g()))},
         {"h1_E", real_to_json(h1_of_subset(cx.g(), *cx.set))},
         {"origin_degree", cx.g().degree(cx.g().vertex_index(0))}};
  if (cx.opt.space.empty()) j["space"] = space;
  if (cx.opt.set.empty()) j["set"] = set;
  return j;
}

json cmd_measure(Context& cx) {
  load_set(cx, false);
  json j{{"h1_total", real_to_json(h1_total(cx.g()))}};
  if (cx.set) j["h1_set"] = real_to_json(h1_of_subset(cx.g(), *cx.set));
  auto pts = points_of(cx);
  if (pts.empty()) return j;
  std::vector<Real> radii;
  if (!cx.opt.radius.empty()) radii.push_back(parse_real("--radius", cx.opt.radius));
  if (!cx.opt.radii.empty()) {
    auto grid = parse_radii(cx.opt.radii);
    radii.insert(radii.end(), grid.begin(), grid.end());
  }
  if (radii.empty()) throw UsageError("measure at a point needs --radius or --radii");
  for (const auto& r : radii)
    if (r.sign() <= 0) throw UsageError("radii must be positive");
  cx.radii_used = radii;
  json balls = json::array();
  for (const auto& p : pts) {
    BallFamily fam(cx.g(), p);
    for (const auto& r : radii) {
      Real m = fam.measure(r);
      json b{{"point", point_to_json(p)}, {"radius", real_to_json(r)}, {"measure", real_to_json(m)}};
      if (cx.set)
        b["measure_in_set"] = real_to_json(h1_of_subset(cx.g(), subset_intersection(cx.g(), fam.ball(r), *cx.set)));
      balls.push_back(b);
      csv_row(cx, p.to_string(), r, m);
    }
  }
  j["balls"] = balls;
  return j;
}

json cmd_density(Context& cx) {
  auto pts = points_of(cx);
  if (pts.empty()) {
    if (!cx.gallery) throw UsageError("density needs --point");
    pts.push_back(PointRef::at_vertex(0));
  }
  auto radii = radii_of(cx, [&] { return default_radii(cx); });
  json profiles = json::array();
  for (const auto& p : pts) {
    DensityProfile d = density_liminf(cx.g(), p, radii);
    for (const auto& [r, q] : d.samples) csv_row(cx, p.to_string(), r, q);
    json pj = to_json(d);
    if (!cx.opt.c0.empty()) {
      Real c0 = parse_real("--c0", cx.opt.c0);
      pj["below_c0"] = d.min_ratio < c0;
    }
    profiles.push_back(pj);
  }
  return {{"profiles", profiles}};
}

json cmd_doubling(Context& cx) {
  auto centers = points_of(cx);
  std::vector<Real> radii;
  if (cx.gallery) {
    if (centers.empty()) centers = star_doubling_centers(cx.g(), cx.gallery->depth);
    radii = radii_of(cx, [&] { return star_doubling_radii(cx.gallery->depth); });
  } else {
    if (centers.empty()) centers = all_vertices(cx.g());
    radii = radii_of(cx, [&] { return default_radii(cx); });
  }
  DoublingScan s = doubling_scan(cx.g(), centers, radii);
  json j = to_json(s);
  j["centers"] = json::array();
  for (const auto& c : centers) j["centers"].push_back(point_to_json(c));
  if (!cx.opt.c0.empty()) {
    Real bound = parse_real("--c0", cx.opt.c0);
    j["bound"] = real_to_json(bound);
    j["within_bound"] = !(bound < s.max_ratio);
  }
  for (const auto& c : centers) {
    BallFamily fam(cx.g(), c);
    for (const auto& r : radii) csv_row(cx, c.to_string(), r, fam.measure(Real(2) * r) / fam.measure(r));
  }
  return j;
}

json cmd_poincare(Context& cx) {
  PoincareParams params = poincare_params(cx);
  cx.params["p"] = real_to_json(params.p);
  cx.params["C"] = real_to_json(params.C);
  cx.params["lambda"] = real_to_json(params.lambda);
  const std::string note = "a pass is evidence for these constants only; a failure refutes them";
  if (!cx.opt.fn.empty()) {
    load_fn(cx, true);
    auto pts = points_of(cx);
    if (pts.size() != 1 || cx.opt.radius.empty()) throw UsageError("poincare with --fn needs one --point and --radius");
    Real r = parse_real("--radius", cx.opt.radius);
    if (r.sign() <= 0) throw UsageError("--radius must be positive");
    cx.radii_used = {r};
    try {
      return {{"ball", {{"center", point_to_json(pts[0])}, {"radius", real_to_json(r)}}},
              {"result", to_json(poincare_check(cx.g(), {pts[0], r}, *cx.fn, params))}};
    } catch (const std::invalid_argument& e) {
      throw PreconditionError(e.what(), pts[0], Real(0), Real(0));
    }
  }
  std::vector<BallSpec> balls;
  if (cx.gallery) {
    balls = star_origin_balls(cx.g(), cx.opt.balls, cx.opt.seed);
  } else {
    auto pts = points_of(cx);
    if (pts.empty()) pts = all_vertices(cx.g());
    auto radii = radii_of(cx, [&] { return default_radii(cx); });
    for (const auto& p : pts)
      for (const auto& r : radii) balls.push_back({p, r});
  }
  PoincareSummary s = poincare_sample(cx.g(), balls, cx.opt.functions, params, cx.opt.seed);
  json bj = json::array();
  for (const auto& b : balls) bj.push_back({{"center", point_to_json(b.center)}, {"radius", real_to_json(b.radius)}});
  return {{"samples", s.samples}, {"violations", s.violations}, {"worst_ratio", s.worst_ratio},
          {"functions_per_ball", cx.opt.functions}, {"ok", s.violations == 0}, {"note", note}, {"balls", bj}};
}

json cmd_variation(Context& cx) {
  load_set(cx, false);
  if (!cx.fn && cx.set && cx.opt.fn.empty()) {
    cx.fn = indicator(cx.g(), *cx.set);
    cx.fn_source = "indicator of --set";
  }
  load_fn(cx, !cx.fn);
  VariationMode mode;
  try {
    mode = parse_variation_mode(cx.opt.mode);
  } catch (const std::exception&) {
    throw UsageError("--mode must be pv, PV or iv");
  }
  ArcGadget gad = build_gadget(cx.g(), *cx.fn);
  ArcSystem sys = variation_solve(gad, mode, cx.solve());
  json j = to_json(gad, sys);
  j["function_source"] = cx.fn_source;
  return j;
}

json cmd_coarea(Context& cx) {
  load_fn(cx, true);
  CoareaSweep c = coarea_sweep(cx.g(), *cx.fn, cx.solve());
  json j = to_json(c);
  j["var_total"] = real_to_json(var_total(cx.g(), *cx.fn, cx.solve()));
  try {
    j["classical_variation"] = real_to_json(classical_variation_interval(cx.g(), *cx.fn));
  } catch (const std::invalid_argument&) {
    // only defined on path graphs
  }
  return j;
}

json cmd_perimeter(Context& cx) {
  load_set(cx, true);
  if (cx.opt.c0.empty()) throw UsageError("perimeter needs --c0");
  Real c0 = parse_real("--c0", cx.opt.c0);
  cx.params["C0"] = real_to_json(c0);
  cx.params["halvings"] = cx.opt.halvings;
  PerimeterBound b = perimeter_upper_bound(cx.g(), *cx.set, c0, cx.opt.halvings);
  json j = to_json(b);
  j["curve_boundary"] = to_json(curve_boundary(cx.g(), *cx.set));
  return j;
}

json cmd_bracket(Context& cx) {
  load_set(cx, false);
  if (cx.opt.fn.empty() && !cx.gallery && cx.set) {
    cx.fn = indicator(cx.g(), *cx.set);
    cx.fn_source = "indicator of --set";
  } else {
    load_fn(cx, true);
  }
  json j = to_json(tv_bracket(cx.g(), *cx.fn, cx.solve()));
  j["function_source"] = cx.fn_source;
  return j;
}

json cmd_federer(Context& cx) {
  FedererInputs in;
  PoincareParams params = poincare_params(cx);
  cx.params["p"] = real_to_json(params.p);
  cx.params["C"] = real_to_json(params.C);
  cx.params["lambda"] = real_to_json(params.lambda);
  if (cx.gallery) {
    StarPlanOptions plan;
    plan.depth = cx.gallery->depth;
    plan.mode = cx.gallery->mode;
    plan.seed = cx.opt.seed;
    plan.poincare = params;
    plan.poincare_balls = cx.opt.balls;
    plan.poincare_functions = cx.opt.functions;
    if (!cx.opt.tv_threshold.empty()) plan.tv_threshold = parse_real("--tv-threshold", cx.opt.tv_threshold);
    in = star_federer_inputs(plan);
    if (!cx.opt.radii.empty()) in.boundary_radii = parse_radii(cx.opt.radii);
  } else {
    load_set(cx, true);
    auto radii = radii_of(cx, [&] { return default_radii(cx); });
    in.candidates = all_vertices(cx.g());
    in.boundary_radii = radii;
    in.doubling_centers = all_vertices(cx.g());
    in.doubling_radii = radii;
    in.density_points = curve_boundary(cx.g(), *cx.set).points;
    in.density_radii = radii;
    std::vector<BallSpec> balls;
    for (const auto& c : in.doubling_centers) balls.push_back({c, radii.front()});
    in.poincare = poincare_sample(cx.g(), balls, cx.opt.functions, params, cx.opt.seed);
    if (!cx.opt.tv_threshold.empty()) in.tv_threshold = parse_real("--tv-threshold", cx.opt.tv_threshold);
  }
  if (!cx.opt.c0.empty()) in.C0_scan = {parse_real("--c0", cx.opt.c0)};
  cx.radii_used = in.boundary_radii;
  FedererReport r = federer_report(cx.g(), *cx.set, in, cx.solve());
  for (const auto& d : r.densities)
    for (const auto& [rad, q] : d.samples) csv_row(cx, d.point.to_string(), rad, q);
  json j = to_json(r);
  j["doubling_radii"] = reals_json(in.doubling_radii);
  j["density_radii"] = reals_json(in.density_radii);
  j["tv_threshold"] = real_to_json(in.tv_threshold);
  return j;
}

const std::map<std::string, std::function<json(Context&)>>& commands() {
  static const std::map<std::string, std::function<json(Context&)>> m{
      {"validate", cmd_validate}, {"gallery", cmd_gallery},   {"measure", cmd_measure},
      {"density", cmd_density},   {"doubling", cmd_doubling}, {"poincare", cmd_poincare},
      {"variation", cmd_variation}, {"coarea", cmd_coarea},   {"perimeter", cmd_perimeter},
      {"bracket", cmd_bracket},   {"federer", cmd_federer}};
  return m;
}

const std::map<std::string, std::string>& descriptions() {
  static const std::map<std::string, std::string> m{
      {"validate", "check space, function and set files"},
      {"gallery", "emit a gallery space and its set E"},
      {"measure", "H1 of the space, a set, or balls"},
      {"density", "ball-to-radius ratio profiles"},
      {"doubling", "doubling ratio scan"},
      {"poincare", "Poincaré inequality check or seeded sampling"},
      {"variation", "maximizing arc system (pv, PV or iv)"},
      {"coarea", "level-set variation sweep"},
      {"perimeter", "perimeter upper bound for a set"},
      {"bracket", "total-variation bracket"},
      {"federer", "Federer characterization report"}};
  return m;
}

json envelope(const Context& cx, const json& result) {
  json j;
  j["tool"] = kToolName;
  j["version"] = kVersion;
  j["command"] = cx.opt.command;
  j["seed"] = cx.opt.seed;
  json inputs = json::object();
  if (!cx.opt.gallery.empty()) inputs["gallery"] = cx.opt.gallery;
  if (!cx.opt.space.empty() && cx.opt.command != "gallery") inputs["space"] = cx.opt.space;
  if (!cx.opt.fn.empty()) inputs["fn"] = cx.opt.fn;
  if (!cx.opt.set.empty() && cx.opt.command != "gallery") inputs["set"] = cx.opt.set;
  if (!cx.opt.points.empty()) inputs["points"] = cx.opt.points;
  j["inputs"] = inputs;
  j["radii"] = reals_json(cx.radii_used);
  j["caps"] = {{"cap_segments", cx.opt.cap_segments}, {"node_budget", cx.opt.node_budget}};
  if (!cx.params.empty()) j["params"] = cx.params;
  j["result"] = result;
  return j;
}

void emit(const Context& cx, const json& report, std::ostream& out) {
  std::string text = report.dump(2) + "\n";
  if (cx.opt.out.empty()) {
    out << text;
  } else {
    std::ofstream f(cx.opt.out);
    if (!f) throw UsageError("cannot write " + cx.opt.out);
    f << text;
  }
}

void emit_csv(const Context& cx) {
  if (cx.opt.csv.empty()) return;
  std::ofstream f(cx.opt.csv);
  if (!f) throw UsageError("cannot write " + cx.opt.csv);
  f << "label,r,value\n";
  for (const auto& l : cx.csv_lines) f << l << "\n";
}

void build_app(CLI::App& app, Options& o) {
  app.set_config("--config", "", "TOML file with any of the flags below; flags override it");
  app.allow_config_extras(false);
  app.require_subcommand(1, 1);
  app.add_option("--space", o.space, "space JSON (gallery: file to write)");
  app.add_option("--fn", o.fn, "function JSON");
  app.add_option("--set", o.set, "subset JSON (gallery: file to write)");
  app.add_option("--gallery", o.gallery, "gallery space, e.g. star:J=3,metric=geodesic");
  app.add_option("--mode", o.mode, "variation mode")->check(CLI::IsMember({"pv", "PV", "iv"}));
  app.add_option("--point", o.points, "point v:ID or e:ID:t (repeatable)");
  app.add_option("--radius", o.radius, "ball radius");
  app.add_option("--radii", o.radii, "dyadic radius grid r0:halvings");
  app.add_option("--c0", o.c0, "density constant C0 (doubling: claimed bound)");
  app.add_option("--p", o.p, "Poincaré exponent p");
  app.add_option("--C", o.C, "Poincaré constant C");
  app.add_option("--lambda", o.lambda, "Poincaré dilation lambda");
  app.add_option("--tv-threshold", o.tv_threshold, "TV lower bound the Federer verdict compares against");
  app.add_option("--seed", o.seed, "seed for sampled diagnostics");
  app.add_option("--balls", o.balls, "sampled Poincaré balls")->check(CLI::Range(0, 100000));
  app.add_option("--functions", o.functions, "sampled functions per ball")->check(CLI::Range(0, 100000));
  app.add_option("--halvings", o.halvings, "perimeter scale halvings")->check(CLI::Range(0, 200));
  app.add_option("--out", o.out, "report path (default: standard output)");
  app.add_option("--csv", o.csv, "CSV profile path");
  app.add_option("--cap-segments", o.cap_segments, "maximum elementary segments in a gadget");
  app.add_option("--node-budget", o.node_budget, "branch-and-bound node budget");
  for (const auto& [name, desc] : descriptions()) {
    auto* sub = app.add_subcommand(name, desc);
    sub->fallthrough();
    sub->callback([&o, name = name] { o.command = name; });
  }
}

json error_report(const Options& o, const std::string& kind, const std::string& message) {
  return {{"tool", kToolName}, {"version", kVersion}, {"command", o.command}, {"seed", o.seed},
          {"caps", {{"cap_segments", o.cap_segments}, {"node_budget", o.node_budget}}},
          {"error", {{"kind", kind}, {"message", message}}}};
}

}  // namespace

int execute(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Bounded-variation diagnostics on metric graphs", kToolName};
  build_app(app, o);
  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }

  Context cx;
  cx.opt = o;
  auto fail = [&](int code, const std::string& kind, const std::string& msg, json extra) {
    err << "error: " << msg << "\n";
    json rep = error_report(o, kind, msg);
    for (auto& [k, v] : extra.items()) rep["error"][k] = v;
    try {
      emit(cx, rep, out);
    } catch (const std::exception&) {
    }
    return code;
  };
  try {
    load_space(cx);
    json result = commands().at(o.command)(cx);
    emit(cx, envelope(cx, result), out);
    emit_csv(cx);
    return kExitOk;
  } catch (const CapExceeded& e) {
    return fail(kExitPrecondition, "cap exceeded", e.what(), {{"size", e.size}, {"cap", e.cap}});
  } catch (const PreconditionError& e) {
    return fail(kExitPrecondition, "precondition", e.what(),
                {{"point", point_to_json(e.point)}, {"best_ratio", real_to_json(e.best_ratio)},
                 {"limit", real_to_json(e.limit)}});
  } catch (const InputError& e) {
    return fail(kExitInput, "input", e.what(), json::object());
  } catch (const GraphError& e) {
    return fail(kExitInput, "input", e.what(), json::object());
  } catch (const std::invalid_argument& e) {
    return fail(kExitPrecondition, "precondition", e.what(), json::object());
  } catch (const std::exception& e) {
    return fail(kExitInput, "error", e.what(), json::object());
  }
}

}  // namespace bvg::cli
