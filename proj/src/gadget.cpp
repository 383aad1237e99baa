#include <algorithm>
#include <map>
#include <stdexcept>

#include "bvgraph/variation.hpp"

namespace bvg {

std::string to_string(VariationMode m) {
  switch (m) {
    case VariationMode::pV: return "pv";
    case VariationMode::PV: return "PV";
    case VariationMode::iV: return "iv";
  }
  return "?";
}

VariationMode parse_variation_mode(const std::string& s) {
  if (s == "pv" || s == "pV") return VariationMode::pV;
  if (s == "PV") return VariationMode::PV;
  if (s == "iv" || s == "iV") return VariationMode::iV;
  throw std::invalid_argument("unknown variation mode: " + s);
}

ArcGadget build_gadget(const MetricGraph& g, const PLFunction& f) {
  ArcGadget gad;
  auto pts = critical_points(g, f);
  std::vector<int> vertex_node(g.vertex_count(), -1);
  std::vector<std::vector<int>> edge_nodes(g.edge_count());
  std::vector<std::vector<Real>> edge_offsets(g.edge_count());
  for (const auto& p : pts) {
    int id = static_cast<int>(gad.nodes.size());
    gad.nodes.push_back({GadgetNode::Kind::point, p, -1, eval_at(g, f, p)});
    if (p.is_vertex()) {
      vertex_node[g.vertex_index(p.id)] = id;
    } else {
      std::size_t e = g.edge_index(p.id);
      edge_nodes[e].push_back(id);
      edge_offsets[e].push_back(p.t);
    }
  }
  gad.point_count = gad.nodes.size();

  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edges()[e];
    std::vector<int> chain{vertex_node[g.u_index(e)]};
    std::vector<Real> ts{Real(0)};
    chain.insert(chain.end(), edge_nodes[e].begin(), edge_nodes[e].end());
    ts.insert(ts.end(), edge_offsets[e].begin(), edge_offsets[e].end());
    chain.push_back(vertex_node[g.v_index(e)]);
    ts.push_back(ed.length);
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
      ElementarySegment s;
      s.edge = e;
      s.t0 = ts[i];
      s.t1 = ts[i + 1];
      PointRef p0 = i == 0 ? PointRef::at_vertex(ed.u) : PointRef::on_edge(ed.id, s.t0);
      PointRef p1 = i + 2 == chain.size() ? PointRef::at_vertex(ed.v) : PointRef::on_edge(ed.id, s.t1);
      s.v0 = i == 0 ? f.pieces[e].front().v0 : limit_along(g, f, p0, {ed.id, Approach::from_above});
      s.v1 = i + 2 == chain.size() ? f.pieces[e].back().v1
                                   : limit_along(g, f, p1, {ed.id, Approach::from_below});
      s.osc = abs(s.v1 - s.v0);
      s.lo_point = chain[i];
      s.hi_point = chain[i + 1];
      int seg = static_cast<int>(gad.segments.size());
      s.lo_half = static_cast<int>(gad.nodes.size());
      gad.nodes.push_back({GadgetNode::Kind::half, p0, seg, s.v0});
      s.hi_half = static_cast<int>(gad.nodes.size());
      gad.nodes.push_back({GadgetNode::Kind::half, p1, seg, s.v1});
      gad.segments.push_back(std::move(s));
    }
  }

  gad.adj.assign(gad.nodes.size(), {});
  for (const auto& s : gad.segments) {
    auto link = [&](int a, int b) {
      gad.adj[a].push_back(b);
      gad.adj[b].push_back(a);
    };
    link(s.lo_point, s.lo_half);
    link(s.lo_half, s.hi_half);
    link(s.hi_half, s.hi_point);
  }
  for (auto& a : gad.adj) std::sort(a.begin(), a.end());
  gad.tree = g.is_tree();
  return gad;
}

namespace {

bool is_half(const ArcGadget& gad, int n) { return gad.nodes[n].kind == GadgetNode::Kind::half; }

bool siblings(const ArcGadget& gad, int a, int b) {
  return is_half(gad, a) && is_half(gad, b) && gad.nodes[a].segment == gad.nodes[b].segment;
}

[[noreturn]] void infeasible(const std::string& msg) {
  throw std::logic_error("infeasible arc system: " + msg);
}

}  // namespace

Real arc_value(const ArcGadget& gad, VariationMode mode, const Arc& arc) {
  const auto& w = arc.nodes;
  if (arc.interior) return gad.segments[gad.nodes[w.at(0)].segment].osc;
  if (w.size() < 2) return Real(0);
  if (mode != VariationMode::PV) return abs(gad.nodes[w.back()].value - gad.nodes[w.front()].value);
  Real value(0);
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    int a = w[i], b = w[i + 1];
    value += siblings(gad, a, b) ? gad.segments[gad.nodes[a].segment].osc
                                 : abs(gad.nodes[a].value - gad.nodes[b].value);
  }
  return value;
}

Real evaluate_arc_system(const ArcGadget& gad, VariationMode mode, const ArcSystem& sys) {
  std::vector<int> uses(gad.nodes.size(), 0);
  std::vector<char> traversed(gad.segments.size(), 0), interior(gad.segments.size(), 0);
  Real total(0);
  for (const auto& arc : sys.arcs) {
    if (arc.interior) {
      if (arc.nodes.size() != 2 || !siblings(gad, arc.nodes[0], arc.nodes[1]))
        infeasible("interior arc must name the two halves of one segment");
      int s = gad.nodes[arc.nodes[0]].segment;
      if (interior[s]++) infeasible("two interior arcs in one segment");
      continue;
    }
    const auto& w = arc.nodes;
    if (w.size() < 2) infeasible("arc with fewer than two nodes");
    for (int n : w)
      if (n < 0 || n >= static_cast<int>(gad.nodes.size())) infeasible("node out of range");
    auto sorted = w;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      infeasible("arc revisits a node");
    if (mode == VariationMode::iV && (!is_half(gad, w.front()) || !is_half(gad, w.back())))
      infeasible("essential arcs must end at one-sided limits");
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      int a = w[i], b = w[i + 1];
      if (!std::binary_search(gad.adj[a].begin(), gad.adj[a].end(), b)) infeasible("non-adjacent step");
      if (siblings(gad, a, b)) traversed[gad.nodes[a].segment] = 1;
    }
    Real value = arc_value(gad, mode, arc);
    for (int n : w) ++uses[n];
    total += value;
  }
  for (std::size_t n = 0; n < gad.nodes.size(); ++n) {
    bool shareable = mode == VariationMode::iV && !is_half(gad, static_cast<int>(n));
    if (!shareable && uses[n] > 1) infeasible("node " + std::to_string(n) + " used twice");
  }
  for (std::size_t s = 0; s < gad.segments.size(); ++s) {
    if (!interior[s]) continue;
    if (traversed[s]) infeasible("interior arc in a traversed segment");
    total += gad.segments[s].osc;
  }
  return total;
}

}  // namespace bvg
