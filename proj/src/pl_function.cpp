#include "bvgraph/pl_function.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace bvg {

namespace {

[[noreturn]] void bad(const std::string& msg) { throw std::invalid_argument(msg); }

// Right piece at t (the one with t0 <= t < t1), or the last piece at t = L.
const Piece& right_piece(const std::vector<Piece>& ps, const Real& t) {
  auto it = std::upper_bound(ps.begin(), ps.end(), t,
                             [](const Real& x, const Piece& p) { return x < p.t1; });
  return it == ps.end() ? ps.back() : *it;
}

// Left piece at t (the one with t0 < t <= t1), or the first piece at t = 0.
const Piece& left_piece(const std::vector<Piece>& ps, const Real& t) {
  auto it = std::lower_bound(ps.begin(), ps.end(), t,
                             [](const Piece& p, const Real& x) { return p.t1 < x; });
  return it == ps.end() ? ps.back() : *it;
}

Real side_value(const std::vector<Piece>& ps, const Real& t, Approach a) {
  return piece_value(a == Approach::from_above ? right_piece(ps, t) : left_piece(ps, t), t);
}

void sort_unique(std::vector<Real>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

// Fills vertex values and overrides of `out` from point values computed by
// `value_at` on the source function's points plus `extra` interior offsets.
void assign_point_values(const MetricGraph& g, PLFunction& out,
                         const std::vector<std::vector<Real>>& offsets,
                         const std::function<Real(const PointRef&)>& value_at) {
  out.vertex_values.assign(g.vertex_count(), std::nullopt);
  for (std::size_t i = 0; i < g.vertex_count(); ++i)
    out.vertex_values[i] = value_at(PointRef::at_vertex(g.vertices()[i].id));
  out.overrides.assign(g.edge_count(), {});
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    for (const Real& t : offsets[e]) {
      Real v = value_at(PointRef::on_edge(g.edges()[e].id, t));
      if (!(v == side_value(out.pieces[e], t, Approach::from_above)))
        out.overrides[e].emplace_back(t, v);
    }
  }
}

}  // namespace

Real piece_value(const Piece& p, const Real& t) {
  if (t == p.t0) return p.v0;
  if (t == p.t1) return p.v1;
  return p.v0 + (p.v1 - p.v0) * ((t - p.t0) / (p.t1 - p.t0));
}

void validate_function(const MetricGraph& g, const PLFunction& f) {
  if (f.pieces.size() != g.edge_count()) bad("function has pieces for a different number of edges");
  if (!f.overrides.empty() && f.overrides.size() != g.edge_count())
    bad("function has overrides for a different number of edges");
  if (!f.vertex_values.empty() && f.vertex_values.size() != g.vertex_count())
    bad("function has values for a different number of vertices");
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto& ps = f.pieces[e];
    const Real& L = g.edges()[e].length;
    std::string where = "edge " + std::to_string(g.edges()[e].id);
    if (ps.empty()) bad(where + " has no pieces");
    if (!approx_equal(ps.front().t0, Real(0))) bad(where + ": pieces must start at 0");
    if (!approx_equal(ps.back().t1, L)) bad(where + ": pieces must end at the edge length");
    for (std::size_t i = 0; i < ps.size(); ++i) {
      if (!(ps[i].t0 < ps[i].t1)) bad(where + ": empty or reversed piece");
      if (i + 1 < ps.size() && !approx_equal(ps[i].t1, ps[i + 1].t0))
        bad(where + ": pieces are not contiguous");
    }
    if (!f.overrides.empty()) {
      const auto& ov = f.overrides[e];
      for (std::size_t i = 0; i < ov.size(); ++i) {
        if (!(Real(0) < ov[i].first && ov[i].first < L))
          bad(where + ": override offset must be strictly interior");
        if (i > 0 && !(ov[i - 1].first < ov[i].first))
          bad(where + ": overrides must be sorted and distinct");
      }
    }
  }
}

PLFunction constant_function(const MetricGraph& g, const Real& c) {
  PLFunction f;
  for (const auto& e : g.edges()) f.pieces.push_back({{Real(0), e.length, c, c}});
  f.overrides.assign(g.edge_count(), {});
  f.vertex_values.assign(g.vertex_count(), std::nullopt);
  return f;
}

PLFunction linear_on_edges(const MetricGraph& g, const std::vector<std::pair<Real, Real>>& ends) {
  if (ends.size() != g.edge_count()) bad("need one value pair per edge");
  PLFunction f;
  for (std::size_t e = 0; e < g.edge_count(); ++e)
    f.pieces.push_back({{Real(0), g.edges()[e].length, ends[e].first, ends[e].second}});
  f.overrides.assign(g.edge_count(), {});
  f.vertex_values.assign(g.vertex_count(), std::nullopt);
  return f;
}

std::vector<Direction> incident_directions(const MetricGraph& g, const PointRef& p0) {
  PointRef p = canonical(g, p0);
  std::vector<Direction> out;
  if (p.is_vertex()) {
    for (const auto& in : g.incident(g.vertex_index(p.id)))
      out.push_back({g.edges()[in.edge].id, in.at_start ? Approach::from_above : Approach::from_below});
  } else {
    out.push_back({p.id, Approach::from_above});
    out.push_back({p.id, Approach::from_below});
  }
  std::sort(out.begin(), out.end());
  return out;
}

Real limit_along(const MetricGraph& g, const PLFunction& f, const PointRef& p0, const Direction& d) {
  PointRef p = canonical(g, p0);
  std::size_t e = g.edge_index(d.edge_id);
  if (p.is_vertex()) {
    std::size_t vi = g.vertex_index(p.id);
    if (d.approach == Approach::from_above && g.u_index(e) == vi) return f.pieces[e].front().v0;
    if (d.approach == Approach::from_below && g.v_index(e) == vi) return f.pieces[e].back().v1;
    bad("edge " + std::to_string(d.edge_id) + " is not incident to " + p.to_string() +
        " in that direction");
  }
  if (p.id != d.edge_id) bad("edge " + std::to_string(d.edge_id) + " is not incident to " + p.to_string());
  return side_value(f.pieces[e], p.t, d.approach);
}

Real eval_at(const MetricGraph& g, const PLFunction& f, const PointRef& p0) {
  PointRef p = canonical(g, p0);
  if (p.is_vertex()) {
    std::size_t vi = g.vertex_index(p.id);
    if (!f.vertex_values.empty() && f.vertex_values[vi]) return *f.vertex_values[vi];
    auto dirs = incident_directions(g, p);
    if (dirs.empty()) return Real(0);  // isolated vertex; cannot occur in a valid graph
    return limit_along(g, f, p, dirs.front());
  }
  std::size_t e = g.edge_index(p.id);
  if (!f.overrides.empty()) {
    const auto& ov = f.overrides[e];
    auto it = std::lower_bound(ov.begin(), ov.end(), p.t,
                               [](const auto& o, const Real& t) { return o.first < t; });
    if (it != ov.end() && it->first == p.t) return it->second;
  }
  return side_value(f.pieces[e], p.t, Approach::from_above);
}

Real eval(const MetricGraph& g, const PLFunction& f, const PointRef& p,
          const std::optional<Direction>& side) {
  return side ? limit_along(g, f, p, *side) : eval_at(g, f, p);
}

std::vector<Real> critical_offsets(const PLFunction& f, std::size_t e) {
  std::vector<Real> out;
  const auto& ps = f.pieces[e];
  for (std::size_t i = 0; i + 1 < ps.size(); ++i) out.push_back(ps[i].t1);
  if (!f.overrides.empty())
    for (const auto& o : f.overrides[e]) out.push_back(o.first);
  sort_unique(out);
  return out;
}

std::vector<PointRef> critical_points(const MetricGraph& g, const PLFunction& f) {
  std::vector<PointRef> out;
  for (const auto& v : g.vertices()) out.push_back(PointRef::at_vertex(v.id));
  for (std::size_t e = 0; e < g.edge_count(); ++e)
    for (const Real& t : critical_offsets(f, e)) out.push_back(PointRef::on_edge(g.edges()[e].id, t));
  std::stable_sort(out.begin(), out.end(), point_less);
  return out;
}

bool continuous_at(const MetricGraph& g, const PLFunction& f, const PointRef& p) {
  Real v = eval_at(g, f, p);
  for (const auto& d : incident_directions(g, p))
    if (!approx_equal(limit_along(g, f, p, d), v)) return false;
  return true;
}

bool is_continuous(const MetricGraph& g, const PLFunction& f) {
  for (const auto& p : critical_points(g, f))
    if (!continuous_at(g, f, p)) return false;
  return true;
}

PLFunction add(const MetricGraph& g, const PLFunction& a, const PLFunction& b) {
  PLFunction out;
  std::vector<std::vector<Real>> offsets(g.edge_count());
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    std::vector<Real> cuts{Real(0), g.edges()[e].length};
    for (const auto* f : {&a, &b})
      for (const auto& p : f->pieces[e]) {
        cuts.push_back(p.t0);
        cuts.push_back(p.t1);
      }
    sort_unique(cuts);
    std::vector<Piece> ps;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      const Real &s0 = cuts[i], &s1 = cuts[i + 1];
      ps.push_back({s0, s1,
                    side_value(a.pieces[e], s0, Approach::from_above) +
                        side_value(b.pieces[e], s0, Approach::from_above),
                    side_value(a.pieces[e], s1, Approach::from_below) +
                        side_value(b.pieces[e], s1, Approach::from_below)});
    }
    out.pieces.push_back(std::move(ps));
    offsets[e] = critical_offsets(a, e);
    auto ob = critical_offsets(b, e);
    offsets[e].insert(offsets[e].end(), ob.begin(), ob.end());
    sort_unique(offsets[e]);
  }
  assign_point_values(g, out, offsets,
                      [&](const PointRef& p) { return eval_at(g, a, p) + eval_at(g, b, p); });
  return out;
}

PLFunction scale(const MetricGraph& g, const PLFunction& f, const Real& c) {
  PLFunction out;
  std::vector<std::vector<Real>> offsets(g.edge_count());
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    std::vector<Piece> ps;
    for (const auto& p : f.pieces[e]) ps.push_back({p.t0, p.t1, p.v0 * c, p.v1 * c});
    out.pieces.push_back(std::move(ps));
    offsets[e] = critical_offsets(f, e);
  }
  assign_point_values(g, out, offsets, [&](const PointRef& p) { return eval_at(g, f, p) * c; });
  return out;
}

namespace {

// Splits every piece where it crosses one of `levels` strictly inside, then
// maps each sub-piece through `map_piece`.  Point values come from
// `map_point` applied to the original point value.
PLFunction split_and_map(const MetricGraph& g, const PLFunction& f, const std::vector<Real>& levels,
                         const std::function<Piece(const Piece&)>& map_piece,
                         const std::function<Real(const Real&)>& map_point) {
  PLFunction out;
  std::vector<std::vector<Real>> offsets(g.edge_count());
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    std::vector<Piece> ps;
    for (const auto& p : f.pieces[e]) {
      std::vector<Real> cuts{p.t0, p.t1};
      if (!(p.v0 == p.v1)) {
        for (const Real& lv : levels) {
          if ((p.v0 < lv && lv < p.v1) || (p.v1 < lv && lv < p.v0)) {
            Real s = p.t0 + (lv - p.v0) * (p.t1 - p.t0) / (p.v1 - p.v0);
            if (p.t0 < s && s < p.t1) cuts.push_back(s);
          }
        }
      }
      sort_unique(cuts);
      for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        Piece sub{cuts[i], cuts[i + 1], piece_value(p, cuts[i]), piece_value(p, cuts[i + 1])};
        ps.push_back(map_piece(sub));
        if (i + 1 < cuts.size() - 1) offsets[e].push_back(cuts[i + 1]);
      }
    }
    out.pieces.push_back(std::move(ps));
    auto orig = critical_offsets(f, e);
    offsets[e].insert(offsets[e].end(), orig.begin(), orig.end());
    sort_unique(offsets[e]);
  }
  assign_point_values(g, out, offsets, [&](const PointRef& p) { return map_point(eval_at(g, f, p)); });
  return out;
}

}  // namespace

PLFunction clamp(const MetricGraph& g, const PLFunction& f, const std::optional<Real>& lo,
                 const std::optional<Real>& hi) {
  if (lo && hi && *hi < *lo) bad("clamp bounds are reversed");
  auto c = [&](const Real& v) {
    Real r = v;
    if (hi) r = min(r, *hi);
    if (lo) r = max(r, *lo);
    return r;
  };
  std::vector<Real> levels;
  if (lo) levels.push_back(*lo);
  if (hi) levels.push_back(*hi);
  return split_and_map(
      g, f, levels, [&](const Piece& p) { return Piece{p.t0, p.t1, c(p.v0), c(p.v1)}; }, c);
}

PLFunction level_indicator(const MetricGraph& g, const PLFunction& f, const Real& t) {
  auto ind = [&](const Real& v) { return t < v ? Real(1) : Real(0); };
  return split_and_map(
      g, f, {t},
      [&](const Piece& p) {
        // Sub-pieces do not cross t, so the midpoint decides membership.
        Real mid = (p.v0 + p.v1) / Real(2);
        Real v = ind(mid);
        return Piece{p.t0, p.t1, v, v};
      },
      ind);
}

PLFunction normalized(const MetricGraph& g, const PLFunction& f) {
  PLFunction out;
  out.pieces = f.pieces;
  std::vector<std::vector<Real>> offsets(g.edge_count());
  for (std::size_t e = 0; e < g.edge_count(); ++e) offsets[e] = critical_offsets(f, e);
  assign_point_values(g, out, offsets, [&](const PointRef& p) { return eval_at(g, f, p); });
  return out;
}

}  // namespace bvg
