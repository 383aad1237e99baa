#include "bvgraph/edge_subset.hpp"

#include <algorithm>
#include <stdexcept>

namespace bvg {

EdgeSubset empty_subset(const MetricGraph& g) {
  EdgeSubset s;
  s.intervals.assign(g.edge_count(), {});
  return s;
}

EdgeSubset full_subset(const MetricGraph& g) {
  EdgeSubset s;
  for (const auto& e : g.edges()) s.intervals.push_back({{Real(0), e.length}});
  for (const auto& v : g.vertices()) s.vertices.insert(v.id);
  return s;
}

void validate_subset(const MetricGraph& g, const EdgeSubset& s) {
  if (s.intervals.size() != g.edge_count())
    throw std::invalid_argument("subset has intervals for a different number of edges");
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto& iv = s.intervals[e];
    std::string where = "edge " + std::to_string(g.edges()[e].id);
    for (std::size_t i = 0; i < iv.size(); ++i) {
      if (!(iv[i].lo < iv[i].hi)) throw std::invalid_argument(where + ": empty interval");
      if (iv[i].lo < Real(0) || g.edges()[e].length < iv[i].hi)
        throw std::invalid_argument(where + ": interval outside the edge");
      if (i > 0 && !(iv[i - 1].hi < iv[i].lo))
        throw std::invalid_argument(where + ": intervals overlap or are unsorted");
    }
  }
  for (int v : s.vertices)
    if (!g.has_vertex(v)) throw std::invalid_argument("subset names unknown vertex " + std::to_string(v));
}

std::vector<Interval> merge_intervals(std::vector<Interval> v) {
  v.erase(std::remove_if(v.begin(), v.end(), [](const Interval& i) { return !(i.lo < i.hi); }),
          v.end());
  std::sort(v.begin(), v.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  std::vector<Interval> out;
  for (auto& i : v) {
    if (!out.empty() && !(out.back().hi < i.lo))
      out.back().hi = max(out.back().hi, i.hi);
    else
      out.push_back(std::move(i));
  }
  return out;
}

EdgeSubset subset_union(const MetricGraph& g, const EdgeSubset& a, const EdgeSubset& b) {
  EdgeSubset s;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    auto v = a.intervals[e];
    v.insert(v.end(), b.intervals[e].begin(), b.intervals[e].end());
    s.intervals.push_back(merge_intervals(std::move(v)));
  }
  s.vertices = a.vertices;
  s.vertices.insert(b.vertices.begin(), b.vertices.end());
  return s;
}

EdgeSubset subset_intersection(const MetricGraph& g, const EdgeSubset& a, const EdgeSubset& b) {
  EdgeSubset s;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    std::vector<Interval> v;
    for (const auto& x : a.intervals[e])
      for (const auto& y : b.intervals[e]) {
        Real lo = max(x.lo, y.lo), hi = min(x.hi, y.hi);
        if (lo < hi) v.push_back({lo, hi});
      }
    s.intervals.push_back(merge_intervals(std::move(v)));
  }
  for (int v : a.vertices)
    if (b.vertices.count(v)) s.vertices.insert(v);
  return s;
}

EdgeSubset subset_complement(const MetricGraph& g, const EdgeSubset& a) {
  EdgeSubset s;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    std::vector<Interval> v;
    Real cur(0);
    for (const auto& x : a.intervals[e]) {
      if (cur < x.lo) v.push_back({cur, x.lo});
      cur = x.hi;
    }
    if (cur < g.edges()[e].length) v.push_back({cur, g.edges()[e].length});
    s.intervals.push_back(std::move(v));
  }
  for (const auto& v : g.vertices())
    if (!a.vertices.count(v.id)) s.vertices.insert(v.id);
  return s;
}

bool contains(const MetricGraph& g, const EdgeSubset& s, const PointRef& p0) {
  PointRef p = canonical(g, p0);
  if (p.is_vertex()) {
    if (s.vertices.count(p.id)) return true;
    std::size_t vi = g.vertex_index(p.id);
    for (const auto& in : g.incident(vi)) {
      const auto& iv = s.intervals[in.edge];
      if (iv.empty()) continue;
      if (in.at_start ? iv.front().lo.is_zero() : iv.back().hi == g.edges()[in.edge].length)
        return true;
    }
    return false;
  }
  for (const auto& iv : s.intervals[g.edge_index(p.id)])
    if (!(p.t < iv.lo) && !(iv.hi < p.t)) return true;
  return false;
}

PLFunction indicator(const MetricGraph& g, const EdgeSubset& s) {
  PLFunction f;
  f.overrides.assign(g.edge_count(), {});
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const Real& L = g.edges()[e].length;
    std::vector<Piece> ps;
    Real cur(0);
    auto push = [&](const Real& a, const Real& b, int v) {
      if (a < b) ps.push_back({a, b, Real(v), Real(v)});
    };
    for (const auto& iv : s.intervals[e]) {
      push(cur, iv.lo, 0);
      push(iv.lo, iv.hi, 1);
      cur = iv.hi;
    }
    push(cur, L, 0);
    // Closed intervals: a right endpoint inside the edge belongs to the set
    // although the piece to its right is 0.
    for (const auto& iv : s.intervals[e])
      if (iv.hi < L) f.overrides[e].emplace_back(iv.hi, Real(1));
    std::sort(f.overrides[e].begin(), f.overrides[e].end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    f.pieces.push_back(std::move(ps));
  }
  f.vertex_values.assign(g.vertex_count(), std::nullopt);
  for (std::size_t i = 0; i < g.vertex_count(); ++i)
    f.vertex_values[i] = Real(contains(g, s, PointRef::at_vertex(g.vertices()[i].id)) ? 1 : 0);
  return f;
}

}  // namespace bvg
