#include "oracles.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>

namespace oracle {

using bvg::abs;
using bvg::max;

Real oscillation_sum(const PLFunction& f) {
  Real s(0);
  for (const auto& ps : f.pieces)
    for (const auto& p : ps) s += abs(p.v1 - p.v0);
  return s;
}

namespace {

Real at(const bvg::Piece& p, const Real& t) {
  if (t == p.t0) return p.v0;
  if (t == p.t1) return p.v1;
  return p.v0 + (p.v1 - p.v0) * (t - p.t0) / (p.t1 - p.t0);
}

}  // namespace

std::vector<PointData> point_data(const MetricGraph& g, const PLFunction& f) {
  std::vector<PointData> out;
  for (std::size_t vi = 0; vi < g.vertex_count(); ++vi) {
    // (edge id, approach) -> limit; approach 0 leaves from the edge start
    std::map<std::pair<int, int>, Real> lim;
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      int id = g.edges()[e].id;
      if (g.u_index(e) == vi) lim.emplace(std::make_pair(id, 0), f.pieces[e].front().v0);
      if (g.v_index(e) == vi) lim.emplace(std::make_pair(id, 1), f.pieces[e].back().v1);
    }
    PointData d;
    for (const auto& [k, v] : lim) d.limits.push_back(v);
    if (!f.vertex_values.empty() && f.vertex_values[vi])
      d.value = *f.vertex_values[vi];
    else
      d.value = lim.begin()->second;
    out.push_back(std::move(d));
  }
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto& ps = f.pieces[e];
    std::vector<Real> ts;
    for (std::size_t i = 0; i + 1 < ps.size(); ++i) ts.push_back(ps[i].t1);
    if (!f.overrides.empty())
      for (const auto& o : f.overrides[e]) ts.push_back(o.first);
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    for (const auto& t : ts) {
      Real below, above;
      for (const auto& p : ps) {
        if (p.t0 < t && !(p.t1 < t)) below = at(p, t);
        if (!(t < p.t0) && t < p.t1) above = at(p, t);
      }
      PointData d{above, {above, below}};
      if (!f.overrides.empty())
        for (const auto& o : f.overrides[e])
          if (o.first == t) d.value = o.second;
      out.push_back(std::move(d));
    }
  }
  return out;
}

Real closed_form_pV(const MetricGraph& g, const PLFunction& f) {
  Real s = oscillation_sum(f);
  for (const auto& d : point_data(g, f)) {
    auto [lo, hi] = std::minmax_element(d.limits.begin(), d.limits.end(), [](auto& a, auto& b) { return a < b; });
    Real best = *hi - *lo;
    for (const auto& l : d.limits) best = max(best, abs(d.value - l));
    s += best;
  }
  return s;
}

Real closed_form_PV(const MetricGraph& g, const PLFunction& f) {
  Real s = oscillation_sum(f);
  for (const auto& d : point_data(g, f)) {
    Real best(0);
    for (std::size_t a = 0; a < d.limits.size(); ++a) {
      best = max(best, abs(d.value - d.limits[a]));
      for (std::size_t b = 0; b < d.limits.size(); ++b)
        if (a != b) best = max(best, abs(d.limits[a] - d.value) + abs(d.value - d.limits[b]));
    }
    s += best;
  }
  return s;
}

Real closed_form_iV(const MetricGraph& g, const PLFunction& f) {
  Real s = oscillation_sum(f);
  for (const auto& d : point_data(g, f)) s += brute_matching(d.limits);
  return s;
}

Real brute_matching(const std::vector<Real>& v) {
  if (v.size() > 20) throw std::invalid_argument("brute_matching: too many values");
  // memo[mask]: best matching of the values whose bits are set; the lowest
  // one either stays unmatched or pairs with another member
  std::vector<std::optional<Real>> memo(std::size_t{1} << v.size());
  std::function<Real(std::size_t)> go = [&](std::size_t mask) -> Real {
    if (mask == 0) return Real(0);
    if (memo[mask]) return *memo[mask];
    std::size_t i = static_cast<std::size_t>(std::countr_zero(mask));
    std::size_t rest = mask & ~(std::size_t{1} << i);
    Real best = go(rest);
    for (std::size_t j = i + 1; j < v.size(); ++j)
      if (rest >> j & 1) best = max(best, abs(v[i] - v[j]) + go(rest & ~(std::size_t{1} << j)));
    memo[mask] = best;
    return best;
  };
  return go((std::size_t{1} << v.size()) - 1);
}

Real brute_median_cost(const std::vector<Real>& v) {
  if (v.empty()) return Real(0);
  Real best;
  bool first = true;
  for (const auto& c : v) {
    Real s(0);
    for (const auto& x : v) s += abs(x - c);
    if (first || s < best) best = s, first = false;
  }
  return best;
}

Real path_interval_dp(const MetricGraph& g, const PLFunction& f) {
  // order the edges along the path from a degree-1 vertex
  std::size_t n = g.vertex_count();
  std::size_t start = n;
  for (std::size_t v = 0; v < n; ++v)
    if (g.degree(v) == 1) {
      start = v;
      break;
    }
  if (start == n || g.edge_count() + 1 != n) throw std::invalid_argument("not a path");
  std::vector<Real> samples;
  std::vector<char> used(g.edge_count(), 0);
  std::size_t cur = start;
  for (std::size_t k = 0; k < g.edge_count(); ++k) {
    std::size_t e = g.edge_count();
    for (std::size_t i = 0; i < g.edge_count(); ++i)
      if (!used[i] && (g.u_index(i) == cur || g.v_index(i) == cur)) e = i;
    if (e == g.edge_count()) throw std::invalid_argument("not a path");
    used[e] = 1;
    bool forward = g.u_index(e) == cur;
    std::vector<Real> seq;
    for (const auto& p : f.pieces[e]) {
      // points at distance eps and 2 eps from each piece end, in the limit
      // eps -> 0, so that one arc can end and the next begin at the same end
      seq.push_back(p.v0);
      seq.push_back(p.v0);
      seq.push_back((p.v0 + p.v1) / Real(2));
      seq.push_back(p.v1);
      seq.push_back(p.v1);
    }
    if (!forward) std::reverse(seq.begin(), seq.end());
    samples.insert(samples.end(), seq.begin(), seq.end());
    cur = forward ? g.v_index(e) : g.u_index(e);
  }
  // best[i]: max over disjoint intervals with endpoints among samples[0..i)
  std::size_t m = samples.size();
  std::vector<Real> best(m + 1, Real(0));
  for (std::size_t i = 1; i <= m; ++i) {
    best[i] = best[i - 1];
    for (std::size_t a = 0; a + 1 < i; ++a) best[i] = max(best[i], best[a] + abs(samples[i - 1] - samples[a]));
  }
  return best[m];
}

}  // namespace oracle
