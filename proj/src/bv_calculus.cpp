#include "bvgraph/bv_calculus.hpp"

#include <algorithm>
#include <map>

#include "bvgraph/measure.hpp"

namespace bvg {

namespace {

std::vector<std::pair<Direction, Real>> limits_at(const MetricGraph& g, const PLFunction& f,
                                                  const PointRef& p) {
  std::vector<std::pair<Direction, Real>> out;
  for (const auto& d : incident_directions(g, p)) out.emplace_back(d, limit_along(g, f, p, d));
  return out;
}

bool limits_agree(const std::vector<std::pair<Direction, Real>>& ls) {
  for (const auto& l : ls)
    if (!approx_equal(l.second, ls.front().second)) return false;
  return true;
}

// Shortest elementary segment touching p.
Real shortest_incident_segment(const MetricGraph& g, const PLFunction& f, const PointRef& p0) {
  PointRef p = canonical(g, p0);
  std::optional<Real> best;
  auto consider = [&](std::size_t e, const Real& t, bool up) {
    auto offs = critical_offsets(f, e);
    const Real& L = g.edges()[e].length;
    Real len;
    if (up) {
      auto it = std::upper_bound(offs.begin(), offs.end(), t);
      len = (it == offs.end() ? L : *it) - t;
    } else {
      auto it = std::lower_bound(offs.begin(), offs.end(), t);
      len = t - (it == offs.begin() ? Real(0) : *std::prev(it));
    }
    if (!best || len < *best) best = len;
  };
  if (p.is_vertex()) {
    for (const auto& in : g.incident(g.vertex_index(p.id))) {
      if (in.at_start)
        consider(in.edge, Real(0), true);
      else
        consider(in.edge, g.edges()[in.edge].length, false);
    }
  } else {
    std::size_t e = g.edge_index(p.id);
    consider(e, p.t, true);
    consider(e, p.t, false);
  }
  return best.value_or(Real(1));
}

}  // namespace

CurveBoundary curve_boundary(const MetricGraph& g, const EdgeSubset& E) {
  validate_subset(g, E);
  PLFunction chi = good_representative(g, indicator(g, E));
  CurveBoundary cb;
  for (const auto& p : critical_points(g, chi))
    if (!limits_agree(limits_at(g, chi, p))) cb.points.push_back(p);
  cb.count = cb.points.size();
  return cb;
}

PerimeterBound perimeter_upper_bound(const MetricGraph& g, const EdgeSubset& E, const Real& C0,
                                     int halvings) {
  if (C0.sign() <= 0) throw std::invalid_argument("C0 must be positive");
  auto cb = curve_boundary(g, E);
  PerimeterBound out;
  out.bound = Real(0);
  out.points = cb.points;
  if (cb.points.empty()) return out;
  PLFunction chi = indicator(g, E);

  std::size_t n = cb.points.size();
  std::vector<Real> delta0;
  for (std::size_t j = 0; j < n; ++j) {
    Real d = shortest_incident_segment(g, chi, cb.points[j]);
    for (std::size_t k = 0; k < n; ++k)
      if (k != j) d = min(d, geodesic_distance(g, cb.points[j], cb.points[k]) / Real(2));
    delta0.push_back(d);
  }

  std::vector<BallFamily> inner_balls, balls;
  for (const auto& x : cb.points) {
    inner_balls.emplace_back(g, x, true);
    balls.emplace_back(g, x);
  }
  std::optional<Real> best;
  std::vector<Real> best_inner(n);
  std::vector<char> have_inner(n, 0);
  for (int i = 0; i <= halvings; ++i) {
    Real scale = Real::pow2(-i);
    bool admissible = true;
    std::vector<Real> radii, ratios;
    Real sum(0);
    for (std::size_t j = 0; j < n; ++j) {
      Real d = delta0[j] * scale;
      Real inner = inner_balls[j].measure(d) / d;
      if (!have_inner[j] || inner < best_inner[j]) best_inner[j] = inner, have_inner[j] = 1;
      if (!(inner < C0)) admissible = false;
      Real ratio = balls[j].measure(d) / d;
      radii.push_back(d);
      ratios.push_back(ratio);
      sum += ratio;
    }
    if (admissible && (!best || sum < *best)) {
      best = sum;
      out.scale = static_cast<std::size_t>(i);
      out.radii = radii;
      out.ratios = ratios;
    }
  }
  if (!best) {
    std::size_t worst = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (!(best_inner[j] < C0) && (best_inner[worst] < C0 || best_inner[worst] < best_inner[j]))
        worst = j;
    throw PreconditionError("density precondition violated at " + cb.points[worst].to_string() +
                                ": best ratio " + best_inner[worst].to_string() + " is not below C0 = " +
                                C0.to_string(),
                            cb.points[worst], best_inner[worst], C0);
  }
  out.bound = *best;
  return out;
}

TvBracket tv_bracket(const MetricGraph& g, const PLFunction& f, const SolveOptions& opt) {
  TvBracket b;
  b.var = var_total(g, f, opt);
  b.iv = variation_solve(build_gadget(g, f), VariationMode::iV, opt);
  b.lower = max(b.var, b.iv.total);
  b.edge_integral = Real(0);
  for (const auto& ps : f.pieces)
    for (const auto& p : ps) b.edge_integral += abs(p.v1 - p.v0);
  b.upper = b.edge_integral;
  for (const auto& p : critical_points(g, f)) {
    auto ls = limits_at(g, f, p);
    if (ls.empty() || limits_agree(ls)) continue;
    JumpCost jc{p, {}, Real(0), Real(0)};
    for (const auto& l : ls) jc.limits.push_back(l.second);
    auto sorted = jc.limits;
    std::sort(sorted.begin(), sorted.end());
    jc.median = sorted[(sorted.size() - 1) / 2];
    for (const auto& L : sorted) jc.cost += abs(L - jc.median);
    b.upper += jc.cost;
    b.jump_costs.push_back(std::move(jc));
  }
  return b;
}

CoareaSweep coarea_sweep(const MetricGraph& g, const PLFunction& f, const SolveOptions& opt) {
  CoareaSweep out;
  out.integral = Real(0);
  for (const auto& ps : f.pieces)
    for (const auto& p : ps) {
      out.thresholds.push_back(p.v0);
      out.thresholds.push_back(p.v1);
    }
  for (const auto& p : critical_points(g, f)) out.thresholds.push_back(eval_at(g, f, p));
  std::sort(out.thresholds.begin(), out.thresholds.end());
  out.thresholds.erase(std::unique(out.thresholds.begin(), out.thresholds.end(),
                                   [](const Real& a, const Real& b) { return approx_equal(a, b); }),
                       out.thresholds.end());
  for (std::size_t i = 0; i + 1 < out.thresholds.size(); ++i) {
    Real t = (out.thresholds[i] + out.thresholds[i + 1]) / Real(2);
    Real v = var_total(g, level_indicator(g, f, t), opt);
    out.samples.push_back(t);
    out.var_levels.push_back(v);
    out.integral += v * (out.thresholds[i + 1] - out.thresholds[i]);
  }
  return out;
}

namespace {

struct Window {
  Real a, b;
  std::vector<Piece> pieces;
};

std::vector<Piece> splice(const std::vector<Piece>& ps, std::vector<Window> ws) {
  std::sort(ws.begin(), ws.end(), [](const Window& x, const Window& y) { return x.a < y.a; });
  std::vector<Piece> out;
  for (const auto& p : ps) {
    Real cur = p.t0;
    for (const auto& w : ws) {
      if (!(w.a < p.t1) || !(p.t0 < w.b)) continue;
      Real stop = min(w.a, p.t1);
      if (cur < stop) out.push_back({cur, stop, piece_value(p, cur), piece_value(p, stop)});
      cur = max(cur, w.b);
    }
    if (cur < p.t1) out.push_back({cur, p.t1, piece_value(p, cur), p.v1});
  }
  for (auto& w : ws) out.insert(out.end(), w.pieces.begin(), w.pieces.end());
  std::sort(out.begin(), out.end(), [](const Piece& x, const Piece& y) { return x.t0 < y.t0; });
  return out;
}

// Slope of the function moving away from the point along d, and the piece
// that carries it.
Real slope_away(const MetricGraph& g, const PLFunction& f, const PointRef& p, const Direction& d) {
  std::size_t e = g.edge_index(d.edge_id);
  Real t = p.is_vertex() ? (d.approach == Approach::from_above ? Real(0) : g.edges()[e].length) : p.t;
  const auto& ps = f.pieces[e];
  for (const auto& pc : ps) {
    if (d.approach == Approach::from_above && !(t < pc.t0) && t < pc.t1)
      return (pc.v1 - pc.v0) / (pc.t1 - pc.t0);
    if (d.approach == Approach::from_below && pc.t0 < t && !(pc.t1 < t))
      return -(pc.v1 - pc.v0) / (pc.t1 - pc.t0);
  }
  throw std::logic_error("no piece next to " + p.to_string());
}

}  // namespace

SmoothResult smooth_jumps(const MetricGraph& g, const PLFunction& f, const Real& eps, const Real& C0,
                          const SolveOptions& opt) {
  if (eps.sign() <= 0) throw std::invalid_argument("epsilon must be positive");
  if (C0.sign() <= 0) throw std::invalid_argument("C0 must be positive");
  SmoothResult res;
  res.var = var_total(g, f, opt);
  res.bound = (Real(3) + Real(4) * C0) * res.var;
  res.mass = Real(0);

  PLFunction v = good_representative(g, f);
  std::vector<JumpRecord> jumps;
  for (const auto& p : critical_points(g, v)) {
    auto r = jump_record(g, v, p);
    if (r.size.sign() > 0) jumps.push_back(std::move(r));
  }
  if (jumps.empty()) {
    res.u = f;
    res.pv = pointwise_variation(g, f, VariationMode::pV, opt);
    res.certified = !(res.bound < res.pv) || approx_equal(res.pv, res.bound);
    return res;
  }
  std::stable_sort(jumps.begin(), jumps.end(),
                   [](const JumpRecord& a, const JumpRecord& b) { return b.size < a.size; });

  std::optional<Real> lmin;
  for (const auto& s : build_gadget(g, v).segments)
    if (!lmin || s.t1 - s.t0 < *lmin) lmin = s.t1 - s.t0;
  Real n(static_cast<long>(jumps.size()));

  std::vector<std::vector<Window>> windows(g.edge_count());
  for (const auto& jr : jumps) {
    std::size_t deg = jr.limits.size();
    Real degr(static_cast<long>(deg));
    // H¹(B(x, 2r)) / r = 2·deg below the segment scale.
    if (!(degr < C0))
      throw PreconditionError("density precondition violated at " + jr.point.to_string() +
                                  ": ratio " + (Real(2) * degr).to_string() + " is not below 2·C0 = " +
                                  (Real(2) * C0).to_string(),
                              jr.point, Real(2) * degr, Real(2) * C0);
    std::vector<Real> slopes;
    Real slope_sum(0);
    for (const auto& [d, L] : jr.limits) {
      slopes.push_back(slope_away(g, v, jr.point, d));
      slope_sum += abs(slopes.back());
    }
    Real r = *lmin / Real(4);
    int i = 0;
    for (; i < 200; ++i, r = r / Real(2)) {
      bool local = !(jr.size < Real(2) * r * slope_sum);      // pV(v, 2B) <= 2 J_v(x)
      bool small = Real(2) * r * degr < eps / n;               // ball mass budget
      if (local && small) break;
    }
    if (i == 200) throw std::logic_error("no admissible smoothing radius");
    Real avg(0);
    for (std::size_t k = 0; k < deg; ++k) avg += jr.limits[k].second + slopes[k] * r / Real(2);
    avg = avg / degr;
    res.blends.push_back({jr.point, jr.size, r, avg});
    res.mass += Real(2) * r * degr;

    for (std::size_t k = 0; k < deg; ++k) {
      const auto& [d, L] = jr.limits[k];
      std::size_t e = g.edge_index(d.edge_id);
      Real t = jr.point.is_vertex() ? (d.approach == Approach::from_above ? Real(0) : g.edges()[e].length)
                                    : jr.point.t;
      Real far = L + slopes[k] * Real(2) * r;
      if (d.approach == Approach::from_above)
        windows[e].push_back({t, t + Real(2) * r,
                              {{t, t + r, avg, avg}, {t + r, t + Real(2) * r, avg, far}}});
      else
        windows[e].push_back({t - Real(2) * r, t,
                              {{t - Real(2) * r, t - r, far, avg}, {t - r, t, avg, avg}}});
    }
    if (jr.point.is_vertex()) {
      v.vertex_values[g.vertex_index(jr.point.id)] = avg;
    } else {
      auto& ov = v.overrides[g.edge_index(jr.point.id)];
      ov.erase(std::remove_if(ov.begin(), ov.end(), [&](const auto& o) { return o.first == jr.point.t; }),
               ov.end());
    }
  }
  for (std::size_t e = 0; e < g.edge_count(); ++e)
    if (!windows[e].empty()) v.pieces[e] = splice(v.pieces[e], windows[e]);
  validate_function(g, v);
  res.u = normalized(g, v);
  res.pv = pointwise_variation(g, res.u, VariationMode::pV, opt);
  res.certified = !(res.bound < res.pv) || approx_equal(res.pv, res.bound);
  return res;
}

Real classical_variation_interval(const MetricGraph& g, const PLFunction& f) {
  if (!g.is_tree()) throw std::invalid_argument("classical variation needs a path graph");
  int start = -1;
  for (std::size_t i = 0; i < g.vertex_count(); ++i) {
    if (g.degree(i) > 2) throw std::invalid_argument("classical variation needs a path graph");
    if (g.degree(i) == 1 && (start < 0 || g.vertices()[i].id < g.vertices()[start].id))
      start = static_cast<int>(i);
  }
  if (start < 0) throw std::invalid_argument("classical variation needs a path graph");

  std::vector<std::pair<Real, Real>> run;  // (value at start, value at end) along the path
  std::size_t x = static_cast<std::size_t>(start);
  std::vector<char> used(g.edge_count(), 0);
  for (std::size_t step = 0; step < g.edge_count(); ++step) {
    const Incidence* next = nullptr;
    for (const auto& in : g.incident(x))
      if (!used[in.edge]) next = &in;
    if (!next) break;
    used[next->edge] = 1;
    const auto& ps = f.pieces[next->edge];
    if (next->at_start) {
      for (const auto& p : ps) run.emplace_back(p.v0, p.v1);
      x = g.v_index(next->edge);
    } else {
      for (auto it = ps.rbegin(); it != ps.rend(); ++it) run.emplace_back(it->v1, it->v0);
      x = g.u_index(next->edge);
    }
  }
  Real total(0);
  for (std::size_t i = 0; i < run.size(); ++i) {
    total += abs(run[i].second - run[i].first);
    if (i > 0) total += abs(run[i].first - run[i - 1].second);
  }
  return total;
}

}  // namespace bvg
