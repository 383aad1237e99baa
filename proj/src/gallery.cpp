#include "bvgraph/gallery.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <stdexcept>

namespace bvg {

namespace {

void check_depth(int J) {
  if (J < 1 || J > kMaxStarDepth)
    throw std::invalid_argument("star depth must lie in 1.." + std::to_string(kMaxStarDepth));
}

int nu2(long k) {
  int n = 0;
  while (k % 2 == 0) k /= 2, ++n;
  return n;
}

}  // namespace

int first_level(int depth, long k) { return k == 0 ? 1 : depth - nu2(k); }

MetricGraph star_space(const StarSpaceSpec& spec) {
  check_depth(spec.depth);
  const int J = spec.depth;
  const long lines = 1L << J;
  std::vector<Vertex> vs{{0, Point2{Real(0), Real(0)}}};
  std::vector<Edge> es;
  for (long k = 0; k < lines; ++k) {
    Real L = Real::pow2(-2 * first_level(J, k) - 1);
    Real cx, sy;
    if (k == 0) {
      cx = L, sy = Real(0);
    } else if (2 * k == lines) {
      cx = Real(0), sy = L;
    } else {
      double th = std::numbers::pi * static_cast<double>(k) / static_cast<double>(lines);
      cx = Real::inexact(L.to_double() * std::cos(th));
      sy = Real::inexact(L.to_double() * std::sin(th));
    }
    for (int side = 0; side < 2; ++side) {
      int eid = static_cast<int>(2 * k + side);
      Point2 tip = side == 0 ? Point2{cx, sy} : Point2{-cx, -sy};
      vs.push_back({eid + 1, tip});
      es.push_back({eid, 0, eid + 1, L});
    }
  }
  return MetricGraph(spec.mode, std::move(vs), std::move(es));
}

std::vector<int> e_ray_ids(int depth) {
  check_depth(depth);
  std::vector<int> ids;
  for (int j = 1; j <= depth; ++j) {
    long k = 1L << (depth - j);
    ids.push_back(static_cast<int>(2 * k));
    ids.push_back(static_cast<int>(2 * k + 1));
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

EdgeSubset indicator_E(const StarSpaceSpec& spec) {
  MetricGraph g = star_space(spec);
  EdgeSubset s = empty_subset(g);
  s.vertices.insert(0);
  for (int id : e_ray_ids(spec.depth)) {
    std::size_t e = g.edge_index(id);
    s.intervals[e].push_back({Real(0), g.edges()[e].length});
    s.vertices.insert(g.edges()[e].v);
  }
  return s;
}

namespace {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  // Plain modulo keeps the stream identical across standard libraries.
  std::uint64_t below(std::uint64_t n) { return gen_() % n; }
  bool chance(double p) { return p > 0 && static_cast<double>(gen_() % 1000000) < p * 1e6; }
  Real value() { return Real::ratio(static_cast<long long>(below(17)) - 8, 2); }

 private:
  std::mt19937_64 gen_;
};

std::vector<Piece> random_pieces(Rng& rng, const Real& L, const Real& a, const Real& b, int max_pieces,
                                 double interior_jump_prob) {
  int m = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(std::max(1, max_pieces))));
  std::set<int> cuts;
  while (static_cast<int>(cuts.size()) < m - 1) cuts.insert(1 + static_cast<int>(rng.below(7)));
  std::vector<Real> ts{Real(0)};
  for (int c : cuts) ts.push_back(L * Real::ratio(c, 8));
  ts.push_back(L);
  std::vector<Real> vals{a};
  for (std::size_t i = 1; i + 1 < ts.size(); ++i) vals.push_back(rng.value());
  vals.push_back(b);
  std::vector<Piece> ps;
  for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
    Real v0 = vals[i];
    if (i > 0 && rng.chance(interior_jump_prob)) v0 = v0 + Real(1);
    ps.push_back({ts[i], ts[i + 1], v0, vals[i + 1]});
  }
  return ps;
}

}  // namespace

RandomInstance random_instance(std::uint64_t seed, const RandomSpec& spec) {
  if (spec.edges < 1 || spec.edges > 10000) throw std::invalid_argument("edge count out of range");
  Rng rng(seed);
  int nv = spec.edges - spec.extra_edges + 1;
  if (nv < 2) throw std::invalid_argument("too many extra edges");
  std::vector<int> deg(nv, 0);
  std::vector<std::pair<int, int>> links;
  std::set<std::pair<int, int>> present;
  for (int i = 1; i < nv; ++i) {
    int p;
    if (spec.path) {
      p = i - 1;
    } else {
      std::vector<int> open;
      for (int j = 0; j < i; ++j)
        if (spec.max_degree <= 0 || deg[j] < spec.max_degree) open.push_back(j);
      if (open.empty()) throw std::invalid_argument("degree bound too small");
      p = open[rng.below(open.size())];
    }
    ++deg[p], ++deg[i];
    links.emplace_back(p, i);
    present.emplace(p, i);
  }
  for (int x = 0; x < spec.extra_edges; ++x) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
      int a = static_cast<int>(rng.below(nv)), b = static_cast<int>(rng.below(nv));
      if (a == b) continue;
      if (a > b) std::swap(a, b);
      if (present.count({a, b})) continue;
      if (spec.max_degree > 0 && (deg[a] >= spec.max_degree || deg[b] >= spec.max_degree)) continue;
      ++deg[a], ++deg[b];
      links.emplace_back(a, b);
      present.emplace(a, b);
      break;
    }
  }

  std::vector<Vertex> vs;
  for (int i = 0; i < nv; ++i) vs.push_back({i, std::nullopt});
  std::vector<Edge> es;
  for (std::size_t i = 0; i < links.size(); ++i) {
    auto [a, b] = links[i];
    if (!spec.path && rng.below(2)) std::swap(a, b);
    es.push_back({static_cast<int>(i), a, b, Real::ratio(1 + static_cast<long long>(rng.below(16)), 4)});
  }
  MetricGraph g(MetricMode::geodesic, std::move(vs), std::move(es));

  std::vector<Real> vval;
  std::vector<char> jump(nv, 0);
  for (int i = 0; i < nv; ++i) {
    vval.push_back(rng.value());
    if (deg[i] >= 1 && rng.chance(spec.vertex_jump_prob)) jump[i] = 1;
  }
  // Per (edge, end) value; jumping vertices get independent limits with at
  // least one limit moved off the vertex value.
  std::vector<std::pair<Real, Real>> ends;
  std::vector<char> moved(nv, 0);
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    int u = g.edges()[e].u, v = g.edges()[e].v;
    Real a = vval[u], b = vval[v];
    if (jump[u]) {
      a = moved[u] ? rng.value() : vval[u] + Real(1);
      moved[u] = 1;
    }
    if (jump[v]) {
      b = moved[v] ? rng.value() : vval[v] + Real(1);
      moved[v] = 1;
    }
    ends.emplace_back(a, b);
  }

  PLFunction f;
  f.overrides.assign(g.edge_count(), {});
  f.vertex_values.assign(g.vertex_count(), std::nullopt);
  for (int i = 0; i < nv; ++i) f.vertex_values[i] = vval[i];
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    f.pieces.push_back(random_pieces(rng, g.edges()[e].length, ends[e].first, ends[e].second,
                                     spec.max_pieces, spec.interior_jump_prob));
    if (rng.chance(spec.override_prob)) {
      Real t = g.edges()[e].length * Real::ratio(1 + static_cast<long long>(rng.below(7)), 8);
      f.overrides[e].emplace_back(t, rng.value());
    }
  }

  RandomInstance inst{std::move(g), std::move(f), {}};
  for (int i = 0; i < nv; ++i)
    if (jump[i]) inst.injected.push_back(PointRef::at_vertex(i));
  return inst;
}

PLFunction random_continuous_function(const MetricGraph& g, std::uint64_t seed, int max_pieces) {
  Rng rng(seed);
  std::vector<Real> vval;
  for (std::size_t i = 0; i < g.vertex_count(); ++i) vval.push_back(rng.value());
  PLFunction f;
  f.overrides.assign(g.edge_count(), {});
  f.vertex_values.assign(g.vertex_count(), std::nullopt);
  for (std::size_t e = 0; e < g.edge_count(); ++e)
    f.pieces.push_back(random_pieces(rng, g.edges()[e].length, vval[g.u_index(e)], vval[g.v_index(e)],
                                     max_pieces, 0.0));
  return f;
}

}  // namespace bvg
