#pragma once

#include <vector>

#include "bvgraph/io.hpp"
#include "bvgraph/star_plan.hpp"

namespace fx {

using namespace bvg;

inline Real R(long p, long q = 1) { return Real::ratio(p, q); }

/// Path 0-1-...-n along the x-axis.
inline MetricGraph path_graph(const std::vector<Real>& lengths, MetricMode mode = MetricMode::geodesic) {
  std::vector<Vertex> vs{{0, Point2{Real(0), Real(0)}}};
  std::vector<Edge> es;
  Real x(0);
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    x += lengths[i];
    vs.push_back({static_cast<int>(i + 1), Point2{x, Real(0)}});
    es.push_back({static_cast<int>(i), static_cast<int>(i), static_cast<int>(i + 1), lengths[i]});
  }
  return MetricGraph(mode, vs, es);
}

inline MetricGraph unit_interval(MetricMode mode = MetricMode::geodesic) { return path_graph({Real(1)}, mode); }

/// Hub 0 with up to four legs of length `leg` along the axes; tip of edge k is vertex k + 1.
inline MetricGraph axis_star(int legs, const Real& leg = Real(1), MetricMode mode = MetricMode::geodesic) {
  const int dx[] = {1, 0, -1, 0}, dy[] = {0, 1, 0, -1};
  std::vector<Vertex> vs{{0, Point2{Real(0), Real(0)}}};
  std::vector<Edge> es;
  for (int k = 0; k < legs; ++k) {
    vs.push_back({k + 1, Point2{leg * Real(dx[k]), leg * Real(dy[k])}});
    es.push_back({k, 0, k + 1, leg});
  }
  return MetricGraph(mode, vs, es);
}

/// Unit square cycle 0-1-2-3-0.
inline MetricGraph square_cycle(MetricMode mode = MetricMode::geodesic) {
  std::vector<Vertex> vs{{0, Point2{Real(0), Real(0)}}, {1, Point2{Real(1), Real(0)}},
                         {2, Point2{Real(1), Real(1)}}, {3, Point2{Real(0), Real(1)}}};
  std::vector<Edge> es{{0, 0, 1, Real(1)}, {1, 1, 2, Real(1)}, {2, 2, 3, Real(1)}, {3, 3, 0, Real(1)}};
  return MetricGraph(mode, vs, es);
}

inline PLFunction from_pieces(const MetricGraph& g, std::vector<std::vector<Piece>> pieces) {
  PLFunction f;
  f.pieces = std::move(pieces);
  f.overrides.assign(g.edge_count(), {});
  f.vertex_values.assign(g.vertex_count(), std::nullopt);
  validate_function(g, f);
  return f;
}

/// 0 on [0, 1/2), 1 on [1/2, 1].
inline PLFunction step(const MetricGraph& unit) {
  return from_pieces(unit, {{{R(0), R(1, 2), R(0), R(0)}, {R(1, 2), R(1), R(1), R(1)}}});
}

inline PLFunction identity(const MetricGraph& unit) { return from_pieces(unit, {{{R(0), R(1), R(0), R(1)}}}); }

/// Values 0, 1, 0, 1 at 0, 1, 2, 3 on a single edge of length 3.
inline PLFunction zigzag(const MetricGraph& three) {
  return from_pieces(three, {{{R(0), R(1), R(0), R(1)}, {R(1), R(2), R(1), R(0)}, {R(2), R(3), R(0), R(1)}}});
}

}  // namespace fx
