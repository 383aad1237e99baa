#pragma once

#include <vector>

#include "bvgraph/edge_subset.hpp"

namespace bvg {

struct BallSpec {
  PointRef center;
  Real radius;
};

Real h1_total(const MetricGraph& g);

/// Closure of the open ball B(center, radius) under the graph's metric.
/// Geodesic balls are at most two intervals per edge (three when the
/// center lies on the edge); ambient balls one interval per straight edge.
EdgeSubset ball_subset(const MetricGraph& g, const BallSpec& b);

/// Same, always in the inner (shortest-path) metric.
EdgeSubset inner_ball_subset(const MetricGraph& g, const BallSpec& b);

Real h1_of_subset(const MetricGraph& g, const EdgeSubset& s);

/// Balls around one center for many radii: distances and per-edge geometry
/// are computed once.
class BallFamily {
 public:
  BallFamily(const MetricGraph& g, const PointRef& center, bool inner = false);
  EdgeSubset ball(const Real& r) const;
  Real measure(const Real& r) const;

 private:
  const MetricGraph* g_;
  PointRef center_;
  bool ambient_;
  std::vector<Real> vertex_dist_;
  std::vector<Real> beta_, cross2_;  // ambient: foot of the perpendicular and squared offset per edge
  std::vector<double> near_;        // lower bound on the distance to each edge, for early rejection
};

/// H¹(B(x, r)) under the graph's metric.
Real ball_measure(const MetricGraph& g, const PointRef& x, const Real& r);
Real inner_ball_measure(const MetricGraph& g, const PointRef& x, const Real& r);

struct PointContent {
  PointRef point;
  std::vector<Real> ratios;  // H¹(B(p, r)) / r over the radius grid
  Real value;                // min over the smallest-scale block
};

struct Codim1Content {
  Real value;  // sum over points
  std::vector<Real> radii;
  std::size_t block = 0;
  std::vector<PointContent> points;
};

/// Finite-set codimension-one content: Σ_p min_{r in block} H¹(B(p,r))/r,
/// where the block is the last `block` radii of the decreasing grid.
Codim1Content codim1_content(const MetricGraph& g, const std::vector<PointRef>& pts,
                             const std::vector<Real>& radii, std::size_t block = 2);

/// Decreasing dyadic grid r0, r0/2, ..., r0/2^halvings.
std::vector<Real> dyadic_radii(const Real& r0, int halvings);

}  // namespace bvg
