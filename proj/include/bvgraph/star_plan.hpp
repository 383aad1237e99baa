#pragma once

#include <cstdint>
#include <vector>

#include "bvgraph/diagnostics.hpp"
#include "bvgraph/gallery.hpp"

namespace bvg {

/// Seeded sample plans for the star spaces.

/// 2^{-3}, 2^{-4}, ..., 2^{-3J}.
std::vector<Real> star_doubling_radii(int depth);

/// The origin, points of the angle-0 ray at distance 3r/2 for each radius,
/// and the midpoint of one ray per level.
std::vector<PointRef> star_doubling_centers(const MetricGraph& g, int depth);

/// max doubling ratio of star_space(J) for J = from..to.
GrowthSeries star_doubling_growth(MetricMode mode, int from, int to);

/// Points at equal distance from the origin on adjacent rays.
std::vector<std::pair<PointRef, PointRef>> star_quasiconvexity_pairs(const MetricGraph& g, int depth);

/// max geodesic/ambient ratio of star_space(J) for J = from..to.
GrowthSeries star_quasiconvexity_growth(MetricMode mode, int from, int to);

/// 2^{-2k-1} down to below 2^{-3J-2}, where balls around ray tips no longer
/// reach neighbouring rays.
std::vector<Real> star_boundary_radii(int depth);

/// Origin, the tips of E and of one ray outside E per level, and `random_count` seeded points inside rays at
/// distance at least 2^{-12} from the origin.
std::vector<PointRef> star_boundary_candidates(const MetricGraph& g, int depth, std::uint64_t seed,
                                               int random_count);

/// Seeded balls B(x, r) with x on a random ray and r > d(x, 0).
std::vector<BallSpec> star_origin_balls(const MetricGraph& g, int count, std::uint64_t seed);

/// `functions` seeded continuous PL functions per ball through poincare_check.
PoincareSummary poincare_sample(const MetricGraph& g, const std::vector<BallSpec>& balls, int functions,
                                const PoincareParams& params, std::uint64_t seed);

struct StarPlanOptions {
  int depth = 3;
  MetricMode mode = MetricMode::geodesic;
  std::uint64_t seed = 0;
  int boundary_depth = kMaxStarDepth;
  int random_candidates = 32;
  int poincare_balls = 20;
  int poincare_functions = 64;
  PoincareParams poincare{Real(1), Real(4), Real(3)};
  int growth_to = 0;  // 0 means max(depth, 5)
  Real tv_threshold = Real(6);
};

/// Full set of Federer-report inputs for star_space(depth) with gallery E.
FedererInputs star_federer_inputs(const StarPlanOptions& opt);

}  // namespace bvg
