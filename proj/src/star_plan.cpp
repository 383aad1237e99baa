#include "bvgraph/star_plan.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace bvg {

namespace {

PointRef ray_point(const MetricGraph& g, int edge, const Real& t) {
  if (t.is_zero()) return PointRef::at_vertex(0);
  if (t == g.edges()[g.edge_index(edge)].length) return PointRef::at_vertex(edge + 1);
  return PointRef::on_edge(edge, t);
}

}  // namespace

std::vector<Real> star_doubling_radii(int depth) {
  std::vector<Real> r;
  for (int i = 3; i <= 3 * depth; ++i) r.push_back(Real::pow2(-i));
  return r;
}

std::vector<PointRef> star_doubling_centers(const MetricGraph& g, int depth) {
  std::vector<PointRef> c{PointRef::at_vertex(0)};
  const Real& L0 = g.edges()[0].length;
  for (const auto& r : star_doubling_radii(depth)) {
    Real d = Real::ratio(3, 2) * r;
    if (d < L0) c.push_back(PointRef::on_edge(0, d));
  }
  for (int j = 1; j <= depth; ++j) {
    long k = j == 1 ? 0 : (1L << (depth - j));
    int e = static_cast<int>(2 * k);
    c.push_back(PointRef::on_edge(e, g.edges()[g.edge_index(e)].length / Real(2)));
  }
  return c;
}

GrowthSeries star_doubling_growth(MetricMode mode, int from, int to) {
  GrowthSeries s;
  for (int J = from; J <= to; ++J) {
    MetricGraph g = star_space({J, mode});
    s.emplace_back(J, doubling_scan(g, star_doubling_centers(g, J), star_doubling_radii(J)).max_ratio);
  }
  return s;
}

std::vector<std::pair<PointRef, PointRef>> star_quasiconvexity_pairs(const MetricGraph& g, int depth) {
  std::vector<std::pair<PointRef, PointRef>> out;
  long lines = 1L << depth;
  for (long k = 0; k < lines; ++k) {
    // rays 2k and 2k + 2 are adjacent; the last line wraps to the opposite ray of line 0
    int a = static_cast<int>(2 * k);
    int b = k + 1 < lines ? static_cast<int>(2 * k + 2) : 1;
    Real s = min(g.edges()[g.edge_index(a)].length, g.edges()[g.edge_index(b)].length);
    out.emplace_back(ray_point(g, a, s), ray_point(g, b, s));
  }
  return out;
}

GrowthSeries star_quasiconvexity_growth(MetricMode mode, int from, int to) {
  GrowthSeries s;
  for (int J = from; J <= to; ++J) {
    // inner length against the space's own metric; 1 throughout in geodesic mode
    MetricGraph g = star_space({J, MetricMode::ambient_euclidean}).with_mode(mode);
    s.emplace_back(J, quasiconvexity_scan(g, star_quasiconvexity_pairs(g, J)).max_ratio);
  }
  return s;
}

std::vector<Real> star_boundary_radii(int depth) {
  std::vector<Real> r;
  // below 2^{-3J-2} a ball around any tip sees only its own ray
  for (int k = 1; 2 * k + 1 <= 3 * depth + 3; ++k) r.push_back(Real::pow2(-2 * k - 1));
  return r;
}

std::vector<PointRef> star_boundary_candidates(const MetricGraph& g, int depth, std::uint64_t seed,
                                               int random_count) {
  std::vector<PointRef> c{PointRef::at_vertex(0)};
  std::vector<int> tips = e_ray_ids(depth);
  for (int j = 1; j <= depth; ++j) tips.push_back(j == 1 ? 0 : static_cast<int>(2 * (3L << (depth - j))) % (2 << depth));
  std::sort(tips.begin(), tips.end());
  tips.erase(std::unique(tips.begin(), tips.end()), tips.end());
  for (int e : tips) c.push_back(PointRef::at_vertex(e + 1));
  const Real floor = Real::pow2(-12);
  std::vector<int> long_rays;
  for (const auto& e : g.edges())
    if (Real(2) * floor < e.length) long_rays.push_back(e.id);
  std::mt19937_64 rng(seed);
  for (int i = 0; i < random_count && !long_rays.empty(); ++i) {
    int e = long_rays[rng() % long_rays.size()];
    const Real& L = g.edges()[g.edge_index(e)].length;
    Real t = floor + (L - Real(2) * floor) * Real::ratio(static_cast<long>(1 + rng() % 63), 64);
    c.push_back(PointRef::on_edge(e, t));
  }
  return c;
}

std::vector<BallSpec> star_origin_balls(const MetricGraph& g, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<BallSpec> balls;
  for (int b = 0; b < count; ++b) {
    int e = g.edges()[rng() % g.edge_count()].id;
    const Real& L = g.edges()[g.edge_index(e)].length;
    Real d = L * Real::ratio(static_cast<long>(rng() % 9), 8);
    Real r = (d.is_zero() ? L : d) * Real::ratio(static_cast<long>(9 + rng() % 24), 8);
    balls.push_back({ray_point(g, e, d), r});
  }
  return balls;
}

PoincareSummary poincare_sample(const MetricGraph& g, const std::vector<BallSpec>& balls, int functions,
                                const PoincareParams& params, std::uint64_t seed) {
  PoincareSummary s;
  s.params = params;
  s.seed = seed;
  std::mt19937_64 rng(seed);
  for (const auto& b : balls)
    for (int k = 0; k < functions; ++k) {
      PoincareResult res = poincare_check(g, b, random_continuous_function(g, rng(), 3), params);
      ++s.samples;
      if (!res.ok) ++s.violations;
      if (res.rhs.sign() > 0) s.worst_ratio = std::max(s.worst_ratio, res.lhs.to_double() / res.rhs.to_double());
    }
  return s;
}

FedererInputs star_federer_inputs(const StarPlanOptions& opt) {
  if (opt.depth < 1 || opt.depth > kMaxStarDepth) throw std::invalid_argument("star depth out of range");
  StarSpaceSpec spec{opt.depth, opt.mode};
  MetricGraph g = star_space(spec);
  FedererInputs in;
  int bd = std::max(opt.depth, opt.boundary_depth);
  if (bd > opt.depth) {
    StarSpaceSpec bs{bd, opt.mode};
    in.boundary_proxy = BoundaryProxy{star_space(bs), indicator_E(bs), "star:J=" + std::to_string(bd)};
  }
  const MetricGraph& bg = in.boundary_proxy ? in.boundary_proxy->graph : g;
  in.boundary_radii = star_boundary_radii(bd);
  in.candidates = star_boundary_candidates(bg, bd, opt.seed, opt.random_candidates);
  in.doubling_centers = star_doubling_centers(g, opt.depth);
  in.doubling_radii = star_doubling_radii(opt.depth);
  int to = opt.growth_to > 0 ? opt.growth_to : std::max(opt.depth, 5);
  in.doubling_growth = star_doubling_growth(opt.mode, 2, to);
  if (opt.mode == MetricMode::ambient_euclidean) in.doubling_bound = Real::pow2(18);
  in.quasiconvexity_growth = star_quasiconvexity_growth(opt.mode, 1, to);
  if (opt.mode == MetricMode::ambient_euclidean)
    in.quasiconvexity = quasiconvexity_scan(g, star_quasiconvexity_pairs(g, opt.depth));
  in.density_points = {PointRef::at_vertex(0)};
  in.density_radii = star_boundary_radii(opt.depth);
  in.C0_scan = {Real(4), Real(1L << (opt.depth + 2))};
  if (opt.poincare_balls > 0 && opt.poincare_functions > 0)
    in.poincare = poincare_sample(g, star_origin_balls(g, opt.poincare_balls, opt.seed), opt.poincare_functions,
                                  opt.poincare, opt.seed);
  in.tv_threshold = opt.tv_threshold;
  return in;
}

}  // namespace bvg
