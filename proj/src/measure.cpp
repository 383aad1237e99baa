#include "bvgraph/measure.hpp"

#include <cmath>
#include <stdexcept>

namespace bvg {

Real h1_total(const MetricGraph& g) {
  Real s(0);
  for (const auto& e : g.edges()) s += e.length;
  return s;
}

BallFamily::BallFamily(const MetricGraph& g, const PointRef& center, bool inner)
    : g_(&g), center_(canonical(g, center)), ambient_(!inner && g.mode() == MetricMode::ambient_euclidean) {
  std::size_t m = g.edge_count();
  near_.assign(m, 0.0);
  if (!ambient_) {
    vertex_dist_ = geodesic_vertex_distances(g, center_);
    for (std::size_t e = 0; e < m; ++e) {
      bool own = !center_.is_vertex() && center_.id == g.edges()[e].id;
      near_[e] = own ? 0.0
                     : std::min(vertex_dist_[g.u_index(e)].to_double(), vertex_dist_[g.v_index(e)].to_double());
    }
    return;
  }
  Point2 x = position(g, center_);
  vertex_dist_.reserve(g.vertex_count());
  for (const auto& v : g.vertices()) vertex_dist_.push_back(euclidean(x, *v.pos));
  beta_.reserve(m);
  cross2_.reserve(m);
  for (std::size_t e = 0; e < m; ++e) {
    const Real& L = g.edges()[e].length;
    const Point2& a = *g.vertices()[g.u_index(e)].pos;
    const Point2& bb = *g.vertices()[g.v_index(e)].pos;
    // |a + t·dir - x|² < r² with |dir| = 1 (arc-length parametrization),
    // i.e. (t + beta)² < r² - cross², which avoids cancellation at tiny r
    Point2 dir{(bb.x - a.x) / L, (bb.y - a.y) / L};
    Point2 ax{a.x - x.x, a.y - x.y};
    beta_.push_back(dir.x * ax.x + dir.y * ax.y);
    Real cross = dir.x * ax.y - dir.y * ax.x;
    cross2_.push_back(cross * cross);
    double tb = -beta_.back().to_double(), len = L.to_double();
    double along = tb < 0 ? -tb : (tb > len ? tb - len : 0.0);
    near_[e] = std::sqrt(along * along + cross2_.back().to_double());
  }
}

EdgeSubset BallFamily::ball(const Real& r) const {
  if (r.sign() <= 0) throw std::invalid_argument("ball radius must be positive");
  const MetricGraph& g = *g_;
  EdgeSubset s;
  s.intervals.resize(g.edge_count());
  // relative slack keeps the double rejection conservative
  double reject = r.to_double() * (1 + 1e-9);
  Real r2 = r * r;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    if (near_[e] > reject) continue;
    const Real& L = g.edges()[e].length;
    std::vector<Interval> v;
    if (ambient_) {
      Real disc = r2 - cross2_[e];
      if (disc.sign() > 0) {
        Real root = sqrt(disc);
        Real lo = max(Real(0), -beta_[e] - root), hi = min(L, -beta_[e] + root);
        if (lo < hi) v.push_back({lo, hi});
      }
    } else {
      const Real& du = vertex_dist_[g.u_index(e)];
      const Real& dv = vertex_dist_[g.v_index(e)];
      if (du < r) v.push_back({Real(0), min(L, r - du)});
      if (dv < r) v.push_back({max(Real(0), L - (r - dv)), L});
      if (!center_.is_vertex() && center_.id == g.edges()[e].id)
        v.push_back({max(Real(0), center_.t - r), min(L, center_.t + r)});
      v = merge_intervals(std::move(v));
    }
    s.intervals[e] = std::move(v);
  }
  for (std::size_t i = 0; i < g.vertex_count(); ++i)
    if (vertex_dist_[i] < r) s.vertices.insert(g.vertices()[i].id);
  return s;
}

Real BallFamily::measure(const Real& r) const { return h1_of_subset(*g_, ball(r)); }

EdgeSubset ball_subset(const MetricGraph& g, const BallSpec& b) {
  if (b.radius.sign() <= 0) throw std::invalid_argument("ball radius must be positive");
  return BallFamily(g, b.center).ball(b.radius);
}

EdgeSubset inner_ball_subset(const MetricGraph& g, const BallSpec& b) {
  if (b.radius.sign() <= 0) throw std::invalid_argument("ball radius must be positive");
  return BallFamily(g, b.center, true).ball(b.radius);
}

Real h1_of_subset(const MetricGraph& g, const EdgeSubset& s) {
  (void)g;
  Real total(0);
  for (const auto& iv : s.intervals)
    for (const auto& i : iv) total += i.hi - i.lo;
  return total;
}

Real ball_measure(const MetricGraph& g, const PointRef& x, const Real& r) {
  return h1_of_subset(g, ball_subset(g, {x, r}));
}

Real inner_ball_measure(const MetricGraph& g, const PointRef& x, const Real& r) {
  return h1_of_subset(g, inner_ball_subset(g, {x, r}));
}

Codim1Content codim1_content(const MetricGraph& g, const std::vector<PointRef>& pts,
                             const std::vector<Real>& radii, std::size_t block) {
  Codim1Content out;
  out.value = Real(0);
  out.radii = radii;
  out.block = std::min(block, radii.size());
  if (pts.empty()) return out;
  if (radii.empty() || block == 0) throw std::invalid_argument("codim1_content needs radii");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (radii[i].sign() <= 0) throw std::invalid_argument("radii must be positive");
    if (i > 0 && !(radii[i] < radii[i - 1])) throw std::invalid_argument("radii must decrease");
  }
  for (const auto& p : pts) {
    PointContent pc{p, {}, Real(0)};
    BallFamily balls(g, p);
    for (const auto& r : radii) pc.ratios.push_back(balls.measure(r) / r);
    pc.value = pc.ratios.back();
    for (std::size_t i = radii.size() - out.block; i < radii.size(); ++i)
      pc.value = min(pc.value, pc.ratios[i]);
    out.value += pc.value;
    out.points.push_back(std::move(pc));
  }
  return out;
}

std::vector<Real> dyadic_radii(const Real& r0, int halvings) {
  if (r0.sign() <= 0 || halvings < 0) throw std::invalid_argument("bad radius grid");
  std::vector<Real> out{r0};
  for (int i = 0; i < halvings; ++i) out.push_back(out.back() / Real(2));
  return out;
}

}  // namespace bvg
