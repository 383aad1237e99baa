#include "bvgraph/diagnostics.hpp"

#include <cmath>
#include <sstream>

namespace bvg {

DensityProfile density_liminf(const MetricGraph& g, const PointRef& x, const std::vector<Real>& radii) {
  if (radii.empty()) throw std::invalid_argument("density profile needs radii");
  DensityProfile d;
  d.point = canonical(g, x);
  BallFamily balls(g, x);
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (radii[i].sign() <= 0) throw std::invalid_argument("radii must be positive");
    if (i > 0 && !(radii[i] < radii[i - 1])) throw std::invalid_argument("radii must decrease");
    d.samples.emplace_back(radii[i], balls.measure(radii[i]) / radii[i]);
  }
  d.min_ratio = d.samples.front().second;
  for (const auto& s : d.samples) d.min_ratio = min(d.min_ratio, s.second);
  d.limit_ratio = d.samples.back().second;
  std::size_t n = d.samples.size();
  d.stabilized = n >= 3 && approx_equal(d.samples[n - 1].second, d.samples[n - 2].second) &&
                 approx_equal(d.samples[n - 2].second, d.samples[n - 3].second);
  return d;
}

DoublingScan doubling_scan(const MetricGraph& g, const std::vector<PointRef>& centers,
                           const std::vector<Real>& radii) {
  if (centers.empty() || radii.empty()) throw std::invalid_argument("doubling scan needs samples");
  DoublingScan s;
  bool first = true;
  for (const auto& c : centers) {
    BallFamily balls(g, c);
    for (const auto& r : radii) {
      Real small = balls.measure(r);
      if (small.sign() <= 0) throw std::logic_error("ball of zero measure at " + c.to_string());
      Real ratio = balls.measure(Real(2) * r) / small;
      ++s.samples;
      if (first || s.max_ratio < ratio) {
        s.max_ratio = ratio;
        s.worst = {canonical(g, c), r, ratio};
        first = false;
      }
    }
  }
  return s;
}

namespace {

// ∫ over [a, b] of |ℓ - c| for the linear ℓ with ℓ(a) = ua, ℓ(b) = ub.
Real abs_linear_integral(const Real& len, const Real& ua, const Real& ub) {
  if (ua.sign() * ub.sign() >= 0) return len * (abs(ua) + abs(ub)) / Real(2);
  return len * (ua * ua + ub * ub) / (Real(2) * (abs(ua) + abs(ub)));
}

template <class F>
void for_each_piece_in(const MetricGraph& g, const PLFunction& u, const EdgeSubset& s, F&& fn) {
  for (std::size_t e = 0; e < g.edge_count(); ++e)
    for (const auto& iv : s.intervals[e])
      for (const auto& p : u.pieces[e]) {
        Real a = max(iv.lo, p.t0), b = min(iv.hi, p.t1);
        if (a < b) fn(p, a, b);
      }
}

}  // namespace

PoincareResult poincare_check(const MetricGraph& g, const BallSpec& ball, const PLFunction& u,
                              const PoincareParams& params) {
  if (params.p < Real(1) || params.C.sign() <= 0 || params.lambda < Real(1))
    throw std::invalid_argument("Poincaré parameters need p >= 1, C > 0, lambda >= 1");
  if (!is_continuous(g, u)) throw std::invalid_argument("upper gradient not representable");
  PoincareResult res;
  if (ball.radius.sign() <= 0) throw std::invalid_argument("ball radius must be positive");
  BallFamily balls(g, ball.center);
  EdgeSubset B = balls.ball(ball.radius);
  res.ball_measure = h1_of_subset(g, B);
  if (res.ball_measure.sign() <= 0) throw std::invalid_argument("empty ball");

  Real integral(0);
  for_each_piece_in(g, u, B, [&](const Piece& p, const Real& a, const Real& b) {
    integral += (b - a) * (piece_value(p, a) + piece_value(p, b)) / Real(2);
  });
  res.mean = integral / res.ball_measure;
  Real dev(0);
  for_each_piece_in(g, u, B, [&](const Piece& p, const Real& a, const Real& b) {
    dev += abs_linear_integral(b - a, piece_value(p, a) - res.mean, piece_value(p, b) - res.mean);
  });
  res.lhs = dev / res.ball_measure;

  EdgeSubset LB = balls.ball(ball.radius * params.lambda);
  Real big = h1_of_subset(g, LB);
  bool p_one = params.p == Real(1);
  Real grad(0);
  for_each_piece_in(g, u, LB, [&](const Piece& p, const Real& a, const Real& b) {
    Real slope = abs((p.v1 - p.v0) / (p.t1 - p.t0));
    if (p_one)
      grad += slope * (b - a);
    else if (slope.sign() != 0)
      grad += Real::inexact(std::pow(slope.to_double(), params.p.to_double())) * (b - a);
  });
  Real avg = grad / big;
  Real root = p_one ? avg : Real::inexact(std::pow(avg.to_double(), 1.0 / params.p.to_double()));
  res.rhs = params.C * ball.radius * root;
  res.ok = !(res.rhs < res.lhs) || approx_equal(res.lhs, res.rhs);
  return res;
}

MtbScan mtb_scan(const MetricGraph& g, const EdgeSubset& E, const std::vector<PointRef>& candidates,
                 const std::vector<Real>& radii, const Real& threshold, std::size_t block) {
  if (radii.empty() || block == 0) throw std::invalid_argument("boundary scan needs radii");
  MtbScan scan;
  scan.threshold = threshold;
  scan.block = std::min(block, radii.size());
  scan.radii = radii;
  for (const auto& c : candidates) {
    MtbEntry en;
    en.point = canonical(g, c);
    BallFamily balls(g, c);
    for (std::size_t i = 0; i < radii.size(); ++i) {
      EdgeSubset B = balls.ball(radii[i]);
      Real mb = h1_of_subset(g, B);
      Real de = h1_of_subset(g, subset_intersection(g, B, E)) / mb;
      Real dc = Real(1) - de;
      if (i == 0 || en.grid_density_E < de) en.grid_density_E = de;
      if (i == 0 || en.grid_density_complement < dc) en.grid_density_complement = dc;
      if (i + scan.block >= radii.size()) {
        bool first = i + scan.block == radii.size();
        if (first || en.density_E < de) en.density_E = de;
        if (first || en.density_complement < dc) en.density_complement = dc;
      }
    }
    en.in_boundary = threshold < en.density_E && threshold < en.density_complement;
    if (en.in_boundary) scan.boundary.push_back(en.point);
    scan.entries.push_back(std::move(en));
  }
  return scan;
}

QuasiconvexityScan quasiconvexity_scan(const MetricGraph& g,
                                       const std::vector<std::pair<PointRef, PointRef>>& pairs) {
  if (pairs.empty()) throw std::invalid_argument("quasiconvexity scan needs point pairs");
  QuasiconvexityScan q;
  bool first = true;
  for (const auto& [a, b] : pairs) {
    Real d = distance(g, a, b);
    if (d.sign() <= 0) continue;
    Real ratio = geodesic_distance(g, a, b) / d;
    if (first || q.max_ratio < ratio) {
      q = {ratio, canonical(g, a), canonical(g, b)};
      first = false;
    }
  }
  if (first) throw std::invalid_argument("quasiconvexity scan needs distinct points");
  return q;
}

namespace {

std::string fmt(const Real& x) {
  if (x.is_exact() && x.rational().get_den() == 1) return x.to_string();
  std::ostringstream os;
  os.precision(6);
  os << x.to_double();
  return os.str();
}

}  // namespace

// Growth without bound: at least three samples, positive increments that
// never shrink.  A saturating series (shrinking increments) does not qualify.
bool unbounded_growth(const GrowthSeries& s) {
  if (s.size() < 3) return false;
  Real prev;
  for (std::size_t i = 1; i < s.size(); ++i) {
    Real d = s[i].second - s[i - 1].second;
    if (d.sign() <= 0) return false;
    if (i > 1 && d < prev && !approx_equal(d, prev)) return false;
    prev = d;
  }
  return true;
}

namespace {

std::string series_text(const GrowthSeries& s) {
  std::string out;
  for (const auto& [J, x] : s) out += " J=" + std::to_string(J) + ":" + fmt(x);
  return out;
}

}  // namespace

FedererReport federer_report(const MetricGraph& g, const EdgeSubset& E, const FedererInputs& in,
                             const SolveOptions& opt) {
  FedererReport r;
  r.inputs = in;
  r.curve = curve_boundary(g, E);
  const MetricGraph& bg = in.boundary_proxy ? in.boundary_proxy->graph : g;
  const EdgeSubset& bE = in.boundary_proxy ? in.boundary_proxy->set : E;
  auto candidates = in.candidates;
  for (const auto& p : in.boundary_proxy ? curve_boundary(bg, bE).points : r.curve.points) {
    bool seen = false;
    for (const auto& c : candidates) seen = seen || canonical(bg, c) == p;
    if (!seen) candidates.push_back(p);
  }
  r.mtb = mtb_scan(bg, bE, candidates, in.boundary_radii);
  r.boundary_content = codim1_content(bg, r.mtb.boundary, in.boundary_radii);
  r.tv = tv_bracket(g, indicator(g, E), opt);
  if (!in.doubling_centers.empty()) r.doubling = doubling_scan(g, in.doubling_centers, in.doubling_radii);
  for (const auto& p : in.density_points) r.densities.push_back(density_liminf(g, p, in.density_radii));
  for (const auto& c0 : in.C0_scan) {
    bool ok = true;
    try {
      perimeter_upper_bound(g, E, c0);
    } catch (const PreconditionError&) {
      ok = false;
    }
    r.perimeter_scan.emplace_back(c0, ok);
  }

  auto& v = r.verdicts;
  v.push_back("H(boundary*E) = " + fmt(r.boundary_content.value) + " (" +
              std::to_string(r.mtb.boundary.size()) + " measure-theoretic boundary points)");
  v.push_back("TV bracket [" + fmt(r.tv.lower) + ", " + fmt(r.tv.upper) + "], Var = " + fmt(r.tv.var));

  if (in.doubling_growth) {
    bool grows = unbounded_growth(*in.doubling_growth);
    bool within = true;
    if (in.doubling_bound)
      for (const auto& [J, x] : *in.doubling_growth) within = within && !(*in.doubling_bound < x);
    r.doubling_ok = !grows && within;
    v.push_back(std::string(r.doubling_ok ? "doubling holds" : "doubling fails") +
                " (max ratio by depth:" + series_text(*in.doubling_growth) +
                (in.doubling_bound ? "; bound " + fmt(*in.doubling_bound) : std::string()) + ")");
  } else if (!in.doubling_centers.empty()) {
    r.doubling_ok = !in.doubling_bound || !(*in.doubling_bound < r.doubling.max_ratio);
    v.push_back(std::string(r.doubling_ok ? "doubling ok" : "doubling fails") + " (max ratio " +
                fmt(r.doubling.max_ratio) +
                (in.doubling_bound ? " against bound " + fmt(*in.doubling_bound) : std::string()) + ")");
  } else {
    r.doubling_ok = true;
  }

  if (in.poincare) {
    r.poincare_ok = in.poincare->violations == 0;
    std::ostringstream os;
    os << (r.poincare_ok ? "Poincaré sampled-ok" : "Poincaré violated") << " (" << in.poincare->samples
       << " samples, " << in.poincare->violations << " violations, seed " << in.poincare->seed
       << "; passes are evidence only)";
    v.push_back(os.str());
  } else {
    r.poincare_ok = true;
  }

  if (in.quasiconvexity_growth) {
    r.quasiconvex_ok = !unbounded_growth(*in.quasiconvexity_growth);
    v.push_back(std::string(r.quasiconvex_ok ? "quasiconvexity not refuted" : "quasiconvexity fails") +
                " (inner/metric distance ratio by depth:" + series_text(*in.quasiconvexity_growth) +
                (r.quasiconvex_ok ? ")" : ", so no Poincaré inequality can hold)"));
    if (!r.quasiconvex_ok) r.poincare_ok = false;
  } else if (in.quasiconvexity) {
    r.quasiconvex_ok = !in.quasiconvexity_floor || in.quasiconvexity->max_ratio < *in.quasiconvexity_floor;
    v.push_back(std::string(r.quasiconvex_ok ? "quasiconvexity not refuted" : "quasiconvexity fails") +
                " (inner/metric distance ratio " + fmt(in.quasiconvexity->max_ratio) + ", so no Poincaré inequality" +
                (r.quasiconvex_ok ? " obstruction found)" : " can hold)"));
    if (!r.quasiconvex_ok) r.poincare_ok = false;
  }

  bool big_tv = in.tv_threshold.sign() > 0 && !(r.tv.lower < in.tv_threshold);
  std::string poincare_state = !r.quasiconvex_ok ? "Poincaré fails"
                               : in.poincare    ? (r.poincare_ok ? "Poincaré sampled-ok" : "Poincaré fails")
                                                : "Poincaré unchecked";
  r.summary = std::string(r.doubling_ok ? "doubling ok" : "doubling fails") + ", " + poincare_state +
              ", H(∂*E)=" + fmt(r.boundary_content.value) + ", TV lower " +
              (in.tv_threshold.sign() <= 0 ? "= " + fmt(r.tv.lower)
                                           : (big_tv ? "≥ " : "< ") + fmt(in.tv_threshold));
  if (big_tv) {
    v.push_back("TV lower bound " + fmt(r.tv.lower) + " >= " + fmt(in.tv_threshold) + " while H(boundary*E) = " +
                fmt(r.boundary_content.value));
    if (!r.doubling_ok && r.poincare_ok)
      v.push_back("doubling is the essential hypothesis");
    else if (r.doubling_ok && !r.poincare_ok)
      v.push_back("Poincaré is the essential hypothesis");
    else if (!r.doubling_ok && !r.poincare_ok)
      v.push_back("both doubling and Poincaré fail");
    else
      v.push_back("Federer characterization contradicted under its hypotheses");
  } else {
    v.push_back("Federer consistent");
  }
  return r;
}

}  // namespace bvg
