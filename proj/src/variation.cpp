#include <algorithm>
#include <stdexcept>

#include "bvgraph/variation.hpp"

namespace bvg {

Real pointwise_variation(const MetricGraph& g, const PLFunction& f, VariationMode mode,
                         const SolveOptions& opt) {
  return variation_solve(build_gadget(g, f), mode, opt).total;
}

PLFunction good_representative(const MetricGraph& g, const PLFunction& f) {
  PLFunction out = normalized(g, f);
  for (const auto& p : critical_points(g, f)) {
    if (continuous_at(g, f, p)) continue;
    auto dirs = incident_directions(g, p);
    Real v = limit_along(g, f, p, dirs.front());
    if (p.is_vertex()) {
      out.vertex_values[g.vertex_index(p.id)] = v;
    } else {
      // The smallest direction at an interior point is the right piece,
      // which is also the default value, so the override just goes away.
      auto& ov = out.overrides[g.edge_index(p.id)];
      ov.erase(std::remove_if(ov.begin(), ov.end(), [&](const auto& o) { return o.first == p.t; }),
               ov.end());
    }
  }
  return out;
}

Real var_total(const MetricGraph& g, const PLFunction& f, const SolveOptions& opt) {
  return pointwise_variation(g, good_representative(g, f), VariationMode::pV, opt);
}

JumpRecord jump_record(const MetricGraph& g, const PLFunction& f, const PointRef& p) {
  JumpRecord r{canonical(g, p), {}, eval_at(g, f, p), Real(0)};
  for (const auto& d : incident_directions(g, p)) r.limits.emplace_back(d, limit_along(g, f, p, d));
  if (r.limits.empty()) return r;
  Real lo = r.limits.front().second, hi = lo;
  for (const auto& [d, L] : r.limits) {
    lo = min(lo, L);
    hi = max(hi, L);
  }
  r.size = max(hi - lo, max(abs(r.value - lo), abs(r.value - hi)));
  return r;
}

std::vector<JumpRecord> jump_points(const MetricGraph& g, const PLFunction& f, const Real& kappa) {
  if (kappa.sign() <= 0) throw std::invalid_argument("jump threshold must be positive");
  std::vector<JumpRecord> out;
  for (const auto& p : critical_points(g, f)) {
    auto r = jump_record(g, f, p);
    if (r.size.sign() > 0 && !(r.size < kappa)) out.push_back(std::move(r));
  }
  return out;
}

std::pair<PLFunction, PLFunction> truncate(const MetricGraph& g, const PLFunction& f, const Real& t,
                                           const Real& r) {
  if (r.sign() < 0) throw std::invalid_argument("truncation width must be nonnegative");
  return {clamp(g, f, std::nullopt, t), clamp(g, f, t, t + r)};
}

}  // namespace bvg
