#pragma once

#include <stdexcept>
#include <vector>

#include "bvgraph/edge_subset.hpp"
#include "bvgraph/variation.hpp"

namespace bvg {

/// A hypothesis required by an operation fails at a specific point.
class PreconditionError : public std::runtime_error {
 public:
  PreconditionError(const std::string& what, PointRef point, Real best_ratio, Real limit)
      : std::runtime_error(what), point(std::move(point)), best_ratio(std::move(best_ratio)),
        limit(std::move(limit)) {}
  PointRef point;
  Real best_ratio;
  Real limit;
};

struct CurveBoundary {
  std::vector<PointRef> points;
  std::size_t count = 0;
};

/// Points where the good representative of χ_E has incident limits of both
/// kinds.
CurveBoundary curve_boundary(const MetricGraph& g, const EdgeSubset& E);

struct PerimeterBound {
  Real bound;
  std::size_t scale = 0;           // index i of the chosen dyadic scale
  std::vector<PointRef> points;
  std::vector<Real> radii;         // δ_{j,i} per boundary point at that scale
  std::vector<Real> ratios;        // H¹(B(x_j, δ_{j,i})) / δ_{j,i}
};

/// min over admissible scales i of Σ_j H¹(B(x_j, δ_{j,i})) / δ_{j,i}, with
/// δ_{j,0} the smaller of the shortest incident elementary segment at x_j
/// and half the distance to the nearest other boundary point, and a scale
/// admissible when every inner-ball ratio is below C0.  Throws
/// PreconditionError when no scan scale is admissible.
PerimeterBound perimeter_upper_bound(const MetricGraph& g, const EdgeSubset& E, const Real& C0,
                                     int halvings = 20);

struct JumpCost {
  PointRef point;
  std::vector<Real> limits;
  Real median;
  Real cost;  // min_c Σ |L_i - c|
};

struct TvBracket {
  Real lower, upper;
  Real var;            // var_total
  ArcSystem iv;        // lower witness
  Real edge_integral;  // Σ ∫ |f'|
  std::vector<JumpCost> jump_costs;
};

TvBracket tv_bracket(const MetricGraph& g, const PLFunction& f, const SolveOptions& opt = {});

struct CoareaSweep {
  std::vector<Real> thresholds;  // sorted distinct critical values
  std::vector<Real> samples;     // one level per gap
  std::vector<Real> var_levels;  // var_total(χ_{f > sample})
  Real integral;
};

CoareaSweep coarea_sweep(const MetricGraph& g, const PLFunction& f, const SolveOptions& opt = {});

struct Blend {
  PointRef point;
  Real jump;
  Real radius;   // η = 1 on B(x, r), 0 outside B(x, 2r)
  Real average;  // v_B
};

struct SmoothResult {
  PLFunction u;
  Real pv;
  Real var;    // var_total of the input
  Real bound;  // (3 + 4 C0) var
  bool certified = false;
  Real mass;   // Σ H¹(B(x, 2r))
  std::vector<Blend> blends;
};

/// Replaces the good representative near each jump point by its blend with
/// the ball average; the result is curve-continuous.
SmoothResult smooth_jumps(const MetricGraph& g, const PLFunction& f, const Real& eps, const Real& C0,
                          const SolveOptions& opt = {});

/// Independent 1-D variation on a path graph: Σ |Δ| over pieces plus the
/// jumps between consecutive pieces along the path.
Real classical_variation_interval(const MetricGraph& g, const PLFunction& f);

}  // namespace bvg
