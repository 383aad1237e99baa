#pragma once

// Independent reference computations used only by the tests.  They work on
// the raw piece data and never call the variation solver.

#include <vector>

#include "bvgraph/variation.hpp"

namespace oracle {

using bvg::MetricGraph;
using bvg::PLFunction;
using bvg::Real;

struct PointData {
  Real value;
  std::vector<Real> limits;  // one per incident direction
};

/// Σ |v1 - v0| over all pieces.
Real oscillation_sum(const PLFunction& f);

/// Vertices and interior breakpoints / override points with their limits.
std::vector<PointData> point_data(const MetricGraph& g, const PLFunction& f);

/// Disjoint arcs scored by endpoint values: every segment contributes its
/// oscillation, every point max(range of limits, max |v - L|).
Real closed_form_pV(const MetricGraph& g, const PLFunction& f);

/// Variation along arcs: a point contributes its best pass-through pair
/// |L_a - v| + |v - L_b| or its best single |v - L_a|.
Real closed_form_PV(const MetricGraph& g, const PLFunction& f);

/// Shared points, limits only: a point contributes a maximum-weight matching
/// of its limits.
Real closed_form_iV(const MetricGraph& g, const PLFunction& f);

/// Maximum-weight matching of values under |a - b|, by exhaustive recursion.
Real brute_matching(const std::vector<Real>& v);

/// min over c of Σ |L_i - c|, trying every c in the data.
Real brute_median_cost(const std::vector<Real>& v);

/// Path graphs only: walks the path, samples every one-sided limit twice
/// (points at eps and 2 eps from the breakpoint) and every piece midpoint,
/// never a breakpoint itself, and runs the disjoint interval DP
/// max Σ |v(b_i) - v(a_i)| over the samples.
Real path_interval_dp(const MetricGraph& g, const PLFunction& f);

}  // namespace oracle
