#pragma once

#include <set>
#include <utility>
#include <vector>

#include "bvgraph/pl_function.hpp"

namespace bvg {

struct Interval {
  Real lo, hi;
};

/// Union of closed, disjoint, sorted subintervals per edge (indexed by edge
/// index) plus a set of member vertex ids.
struct EdgeSubset {
  std::vector<std::vector<Interval>> intervals;
  std::set<int> vertices;
};

EdgeSubset empty_subset(const MetricGraph& g);
EdgeSubset full_subset(const MetricGraph& g);

/// Throws std::invalid_argument when intervals are empty, unsorted,
/// overlapping or outside the edge.
void validate_subset(const MetricGraph& g, const EdgeSubset& s);

/// Sorts and merges overlapping or touching intervals, dropping degenerate ones.
std::vector<Interval> merge_intervals(std::vector<Interval> v);

EdgeSubset subset_union(const MetricGraph& g, const EdgeSubset& a, const EdgeSubset& b);
EdgeSubset subset_intersection(const MetricGraph& g, const EdgeSubset& a, const EdgeSubset& b);
/// Closure of the complement (measure-theoretically the complement).
EdgeSubset subset_complement(const MetricGraph& g, const EdgeSubset& a);

/// Pointwise membership of the closed set: interval members and member
/// vertices, plus vertices that are interval endpoints.
bool contains(const MetricGraph& g, const EdgeSubset& s, const PointRef& p);

/// The 0/1 indicator as a piecewise-linear function; point values follow
/// closed-set membership.
PLFunction indicator(const MetricGraph& g, const EdgeSubset& s);

}  // namespace bvg
