#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "bvgraph/graph.hpp"

namespace bvg {

/// Linear piece on [t0, t1] of an edge, running from v0 to v1.
struct Piece {
  Real t0, t1, v0, v1;
};

/// How a one-sided limit approaches a point inside an edge.  `from_above`
/// comes from larger offsets (the piece to the right), `from_below` from
/// smaller offsets.  The numeric order is the tie-break order.
enum class Approach { from_above = 0, from_below = 1 };

struct Direction {
  int edge_id = 0;
  Approach approach = Approach::from_above;

  friend bool operator==(const Direction&, const Direction&) = default;
  friend auto operator<=>(const Direction& a, const Direction& b) {
    if (a.edge_id != b.edge_id) return a.edge_id <=> b.edge_id;
    return static_cast<int>(a.approach) <=> static_cast<int>(b.approach);
  }
};

/// Piecewise-linear function on a metric graph.  Storage is indexed by the
/// graph's edge and vertex indices, so a function is only meaningful
/// together with the graph it was built for.
struct PLFunction {
  std::vector<std::vector<Piece>> pieces;                        // per edge
  std::vector<std::vector<std::pair<Real, Real>>> overrides;     // per edge: (t, value), sorted
  std::vector<std::optional<Real>> vertex_values;                // per vertex
};

/// Throws std::invalid_argument describing the first problem found.
void validate_function(const MetricGraph& g, const PLFunction& f);

PLFunction constant_function(const MetricGraph& g, const Real& c);

/// Builds a function from per-edge endpoint values (one linear piece each).
PLFunction linear_on_edges(const MetricGraph& g, const std::vector<std::pair<Real, Real>>& ends);

/// The incident directions at a point, sorted.
std::vector<Direction> incident_directions(const MetricGraph& g, const PointRef& p);

Real limit_along(const MetricGraph& g, const PLFunction& f, const PointRef& p, const Direction& d);

/// Point value: override, then explicit vertex value, then the limit along
/// the smallest incident direction (the right piece at interior points).
Real eval_at(const MetricGraph& g, const PLFunction& f, const PointRef& p);

/// `side` empty means At; otherwise LimitAlong the given direction.
Real eval(const MetricGraph& g, const PLFunction& f, const PointRef& p,
          const std::optional<Direction>& side = std::nullopt);

/// Interior offsets where pieces meet or a point value is overridden.
std::vector<Real> critical_offsets(const PLFunction& f, std::size_t edge);

/// Every point where the function may be discontinuous: all vertices, then
/// interior critical offsets, in point_less order.
std::vector<PointRef> critical_points(const MetricGraph& g, const PLFunction& f);

/// True when every limit at p equals the point value.
bool continuous_at(const MetricGraph& g, const PLFunction& f, const PointRef& p);

/// True when the function has no jump at any point (curve-continuous).
bool is_continuous(const MetricGraph& g, const PLFunction& f);

PLFunction add(const MetricGraph& g, const PLFunction& a, const PLFunction& b);
PLFunction scale(const MetricGraph& g, const PLFunction& f, const Real& c);

/// Pointwise max(lo, min(hi, f)) with breakpoints inserted at level crossings.
PLFunction clamp(const MetricGraph& g, const PLFunction& f, const std::optional<Real>& lo,
                 const std::optional<Real>& hi);

/// Indicator of the strict superlevel set {f > t}.
PLFunction level_indicator(const MetricGraph& g, const PLFunction& f, const Real& t);

/// Same function with every vertex value stored explicitly and redundant
/// overrides removed.
PLFunction normalized(const MetricGraph& g, const PLFunction& f);

Real piece_value(const Piece& p, const Real& t);

}  // namespace bvg
