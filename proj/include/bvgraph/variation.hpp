#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bvgraph/pl_function.hpp"

namespace bvg {

/// pV: disjoint arcs scored by endpoint values.  PV: disjoint arcs scored
/// by the variation along the arc.  iV: arcs may share points (H¹-null
/// overlaps) and end only at one-sided limits.
enum class VariationMode { pV, PV, iV };

std::string to_string(VariationMode m);
VariationMode parse_variation_mode(const std::string& s);

struct GadgetNode {
  enum class Kind { point, half };
  Kind kind = Kind::point;
  PointRef point;    // the critical point, or the one a half-node sits next to
  int segment = -1;  // half-nodes only
  Real value;        // v(p), or the one-sided limit toward `point` inside the segment
};

/// Maximal interval between consecutive critical points of one edge; the
/// function is linear on it.
struct ElementarySegment {
  std::size_t edge = 0;  // edge index
  Real t0, t1;
  Real v0, v1;  // limits at t0 from above and at t1 from below
  int lo_point = -1, hi_point = -1;
  int lo_half = -1, hi_half = -1;
  Real osc;  // |v1 - v0|
};

/// Point-nodes come first (in critical-point order), then two half-nodes per
/// segment.  Edges: point–half and half–sibling half.
struct ArcGadget {
  std::vector<GadgetNode> nodes;
  std::vector<ElementarySegment> segments;
  std::vector<std::vector<int>> adj;  // sorted
  std::size_t point_count = 0;
  bool tree = false;
};

ArcGadget build_gadget(const MetricGraph& g, const PLFunction& f);

struct Arc {
  std::vector<int> nodes;  // gadget walk from start terminal to end terminal
  /// Arc lying strictly inside one segment, away from both of its ends;
  /// `nodes` is then {lo_half, hi_half} and the arc uses neither.
  bool interior = false;
  Real value;
};

struct ArcSystem {
  VariationMode mode = VariationMode::pV;
  std::vector<Arc> arcs;
  Real total;
  std::string solver;  // "tree_dp" or "branch_and_bound"
  std::uint64_t search_nodes = 0;
};

enum class SolverChoice { automatic, tree_dp, branch_and_bound };

struct SolveOptions {
  std::size_t cap_segments = 4096;
  std::uint64_t node_budget = 20'000'000;  // branch-and-bound search nodes
  SolverChoice solver = SolverChoice::automatic;
};

/// Raised when a gadget exceeds the configured size or the search budget.
class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(const std::string& what, std::uint64_t size, std::uint64_t cap)
      : std::runtime_error(what), size(size), cap(cap) {}
  std::uint64_t size, cap;
};

/// Maximizing arc system.  Tree DP on trees, branch-and-bound otherwise.
ArcSystem variation_solve(const ArcGadget& gad, VariationMode mode, const SolveOptions& opt = {});

/// Objective of a single arc under the mode (no feasibility checks).
Real arc_value(const ArcGadget& gad, VariationMode mode, const Arc& arc);

/// Checks feasibility of an arc system under the mode's usage rules and
/// returns its exact objective (arc values plus untraversed-segment
/// interiors).  Throws std::logic_error on an infeasible system.
Real evaluate_arc_system(const ArcGadget& gad, VariationMode mode, const ArcSystem& sys);

Real pointwise_variation(const MetricGraph& g, const PLFunction& f, VariationMode mode,
                         const SolveOptions& opt = {});

/// Same function with the value at every discontinuity point replaced by
/// the limit along the smallest incident direction.
PLFunction good_representative(const MetricGraph& g, const PLFunction& f);

/// pV of the good representative.
Real var_total(const MetricGraph& g, const PLFunction& f, const SolveOptions& opt = {});

struct JumpRecord {
  PointRef point;
  std::vector<std::pair<Direction, Real>> limits;
  Real value;
  Real size;
};

/// max(max_{i≠j} |L_i - L_j|, max_i |v(x) - L_i|) over the incident limits.
JumpRecord jump_record(const MetricGraph& g, const PLFunction& f, const PointRef& p);

/// Points with jump size >= kappa, in critical-point order.
std::vector<JumpRecord> jump_points(const MetricGraph& g, const PLFunction& f, const Real& kappa);

/// (min(t, f), max(t, min(t + r, f))).
std::pair<PLFunction, PLFunction> truncate(const MetricGraph& g, const PLFunction& f, const Real& t,
                                           const Real& r);

}  // namespace bvg
