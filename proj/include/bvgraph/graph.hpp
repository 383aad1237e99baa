#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "bvgraph/real.hpp"

namespace bvg {

enum class MetricMode { geodesic, ambient_euclidean };

std::string to_string(MetricMode m);
MetricMode parse_metric_mode(const std::string& s);

struct Point2 {
  Real x;
  Real y;
};

struct Vertex {
  int id = 0;
  std::optional<Point2> pos;
};

/// Straight edge from `u` (offset 0) to `v` (offset `length`).
struct Edge {
  int id = 0;
  int u = 0;
  int v = 0;
  Real length;
};

/// Structural problems that make a graph unrepresentable (duplicate ids,
/// dangling endpoints).  Semantic invariants are checked by validate_graph.
class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Incidence {
  std::size_t edge;  // edge index
  bool at_start;     // true when the vertex is the edge's `u` end
};

class MetricGraph {
 public:
  MetricGraph() = default;
  MetricGraph(MetricMode mode, std::vector<Vertex> vertices, std::vector<Edge> edges);

  MetricMode mode() const { return mode_; }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  bool has_vertex(int id) const { return vidx_.count(id) != 0; }
  bool has_edge(int id) const { return eidx_.count(id) != 0; }
  std::size_t vertex_index(int id) const;
  std::size_t edge_index(int id) const;
  std::size_t u_index(std::size_t e) const { return eu_[e]; }
  std::size_t v_index(std::size_t e) const { return ev_[e]; }

  const std::vector<Incidence>& incident(std::size_t vi) const { return inc_[vi]; }
  /// Number of edge germs at the vertex; a loop counts twice.
  std::size_t degree(std::size_t vi) const { return inc_[vi].size(); }

  /// Same graph under the other metric (coordinates must allow it).
  MetricGraph with_mode(MetricMode m) const;

  /// True when connected, loop-free and |E| = |V| - 1.
  bool is_tree() const;
  bool is_connected() const;

 private:
  MetricMode mode_ = MetricMode::geodesic;
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::unordered_map<int, std::size_t> vidx_, eidx_;
  std::vector<std::size_t> eu_, ev_;
  std::vector<std::vector<Incidence>> inc_;
};

/// A point of the space: a vertex, or a strictly interior offset on an edge.
struct PointRef {
  enum class Kind { vertex, edge };
  Kind kind = Kind::vertex;
  int id = 0;  // vertex id or edge id
  Real t;      // offset from the edge's u end; unused for vertices

  static PointRef at_vertex(int id) { return {Kind::vertex, id, Real(0)}; }
  static PointRef on_edge(int edge_id, Real t) { return {Kind::edge, edge_id, std::move(t)}; }

  bool is_vertex() const { return kind == Kind::vertex; }
  std::string to_string() const;

  friend bool operator==(const PointRef& a, const PointRef& b) {
    return a.kind == b.kind && a.id == b.id && (a.kind == Kind::vertex || a.t == b.t);
  }
};

/// Total order used for deterministic output: vertices first by id, then
/// edge points by (edge id, offset).
bool point_less(const PointRef& a, const PointRef& b);

/// Maps offset 0 / length on an edge to the corresponding vertex.  Throws
/// std::invalid_argument for unknown ids or offsets outside [0, length].
PointRef canonical(const MetricGraph& g, const PointRef& p);

struct ValidationReport {
  bool ok = true;
  std::string code;  // "disconnected", "nonpositive length", ...
  std::string message;
};

/// Returns ok or the first violated invariant, checked in this order:
/// nonpositive length, missing coordinates, length mismatch, overlap,
/// disconnected.
ValidationReport validate_graph(const MetricGraph& g);

/// Planar position of a point (ambient data required).
Point2 position(const MetricGraph& g, const PointRef& p);

/// Distance from `p` to every vertex, indexed by vertex index, under the
/// graph's metric.
std::vector<Real> vertex_distances(const MetricGraph& g, const PointRef& p);

/// Shortest-path distance in the graph regardless of the metric mode.
std::vector<Real> geodesic_vertex_distances(const MetricGraph& g, const PointRef& p);

Real distance(const MetricGraph& g, const PointRef& a, const PointRef& b);
Real geodesic_distance(const MetricGraph& g, const PointRef& a, const PointRef& b);

Real euclidean(const Point2& a, const Point2& b);

}  // namespace bvg
