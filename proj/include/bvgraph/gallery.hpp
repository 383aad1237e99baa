#pragma once

#include <cstdint>
#include <vector>

#include "bvgraph/edge_subset.hpp"

namespace bvg {

inline constexpr int kMaxStarDepth = 12;

struct StarSpaceSpec {
  int depth = 1;  // J
  MetricMode mode = MetricMode::geodesic;
};

/// Level at which the line at angle kπ/2^J first appears.
int first_level(int depth, long k);

/// Rays through the origin: two per line at angles kπ/2^J, the line of
/// first level j having half-length 2^{-2j-1}.  Vertex 0 is the origin,
/// edge 2k / 2k+1 is the ray at angle kπ/2^J / kπ/2^J + π, and its tip is
/// vertex edge id + 1.
MetricGraph star_space(const StarSpaceSpec& spec);

/// Both rays of the line at angle π/2^j for j = 1..J (with their closure).
EdgeSubset indicator_E(const StarSpaceSpec& spec);

/// Edge ids of the rays making up E.
std::vector<int> e_ray_ids(int depth);

struct RandomSpec {
  int edges = 7;
  bool path = false;        // path graph
  int extra_edges = 0;      // cycles added on top of the spanning tree
  int max_degree = 0;       // 0 means unbounded
  int max_pieces = 3;
  double vertex_jump_prob = 0.0;
  double interior_jump_prob = 0.0;
  double override_prob = 0.0;
};

struct RandomInstance {
  MetricGraph graph;
  PLFunction fn;
  std::vector<PointRef> injected;  // points given a genuine jump
};

/// Deterministic in (seed, spec): lengths in {1/4, 2/4, ..., 4}, values in
/// half-integers of [-4, 4], breakpoints on eighths of each edge.
RandomInstance random_instance(std::uint64_t seed, const RandomSpec& spec);

/// Continuous random function on a fixed graph.
PLFunction random_continuous_function(const MetricGraph& g, std::uint64_t seed, int max_pieces = 3);

}  // namespace bvg
