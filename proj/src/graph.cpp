#include "bvgraph/graph.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <sstream>

namespace bvg {

std::string to_string(MetricMode m) {
  return m == MetricMode::geodesic ? "geodesic" : "ambient_euclidean";
}

MetricMode parse_metric_mode(const std::string& s) {
  if (s == "geodesic") return MetricMode::geodesic;
  if (s == "ambient_euclidean" || s == "ambient") return MetricMode::ambient_euclidean;
  throw std::invalid_argument("unknown metric mode: " + s);
}

MetricGraph::MetricGraph(MetricMode mode, std::vector<Vertex> vertices, std::vector<Edge> edges)
    : mode_(mode), vertices_(std::move(vertices)), edges_(std::move(edges)) {
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    if (!vidx_.emplace(vertices_[i].id, i).second)
      throw GraphError("duplicate vertex id " + std::to_string(vertices_[i].id));
  inc_.resize(vertices_.size());
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const Edge& ed = edges_[e];
    if (!eidx_.emplace(ed.id, e).second)
      throw GraphError("duplicate edge id " + std::to_string(ed.id));
    auto iu = vidx_.find(ed.u), iv = vidx_.find(ed.v);
    if (iu == vidx_.end() || iv == vidx_.end())
      throw GraphError("edge " + std::to_string(ed.id) + " references an unknown vertex");
    eu_.push_back(iu->second);
    ev_.push_back(iv->second);
    inc_[iu->second].push_back({e, true});
    inc_[iv->second].push_back({e, false});
  }
}

std::size_t MetricGraph::vertex_index(int id) const {
  auto it = vidx_.find(id);
  if (it == vidx_.end()) throw std::invalid_argument("unknown vertex id " + std::to_string(id));
  return it->second;
}

std::size_t MetricGraph::edge_index(int id) const {
  auto it = eidx_.find(id);
  if (it == eidx_.end()) throw std::invalid_argument("unknown edge id " + std::to_string(id));
  return it->second;
}

MetricGraph MetricGraph::with_mode(MetricMode m) const { return MetricGraph(m, vertices_, edges_); }

bool MetricGraph::is_connected() const {
  if (vertices_.empty()) return true;
  std::vector<char> seen(vertices_.size(), 0);
  std::vector<std::size_t> stack{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    std::size_t x = stack.back();
    stack.pop_back();
    for (const auto& in : inc_[x]) {
      std::size_t y = in.at_start ? ev_[in.edge] : eu_[in.edge];
      if (!seen[y]) {
        seen[y] = 1;
        ++count;
        stack.push_back(y);
      }
    }
  }
  return count == vertices_.size();
}

bool MetricGraph::is_tree() const {
  for (std::size_t e = 0; e < edges_.size(); ++e)
    if (eu_[e] == ev_[e]) return false;
  return edges_.size() + 1 == vertices_.size() && is_connected();
}

std::string PointRef::to_string() const {
  if (is_vertex()) return "v:" + std::to_string(id);
  return "e:" + std::to_string(id) + ":" + t.to_string();
}

bool point_less(const PointRef& a, const PointRef& b) {
  if (a.kind != b.kind) return a.kind == PointRef::Kind::vertex;
  if (a.id != b.id) return a.id < b.id;
  if (a.is_vertex()) return false;
  return a.t < b.t;
}

PointRef canonical(const MetricGraph& g, const PointRef& p) {
  if (p.is_vertex()) {
    g.vertex_index(p.id);
    return p;
  }
  const Edge& e = g.edges()[g.edge_index(p.id)];
  if (p.t < Real(0) || p.t > e.length)
    throw std::invalid_argument("offset outside edge " + std::to_string(p.id));
  if (p.t.is_zero()) return PointRef::at_vertex(e.u);
  if (p.t == e.length) return PointRef::at_vertex(e.v);
  return p;
}

Real euclidean(const Point2& a, const Point2& b) {
  Real dx = a.x - b.x, dy = a.y - b.y;
  return sqrt(dx * dx + dy * dy);
}

namespace {

ValidationReport fail(std::string code, std::string message) {
  return {false, std::move(code), std::move(message)};
}

struct Seg {
  double ax, ay, bx, by;
};

double orient(double px, double py, double qx, double qy, double rx, double ry) {
  return (qx - px) * (ry - py) - (qy - py) * (rx - px);
}

int sgn_tol(double v, double scale) {
  double tol = 1e-12 * scale;
  return v > tol ? 1 : v < -tol ? -1 : 0;
}

// Whether two straight segments intersect anywhere (touching included).
bool segments_meet(const Seg& s, const Seg& t) {
  double scale = std::max({std::abs(s.ax), std::abs(s.ay), std::abs(s.bx), std::abs(s.by),
                           std::abs(t.ax), std::abs(t.ay), std::abs(t.bx), std::abs(t.by), 1e-300});
  scale *= scale;
  int o1 = sgn_tol(orient(s.ax, s.ay, s.bx, s.by, t.ax, t.ay), scale);
  int o2 = sgn_tol(orient(s.ax, s.ay, s.bx, s.by, t.bx, t.by), scale);
  int o3 = sgn_tol(orient(t.ax, t.ay, t.bx, t.by, s.ax, s.ay), scale);
  int o4 = sgn_tol(orient(t.ax, t.ay, t.bx, t.by, s.bx, s.by), scale);
  if (o1 == 0 && o2 == 0) {
    // Collinear: compare projections on the dominant axis.
    bool use_x = std::abs(s.bx - s.ax) >= std::abs(s.by - s.ay);
    double s0 = use_x ? s.ax : s.ay, s1 = use_x ? s.bx : s.by;
    double t0 = use_x ? t.ax : t.ay, t1 = use_x ? t.bx : t.by;
    if (s0 > s1) std::swap(s0, s1);
    if (t0 > t1) std::swap(t0, t1);
    return std::max(s0, t0) <= std::min(s1, t1);
  }
  return o1 * o2 <= 0 && o3 * o4 <= 0;
}

// Segments sharing exactly the endpoint `shared` meet elsewhere iff they
// leave it in the same direction.
bool same_direction(double sx, double sy, double ax, double ay, double bx, double by) {
  double ux = ax - sx, uy = ay - sy, vx = bx - sx, vy = by - sy;
  double scale = std::max(std::hypot(ux, uy) * std::hypot(vx, vy), 1e-300);
  return sgn_tol(ux * vy - uy * vx, scale) == 0 && ux * vx + uy * vy > 0;
}

}  // namespace

ValidationReport validate_graph(const MetricGraph& g) {
  const auto& E = g.edges();
  for (const auto& e : E)
    if (e.length.sign() <= 0)
      return fail("nonpositive length", "edge " + std::to_string(e.id) + " has length " +
                                            e.length.to_string());

  if (g.mode() == MetricMode::ambient_euclidean) {
    for (const auto& v : g.vertices())
      if (!v.pos)
        return fail("missing coordinates",
                    "vertex " + std::to_string(v.id) + " has no coordinates in ambient mode");
    for (std::size_t i = 0; i < E.size(); ++i) {
      const auto& a = *g.vertices()[g.u_index(i)].pos;
      const auto& b = *g.vertices()[g.v_index(i)].pos;
      Real d = euclidean(a, b);
      bool match = E[i].length.is_exact() && d.is_exact()
                       ? d == E[i].length
                       : std::abs(d.to_double() - E[i].length.to_double()) <=
                             kRelTol * E[i].length.to_double();
      if (!match) {
        std::ostringstream os;
        os << "edge " << E[i].id << " declares length " << E[i].length.to_string()
           << " but its endpoints are " << d.to_string() << " apart";
        return fail("length mismatch", os.str());
      }
    }

    std::vector<Seg> segs;
    segs.reserve(E.size());
    std::vector<std::array<double, 4>> box;
    for (std::size_t i = 0; i < E.size(); ++i) {
      const auto& a = *g.vertices()[g.u_index(i)].pos;
      const auto& b = *g.vertices()[g.v_index(i)].pos;
      Seg s{a.x.to_double(), a.y.to_double(), b.x.to_double(), b.y.to_double()};
      segs.push_back(s);
      box.push_back({std::min(s.ax, s.bx), std::max(s.ax, s.bx), std::min(s.ay, s.by),
                     std::max(s.ay, s.by)});
    }
    for (std::size_t i = 0; i < E.size(); ++i) {
      for (std::size_t j = i + 1; j < E.size(); ++j) {
        if (box[i][1] < box[j][0] || box[j][1] < box[i][0] || box[i][3] < box[j][2] ||
            box[j][3] < box[i][2])
          continue;
        std::size_t iu = g.u_index(i), iv = g.v_index(i), ju = g.u_index(j), jv = g.v_index(j);
        int shared = (iu == ju) + (iu == jv) + (iv == ju) + (iv == jv);
        bool bad;
        if (shared >= 2) {
          bad = true;  // parallel straight edges coincide
        } else if (shared == 1) {
          std::size_t s = (iu == ju || iu == jv) ? iu : iv;
          std::size_t oi = s == iu ? iv : iu, oj = s == ju ? jv : ju;
          auto P = [&](std::size_t k) {
            const auto& p = *g.vertices()[k].pos;
            return std::pair{p.x.to_double(), p.y.to_double()};
          };
          auto [sx, sy] = P(s);
          auto [ax, ay] = P(oi);
          auto [bx, by] = P(oj);
          bad = same_direction(sx, sy, ax, ay, bx, by);
        } else {
          bad = segments_meet(segs[i], segs[j]);
        }
        if (bad)
          return fail("overlap", "edges " + std::to_string(E[i].id) + " and " +
                                     std::to_string(E[j].id) + " intersect away from a shared vertex");
      }
    }
  }

  if (!g.is_connected()) return fail("disconnected", "the graph has more than one component");
  return {};
}

Point2 position(const MetricGraph& g, const PointRef& p) {
  if (p.is_vertex()) {
    const auto& v = g.vertices()[g.vertex_index(p.id)];
    if (!v.pos) throw std::invalid_argument("vertex " + std::to_string(p.id) + " has no coordinates");
    return *v.pos;
  }
  std::size_t e = g.edge_index(p.id);
  Point2 a = position(g, PointRef::at_vertex(g.edges()[e].u));
  Point2 b = position(g, PointRef::at_vertex(g.edges()[e].v));
  Real s = p.t / g.edges()[e].length;
  return {a.x + (b.x - a.x) * s, a.y + (b.y - a.y) * s};
}

std::vector<Real> geodesic_vertex_distances(const MetricGraph& g, const PointRef& p0) {
  PointRef p = canonical(g, p0);
  std::size_t n = g.vertex_count();
  std::vector<Real> dist(n);
  std::vector<char> known(n, 0), reached(n, 0);
  using Item = std::pair<double, std::size_t>;
  // Ordering by the double shadow keeps the queue cheap; ties and rounding
  // are resolved by re-checking exact values on relaxation.
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  auto relax = [&](std::size_t v, const Real& d) {
    if (!reached[v] || d < dist[v]) {
      dist[v] = d;
      reached[v] = 1;
      pq.emplace(d.to_double(), v);
    }
  };
  if (p.is_vertex()) {
    relax(g.vertex_index(p.id), Real(0));
  } else {
    std::size_t e = g.edge_index(p.id);
    relax(g.u_index(e), p.t);
    relax(g.v_index(e), g.edges()[e].length - p.t);
  }
  while (!pq.empty()) {
    auto [d, x] = pq.top();
    pq.pop();
    if (known[x] || d != dist[x].to_double()) continue;
    known[x] = 1;
    for (const auto& in : g.incident(x)) {
      std::size_t y = in.at_start ? g.v_index(in.edge) : g.u_index(in.edge);
      if (!known[y]) relax(y, dist[x] + g.edges()[in.edge].length);
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    if (!reached[i]) throw std::logic_error("unreachable vertex in distance computation");
  return dist;
}

std::vector<Real> vertex_distances(const MetricGraph& g, const PointRef& p) {
  if (g.mode() == MetricMode::geodesic) return geodesic_vertex_distances(g, p);
  Point2 x = position(g, p);
  std::vector<Real> dist;
  dist.reserve(g.vertex_count());
  for (const auto& v : g.vertices()) dist.push_back(euclidean(x, *v.pos));
  return dist;
}

Real geodesic_distance(const MetricGraph& g, const PointRef& a0, const PointRef& b0) {
  PointRef a = canonical(g, a0), b = canonical(g, b0);
  auto d = geodesic_vertex_distances(g, a);
  if (b.is_vertex()) return d[g.vertex_index(b.id)];
  std::size_t e = g.edge_index(b.id);
  Real best = min(d[g.u_index(e)] + b.t, d[g.v_index(e)] + (g.edges()[e].length - b.t));
  if (!a.is_vertex() && a.id == b.id) best = min(best, abs(a.t - b.t));
  return best;
}

Real distance(const MetricGraph& g, const PointRef& a, const PointRef& b) {
  if (g.mode() == MetricMode::geodesic) return geodesic_distance(g, a, b);
  return euclidean(position(g, canonical(g, a)), position(g, canonical(g, b)));
}

}  // namespace bvg
