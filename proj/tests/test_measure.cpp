#include <doctest.h>

#include <random>

#include "fixtures.hpp"

using namespace fx;

namespace {

bool same_intervals(const std::vector<Interval>& a, const std::vector<Interval>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!(a[i].lo == b[i].lo && a[i].hi == b[i].hi)) return false;
  return true;
}

}  // namespace

TEST_CASE("h1_total of paths and gallery spaces") {
  CHECK(h1_total(path_graph({R(1), R(1)})) == R(2));
  CHECK(h1_total(star_space({3, MetricMode::geodesic})) == R(11, 16));
  CHECK(h1_total(star_space({1, MetricMode::ambient_euclidean})) == R(1, 2));
}

TEST_CASE("ball traces on edges") {
  auto unit = unit_interval();
  auto b = ball_subset(unit, {PointRef::on_edge(0, R(1, 2)), R(1, 5)});
  CHECK(same_intervals(b.intervals[0], {{R(3, 10), R(7, 10)}}));
  CHECK(h1_of_subset(unit, b) == R(2, 5));

  for (auto mode : {MetricMode::geodesic, MetricMode::ambient_euclidean}) {
    auto star3 = axis_star(3, R(1), mode);
    auto hub = ball_subset(star3, {PointRef::at_vertex(0), R(1, 2)});
    for (int e = 0; e < 3; ++e) CHECK(same_intervals(hub.intervals[e], {{R(0), R(1, 2)}}));
  }

  // the cycle ball wraps around through vertex 0
  auto cyc = square_cycle();
  auto w = ball_subset(cyc, {PointRef::on_edge(0, R(1, 4)), R(1, 2)});
  CHECK(same_intervals(w.intervals[0], {{R(0), R(3, 4)}}));
  CHECK(same_intervals(w.intervals[3], {{R(3, 4), R(1)}}));
  CHECK(w.intervals[2].empty());
  CHECK(h1_of_subset(cyc, w) == R(1));

  // ambient square: a ball around one corner reaches the opposite sides only through the plane
  auto amb = square_cycle(MetricMode::ambient_euclidean);
  auto near_corner = ball_subset(amb, {PointRef::at_vertex(0), R(5, 4)});
  CHECK(same_intervals(near_corner.intervals[1], {{R(0), R(3, 4)}}));
  CHECK(same_intervals(near_corner.intervals[2], {{R(1, 4), R(1)}}));
  CHECK(h1_of_subset(amb, near_corner) == R(7, 2));
  CHECK(ball_measure(amb, PointRef::at_vertex(0), R(5, 4)) == R(7, 2));
}

TEST_CASE("inner balls ignore the ambient metric") {
  auto amb = square_cycle(MetricMode::ambient_euclidean);
  CHECK(inner_ball_measure(amb, PointRef::at_vertex(0), R(5, 4)) == R(5, 2));
  auto geo = amb.with_mode(MetricMode::geodesic);
  CHECK(ball_measure(geo, PointRef::at_vertex(0), R(5, 4)) == R(5, 2));
}

TEST_CASE("origin balls on the star are per-ray caps in both metrics") {
  for (auto mode : {MetricMode::geodesic, MetricMode::ambient_euclidean}) {
    const int J = 5;
    auto x = star_space({J, mode});
    for (int k = 1; k < J; ++k) {
      Real r = Real::pow2(-2 * k - 1);
      Real expect(0);
      for (const auto& e : x.edges()) expect += min(r, e.length);
      Real got = ball_measure(x, PointRef::at_vertex(0), r);
      CHECK(approx_equal(got, expect));
      if (k <= J - 2) {
        CHECK(got >= Real::pow2(-k));
        CHECK(got <= Real::pow2(-k + 1));
      }
    }
  }
}

TEST_CASE("ball measure is monotone and bounded by the total") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    RandomSpec spec;
    spec.extra_edges = 2;
    auto inst = random_instance(seed, spec);
    const auto& g = inst.graph;
    std::mt19937_64 rng(seed);
    const auto& e = g.edges()[rng() % g.edge_count()];
    auto c = canonical(g, PointRef::on_edge(e.id, e.length * R(static_cast<long>(rng() % 5), 4)));
    BallFamily fam(g, c);
    Real prev(0);
    for (int i = 1; i <= 40; ++i) {
      Real r = R(i, 4);
      Real m = fam.measure(r);
      CHECK(m == ball_measure(g, c, r));
      CHECK(m >= prev);
      CHECK(m <= h1_total(g));
      prev = m;
    }
    CHECK(prev == h1_total(g));
  }
}

TEST_CASE("codimension-one content of finite sets") {
  auto radii = dyadic_radii(R(1, 8), 6);
  CHECK(radii.size() == 7);
  CHECK(radii.back() == Real::pow2(-9));
  auto unit = unit_interval();
  CHECK(codim1_content(unit, {PointRef::on_edge(0, R(1, 3))}, radii).value == R(2));
  auto star3 = axis_star(3);
  auto c = codim1_content(star3, {PointRef::at_vertex(0)}, radii);
  CHECK(c.value == R(3));
  CHECK(c.block == 2);
  CHECK(c.points.size() == 1);
  CHECK(codim1_content(star3, {}, radii).value == R(0));
  CHECK(codim1_content(star3, {PointRef::at_vertex(0), PointRef::at_vertex(1), PointRef::on_edge(2, R(1, 2))},
                       radii)
            .value == R(6));
}
