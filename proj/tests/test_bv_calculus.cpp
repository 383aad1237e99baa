#include <doctest.h>

#include "fixtures.hpp"

using namespace fx;

namespace {

EdgeSubset upper_half(const MetricGraph& unit) {
  EdgeSubset s = empty_subset(unit);
  s.intervals[0] = {{R(1, 2), R(1)}};
  return s;
}

EdgeSubset first_leg(const MetricGraph& star) {
  EdgeSubset s = empty_subset(star);
  s.intervals[0] = {{R(0), star.edges()[0].length}};
  return s;
}

}  // namespace

TEST_CASE("curve boundary examples") {
  auto unit = unit_interval();
  auto a = curve_boundary(unit, upper_half(unit));
  CHECK(a.count == 1);
  CHECK(a.points == std::vector<PointRef>{PointRef::on_edge(0, R(1, 2))});
  auto star3 = axis_star(3);
  auto b = curve_boundary(star3, first_leg(star3));
  CHECK(b.points == std::vector<PointRef>{PointRef::at_vertex(0)});
  for (int J = 1; J <= 3; ++J) {
    StarSpaceSpec spec{J, MetricMode::geodesic};
    auto x = star_space(spec);
    auto c = curve_boundary(x, indicator_E(spec));
    CHECK(c.points == std::vector<PointRef>{PointRef::at_vertex(0)});
  }
  // an isolated member vertex is null and therefore not a boundary point
  EdgeSubset dot = empty_subset(star3);
  dot.vertices.insert(2);
  CHECK(curve_boundary(star3, dot).count == 0);
}

TEST_CASE("perimeter upper bound examples") {
  auto unit = unit_interval();
  CHECK(perimeter_upper_bound(unit, upper_half(unit), R(3)).bound == R(2));
  auto star3 = axis_star(3);
  CHECK(perimeter_upper_bound(star3, first_leg(star3), R(4)).bound == R(3));
  CHECK_THROWS_AS(perimeter_upper_bound(star3, first_leg(star3), R(3)), PreconditionError);

  for (int J = 1; J <= 3; ++J) {
    StarSpaceSpec spec{J, MetricMode::geodesic};
    auto x = star_space(spec);
    auto p = perimeter_upper_bound(x, indicator_E(spec), Real::pow2(J + 2));
    CHECK(p.bound == Real::pow2(J + 1));
    try {
      perimeter_upper_bound(x, indicator_E(spec), Real::pow2(J + 1));
      FAIL("expected a precondition failure");
    } catch (const PreconditionError& e) {
      CHECK(e.point == PointRef::at_vertex(0));
      CHECK(e.best_ratio == Real::pow2(J + 1));
    }
  }
}

TEST_CASE("perimeter bound against the curve boundary count") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    RandomSpec spec;
    spec.max_degree = 3;
    auto inst = random_instance(seed, spec);
    const auto& g = inst.graph;
    auto E = empty_subset(g);
    for (std::size_t e = 0; e < g.edge_count(); ++e)
      if ((seed + e) % 3 == 0) E.intervals[e] = {{R(0), g.edges()[e].length / R(2)}};
    auto cb = curve_boundary(g, E);
    CHECK(R(static_cast<long>(cb.count)) <= var_total(g, indicator(g, E)));
    if (cb.count == 0) continue;
    Real C0(4);
    auto p = perimeter_upper_bound(g, E, C0);
    CHECK(p.bound <= C0 * R(static_cast<long>(cb.count)));
  }
}

TEST_CASE("total variation brackets") {
  auto unit = unit_interval();
  auto a = tv_bracket(unit, identity(unit));
  CHECK(a.lower == R(1));
  CHECK(a.upper == R(1));
  auto b = tv_bracket(unit, step(unit));
  CHECK(b.lower == R(1));
  CHECK(b.upper == R(1));
  for (int J = 1; J <= 4; ++J) {
    StarSpaceSpec spec{J, MetricMode::geodesic};
    auto x = star_space(spec);
    auto t = tv_bracket(x, indicator(x, indicator_E(spec)));
    CHECK(t.var == R(1));
    CHECK(t.lower == R(2 * J));
    CHECK(t.upper == R(2 * J));
    REQUIRE(t.jump_costs.size() == 1);
    CHECK(t.jump_costs[0].median == R(0));
  }
}

TEST_CASE("bracket ordering on random instances") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    RandomSpec spec;
    spec.extra_edges = static_cast<int>(seed % 2);
    spec.vertex_jump_prob = 0.4;
    spec.interior_jump_prob = 0.2;
    spec.override_prob = 0.3;
    auto inst = random_instance(seed, spec);
    auto t = tv_bracket(inst.graph, inst.fn);
    CHECK(t.var <= t.lower);
    CHECK(t.lower <= t.upper);
  }
}

TEST_CASE("path graphs: brackets collapse onto the classical variation") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    RandomSpec spec;
    spec.path = true;
    spec.vertex_jump_prob = 0.4;
    spec.interior_jump_prob = 0.3;
    spec.override_prob = 0.3;
    auto inst = random_instance(seed, spec);
    auto t = tv_bracket(inst.graph, inst.fn);
    Real c = classical_variation_interval(inst.graph, inst.fn);
    CHECK(t.lower == c);
    CHECK(t.upper == c);
    CHECK(coarea_sweep(inst.graph, inst.fn).integral == c);
  }
}

TEST_CASE("coarea sweeps") {
  auto unit = unit_interval();
  auto a = coarea_sweep(unit, identity(unit));
  CHECK(a.thresholds == std::vector<Real>{R(0), R(1)});
  CHECK(a.var_levels == std::vector<Real>{R(1)});
  CHECK(a.integral == R(1));
  auto three = path_graph({R(3)});
  auto z = coarea_sweep(three, zigzag(three));
  CHECK(z.var_levels == std::vector<Real>{R(3)});
  CHECK(z.integral == R(3));
  StarSpaceSpec spec{3, MetricMode::geodesic};
  auto x = star_space(spec);
  CHECK(coarea_sweep(x, indicator(x, indicator_E(spec))).integral == R(1));
}

TEST_CASE("jump smoothing") {
  auto unit = unit_interval();
  auto id = identity(unit);
  auto same = smooth_jumps(unit, id, R(1, 10), R(3));
  CHECK(same.blends.empty());
  CHECK(same.pv == R(1));

  auto s = smooth_jumps(unit, step(unit), R(1, 10), R(3));
  CHECK(is_continuous(unit, s.u));
  CHECK(s.pv == R(1));
  CHECK(s.mass < R(1, 10));
  CHECK(s.certified);
  REQUIRE(s.blends.size() == 1);
  CHECK(R(4) * s.blends[0].radius <= R(1, 10));

  StarSpaceSpec spec{2, MetricMode::geodesic};
  auto x = star_space(spec);
  auto chi = indicator(x, indicator_E(spec));
  auto sx = smooth_jumps(x, chi, R(1, 10), R(9));
  CHECK(is_continuous(x, sx.u));
  CHECK(sx.pv <= R(3 + 4 * 9) * R(1));
  CHECK(sx.certified);
  // H¹(B(0, 2r))/r equals twice the origin degree 8, which is not below 2·8
  CHECK_THROWS_AS(smooth_jumps(x, chi, R(1, 10), R(8)), PreconditionError);
}

TEST_CASE("coarea inequality where smoothing succeeds") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    RandomSpec spec;
    spec.max_degree = 3;
    spec.vertex_jump_prob = 0.3;
    auto inst = random_instance(seed, spec);
    Real C0(4);
    auto s = smooth_jumps(inst.graph, inst.fn, R(1, 10), C0);
    CHECK(s.certified);
    CHECK(coarea_sweep(inst.graph, inst.fn).integral <= (R(3) + R(4) * C0) * s.var);
  }
}

TEST_CASE("classical variation on intervals") {
  auto unit = unit_interval();
  CHECK(classical_variation_interval(unit, identity(unit)) == R(1));
  CHECK(classical_variation_interval(unit, step(unit)) == R(1));
  auto three = path_graph({R(3)});
  CHECK(classical_variation_interval(three, zigzag(three)) == R(3));
  auto star3 = axis_star(3);
  CHECK_THROWS_AS(classical_variation_interval(star3, constant_function(star3, R(0))), std::invalid_argument);
}
