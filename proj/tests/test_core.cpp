#include <doctest.h>

#include <random>

#include "fixtures.hpp"

using namespace fx;

TEST_CASE("real arithmetic stays exact until a float enters") {
  Real a = R(1, 3) + R(1, 6);
  CHECK(a.is_exact());
  CHECK(a == R(1, 2));
  CHECK(a.to_string() == "1/2");
  Real b = a * Real::inexact(0.5);
  CHECK_FALSE(b.is_exact());
  CHECK(b.to_double() == doctest::Approx(0.25));
  CHECK((Real(0) * Real::inexact(3.7)).is_exact());
  CHECK(sqrt(R(9, 4)) == R(3, 2));
  CHECK(sqrt(R(9, 4)).is_exact());
  CHECK_FALSE(sqrt(Real(2)).is_exact());
  CHECK(Real::pow2(-3) == R(1, 8));
  CHECK(Real::parse("-0.125") == R(-1, 8));
  CHECK(Real::parse("1e-3") == R(1, 1000));
  CHECK(Real::parse("6/4") == R(3, 2));
  CHECK_THROWS_AS(Real::parse("x"), std::invalid_argument);
  CHECK(approx_equal(Real::inexact(0.1 + 0.2), R(3, 10)));
  CHECK_FALSE(approx_equal(R(1, 3), R(1, 3) + Real::pow2(-60)));
}

TEST_CASE("graph validation reports the first violated invariant") {
  CHECK(validate_graph(path_graph({R(1), R(1)})).ok);

  MetricGraph two(MetricMode::geodesic, {{0, {}}, {1, {}}, {2, {}}, {3, {}}},
                  {{0, 0, 1, R(1)}, {1, 2, 3, R(1)}});
  auto v = validate_graph(two);
  CHECK_FALSE(v.ok);
  CHECK(v.code == "disconnected");

  MetricGraph skew(MetricMode::ambient_euclidean, {{0, Point2{R(0), R(0)}}, {1, Point2{R(3), R(4)}}},
                   {{0, 0, 1, Real::parse("5.1")}});
  v = validate_graph(skew);
  CHECK_FALSE(v.ok);
  CHECK(v.code == "length mismatch");

  MetricGraph zero(MetricMode::geodesic, {{0, {}}, {1, {}}}, {{0, 0, 1, R(0)}});
  CHECK(validate_graph(zero).code == "nonpositive length");

  MetricGraph bare(MetricMode::ambient_euclidean, {{0, {}}, {1, {}}}, {{0, 0, 1, R(1)}});
  CHECK(validate_graph(bare).code == "missing coordinates");

  // second edge runs back along the first
  MetricGraph overlap(MetricMode::ambient_euclidean,
                      {{0, Point2{R(0), R(0)}}, {1, Point2{R(2), R(0)}}, {2, Point2{R(1), R(0)}}},
                      {{0, 0, 1, R(2)}, {1, 0, 2, R(1)}});
  CHECK(validate_graph(overlap).code == "overlap");

  CHECK_THROWS_AS(MetricGraph(MetricMode::geodesic, {{0, {}}}, {{0, 0, 7, R(1)}}), GraphError);
}

TEST_CASE("distances in both metrics") {
  auto unit = unit_interval();
  CHECK(distance(unit, PointRef::on_edge(0, R(1, 5)), PointRef::on_edge(0, R(9, 10))) == R(7, 10));
  auto star3 = axis_star(3);
  CHECK(distance(star3, PointRef::at_vertex(1), PointRef::at_vertex(2)) == R(2));
  auto amb = star3.with_mode(MetricMode::ambient_euclidean);
  CHECK(approx_equal(distance(amb, PointRef::at_vertex(1), PointRef::at_vertex(2)), sqrt(Real(2))));

  auto x = star_space({1, MetricMode::ambient_euclidean});
  CHECK(distance(x, PointRef::at_vertex(0), PointRef::at_vertex(1)) == R(1, 8));

  auto cyc = square_cycle();
  CHECK(distance(cyc, PointRef::on_edge(0, R(1, 4)), PointRef::on_edge(3, R(1, 2))) == R(3, 4));
  CHECK(distance(cyc, PointRef::on_edge(1, R(1, 4)), PointRef::on_edge(1, R(3, 4))) == R(1, 2));
}

TEST_CASE("distance is a metric and geodesic dominates ambient on sampled points") {
  for (auto g : {square_cycle(), axis_star(4), star_space({3, MetricMode::geodesic})}) {
    auto amb = g.with_mode(MetricMode::ambient_euclidean);
    std::mt19937_64 rng(11);
    std::vector<PointRef> pts;
    for (int i = 0; i < 12; ++i) {
      const auto& e = g.edges()[rng() % g.edge_count()];
      pts.push_back(canonical(g, PointRef::on_edge(e.id, e.length * R(static_cast<long>(rng() % 9), 8))));
    }
    for (const auto& a : pts)
      for (const auto& b : pts) {
        Real dab = distance(g, a, b);
        CHECK(dab == distance(g, b, a));
        CHECK_FALSE(dab < distance(amb, a, b) - Real::inexact(1e-12));
        for (const auto& c : pts) CHECK_FALSE(distance(g, a, b) + distance(g, b, c) < distance(g, a, c));
      }
  }
}

TEST_CASE("point evaluation and one-sided limits") {
  auto unit = unit_interval();
  CHECK(eval_at(unit, identity(unit), PointRef::on_edge(0, R(1, 2))) == R(1, 2));
  auto s = step(unit);
  PointRef half = PointRef::on_edge(0, R(1, 2));
  CHECK(eval_at(unit, s, half) == R(1));
  CHECK(limit_along(unit, s, half, {0, Approach::from_below}) == R(0));
  CHECK(limit_along(unit, s, half, {0, Approach::from_above}) == R(1));
  CHECK_FALSE(continuous_at(unit, s, half));
  CHECK(continuous_at(unit, identity(unit), half));

  StarSpaceSpec spec{2, MetricMode::geodesic};
  auto x = star_space(spec);
  auto chi = indicator(x, indicator_E(spec));
  auto origin = PointRef::at_vertex(0);
  for (int e : e_ray_ids(2)) CHECK(limit_along(x, chi, origin, {e, Approach::from_above}) == R(1));
  CHECK(limit_along(x, chi, origin, {0, Approach::from_above}) == R(0));
}

TEST_CASE("eval at and along agree where the function is continuous") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto inst = random_instance(seed, {});
    for (const auto& p : critical_points(inst.graph, inst.fn))
      if (continuous_at(inst.graph, inst.fn, p))
        for (const auto& d : incident_directions(inst.graph, p))
          CHECK(limit_along(inst.graph, inst.fn, p, d) == eval_at(inst.graph, inst.fn, p));
  }
}

TEST_CASE("clamp splits pieces at level crossings") {
  auto unit = unit_interval();
  auto c = clamp(unit, identity(unit), R(1, 4), R(1, 2));
  CHECK(eval_at(unit, c, PointRef::on_edge(0, R(1, 8))) == R(1, 4));
  CHECK(eval_at(unit, c, PointRef::on_edge(0, R(3, 8))) == R(3, 8));
  CHECK(eval_at(unit, c, PointRef::on_edge(0, R(7, 8))) == R(1, 2));
  CHECK(is_continuous(unit, c));
  auto lv = level_indicator(unit, identity(unit), R(1, 3));
  CHECK(eval_at(unit, lv, PointRef::on_edge(0, R(1, 4))) == R(0));
  CHECK(eval_at(unit, lv, PointRef::on_edge(0, R(1, 2))) == R(1));
}

TEST_CASE("function validation rejects malformed pieces") {
  auto unit = unit_interval();
  PLFunction f;
  f.pieces = {{{R(0), R(1, 2), R(0), R(0)}}};
  CHECK_THROWS_AS(validate_function(unit, f), std::invalid_argument);
  f.pieces = {{{R(0), R(1, 2), R(0), R(0)}, {R(3, 4), R(1), R(0), R(0)}}};
  CHECK_THROWS_AS(validate_function(unit, f), std::invalid_argument);
  f = identity(unit);
  f.overrides[0] = {{R(1), R(5)}};
  CHECK_THROWS_AS(validate_function(unit, f), std::invalid_argument);
}

TEST_CASE("edge subsets: set algebra and additivity") {
  auto g = square_cycle();
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    auto random_set = [&] {
      EdgeSubset s = empty_subset(g);
      for (std::size_t e = 0; e < g.edge_count(); ++e)
        for (int k = 0; k < 2; ++k) {
          long a = static_cast<long>(rng() % 16), b = static_cast<long>(rng() % 16);
          if (a > b) std::swap(a, b);
          if (a < b) s.intervals[e].push_back({R(a, 16), R(b, 16)});
        }
      for (auto& iv : s.intervals) iv = merge_intervals(iv);
      return s;
    };
    EdgeSubset a = random_set(), b = random_set();
    Real lhs = h1_of_subset(g, subset_union(g, a, b)) + h1_of_subset(g, subset_intersection(g, a, b));
    CHECK(lhs == h1_of_subset(g, a) + h1_of_subset(g, b));
    CHECK(h1_of_subset(g, a) + h1_of_subset(g, subset_complement(g, a)) == h1_total(g));
  }
  auto unit = unit_interval();
  EdgeSubset half = empty_subset(unit);
  half.intervals[0] = {{R(1, 2), R(1)}};
  CHECK(contains(unit, half, PointRef::at_vertex(1)));
  CHECK(contains(unit, half, PointRef::on_edge(0, R(1, 2))));
  CHECK_FALSE(contains(unit, half, PointRef::at_vertex(0)));
  auto chi = indicator(unit, half);
  CHECK(eval_at(unit, chi, PointRef::on_edge(0, R(1, 4))) == R(0));
  CHECK(eval_at(unit, chi, PointRef::on_edge(0, R(3, 4))) == R(1));
  EdgeSubset bad = empty_subset(unit);
  bad.intervals[0] = {{R(1, 2), R(2)}};
  CHECK_THROWS_AS(validate_subset(unit, bad), std::invalid_argument);
}
