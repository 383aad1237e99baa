// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "bvgraph/star_plan.hpp"
#include "oracles.hpp"

using namespace bvg;

namespace {

Real R(long p, long q = 1) { return Real::ratio(p, q); }

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// tolerance for inexact (ambient) comparisons
constexpr double kTol = 1e-9;

bool le_tol(const Real& a, const Real& b) { return !(b < a) || approx_equal(a, b, kTol); }

Outcome gallery_measure() {
  Outcome o;
  Stopwatch sw;
  for (int J = 1; J <= 8; ++J) {
    for (auto mode : {MetricMode::geodesic, MetricMode::ambient_euclidean}) {
      Real h = h1_total(star_space({J, mode}));
      o.require(h.is_exact() && h == R(3, 4) - Real::pow2(-J - 1), "h1_total at J=" + std::to_string(J));
      o.require(h <= R(1), "h1_total <= 1");
    }
  }
  double t = sw.seconds();
  o.require(t < 1.0, "runtime");
  o.detail << "J=1..8 exact 3/4-2^{-J-1}, both metrics, tolerance 0, " << t << " s";
  return o;
}

Outcome origin_balls() {
  Outcome o;
  const int J = 8;
  for (auto mode : {MetricMode::geodesic, MetricMode::ambient_euclidean}) {
    auto x = star_space({J, mode});
    BallFamily fam(x, PointRef::at_vertex(0));
    for (int k = 1; k <= 6; ++k) {
      Real m = fam.measure(Real::pow2(-2 * k - 1));
      o.require(m.is_exact(), "exact ball measure");
      o.require(!(m < Real::pow2(-k) - Real::pow2(-J - 1)) && !(Real::pow2(-k + 1) < m),
                "k=" + std::to_string(k) + " measure " + m.to_string());
      if (mode == MetricMode::geodesic) o.detail << "k=" << k << ":" << m.to_double() << " ";
    }
  }
  o.detail << "(J=8, both metrics, exact)";
  return o;
}

Outcome off_origin_balls() {
  Outcome o;
  Stopwatch sw;
  const int J = 8;
  auto x = star_space({J, MetricMode::ambient_euclidean});
  std::mt19937_64 rng(2024);
  std::size_t checks = 0, violations = 0;
  for (int i = 0; i < 50; ++i) {
    int k = 1 + static_cast<int>(rng() % 5);
    Real dlo = Real::pow2(-2 * k - 3), dhi = Real::pow2(-2 * k - 1);
    std::vector<std::size_t> rays;
    for (std::size_t e = 0; e < x.edge_count(); ++e)
      if (!(x.edges()[e].length < dlo)) rays.push_back(e);
    const auto& e = x.edges()[rays[rng() % rays.size()]];
    Real top = min(dhi, e.length);
    Real d = dlo + (top - dlo) * R(static_cast<long>(rng() % 65), 64);
    auto p = canonical(x, PointRef::on_edge(e.id, d));
    BallFamily fam(x, p);
    Real lower_c = Real::pow2(3 * k - 5), upper_c = Real::pow2(3 * k + 7);
    Real rmax = Real::pow2(-2 * k - 4), rmin = Real::pow2(-3 * k - 6);
    for (int s = 0; s < 5; ++s) {
      // lower range r <= 2^{-2k-4}
      Real r1 = rmax * Real::pow2(-s) * R(8 + static_cast<long>(rng() % 9), 16);
      Real m1 = fam.measure(r1);
      ++checks;
      if (!le_tol(lower_c * r1 * r1, m1)) ++violations;
      // upper range 2^{-3k-6} <= r <= 2^{-2k-4}, spread geometrically
      int span = k + 2;
      int ex = -3 * k - 6 + (span * s) / 4;
      Real r2 = Real::pow2(ex) * R(16 + static_cast<long>(rng() % 17), 16);
      if (rmax < r2) r2 = rmax;
      if (r2 < rmin) r2 = rmin;
      Real m2 = fam.measure(r2);
      ++checks;
      if (!le_tol(m2, upper_c * r2 * r2)) ++violations;
    }
  }
  double t = sw.seconds();
  o.require(violations == 0, std::to_string(violations) + " violations");
  o.require(t < 10.0, "runtime");
  o.detail << "50 points x 5 radii x 2 ranges on ambient star(8): " << checks << " checks, " << violations
           << " violations, relative tolerance " << kTol << ", " << t << " s";
  return o;
}

Outcome doubling() {
  Outcome o;
  auto x = star_space({8, MetricMode::ambient_euclidean});
  auto scan = doubling_scan(x, star_doubling_centers(x, 8), star_doubling_radii(8));
  o.require(!(Real::pow2(18) < scan.max_ratio), "ambient max ratio");
  auto geo = star_doubling_growth(MetricMode::geodesic, 2, 6);
  for (std::size_t i = 1; i < geo.size(); ++i) o.require(geo[i - 1].second < geo[i].second, "geodesic monotone");
  o.detail << "ambient star(8) max ratio " << scan.max_ratio.to_double() << " <= 2^18 over " << scan.samples
           << " samples; geodesic J=2..6:";
  for (const auto& [J, r] : geo) o.detail << " " << r.to_double();
  return o;
}

Outcome poincare() {
  Outcome o;
  auto x = star_space({6, MetricMode::geodesic});
  const std::uint64_t seed = 6;
  auto balls = star_origin_balls(x, 20, seed);
  auto s = poincare_sample(x, balls, 64, {R(1), R(4), R(3)}, seed);
  o.require(s.samples == 20 * 64, "sample count");
  o.require(s.violations == 0, std::to_string(s.violations) + " violations");
  o.detail << s.samples << " samples (20 balls x 64 functions, seed " << seed << "), p=1 C=4 lambda=3, "
           << s.violations << " violations, worst lhs/rhs " << s.worst_ratio;
  return o;
}

Outcome variation_on_E() {
  Outcome o;
  Stopwatch sw;
  for (int J = 1; J <= 6; ++J) {
    StarSpaceSpec spec{J, MetricMode::geodesic};
    auto x = star_space(spec);
    auto chi = indicator(x, indicator_E(spec));
    o.require(var_total(x, chi) == R(1), "var_total at J=" + std::to_string(J));
    auto b = tv_bracket(x, chi);
    o.require(b.lower == R(2 * J) && b.upper == R(2 * J), "bracket at J=" + std::to_string(J));
    if (J <= 3) {
      auto rep = good_representative(x, chi);
      SolveOptions bnb;
      bnb.solver = SolverChoice::branch_and_bound;
      auto gad = build_gadget(x, rep);
      o.require(variation_solve(gad, VariationMode::iV, bnb).total == R(2 * J), "exhaustive iV");
      o.require(oracle::closed_form_iV(x, rep) == R(2 * J), "matching oracle iV");
      std::vector<Real> lims;
      for (const auto& d : incident_directions(x, PointRef::at_vertex(0)))
        lims.push_back(limit_along(x, chi, PointRef::at_vertex(0), d));
      o.require(oracle::brute_median_cost(lims) == R(2 * J), "median cost oracle");
    }
  }
  double t = sw.seconds();
  o.require(t < 30.0, "runtime");
  o.detail << "J=1..6 var 1, bracket [2J,2J] exact; exhaustive checks J<=3; " << t << " s";
  return o;
}

Outcome federer_failure() {
  Outcome o;
  for (auto mode : {MetricMode::geodesic, MetricMode::ambient_euclidean}) {
    StarPlanOptions opt;
    opt.depth = 3;
    opt.mode = mode;
    auto in = star_federer_inputs(opt);
    StarSpaceSpec spec{3, mode};
    auto r = federer_report(star_space(spec), indicator_E(spec), in);
    const std::string m = to_string(mode);
    o.require(r.mtb.boundary.empty(), m + " boundary nonempty");
    o.require(r.boundary_content.value == R(0), m + " content nonzero");
    o.require(!(r.tv.lower < R(6)), m + " TV lower below 6");
    const std::string want = mode == MetricMode::geodesic ? "doubling is the essential hypothesis"
                                                          : "Poincaré is the essential hypothesis";
    bool found = false;
    for (const auto& v : r.verdicts) found = found || v == want;
    o.require(found, m + " verdict");
    o.detail << m << ": " << r.mtb.entries.size() << " candidates on " << in.boundary_proxy->label << ", H=" << r.boundary_content.value.to_string() << ", \"" << r.summary << "\"; ";
  }
  return o;
}

RandomSpec jumpy() {
  RandomSpec s;
  s.vertex_jump_prob = 0.4;
  s.interior_jump_prob = 0.3;
  s.override_prob = 0.3;
  return s;
}

Outcome sandwich() {
  Outcome o;
  std::size_t violations = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    RandomSpec s = jumpy();
    s.edges = 4 + static_cast<int>(seed % 6);
    s.max_degree = 3 + static_cast<int>(seed % 2);
    s.extra_edges = static_cast<int>(seed % 3);
    auto inst = random_instance(seed, s);
    std::size_t deg = 0;
    for (std::size_t i = 0; i < inst.graph.vertex_count(); ++i) deg = std::max(deg, inst.graph.degree(i));
    Real C0(static_cast<long>(deg));
    auto b = tv_bracket(inst.graph, inst.fn);
    bool ok = b.var <= b.lower && b.lower <= b.upper && b.upper <= C0 * (R(3) + R(4) * C0) * b.var;
    if (!ok) ++violations;
  }
  o.require(violations == 0, std::to_string(violations) + " violations");
  o.detail << "200 bounded-degree instances, C0 = max degree, " << violations << " violations (exact)";
  return o;
}

Outcome classical_interval() {
  Outcome o;
  std::size_t violations = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    RandomSpec s = jumpy();
    s.path = true;
    s.edges = 1 + static_cast<int>(seed % 8);
    auto inst = random_instance(seed, s);
    const auto& g = inst.graph;
    Real v = var_total(g, inst.fn);
    auto b = tv_bracket(g, inst.fn);
    Real c = classical_variation_interval(g, inst.fn);
    Real dp = oracle::path_interval_dp(g, inst.fn);
    Real co = coarea_sweep(g, inst.fn).integral;
    if (!(v == b.lower && v == b.upper && v == c && v == dp && v == co)) ++violations;
  }
  o.require(violations == 0, std::to_string(violations) + " violations");
  o.detail << "200 path instances: var = lower = upper = classical = interval DP = coarea, " << violations
           << " violations (exact)";
  return o;
}

Outcome inequalities() {
  Outcome o;
  std::size_t v_pv = 0, v_sub = 0, v_trunc = 0, v_dp = 0, compared = 0;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    RandomSpec s = jumpy();
    s.edges = 2 + static_cast<int>(seed % 5);
    s.max_pieces = 2;
    s.extra_edges = seed % 4 == 3 ? 1 : 0;
    auto inst = random_instance(seed, s);
    const auto& g = inst.graph;
    auto pv = [&](const PLFunction& f, VariationMode m = VariationMode::pV) {
      return pointwise_variation(g, f, m);
    };
    Real a = pv(inst.fn), b = pv(inst.fn, VariationMode::PV);
    if (!(a <= b && b <= R(2) * a)) ++v_pv;

    auto v = random_continuous_function(g, seed * 2 + 1, 2);
    auto w = random_continuous_function(g, seed * 2 + 2, 2);
    if (!(pv(add(g, v, w)) <= pv(v) + pv(w))) ++v_sub;
    if (!(pv(add(g, inst.fn, w)) <= a + pv(w))) ++v_sub;

    Real t = R(static_cast<long>(seed % 17) - 8, 2) + R(1, 3);
    Real r = R(1 + static_cast<long>(seed % 7), 4);
    auto [vt, vtr] = truncate(g, v, t, r);
    auto vfull = truncate(g, v, t + r, R(0)).first;
    if (!(pv(vt) + pv(vtr) <= pv(vfull))) ++v_trunc;

    auto gad = build_gadget(g, inst.fn);
    if (gad.tree && gad.segments.size() <= 10) {
      ++compared;
      SolveOptions dp, bnb;
      dp.solver = SolverChoice::tree_dp;
      bnb.solver = SolverChoice::branch_and_bound;
      for (auto m : {VariationMode::pV, VariationMode::PV, VariationMode::iV})
        if (!(variation_solve(gad, m, dp).total == variation_solve(gad, m, bnb).total)) ++v_dp;
    }
  }
  o.require(v_pv == 0, "pV <= PV <= 2pV");
  o.require(v_sub == 0, "subadditivity");
  o.require(v_trunc == 0, "truncation inequality");
  o.require(v_dp == 0, "tree DP vs exhaustive");
  o.require(compared >= 100, "too few tree instances");
  o.detail << "500 instances; violations pV/PV " << v_pv << ", subadditivity " << v_sub << ", truncation " << v_trunc
           << ", tree DP vs exhaustive " << v_dp << " on " << compared << " trees (exact)";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"gallery measure", gallery_measure},
      {"origin ball bounds", origin_balls},
      {"off-origin ball bounds", off_origin_balls},
      {"doubling", doubling},
      {"Poincaré sampling", poincare},
      {"variation on E", variation_on_E},
      {"Federer failure", federer_failure},
      {"sandwich", sandwich},
      {"classical interval", classical_interval},
      {"variation inequalities", inequalities}};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    if (!o.pass) ++failed;
    std::printf("criterion %zu (%s): %s: %s\n", i + 1, criteria[i].first.c_str(), o.pass ? "PASS" : "FAIL",
                o.detail.str().c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
