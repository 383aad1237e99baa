#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <type_traits>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "bvgraph/variation.hpp"

namespace bvg {

namespace {

// The solvers run on plain numbers: int64 multiples of a common denominator
// when every input is rational and small enough, doubles otherwise.
template <class T>
struct Num {
  std::vector<T> term;    // terminal value per node (0 in PV)
  std::vector<T> wpoint;  // per half-node: weight of its point link (PV only)
  std::vector<T> wseg;    // per segment: weight of the sibling link (PV only)
  std::vector<T> osc;     // per segment
};

template <class T>
constexpr T neg_inf() {
  if constexpr (std::is_floating_point_v<T>)
    return -std::numeric_limits<T>::infinity();
  else
    return -(T(1) << 61);
}

template <class T>
T sat(T x) {
  return x < neg_inf<T>() ? neg_inf<T>() : x;
}

template <class T>
T absdiff(T a, T b) {
  return a < b ? b - a : a - b;
}

struct Inputs {
  std::vector<Real> term, wpoint, wseg, osc;
};

Inputs gather(const ArcGadget& gad, VariationMode mode) {
  Inputs in;
  bool pv = mode == VariationMode::PV;
  for (std::size_t n = 0; n < gad.nodes.size(); ++n) {
    in.term.push_back(pv ? Real(0) : gad.nodes[n].value);
    Real w(0);
    if (pv && gad.nodes[n].kind == GadgetNode::Kind::half) {
      const auto& s = gad.segments[gad.nodes[n].segment];
      int p = static_cast<int>(n) == s.lo_half ? s.lo_point : s.hi_point;
      w = abs(gad.nodes[p].value - gad.nodes[n].value);
    }
    in.wpoint.push_back(w);
  }
  for (const auto& s : gad.segments) {
    in.osc.push_back(s.osc);
    in.wseg.push_back(pv ? s.osc : Real(0));
  }
  return in;
}

// Common denominator when every input is exact and the scaled problem fits
// comfortably in int64; empty otherwise.
std::optional<mpz_class> common_scale(const Inputs& in, std::size_t terms) {
  mpz_class lcd = 1;
  for (const auto* v : {&in.term, &in.wpoint, &in.wseg, &in.osc})
    for (const Real& x : *v) {
      if (!x.is_exact()) return std::nullopt;
      mpz_lcm(lcd.get_mpz_t(), lcd.get_mpz_t(), x.rational().get_den().get_mpz_t());
    }
  mpz_class maxabs = 0;
  for (const auto* v : {&in.term, &in.wpoint, &in.wseg, &in.osc})
    for (const Real& x : *v) {
      mpz_class s = abs(x.rational().get_num()) * (lcd / x.rational().get_den());
      if (s > maxabs) maxabs = s;
    }
  mpz_class limit = mpz_class(1) << 56;
  if (maxabs * mpz_class(static_cast<unsigned long>(4 * terms + 4)) >= limit) return std::nullopt;
  return lcd;
}

template <class T>
Num<T> convert(const Inputs& in, const std::optional<mpz_class>& lcd) {
  auto cv = [&](const Real& x) -> T {
    if constexpr (std::is_floating_point_v<T>) {
      return x.to_double();
    } else {
      mpz_class s = x.rational().get_num() * (*lcd / x.rational().get_den());
      return static_cast<T>(s.get_si());
    }
  };
  Num<T> n;
  for (const auto& x : in.term) n.term.push_back(cv(x));
  for (const auto& x : in.wpoint) n.wpoint.push_back(cv(x));
  for (const auto& x : in.wseg) n.wseg.push_back(cv(x));
  for (const auto& x : in.osc) n.osc.push_back(cv(x));
  return n;
}

bool is_half(const ArcGadget& gad, int n) { return gad.nodes[n].kind == GadgetNode::Kind::half; }

// ---------------------------------------------------------------------------
// Tree DP.  States per node: closed (no open path leaves the node upward),
// plus / minus (an open path continues to the parent carrying ±its terminal
// value).  Arc value |a - b| = max(a - b, b - a) is realized by pairing a
// plus end with a minus end.

template <class T>
class TreeSolver {
 public:
  TreeSolver(const ArcGadget& gad, const Num<T>& num, VariationMode mode)
      : G(gad), N(num), iv(mode == VariationMode::iV) {}

  T solve() {
    std::size_t n = G.nodes.size();
    parent.assign(n, -1);
    children.assign(n, {});
    order.clear();
    std::vector<char> seen(n, 0);
    order.push_back(0);
    seen[0] = 1;
    for (std::size_t i = 0; i < order.size(); ++i) {
      int x = order[i];
      for (int y : G.adj[x])
        if (!seen[y]) {
          seen[y] = 1;
          parent[y] = x;
          children[x].push_back(y);
          order.push_back(y);
        }
    }
    if (order.size() != n) throw std::logic_error("gadget is not connected");
    val.assign(n, {});
    choice.assign(n, {});
    table.assign(n, {});
    for (auto it = order.rbegin(); it != order.rend(); ++it) compute(*it);
    return val[0][0];
  }

  std::vector<std::vector<int>> arcs() {
    std::size_t n = G.nodes.size();
    state.assign(n, 0);
    child_state.assign(n, {});
    for (int x : order) assign(x);
    part.assign(n, {});
    std::vector<std::vector<int>> out;
    for (auto it = order.rbegin(); it != order.rend(); ++it) assemble(*it, out);
    return out;
  }

 private:
  enum Kind : std::int8_t { none, term_plus, term_minus, pair, start, via };
  struct Choice {
    Kind kind = none;
    int a = -1, b = -1;  // child positions
  };

  const ArcGadget& G;
  const Num<T>& N;
  bool iv;
  std::vector<int> parent, order;
  std::vector<std::vector<int>> children;
  std::vector<std::array<T, 3>> val;              // closed, plus, minus
  std::vector<std::array<Choice, 3>> choice;      // cap-1 nodes
  std::vector<std::vector<std::uint8_t>> table;   // unlimited nodes: per child, per balance
  std::vector<int> state;
  std::vector<std::vector<int>> child_state;
  std::vector<std::vector<int>> part;

  bool unlimited(int x) const { return iv && !is_half(G, x); }
  bool terminal(int x) const { return !iv || is_half(G, x); }

  bool sib(int x, int c) const {
    return is_half(G, x) && is_half(G, c) && G.nodes[x].segment == G.nodes[c].segment;
  }
  T weight(int x, int c) const {
    if (sib(x, c)) return N.wseg[G.nodes[x].segment];
    return N.wpoint[is_half(G, x) ? x : c];
  }
  T bonus(int x, int c) const { return sib(x, c) ? N.osc[G.nodes[x].segment] : T(0); }

  void compute(int x) {
    const auto& ch = children[x];
    std::size_t k = ch.size();
    std::vector<T> c0(k), cp(k), cm(k);
    for (std::size_t i = 0; i < k; ++i) {
      int c = ch[i];
      c0[i] = val[c][0] + bonus(x, c);
      cp[i] = sat(val[c][1] + weight(x, c));
      cm[i] = sat(val[c][2] + weight(x, c));
    }
    const T NEG = neg_inf<T>();
    if (unlimited(x)) {
      // Balance DP: #plus - #minus among children.
      int K = static_cast<int>(k);
      std::vector<T> f(2 * K + 1, NEG), nf(2 * K + 1);
      f[K] = T(0);
      table[x].assign(k * (2 * K + 1), 0);
      for (std::size_t i = 0; i < k; ++i) {
        for (int b = 0; b <= 2 * K; ++b) {
          T best = sat(f[b] + c0[i]);
          std::uint8_t ch_ = 0;
          if (b > 0 && sat(f[b - 1] + cp[i]) > best) best = sat(f[b - 1] + cp[i]), ch_ = 1;
          if (b < 2 * K && sat(f[b + 1] + cm[i]) > best) best = sat(f[b + 1] + cm[i]), ch_ = 2;
          nf[b] = best;
          table[x][i * (2 * K + 1) + b] = ch_;
        }
        std::swap(f, nf);
      }
      val[x] = {f[K], K >= 1 ? f[K + 1] : NEG, K >= 1 ? f[K - 1] : NEG};
      return;
    }
    T base(0);
    for (std::size_t i = 0; i < k; ++i) base += c0[i];
    std::vector<T> gp(k), gm(k);
    for (std::size_t i = 0; i < k; ++i) {
      gp[i] = sat(cp[i] - c0[i]);
      gm[i] = sat(cm[i] - c0[i]);
    }
    T V = N.term[x];
    bool term = terminal(x);
    auto argmax = [&](const std::vector<T>& g, int skip) {
      int best = -1;
      for (int i = 0; i < static_cast<int>(k); ++i)
        if (i != skip && (best < 0 || g[i] > g[best])) best = i;
      return best;
    };
    int ip = argmax(gp, -1), im = argmax(gm, -1);

    // closed
    Choice cc;
    T best(0);
    if (term && ip >= 0 && gp[ip] - V > best) best = gp[ip] - V, cc = {term_plus, ip, -1};
    if (term && im >= 0 && gm[im] + V > best) best = gm[im] + V, cc = {term_minus, im, -1};
    if (k >= 2) {
      int b1 = argmax(gm, ip);
      int a2 = argmax(gp, im);
      if (b1 >= 0 && sat(gp[ip] + gm[b1]) > best) best = sat(gp[ip] + gm[b1]), cc = {pair, ip, b1};
      if (a2 >= 0 && sat(gp[a2] + gm[im]) > best) best = sat(gp[a2] + gm[im]), cc = {pair, a2, im};
    }
    val[x][0] = base + best;
    choice[x][0] = cc;

    // plus / minus
    for (int s = 1; s <= 2; ++s) {
      const auto& g = s == 1 ? gp : gm;
      int i = s == 1 ? ip : im;
      T sv = s == 1 ? V : -V;
      Choice c;
      T b = NEG;
      if (term) b = sv, c = {start, -1, -1};
      if (i >= 0 && g[i] > b) b = g[i], c = {via, i, -1};
      val[x][s] = sat(base + b);
      choice[x][s] = c;
    }
  }

  void assign(int x) {
    const auto& ch = children[x];
    std::vector<int> cs(ch.size(), 0);
    int st = state[x];
    if (unlimited(x)) {
      int K = static_cast<int>(ch.size());
      int b = K + (st == 1 ? 1 : st == 2 ? -1 : 0);
      for (int i = K - 1; i >= 0; --i) {
        std::uint8_t c = table[x][i * (2 * K + 1) + b];
        cs[i] = c;
        if (c == 1) --b;
        if (c == 2) ++b;
      }
    } else {
      const Choice& c = choice[x][st];
      switch (c.kind) {
        case term_plus: cs[c.a] = 1; break;
        case term_minus: cs[c.a] = 2; break;
        case pair: cs[c.a] = 1, cs[c.b] = 2; break;
        case via: cs[c.a] = st; break;
        default: break;
      }
    }
    for (std::size_t i = 0; i < ch.size(); ++i) state[ch[i]] = cs[i];
    child_state[x] = std::move(cs);
  }

  void assemble(int x, std::vector<std::vector<int>>& out) {
    const auto& ch = children[x];
    const auto& cs = child_state[x];
    auto with_x = [&](int c) {
      auto p = std::move(part[c]);
      p.push_back(x);
      return p;
    };
    auto join = [&](int a, int b) {
      auto p = with_x(a);
      auto& q = part[b];
      p.insert(p.end(), q.rbegin(), q.rend());
      return p;
    };
    if (unlimited(x)) {
      std::vector<int> plus, minus;
      for (std::size_t i = 0; i < ch.size(); ++i) {
        if (cs[i] == 1) plus.push_back(ch[i]);
        if (cs[i] == 2) minus.push_back(ch[i]);
      }
      std::size_t m = std::min(plus.size(), minus.size());
      for (std::size_t i = 0; i < m; ++i) out.push_back(join(plus[i], minus[i]));
      if (state[x] == 1) part[x] = with_x(plus.back());
      if (state[x] == 2) part[x] = with_x(minus.back());
      return;
    }
    const Choice& c = choice[x][state[x]];
    switch (c.kind) {
      case term_plus:
      case term_minus: out.push_back(with_x(ch[c.a])); break;
      case pair: out.push_back(join(ch[c.a], ch[c.b])); break;
      case start: part[x] = {x}; break;
      case via: part[x] = with_x(ch[c.a]); break;
      default: break;
    }
  }
};

// ---------------------------------------------------------------------------
// Branch-and-bound over node-disjoint walk systems.  Each arc is generated
// once, from its smaller-index terminal; the smallest undecided
// terminal-capable node either starts an arc or is barred from being a
// terminal.  The bound charges every segment not yet traversed with its
// oscillation and every point with the best crossing it could still host.

template <class T>
class BranchAndBound {
 public:
  BranchAndBound(const ArcGadget& gad, const Num<T>& num, VariationMode mode, std::uint64_t budget)
      : G(gad), N(num), mode(mode), budget(budget) {}

  T solve() {
    std::size_t n = G.nodes.size();
    status.assign(n, 0);
    in_path.assign(n, 0);
    sib_uses.assign(G.segments.size(), 0);
    known = T(0);
    best = T(0);
    for (T o : N.osc) best += o;
    search();
    return best;
  }

  std::vector<std::vector<int>> best_arcs;
  std::uint64_t visited = 0;

 private:
  const ArcGadget& G;
  const Num<T>& N;
  VariationMode mode;
  std::uint64_t budget;
  std::vector<std::uint8_t> status;  // 0 free, 1 never a terminal, 2 used
  std::vector<char> in_path;
  std::vector<int> sib_uses;
  std::vector<int> path;
  std::vector<std::vector<int>> arcs;
  T D{}, cur{}, known{}, best{};
  int start = -1;

  bool unlimited(int x) const { return mode == VariationMode::iV && !is_half(G, x); }
  bool capable(int x) const { return mode != VariationMode::iV || is_half(G, x); }
  int point_of(int h) const {
    const auto& s = G.segments[G.nodes[h].segment];
    return h == s.lo_half ? s.lo_point : s.hi_point;
  }
  int sibling_of(int h) const {
    const auto& s = G.segments[G.nodes[h].segment];
    return h == s.lo_half ? s.hi_half : s.lo_half;
  }

  void tick() {
    if (++visited > budget)
      throw CapExceeded("branch-and-bound search budget exceeded", visited, budget);
  }

  T bound(bool open) const {
    T r(0);
    for (std::size_t s = 0; s < G.segments.size(); ++s)
      if (!sib_uses[s]) r += N.osc[s];
    int tip = open ? path.back() : -1;
    int tip_pt = tip >= 0 && !is_half(G, tip) ? tip : -1;
    int tip_half_pt = tip >= 0 && is_half(G, tip) ? point_of(tip) : -1;
    std::vector<T> vals;
    for (int P = 0; P < static_cast<int>(G.point_count); ++P) {
      if (!unlimited(P)) {
        if (status[P] == 2) continue;
        if (in_path[P] && P != tip) continue;
      }
      vals.clear();
      bool pv = mode == VariationMode::PV;
      for (int h : G.adj[P])
        if (status[h] != 2 && !in_path[h]) vals.push_back(pv ? N.wpoint[h] : N.term[h]);
      if (P == tip_half_pt && !in_path[P]) vals.push_back(pv ? N.wpoint[tip] : cur);
      if (mode == VariationMode::iV) {
        if (P == tip_pt) vals.push_back(cur);
        std::sort(vals.begin(), vals.end());
        std::size_t m = vals.size(), h = m / 2;
        for (std::size_t i = 0; i < h; ++i) r += vals[m - 1 - i] - vals[i];
      } else if (pv) {
        std::sort(vals.begin(), vals.end(), std::greater<>());
        if (P == tip_pt) {
          if (!vals.empty()) r += vals[0];
        } else {
          for (std::size_t i = 0; i < std::min<std::size_t>(2, vals.size()); ++i) r += vals[i];
        }
      } else {
        T V = N.term[P];
        T pot(0);
        if (P == tip_pt) {
          for (T x : vals) pot = std::max(pot, absdiff(cur, x));
          if (status[P] == 0) pot = std::max(pot, absdiff(cur, V));
        } else if (!vals.empty()) {
          auto [lo, hi] = std::minmax_element(vals.begin(), vals.end());
          pot = *hi - *lo;
          if (status[P] == 0) pot = std::max({pot, absdiff(V, *lo), absdiff(V, *hi)});
        }
        r += pot;
      }
    }
    return r;
  }

  void search() {
    tick();
    if (known + bound(false) <= best) return;
    int u = -1;
    for (int x = 0; x < static_cast<int>(G.nodes.size()); ++x)
      if (status[x] == 0 && capable(x) && !unlimited(x)) {
        u = x;
        break;
      }
    if (u < 0) {
      T v = known;
      for (std::size_t s = 0; s < G.segments.size(); ++s)
        if (!sib_uses[s]) v += N.osc[s];
      if (v > best) {
        best = v;
        best_arcs = arcs;
      }
      return;
    }
    start = u;
    path = {u};
    in_path[u] = 1;
    cur = N.term[u];
    D = T(0);
    extend();
    in_path[u] = 0;
    path.clear();

    status[u] = 1;
    search();
    status[u] = 0;
  }

  void extend() {
    tick();
    if (known + D + bound(true) <= best) return;
    int x = path.back();

    if (path.size() >= 2 && capable(x) && status[x] == 0) {
      T value = mode == VariationMode::PV ? D : absdiff(N.term[start], N.term[x]);
      auto saved_path = path;
      T sD = D, scur = cur;
      int sstart = start;
      std::vector<std::uint8_t> saved_status;
      for (int n : saved_path) {
        saved_status.push_back(status[n]);
        if (!unlimited(n)) status[n] = 2;
        in_path[n] = 0;
      }
      arcs.push_back(saved_path);
      known += value;
      path.clear();
      search();
      known -= value;
      arcs.pop_back();
      path = saved_path;
      D = sD;
      cur = scur;
      start = sstart;
      for (std::size_t i = 0; i < path.size(); ++i) {
        status[path[i]] = saved_status[i];
        in_path[path[i]] = 1;
      }
    }

    struct Step {
      int y;
      T gain;
    };
    std::vector<Step> steps;
    for (int y : G.adj[x]) {
      if (in_path[y]) continue;
      if (!unlimited(y) && status[y] == 2) continue;
      T gain;
      if (is_half(G, x) && is_half(G, y))
        gain = N.wseg[G.nodes[x].segment] + absdiff(cur, N.term[y]);
      else if (is_half(G, x))
        gain = N.wpoint[x];
      else
        gain = N.wpoint[y] + absdiff(cur, N.term[y]);
      steps.push_back({y, gain});
    }
    std::stable_sort(steps.begin(), steps.end(),
                     [](const Step& a, const Step& b) { return a.gain > b.gain; });
    for (const auto& st : steps) {
      int y = st.y;
      T sD = D, scur = cur;
      int seg = -1;
      if (is_half(G, x) && is_half(G, y)) {
        seg = G.nodes[x].segment;
        ++sib_uses[seg];
        cur = N.term[y];
      } else if (!is_half(G, x)) {
        cur = N.term[y];
      }
      D += st.gain;
      path.push_back(y);
      in_path[y] = 1;
      extend();
      in_path[y] = 0;
      path.pop_back();
      if (seg >= 0) --sib_uses[seg];
      D = sD;
      cur = scur;
    }
  }
};

template <class T>
std::pair<T, std::vector<std::vector<int>>> run(const ArcGadget& gad, const Num<T>& num,
                                                VariationMode mode, bool tree_dp,
                                                std::uint64_t budget, std::uint64_t& visited) {
  if (tree_dp) {
    TreeSolver<T> s(gad, num, mode);
    T v = s.solve();
    return {v, s.arcs()};
  }
  BranchAndBound<T> s(gad, num, mode, budget);
  T v = s.solve();
  visited = s.visited;
  return {v, s.best_arcs};
}

}  // namespace

ArcSystem variation_solve(const ArcGadget& gad, VariationMode mode, const SolveOptions& opt) {
  if (gad.segments.size() > opt.cap_segments)
    throw CapExceeded("gadget has " + std::to_string(gad.segments.size()) +
                          " elementary segments, above the cap of " +
                          std::to_string(opt.cap_segments),
                      gad.segments.size(), opt.cap_segments);
  bool tree_dp;
  switch (opt.solver) {
    case SolverChoice::tree_dp:
      if (!gad.tree) throw std::invalid_argument("tree DP requested on a graph that is not a tree");
      tree_dp = true;
      break;
    case SolverChoice::branch_and_bound: tree_dp = false; break;
    default: tree_dp = gad.tree;
  }

  ArcSystem sys;
  sys.mode = mode;
  sys.solver = tree_dp ? "tree_dp" : "branch_and_bound";
  if (gad.nodes.empty()) {
    sys.total = Real(0);
    return sys;
  }

  Inputs in = gather(gad, mode);
  auto lcd = common_scale(in, gad.nodes.size() + gad.segments.size());
  std::vector<std::vector<int>> walks;
  Real expected;
  if (lcd) {
    auto num = convert<std::int64_t>(in, lcd);
    auto [v, w] = run(gad, num, mode, tree_dp, opt.node_budget, sys.search_nodes);
    walks = std::move(w);
    expected = Real(mpq_class(mpz_class(static_cast<long>(v)), *lcd));
  } else {
    auto num = convert<double>(in, std::nullopt);
    auto [v, w] = run(gad, num, mode, tree_dp, opt.node_budget, sys.search_nodes);
    walks = std::move(w);
    expected = Real::inexact(v);
  }

  std::vector<char> traversed(gad.segments.size(), 0);
  for (auto& w : walks) {
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
      if (is_half(gad, w[i]) && is_half(gad, w[i + 1])) traversed[gad.nodes[w[i]].segment] = 1;
    Arc a{std::move(w), false, Real(0)};
    a.value = arc_value(gad, mode, a);
    sys.arcs.push_back(std::move(a));
  }
  for (std::size_t s = 0; s < gad.segments.size(); ++s)
    if (!traversed[s] && gad.segments[s].osc.sign() > 0)
      sys.arcs.push_back({{gad.segments[s].lo_half, gad.segments[s].hi_half}, true, gad.segments[s].osc});
  sys.total = evaluate_arc_system(gad, mode, sys);
  if (!approx_equal(sys.total, expected))
    throw std::logic_error("solver objective " + expected.to_string() +
                           " disagrees with its arc system " + sys.total.to_string());
  return sys;
}

}  // namespace bvg
