#include "turanforge/lemmas.hpp"

#include "turanforge/detect.hpp"
#include "turanforge/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>

namespace turanforge {

void SmoothnessParams::validate() const {
  if (!(beta >= 1 && beta < alpha && alpha < 2)) throw DomainError("smoothness exponents need 1 <= beta < alpha < 2");
  if (!(rho >= 0)) throw DomainError("relative density rho must be >= 0");
  if (!(C >= 1)) throw DomainError("smoothness constant C must be >= 1");
}

SmoothnessParams smoothness_registry(SmoothFamily family, int t) {
  SmoothnessParams p;
  switch (family) {
    case SmoothFamily::K2t:
      if (t < 2) throw DomainError("K_{2,t} needs t >= 2");
      p.alpha = Rational(3, 2);
      p.beta = Rational(4, 3);
      p.rho = std::sqrt(static_cast<double>(t - 1));
      break;
    case SmoothFamily::K33:
      p.alpha = Rational(5, 3);
      p.beta = Rational(4, 3);
      p.rho = 1.0;
      break;
    case SmoothFamily::K2tBook:
      if (t < 2) throw DomainError("book family needs t >= 2");
      p.alpha = Rational(3, 2);
      p.beta = Rational(1);
      p.rho = 1.0;
      break;
  }
  return p;
}

SmoothFamily parse_smooth_family(const std::string& tag) {
  std::string s;
  for (char c : tag) s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (s == "k2t") return SmoothFamily::K2t;
  if (s == "k33") return SmoothFamily::K33;
  if (s == "k2t_book") return SmoothFamily::K2tBook;
  throw DomainError("unknown smooth family '" + tag + "' (expected k2t, k33 or k2t_book)");
}

double fit_smoothness_constant(const std::vector<BipartiteSample>& samples, const Rational& alpha,
                               const Rational& beta) {
  const double a = to_double(alpha);
  const double b = to_double(beta);
  double c = 1.0;
  for (const auto& s : samples) {
    if (s.m < 1 || s.m > s.n) throw DomainError("samples need 1 <= m <= n");
    const double scale = static_cast<double>(s.m) * std::pow(static_cast<double>(s.n), a - 1) +
                         std::pow(static_cast<double>(s.n), b);
    c = std::max(c, static_cast<double>(s.z) / scale);
  }
  return c;
}

double furedi_kst_bound(std::int64_t m, std::int64_t n, int s, int t) {
  if (s < 2) throw DomainError("Furedi bound needs s >= 2");
  if (s > t) throw DomainError("Furedi bound needs s <= t");
  if (m < 0 || m > n) throw DomainError("Furedi bound needs 0 <= m <= n");
  const double md = static_cast<double>(m);
  const double nd = static_cast<double>(n);
  return std::pow(t - s + 1, 1.0 / s) * md * std::pow(nd, 1.0 - 1.0 / s) + s * md + s * std::pow(nd, 2.0 - 2.0 / s);
}

double book_family_bound(std::int64_t m, std::int64_t n, int t) {
  if (t < 2) throw DomainError("book bound needs t >= 2");
  if (m < 0 || m > n) throw DomainError("book bound needs 0 <= m <= n");
  return static_cast<double>(m) * std::sqrt(static_cast<double>(n)) + 4.0 * t * t * static_cast<double>(n);
}

std::optional<Rational> c4_lower_bound(std::int64_t m, std::int64_t n, std::int64_t e) {
  if (m < 0 || n < 1 || e < 0) throw DomainError("c4 bound needs m >= 0, n >= 1, e >= 0");
  if (m < 2) return std::nullopt;
  const BigInt E = e, N = n, M = m;
  const BigInt excess = E * (E - N);
  const BigInt pairs = M * (M - 1);
  if (2 * excess < N * pairs) return std::nullopt;
  return Rational(excess * excess - excess * N * pairs, 4 * N * N * pairs);
}

EmbeddingThresholds embedding_thresholds(const Rational& alpha, const Rational& beta) {
  SmoothnessParams{alpha, beta}.validate();
  EmbeddingThresholds th;
  if (beta == 1) {
    const Rational x = 1 / (alpha - 1);
    th.layers = static_cast<int>(BigInt(numerator(x) / denominator(x)));
  } else {
    const Rational target = (2 * beta - beta * beta) * (alpha - 1) / (alpha - beta);
    // target > beta >= 1 whenever alpha < 2, so the loop runs at least once.
    Rational power = 1;
    int j = 0;
    while (power * beta <= target) {
      power *= beta;
      ++j;
    }
    th.layers = j;
  }
  th.min_length = 2 * th.layers + 5;
  return th;
}

Rational layer_growth_exponent(int i, const Rational& beta) {
  if (i < 1) throw DomainError("layer index must be >= 1");
  if (beta < 1) throw DomainError("beta must be >= 1");
  if (beta == 1) return Rational(i);
  Rational power = 1;
  for (int j = 0; j < i; ++j) power *= beta;
  return 1 / (beta - 1) + (beta * beta - 2 * beta) / ((beta - 1) * power);
}

ExpansionBound smooth_expansion_bound(const SmoothnessParams& params, double delta, std::int64_t size_u,
                                      std::int64_t n, ExpansionCase which) {
  params.validate();
  if (!(delta > 0)) throw DomainError("delta must be positive");
  if (size_u < 0 || n < 1) throw DomainError("need |U| >= 0 and n >= 1");
  const double a = to_double(params.alpha);
  const double b = to_double(params.beta);
  const double nd = static_cast<double>(n);
  const double u = static_cast<double>(size_u);
  ExpansionBound out;
  out.gamma = delta / (2 * params.C);
  out.min_n = std::pow(1 / out.gamma, 1 / (a - b));
  out.applicable = nd >= out.min_n;
  if (!out.applicable) return out;
  const double saturated = std::pow(out.gamma, 1 / (a - 1)) * nd;
  if (which == ExpansionCase::USmaller) {
    out.value = std::min(std::pow(out.gamma, 1 / b) * std::pow(u, 1 / b) * std::pow(nd, (a - 1) / b), saturated);
  } else {
    out.value = std::max(out.gamma * std::pow(nd, a - 1) * std::pow(u, 2 - a), saturated);
  }
  return out;
}

double kst_expansion_bound(double rho_x, double rho_y, std::int64_t size_y, std::int64_t n, int s, int t) {
  if (s < 2 || t < s) throw DomainError("K_{s,t} expansion needs 2 <= s <= t");
  if (rho_x < 0 || rho_y < 0 || size_y < 0 || n < 1) throw DomainError("K_{s,t} expansion needs nonnegative inputs");
  const double nd = static_cast<double>(n);
  return std::pow(rho_x / (t - 1), 1.0 / (s - 1)) * (rho_y * static_cast<double>(size_y) - s * std::pow(nd, 1.0 / s));
}

namespace {

// Relative slack for comparing measured densities against their own definitions.
constexpr double kMeasureSlack = 1e-12;

struct ExpansionSets {
  Bitset x;
  Bitset y;
  int min_into_y = 0;
};

ExpansionSets expansion_sets(const Graph& g, const VertexList& xs, const VertexList& ys) {
  require_vertices_in_range(g, xs, "X vertex");
  require_vertices_in_range(g, ys, "Y vertex");
  ExpansionSets sets{Bitset::of(g.order(), xs), Bitset::of(g.order(), ys), 0};
  if (xs.empty()) throw DomainError("X must be nonempty");
  sets.min_into_y = g.order();
  for (Vertex x : xs) sets.min_into_y = std::min(sets.min_into_y, intersection_count(g.row(x), sets.y.words()));
  return sets;
}

}  // namespace

KstExpansionReport kst_expansion_check(const Graph& g, Vertex v, const VertexList& xs, const VertexList& ys, int s,
                                       int t, double rho_x, double rho_y) {
  if (v < 0 || v >= g.order()) throw DomainError("start vertex out of range");
  const ExpansionSets sets = expansion_sets(g, xs, ys);
  const double nd = static_cast<double>(g.order());
  KstExpansionReport r;
  r.rho_x = rho_x;
  r.rho_y = rho_y;
  r.bound = kst_expansion_bound(rho_x, rho_y, static_cast<std::int64_t>(ys.size()), g.order(), s, t);
  r.vacuous = r.bound <= 0;

  if (auto w = has_kst(g, s, t)) r.violations.push_back("graph contains K_{" + std::to_string(s) + "," +
                                                         std::to_string(t) + "}");
  for (Vertex x : xs) {
    if (!g.adjacent(v, x)) r.violations.push_back("X vertex " + std::to_string(x) + " is not a neighbour of v");
  }
  if (sets.y.test(v)) r.violations.push_back("Y contains v");
  for (Vertex y : ys) {
    if (sets.x.test(y)) r.violations.push_back("Y vertex " + std::to_string(y) + " lies in X");
  }
  const double x_needed = rho_x * std::pow(nd, 1.0 - 1.0 / s);
  if (static_cast<double>(xs.size()) < x_needed * (1 - kMeasureSlack)) {
    r.violations.push_back("|X| = " + std::to_string(xs.size()) + " is below rho_X n^{1-1/s}");
  }
  const double y_needed = rho_y * static_cast<double>(ys.size()) * std::pow(nd, -1.0 / s);
  for (Vertex x : xs) {
    const int into = intersection_count(g.row(x), sets.y.words());
    if (into < y_needed * (1 - kMeasureSlack)) {
      r.violations.push_back("X vertex " + std::to_string(x) + " has " + std::to_string(into) +
                             " neighbours in Y, below rho_Y |Y| n^{-1/s}");
    }
  }
  r.hypotheses_hold = r.violations.empty();

  Bitset reach(g.order());
  for (Vertex x : xs) {
    Bitset nb = g.neighborhood(x);
    reach |= nb;
  }
  reach &= sets.y;
  r.actual = reach.count();
  r.holds = r.hypotheses_hold && static_cast<double>(r.actual) >= r.bound;
  return r;
}

KstExpansionReport kst_expansion_check(const Graph& g, Vertex v, const VertexList& xs, const VertexList& ys, int s,
                                       int t) {
  const ExpansionSets sets = expansion_sets(g, xs, ys);
  const double nd = static_cast<double>(g.order());
  const double rho_x = static_cast<double>(xs.size()) / std::pow(nd, 1.0 - 1.0 / s);
  const double rho_y =
      ys.empty() ? 0.0 : sets.min_into_y * std::pow(nd, 1.0 / s) / static_cast<double>(ys.size());
  return kst_expansion_check(g, v, xs, ys, s, t, rho_x, rho_y);
}

namespace {

std::int64_t edges_inside(const Graph& g, const Bitset& set) {
  std::int64_t twice = 0;
  set.for_each([&](int x) { twice += intersection_count(g.row(x), set.words()); });
  return twice / 2;
}

std::string list_to_string(const VertexList& vs) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < vs.size(); ++i) os << (i ? "," : "") << vs[i];
  os << ']';
  return os.str();
}

}  // namespace

StabilityOutcome tri_stab(const Graph& g, double gamma) {
  if (!(gamma > 0 && gamma < 0.125)) throw DomainError("tri_stab needs 0 < gamma < 1/8");
  const int n = g.order();
  const double n2 = static_cast<double>(n) * n;
  if (n == 0 || static_cast<double>(g.size()) < (0.25 - gamma) * n2) {
    throw DomainError("tri_stab needs e(G) >= (1/4 - gamma) n^2; have e = " + std::to_string(g.size()) +
                      ", n = " + std::to_string(n));
  }
  const auto& deg = g.degrees();
  const Vertex u = static_cast<Vertex>(std::max_element(deg.begin(), deg.end()) - deg.begin());
  const Bitset x = g.neighborhood(u);
  Bitset y(n);
  for (int i = 0; i < n; ++i) y.set(i);
  y.subtract(x);

  StabilityOutcome out;
  const std::int64_t ex = edges_inside(g, x);
  const std::int64_t ey = edges_inside(g, y);
  Vertex v = -1;
  std::int64_t ez = 0;
  if (static_cast<double>(ex) >= gamma * n2) {
    out.kind = StabilityOutcome::Kind::TriangleRich;
    out.vertex = u;
  } else if (static_cast<double>(ey) <= (9 * std::pow(gamma, 0.25) - gamma) * n2) {
    out.kind = StabilityOutcome::Kind::Bipartition;
    out.x = x.to_list();
    out.y = y.to_list();
  } else {
    int best = -1;
    x.for_each([&](int w) {
      const int into = intersection_count(g.row(w), y.words());
      if (into > best) {
        best = into;
        v = w;
      }
    });
    Bitset z = g.neighborhood(v);
    z &= y;
    ez = edges_inside(g, z);
    if (static_cast<double>(ez) >= gamma * n2) {
      out.kind = StabilityOutcome::Kind::TriangleRich;
      out.vertex = v;
    } else {
      std::ostringstream os;
      os << "tri_stab reached its excluded branch: n=" << n << " e=" << g.size() << " gamma=" << gamma << " u=" << u
         << " e(X)=" << ex << " e(Y)=" << ey << " v=" << v << " e(Z)=" << ez << " X=" << list_to_string(x.to_list());
      throw InvariantViolation(os.str());
    }
  }

  if (out.kind == StabilityOutcome::Kind::TriangleRich) {
    out.triangles = triangles_through(g, out.vertex);
    if (static_cast<double>(out.triangles) < gamma * n2) {
      throw InvariantViolation("tri_stab: vertex " + std::to_string(out.vertex) + " lies in only " +
                               std::to_string(out.triangles) + " triangles");
    }
  } else {
    out.non_crossing = edges_inside(g, Bitset::of(n, out.x)) + edges_inside(g, Bitset::of(n, out.y));
    if (static_cast<double>(out.non_crossing) > 9 * std::pow(gamma, 0.25) * n2) {
      throw InvariantViolation("tri_stab: split leaves " + std::to_string(out.non_crossing) + " edges inside parts");
    }
  }
  return out;
}

std::int64_t cut_size(const Graph& g, const std::vector<int>& side) {
  if (side.size() != static_cast<std::size_t>(g.order())) throw DomainError("side vector has the wrong length");
  std::int64_t cut = 0;
  for (const auto& [u, v] : g.edges()) cut += side[static_cast<std::size_t>(u)] != side[static_cast<std::size_t>(v)];
  return cut;
}

MaxCutResult local_max_cut(const Graph& g, std::vector<int> side) {
  const int n = g.order();
  if (side.size() != static_cast<std::size_t>(n)) throw DomainError("side vector has the wrong length");
  for (int s : side) {
    if (s != 0 && s != 1) throw DomainError("sides must be 0 or 1");
  }
  std::vector<int> same(static_cast<std::size_t>(n), 0);
  for (const auto& [u, v] : g.edges()) {
    if (side[static_cast<std::size_t>(u)] == side[static_cast<std::size_t>(v)]) {
      ++same[static_cast<std::size_t>(u)];
      ++same[static_cast<std::size_t>(v)];
    }
  }
  MaxCutResult r;
  for (;;) {
    Vertex mover = -1;
    for (Vertex v = 0; v < n; ++v) {
      if (2 * same[static_cast<std::size_t>(v)] > g.degree(v)) {
        mover = v;
        break;
      }
    }
    if (mover < 0) break;
    const auto mi = static_cast<std::size_t>(mover);
    for (Vertex w : g.neighbors(mover)) {
      const auto wi = static_cast<std::size_t>(w);
      same[wi] += side[wi] == side[mi] ? -1 : 1;
    }
    same[mi] = g.degree(mover) - same[mi];
    side[mi] ^= 1;
    ++r.moves;
  }
  r.side = std::move(side);
  r.cut = cut_size(g, r.side);
  return r;
}

ExpansionConstants ExpansionConstants::coupled(double tau, double d, double epsilon, int t, double C) {
  if (t < 1 || !(C >= 1)) throw DomainError("coupled constants need t >= 1 and C >= 1");
  ExpansionConstants c;
  c.tau = tau;
  c.d = d;
  c.epsilon = epsilon;
  c.delta = tau * tau * d / 64;
  c.delta_tilde = d / (4.0 * t);
  c.gamma_tilde = c.delta_tilde / (2 * C);
  return c;
}

bool is_cycle_through(const Graph& g, const VertexList& cycle, Vertex v, int k) {
  if (k < 3 || static_cast<int>(cycle.size()) != k) return false;
  for (Vertex x : cycle) {
    if (x < 0 || x >= g.order()) return false;
  }
  VertexList sorted = cycle;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  if (std::find(cycle.begin(), cycle.end(), v) == cycle.end()) return false;
  for (int i = 0; i < k; ++i) {
    if (!g.adjacent(cycle[static_cast<std::size_t>(i)], cycle[static_cast<std::size_t>((i + 1) % k)])) return false;
  }
  return true;
}

namespace {

// Levels N_1..N_l grown from v, with the lowest-index parent of each vertex.
struct Pyramid {
  std::vector<Bitset> levels;
  std::vector<Vertex> parent;
  Bitset frontier_reach;  // N(N_l), or N(v) when l = 0
};

Pyramid grow(const Graph& g, Vertex v, const std::vector<Bitset>& layers, const Bitset& removed) {
  const int n = g.order();
  Pyramid p;
  p.parent.assign(static_cast<std::size_t>(n), -1);
  Bitset current(n);
  current.set(v);
  for (const Bitset& layer : layers) {
    Bitset next(n);
    current.for_each([&](int u) {
      Bitset nb = g.neighborhood(u);
      nb &= layer;
      nb.subtract(removed);
      nb.subtract(next);
      nb.for_each([&](int w) { p.parent[static_cast<std::size_t>(w)] = u; });
      next |= nb;
    });
    p.levels.push_back(next);
    current = next;
  }
  p.frontier_reach = Bitset(n);
  current.for_each([&](int u) { p.frontier_reach |= g.neighborhood(u); });
  p.frontier_reach.subtract(removed);
  return p;
}

// Parent of an endpoint in B is its lowest-index neighbour in the top level.
VertexList trace_arm(const Graph& g, Vertex v, const Pyramid& p, Vertex end) {
  VertexList arm;
  if (p.levels.empty()) return arm;
  Bitset top = g.neighborhood(end);
  top &= p.levels.back();
  Vertex cur = top.first();
  while (cur >= 0 && cur != v) {
    arm.push_back(cur);
    cur = p.parent[static_cast<std::size_t>(cur)];
  }
  return arm;  // from the top level down to level 1
}

class PathSearch {
 public:
  PathSearch(const Graph& g, const OddCycleSetup& s, const std::vector<Bitset>& second_layers, std::int64_t& steps)
      : g_(g), s_(s), second_layers_(second_layers), steps_(steps), on_path_(g.order()) {}

  std::optional<VertexList> run(const Bitset& start, const Bitset& side_a, const Bitset& side_b,
                                const Pyramid& first, int length) {
    side_a_ = &side_a;
    side_b_ = &side_b;
    first_ = &first;
    length_ = length;
    std::optional<VertexList> found;
    start.for_each([&](int t) {
      if (found || exhausted()) return;
      path_.assign(1, t);
      on_path_.set(t);
      found = extend();
      on_path_.reset(t);
    });
    return found;
  }

  bool exhausted() const { return steps_ >= s_.max_steps; }

 private:
  std::optional<VertexList> extend() {
    if (++steps_ >= s_.max_steps) return std::nullopt;
    const int depth = static_cast<int>(path_.size()) - 1;
    if (depth == length_) return close();
    // Odd positions lie in B', even positions in B.
    Bitset next = g_.neighborhood(path_.back());
    next &= (depth % 2 == 0) ? *side_b_ : *side_a_;
    next.subtract(on_path_);
    for (int w = next.first(); w >= 0; w = next.next(w + 1)) {
      path_.push_back(w);
      on_path_.set(w);
      auto r = extend();
      on_path_.reset(w);
      path_.pop_back();
      if (r || exhausted()) return r;
    }
    return std::nullopt;
  }

  // Tries to attach both arms to the current path.
  std::optional<VertexList> close() {
    const Vertex t = path_.front();
    const Vertex t2 = path_.back();
    VertexList arm1 = trace_arm(g_, s_.v, *first_, t);
    // Path vertices sit in B and B', which the layers avoid.
    Bitset removed(g_.order());
    for (Vertex a : arm1) removed.set(a);
    const Pyramid second = grow(g_, s_.v, second_layers_, removed);
    if (!second.frontier_reach.test(t2)) return std::nullopt;
    VertexList arm2 = trace_arm(g_, s_.v, second, t2);
    VertexList cycle{s_.v};
    for (auto it = arm1.rbegin(); it != arm1.rend(); ++it) cycle.push_back(*it);
    cycle.insert(cycle.end(), path_.begin(), path_.end());
    cycle.insert(cycle.end(), arm2.begin(), arm2.end());
    return cycle;
  }

  const Graph& g_;
  const OddCycleSetup& s_;
  const std::vector<Bitset>& second_layers_;
  std::int64_t& steps_;
  Bitset on_path_;
  VertexList path_;
  const Bitset* side_a_ = nullptr;
  const Bitset* side_b_ = nullptr;
  const Pyramid* first_ = nullptr;
  int length_ = 0;
};

}  // namespace

OddCycleResult find_odd_cycle_via_expansion(const Graph& g, const OddCycleSetup& s) {
  const int n = g.order();
  if (s.v < 0 || s.v >= n) throw DomainError("start vertex out of range");
  const int l = static_cast<int>(s.layers.size());
  if (s.k < 3 || s.k % 2 == 0) throw DomainError("cycle length must be odd and >= 3");
  if (s.k < 2 * l + 3) throw DomainError("cycle length must be at least 2l + 3");
  if (!s.layers_second.empty() && s.layers_second.size() != s.layers.size()) {
    throw DomainError("both layer lists need the same length");
  }
  const auto& second_lists = s.layers_second.empty() ? s.layers : s.layers_second;

  auto to_bitsets = [&](const std::vector<VertexList>& lists) {
    std::vector<Bitset> out;
    Bitset seen(n);
    for (const auto& list : lists) {
      require_vertices_in_range(g, list, "layer vertex");
      Bitset b = Bitset::of(n, list);
      if (b.test(s.v)) throw DomainError("layers must not contain v");
      Bitset overlap = b;
      overlap &= seen;
      if (overlap.any()) throw DomainError("layers must be pairwise disjoint");
      seen |= b;
      out.push_back(std::move(b));
    }
    return std::pair{out, seen};
  };
  auto [first_layers, first_union] = to_bitsets(s.layers);
  auto [second_layers, second_union] = to_bitsets(second_lists);

  require_vertices_in_range(g, s.b, "B vertex");
  require_vertices_in_range(g, s.b_second, "B' vertex");
  const Bitset side_a = Bitset::of(n, s.b);
  const Bitset side_b = Bitset::of(n, s.b_second);
  Bitset clash = side_a;
  clash &= side_b;
  if (clash.any()) throw DomainError("B and B' must be disjoint");
  Bitset targets = side_a;
  targets |= side_b;
  if (targets.test(s.v)) throw DomainError("B and B' must not contain v");
  for (const Bitset* layers_union : {&first_union, &second_union}) {
    Bitset c = targets;
    c &= *layers_union;
    if (c.any()) throw DomainError("B and B' must be disjoint from the layers");
  }

  OddCycleResult result;
  const Pyramid first = grow(g, s.v, first_layers, Bitset(n));
  for (const auto& level : first.levels) {
    if (level.none()) {
      result.reason = "expansion died out";
      return result;
    }
  }
  Bitset start = first.frontier_reach;
  start &= side_a;
  if (start.none()) {
    result.reason = "first pyramid does not reach B";
    return result;
  }
  PathSearch search(g, s, second_layers, result.steps);
  auto cycle = search.run(start, side_a, side_b, first, s.k - 2 * l - 2);
  if (!cycle) {
    result.reason = search.exhausted() ? "step budget exhausted" : "no connecting path";
    return result;
  }
  if (!is_cycle_through(g, *cycle, s.v, s.k)) {
    throw InvariantViolation("odd-cycle finder produced an invalid cycle " + list_to_string(*cycle));
  }
  result.cycle = std::move(cycle);
  return result;
}

OddCycleSearch find_odd_cycle_auto(const Graph& g, int k, std::uint64_t seed, int start_vertices) {
  const int n = g.order();
  if (k < 3 || k % 2 == 0) throw DomainError("cycle length must be odd and >= 3");
  OddCycleSearch out;
  out.result.reason = "no start vertex";
  if (n == 0) return out;
  std::mt19937_64 rng(seed);
  VertexList order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  order.resize(static_cast<std::size_t>(std::min(n, std::max(1, start_vertices))));

  for (Vertex v : order) {
    // BFS spheres around v.
    std::vector<int> dist(static_cast<std::size_t>(n), -1);
    std::vector<VertexList> spheres{{v}};
    dist[static_cast<std::size_t>(v)] = 0;
    while (!spheres.back().empty()) {
      VertexList next;
      for (Vertex u : spheres.back()) {
        for (Vertex w : g.neighbors(u)) {
          if (dist[static_cast<std::size_t>(w)] < 0) {
            dist[static_cast<std::size_t>(w)] = static_cast<int>(spheres.size());
            next.push_back(w);
          }
        }
      }
      std::sort(next.begin(), next.end());
      spheres.push_back(std::move(next));
    }
    for (int l = (k - 3) / 2; l >= 0; --l) {
      if (l + 1 >= static_cast<int>(spheres.size()) || spheres[static_cast<std::size_t>(l + 1)].empty()) continue;
      const VertexList& outer = spheres[static_cast<std::size_t>(l + 1)];
      const Graph sub = g.induced(outer);
      std::vector<int> side(outer.size());
      std::bernoulli_distribution coin(0.5);
      for (auto& x : side) x = coin(rng) ? 1 : 0;
      const MaxCutResult cut = local_max_cut(sub, side);
      OddCycleSetup setup;
      setup.v = v;
      setup.k = k;
      for (int i = 1; i <= l; ++i) setup.layers.push_back(spheres[static_cast<std::size_t>(i)]);
      for (std::size_t i = 0; i < outer.size(); ++i) (cut.side[i] == 0 ? setup.b : setup.b_second).push_back(outer[i]);
      ++out.attempts;
      OddCycleResult r = find_odd_cycle_via_expansion(g, setup);
      if (r.cycle) {
        r.steps += out.result.steps;
        out.result = std::move(r);
        out.setup = std::move(setup);
        return out;
      }
      out.result.steps += r.steps;
      out.result.reason = r.reason;
    }
  }
  if (out.attempts == 0) out.result.reason = "no sphere deep enough";
  return out;
}

TransferReport transfer_report(const Graph& g, const Partition& P, const PairClassification& cls,
                               const ClusterGraph& R, const SmoothnessParams& params, double gamma) {
  params.validate();
  if (!(params.rho > 0)) throw DomainError("transfer report needs rho > 0");
  if (!(gamma > 0)) throw DomainError("gamma must be positive");
  validate_partition(g, P);
  if (cls.k != P.size() || R.k != P.size()) throw DomainError("classification and cluster graph must match the partition");

  TransferReport r;
  r.n = g.order();
  r.edges = g.size();
  r.alpha = to_double(params.alpha);
  r.rho = params.rho;
  r.gamma = gamma;
  r.t = P.size();
  const double nd = static_cast<double>(r.n);
  r.p = std::pow(nd, r.alpha - 2);
  r.mu_power = 2.0 * static_cast<double>(r.edges) / (r.rho * r.p * nd * nd) - gamma;
  r.vacuous = r.mu_power <= 0;
  const double mu = r.vacuous ? 0.0 : std::pow(r.mu_power, 1 / (r.alpha - 1));
  if (!r.vacuous) r.mu = mu;
  r.cluster_edges = static_cast<std::int64_t>(R.edges.size());
  const double t = r.t;
  r.cluster_edge_threshold = (mu - gamma) * t * t / 2;
  r.global_conclusion_holds = r.vacuous || static_cast<double>(r.cluster_edges) >= r.cluster_edge_threshold;

  for (int i = 0; i < r.t; ++i) {
    ClusterTransfer c;
    c.cluster = i;
    const VertexList& part = P.parts[static_cast<std::size_t>(i)];
    const Bitset in = Bitset::of(g.order(), part);
    std::int64_t deg_sum = 0;
    for (Vertex v : part) deg_sum += g.degree(v);
    c.edges_met = deg_sum - edges_inside(g, in);
    c.edge_threshold = (r.mu_power + gamma) * r.rho * std::pow(nd, r.alpha - 1) * static_cast<double>(part.size());
    c.meets_threshold = !r.vacuous && static_cast<double>(c.edges_met) >= c.edge_threshold;
    for (int j = 0; j < r.t; ++j) {
      if (j != i && cls.at(std::min(i, j), std::max(i, j)).verdict.status == PairStatus::Irregular) ++c.irregular_pairs;
    }
    c.irregular_threshold = gamma * t;
    c.degree = R.degrees[static_cast<std::size_t>(i)];
    c.degree_threshold = (mu - gamma) * t;
    c.conclusion_holds = !c.meets_threshold || c.irregular_pairs >= c.irregular_threshold ||
                         static_cast<double>(c.degree) >= c.degree_threshold;
    r.clusters.push_back(c);
  }
  return r;
}

}  // namespace turanforge
