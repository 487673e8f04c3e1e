#include "turanforge/detect.hpp"

#include "turanforge/errors.hpp"
#include "turanforge/parallel.hpp"

#include <algorithm>
#include <limits>
#include <cctype>
#include <charconv>
#include <numeric>
#include <queue>

namespace turanforge {

Pattern Pattern::cycle(int k) {
  if (k < 3) throw DomainError("cycle length must be at least 3");
  return k == 3 ? triangle() : Pattern{PatternKind::Cycle, k, 0};
}

Pattern Pattern::odd_cycle(int k) {
  if (k < 3 || k % 2 == 0) throw DomainError("odd cycle length must be odd and at least 3");
  return {PatternKind::OddCycle, k, 0};
}

Pattern Pattern::complete_bipartite(int s, int t) {
  if (s > t) std::swap(s, t);
  if (s < 1) throw DomainError("complete bipartite parts must be nonempty");
  return {PatternKind::CompleteBipartite, s, t};
}

Pattern Pattern::book(int t) {
  if (t < 1) throw DomainError("book needs at least one page");
  return {PatternKind::Book, t, 0};
}

int Pattern::order() const {
  switch (kind) {
    case PatternKind::Triangle: return 3;
    case PatternKind::OddCycle:
    case PatternKind::Cycle: return a;
    case PatternKind::CompleteBipartite: return a + b;
    case PatternKind::Book: return 2 + 2 * a;
  }
  return 0;
}

std::string Pattern::name() const {
  switch (kind) {
    case PatternKind::Triangle: return "triangle";
    case PatternKind::OddCycle:
    case PatternKind::Cycle: return "c" + std::to_string(a);
    case PatternKind::CompleteBipartite: return "k{" + std::to_string(a) + "," + std::to_string(b) + "}";
    case PatternKind::Book: return "b" + std::to_string(a);
  }
  return "?";
}

namespace {

int parse_int(std::string_view s, std::string_view token) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw DomainError("bad pattern token '" + std::string(token) + "'");
  }
  return value;
}

}  // namespace

ForbiddenFamily ForbiddenFamily::parse(std::string_view text) {
  std::vector<std::string> tokens;
  std::string cur;
  int depth = 0;
  for (char c : text) {
    if (c == '{') ++depth;
    if (c == '}') --depth;
    if (c == ',' && depth == 0) {
      tokens.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
  }
  if (depth != 0) throw DomainError("unbalanced braces in family '" + std::string(text) + "'");
  tokens.push_back(cur);

  ForbiddenFamily fam;
  for (const std::string& tok : tokens) {
    std::string_view t = tok;
    if (t.empty()) throw DomainError("empty pattern token");
    if (t == "triangle" || t == "k3" || t == "c3") {
      fam.patterns.push_back(Pattern::triangle());
    } else if (t.starts_with("odd")) {
      const int k = parse_int(t.substr(3), tok);
      if (k < 3) throw DomainError("odd cycle bound must be at least 3");
      for (int len = 3; len <= k; len += 2) {
        fam.patterns.push_back(len == 3 ? Pattern::triangle() : Pattern::odd_cycle(len));
      }
    } else if (t.starts_with("k{") && t.ends_with("}")) {
      const auto inner = t.substr(2, t.size() - 3);
      const auto comma = inner.find(',');
      if (comma == std::string_view::npos) throw DomainError("bad pattern token '" + tok + "'");
      fam.patterns.push_back(
          Pattern::complete_bipartite(parse_int(inner.substr(0, comma), tok), parse_int(inner.substr(comma + 1), tok)));
    } else if (t[0] == 'c') {
      fam.patterns.push_back(Pattern::cycle(parse_int(t.substr(1), tok)));
    } else if (t[0] == 'b') {
      fam.patterns.push_back(Pattern::book(parse_int(t.substr(1), tok)));
    } else {
      throw DomainError("unknown pattern '" + tok + "'");
    }
  }
  return fam;
}

std::string ForbiddenFamily::to_string() const {
  std::string out;
  for (const auto& p : patterns) {
    if (!out.empty()) out += ",";
    out += p.name();
  }
  return out;
}

namespace {

bool distinct_in_range(const Graph& g, const VertexList& vs) {
  Bitset seen(g.order());
  for (Vertex v : vs) {
    if (v < 0 || v >= g.order() || seen.test(v)) return false;
    seen.set(v);
  }
  return true;
}

bool is_cycle(const Graph& g, const VertexList& vs, int k) {
  if (static_cast<int>(vs.size()) != k) return false;
  for (int i = 0; i < k; ++i) {
    if (!g.adjacent(vs[static_cast<std::size_t>(i)], vs[static_cast<std::size_t>((i + 1) % k)])) return false;
  }
  return true;
}

}  // namespace

bool validate(const Graph& g, const Witness& w) {
  const auto& vs = w.vertices;
  if (static_cast<int>(vs.size()) != w.pattern.order() || !distinct_in_range(g, vs)) return false;
  switch (w.pattern.kind) {
    case PatternKind::Triangle:
    case PatternKind::OddCycle:
    case PatternKind::Cycle: return is_cycle(g, vs, w.pattern.order());
    case PatternKind::CompleteBipartite: {
      const auto s = static_cast<std::size_t>(w.pattern.a);
      for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = s; j < vs.size(); ++j)
          if (!g.adjacent(vs[i], vs[j])) return false;
      return true;
    }
    case PatternKind::Book: {
      const Vertex x = vs[0], y = vs[1];
      if (!g.adjacent(x, y)) return false;
      for (std::size_t i = 2; i < vs.size(); i += 2) {
        const Vertex a = vs[i], b = vs[i + 1];
        if (!g.adjacent(y, a) || !g.adjacent(a, b) || !g.adjacent(b, x)) return false;
      }
      return true;
    }
  }
  return false;
}

std::optional<Witness> has_triangle(const Graph& g) {
  const int n = g.order();
  Bitset common(n);
  for (Vertex u = 0; u < n; ++u) {
    const Bitset nu = g.neighborhood(u);
    for (int v = nu.next(u + 1); v >= 0; v = nu.next(v + 1)) {
      common = nu;
      common &= g.row(v);
      const int w = common.next(v + 1);
      if (w >= 0) return Witness{Pattern::triangle(), {u, v, w}};
    }
  }
  return std::nullopt;
}

std::int64_t count_triangles(const Graph& g, int threads) {
  const int n = g.order();
  std::vector<std::int64_t> per(static_cast<std::size_t>(n), 0);
  parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t ui) {
    const Vertex u = static_cast<Vertex>(ui);
    const Bitset nu = g.neighborhood(u);
    std::int64_t c = 0;
    for (int v = nu.next(u + 1); v >= 0; v = nu.next(v + 1)) c += intersection_count_from(nu.words(), g.row(v), v + 1);
    per[ui] = c;
  });
  return std::accumulate(per.begin(), per.end(), std::int64_t{0});
}

std::int64_t triangles_through(const Graph& g, Vertex v) {
  require_vertices_in_range(g, std::span<const Vertex>(&v, 1), "vertex");
  const auto nbrs = g.neighbors(v);
  std::int64_t e = 0;
  for (Vertex u : nbrs) e += intersection_count(g.row(u), g.row(v));
  return e / 2;
}

namespace {

// Shortest cycle length overall (odd_only = false) or shortest odd cycle.
std::optional<int> bfs_girth(const Graph& g, bool odd_only) {
  const int n = g.order();
  int best = std::numeric_limits<int>::max();
  std::vector<int> dist(static_cast<std::size_t>(n)), parent(static_cast<std::size_t>(n));
  std::vector<Vertex> queue;
  for (Vertex root = 0; root < n; ++root) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[static_cast<std::size_t>(root)] = 0;
    parent[static_cast<std::size_t>(root)] = -1;
    queue.assign(1, root);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Vertex x = queue[head];
      const int dx = dist[static_cast<std::size_t>(x)];
      if (2 * dx + 1 >= best) break;
      g.neighborhood(x).for_each([&](int y) {
        auto& dy = dist[static_cast<std::size_t>(y)];
        if (dy < 0) {
          dy = dx + 1;
          parent[static_cast<std::size_t>(y)] = x;
          queue.push_back(y);
        } else if (y != parent[static_cast<std::size_t>(x)]) {
          if (dy == dx) {
            best = std::min(best, 2 * dx + 1);
          } else if (!odd_only && dy == dx + 1) {
            best = std::min(best, 2 * dx + 2);
          }
        }
      });
    }
  }
  if (best == std::numeric_limits<int>::max()) return std::nullopt;
  return best;
}

}  // namespace

std::optional<int> girth(const Graph& g) { return bfs_girth(g, false); }
std::optional<int> odd_girth(const Graph& g) { return bfs_girth(g, true); }

namespace {

class CycleSearch {
 public:
  CycleSearch(const Graph& g, int k) : g_(g), k_(k), dist_(static_cast<std::size_t>(g.order())), on_path_(g.order()) {}

  std::optional<VertexList> run() {
    const int n = g_.order();
    for (Vertex s = 0; s < n; ++s) {
      start_ = s;
      distances_from(s);
      path_.assign(1, s);
      on_path_ = Bitset(n);
      on_path_.set(s);
      if (extend(s)) return path_;
    }
    return std::nullopt;
  }

 private:
  // BFS distances to s inside the subgraph on vertices >= s.
  void distances_from(Vertex s) {
    std::fill(dist_.begin(), dist_.end(), -1);
    dist_[static_cast<std::size_t>(s)] = 0;
    std::vector<Vertex> queue{s};
    for (std::size_t h = 0; h < queue.size(); ++h) {
      const Vertex x = queue[h];
      g_.neighborhood(x).for_each([&](int y) {
        if (y > s && dist_[static_cast<std::size_t>(y)] < 0) {
          dist_[static_cast<std::size_t>(y)] = dist_[static_cast<std::size_t>(x)] + 1;
          queue.push_back(y);
        }
      });
    }
  }

  bool extend(Vertex x) {
    const int len = static_cast<int>(path_.size());
    if (len == k_) return g_.adjacent(x, start_);
    const Bitset nb = g_.neighborhood(x);
    for (int y = nb.next(start_ + 1); y >= 0; y = nb.next(y + 1)) {
      if (on_path_.test(y)) continue;
      const int d = dist_[static_cast<std::size_t>(y)];
      // y sits at position len; k - len more edges must lead back to start.
      if (d < 0 || d > k_ - len) continue;
      path_.push_back(y);
      on_path_.set(y);
      if (extend(y)) return true;
      on_path_.reset(y);
      path_.pop_back();
    }
    return false;
  }

  const Graph& g_;
  int k_;
  Vertex start_ = 0;
  std::vector<int> dist_;
  Bitset on_path_;
  VertexList path_;
};

}  // namespace

std::optional<Witness> has_cycle_length(const Graph& g, int k) {
  const Pattern p = Pattern::cycle(k);
  auto cyc = CycleSearch(g, k).run();
  if (!cyc) return std::nullopt;
  return Witness{p, *cyc};
}

namespace {

std::optional<Witness> kst_recursive(const Graph& g, int s, int t) {
  const int n = g.order();
  VertexList chosen;
  std::optional<Witness> found;
  auto rec = [&](auto&& self, Vertex from, const Bitset& common) -> bool {
    if (static_cast<int>(chosen.size()) == s) {
      VertexList vs = chosen;
      int taken = 0;
      common.for_each([&](int w) {
        if (taken < t) {
          vs.push_back(w);
          ++taken;
        }
      });
      found = Witness{Pattern::complete_bipartite(s, t), vs};
      return true;
    }
    for (Vertex v = from; v < n; ++v) {
      Bitset next = common;
      next &= g.row(v);
      if (next.count() < t) continue;
      chosen.push_back(v);
      if (self(self, v + 1, next)) return true;
      chosen.pop_back();
    }
    return false;
  };
  Bitset all(n);
  for (Vertex v = 0; v < n; ++v) all.set(v);
  rec(rec, 0, all);
  return found;
}

}  // namespace

std::optional<Witness> has_kst(const Graph& g, int s, int t, KstOptions options) {
  if (s < 1 || s > t) throw DomainError("need 1 <= s <= t");
  if (s > 3 && !options.allow_large_s) throw DomainError("s > 3 needs the large-s override");
  const Pattern p = Pattern::complete_bipartite(s, t);
  const int n = g.order();
  if (s == 1) {
    for (Vertex v = 0; v < n; ++v) {
      if (g.degree(v) >= t) {
        VertexList vs{v};
        auto nb = g.neighbors(v);
        vs.insert(vs.end(), nb.begin(), nb.begin() + t);
        return Witness{p, vs};
      }
    }
    return std::nullopt;
  }
  if (s == 2) {
    std::vector<int> wedges(static_cast<std::size_t>(n), 0);
    for (Vertex u = 0; u < n; ++u) {
      std::fill(wedges.begin(), wedges.end(), 0);
      g.neighborhood(u).for_each([&](int v) {
        g.neighborhood(v).for_each([&](int w) {
          if (w > u) ++wedges[static_cast<std::size_t>(w)];
        });
      });
      for (Vertex w = u + 1; w < n; ++w) {
        if (wedges[static_cast<std::size_t>(w)] < t) continue;
        Bitset common = g.neighborhood(u);
        common &= g.row(w);
        VertexList vs{u, w};
        auto cl = common.to_list();
        vs.insert(vs.end(), cl.begin(), cl.begin() + t);
        return Witness{p, vs};
      }
    }
    return std::nullopt;
  }
  return kst_recursive(g, s, t);
}

namespace {

// Exact search for t vertex-disjoint edges among `edges`, branching on the
// lowest available vertex (matched with one of its neighbours, or dropped).
class DisjointEdges {
 public:
  DisjointEdges(int n, const std::vector<Edge>& edges, int t) : t_(t), adj_(static_cast<std::size_t>(n)) {
    for (const auto& [a, b] : edges) {
      adj_[static_cast<std::size_t>(a)].push_back(b);
      adj_[static_cast<std::size_t>(b)].push_back(a);
    }
    for (auto& l : adj_) {
      std::sort(l.begin(), l.end());
      l.erase(std::unique(l.begin(), l.end()), l.end());
    }
    free_.assign(static_cast<std::size_t>(n), true);
  }

  std::optional<std::vector<Edge>> run() {
    if (search(0)) return chosen_;
    return std::nullopt;
  }

 private:
  int live_bound() const {
    int live = 0;
    for (std::size_t v = 0; v < adj_.size(); ++v) {
      if (!free_[v]) continue;
      for (Vertex w : adj_[v]) {
        if (free_[static_cast<std::size_t>(w)]) {
          ++live;
          break;
        }
      }
    }
    return live / 2;
  }

  bool search(std::size_t from) {
    if (static_cast<int>(chosen_.size()) >= t_) return true;
    if (static_cast<int>(chosen_.size()) + live_bound() < t_) return false;
    std::size_t v = from;
    while (v < adj_.size() && (!free_[v] || adj_[v].empty())) ++v;
    if (v == adj_.size()) return false;
    free_[v] = false;
    for (Vertex w : adj_[v]) {
      if (!free_[static_cast<std::size_t>(w)]) continue;
      free_[static_cast<std::size_t>(w)] = false;
      chosen_.emplace_back(static_cast<Vertex>(v), w);
      if (search(v + 1)) return true;
      chosen_.pop_back();
      free_[static_cast<std::size_t>(w)] = true;
    }
    const bool ok = search(v + 1);
    free_[v] = true;
    return ok;
  }

  int t_;
  std::vector<std::vector<Vertex>> adj_;
  std::vector<bool> free_;
  std::vector<Edge> chosen_;
};

}  // namespace

std::optional<Witness> has_book(const Graph& g, int t) {
  const Pattern p = Pattern::book(t);
  const int n = g.order();
  for (const auto& [x0, y0] : g.edges()) {
    // Both orientations of the spine give the same book, so one suffices.
    const Vertex x = x0, y = y0;
    Bitset as = g.neighborhood(y);
    as.reset(x);
    Bitset bs = g.neighborhood(x);
    bs.reset(y);
    if (as.count() < t || bs.count() < t) continue;
    // Local labels over A ∪ B; a qualifying edge joins a in A to b in B.
    Bitset uni = as;
    uni |= bs;
    const VertexList local = uni.to_list();
    std::vector<int> index(static_cast<std::size_t>(n), -1);
    for (std::size_t i = 0; i < local.size(); ++i) index[static_cast<std::size_t>(local[i])] = static_cast<int>(i);
    std::vector<Edge> hedges;
    as.for_each([&](int a) {
      Bitset nb = bs;
      nb &= g.row(a);
      nb.for_each([&](int b) {
        if (a != b) hedges.emplace_back(index[static_cast<std::size_t>(a)], index[static_cast<std::size_t>(b)]);
      });
    });
    if (static_cast<int>(hedges.size()) < t) continue;
    auto match = DisjointEdges(static_cast<int>(local.size()), hedges, t).run();
    if (!match) continue;
    VertexList vs{x, y};
    for (const auto& [i, j] : *match) {
      Vertex a = local[static_cast<std::size_t>(i)], b = local[static_cast<std::size_t>(j)];
      // Orient so that a is a neighbour of y and b a neighbour of x.
      if (!(as.test(a) && bs.test(b))) std::swap(a, b);
      vs.push_back(a);
      vs.push_back(b);
    }
    return Witness{p, vs};
  }
  return std::nullopt;
}

std::int64_t count_c4(const Graph& g, int threads) {
  const int n = g.order();
  std::vector<std::int64_t> per(static_cast<std::size_t>(n), 0);
  parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t ui) {
    const Vertex u = static_cast<Vertex>(ui);
    std::vector<int> wedges(static_cast<std::size_t>(n), 0);
    g.neighborhood(u).for_each([&](int v) {
      g.neighborhood(v).for_each([&](int w) {
        if (w > u) ++wedges[static_cast<std::size_t>(w)];
      });
    });
    std::int64_t c = 0;
    for (int w : wedges) c += static_cast<std::int64_t>(w) * (w - 1) / 2;
    per[ui] = c;
  });
  // Each 4-cycle is counted once per diagonal.
  return std::accumulate(per.begin(), per.end(), std::int64_t{0}) / 2;
}

std::int64_t count_c4_bipartite(const BipartiteGraph& b, Side side) {
  const Graph& g = b.graph();
  const VertexList& part = side == Side::Left ? b.left() : b.right();
  std::int64_t total = 0;
  for (std::size_t i = 0; i < part.size(); ++i)
    for (std::size_t j = i + 1; j < part.size(); ++j) {
      const std::int64_t c = codegree(g, part[i], part[j]);
      total += c * (c - 1) / 2;
    }
  return total;
}

std::optional<Witness> find_pattern(const Graph& g, const Pattern& p) {
  switch (p.kind) {
    case PatternKind::Triangle: return has_triangle(g);
    case PatternKind::OddCycle: {
      auto w = has_cycle_length(g, p.a);
      if (w) w->pattern = p;
      return w;
    }
    case PatternKind::Cycle: return has_cycle_length(g, p.a);
    case PatternKind::CompleteBipartite: return has_kst(g, p.a, p.b, {.allow_large_s = true});
    case PatternKind::Book: return has_book(g, p.a);
  }
  return std::nullopt;
}

FreenessReport is_family_free(const Graph& g, const ForbiddenFamily& fam) {
  for (const Pattern& p : fam.patterns) {
    auto w = find_pattern(g, p);
    if (w) {
      if (!validate(g, *w)) throw InvariantViolation("detector produced an invalid " + p.name() + " witness");
      return {false, std::move(w)};
    }
  }
  return {};
}

}  // namespace turanforge
