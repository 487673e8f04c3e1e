#include "turanforge/turan.hpp"

#include "turanforge/errors.hpp"
#include "turanforge/parallel.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdio>
#include <sstream>

namespace turanforge {

namespace {

using Mask = std::uint64_t;
constexpr int kMaxOrder = 64;

Mask bit(int v) { return Mask{1} << v; }

/// Mutable adjacency for the search; one word per row.
struct SmallGraph {
  int n = 0;
  std::array<Mask, kMaxOrder> rows{};
  std::array<int, kMaxOrder> deg{};

  void add(int u, int v) {
    rows[static_cast<std::size_t>(u)] |= bit(v);
    rows[static_cast<std::size_t>(v)] |= bit(u);
    ++deg[static_cast<std::size_t>(u)];
    ++deg[static_cast<std::size_t>(v)];
  }
  void remove(int u, int v) {
    rows[static_cast<std::size_t>(u)] &= ~bit(v);
    rows[static_cast<std::size_t>(v)] &= ~bit(u);
    --deg[static_cast<std::size_t>(u)];
    --deg[static_cast<std::size_t>(v)];
  }
  Mask row(int v) const { return rows[static_cast<std::size_t>(v)]; }
};

// Simple path from x to target using exactly `edges_left` more edges.
bool path_of_length(const SmallGraph& g, int x, int target, int edges_left, Mask used) {
  if (edges_left == 1) return (g.row(x) & bit(target)) != 0;
  Mask cand = g.row(x) & ~used & ~bit(target);
  while (cand) {
    const int y = std::countr_zero(cand);
    cand &= cand - 1;
    if (path_of_length(g, y, target, edges_left - 1, used | bit(y))) return true;
  }
  return false;
}

// K_{s,t} with u on the s side and v on the t side, edge uv present.
bool kst_with_sides(const SmallGraph& g, int u, int v, int s, int t) {
  // The s side is u plus s-1 neighbours of v; their common neighbourhood must reach t.
  auto rec = [&](auto&& self, Mask common, Mask pool, int need) -> bool {
    if (std::popcount(common) < t) return false;
    if (need == 0) return true;
    while (pool) {
      const int w = std::countr_zero(pool);
      pool &= pool - 1;
      if (self(self, common & g.row(w), pool, need - 1)) return true;
    }
    return false;
  };
  return rec(rec, g.row(u), g.row(v) & ~bit(u), s - 1);
}

// t disjoint edges ab with a in N(y)-x, b in N(x)-y.
bool book_on_spine(const SmallGraph& g, int x, int y, int t) {
  const Mask as = g.row(y) & ~bit(x);
  const Mask bs = g.row(x) & ~bit(y);
  auto rec = [&](auto&& self, Mask avail, int need) -> bool {
    if (need == 0) return true;
    if (std::popcount(avail) < 2 * need) return false;
    const int v = std::countr_zero(avail);
    const Mask rest = avail & ~bit(v);
    Mask partners = 0;
    if (as & bit(v)) partners |= bs & g.row(v);
    if (bs & bit(v)) partners |= as & g.row(v);
    partners &= rest;
    while (partners) {
      const int w = std::countr_zero(partners);
      partners &= partners - 1;
      if (self(self, rest & ~bit(w), need - 1)) return true;
    }
    return self(self, rest, need);
  };
  return rec(rec, as | bs, t);
}

bool book_through(const SmallGraph& g, int u, int v, int t) {
  if (book_on_spine(g, u, v, t)) return true;
  // Otherwise uv lies on a page u-v-w-z-u, and the spine is vw, wz or zu.
  Mask ws = g.row(v) & ~bit(u);
  while (ws) {
    const int w = std::countr_zero(ws);
    ws &= ws - 1;
    Mask zs = g.row(u) & g.row(w) & ~bit(v);
    while (zs) {
      const int z = std::countr_zero(zs);
      zs &= zs - 1;
      if (book_on_spine(g, v, w, t) || book_on_spine(g, w, z, t) || book_on_spine(g, z, u, t)) return true;
    }
  }
  return false;
}

/// True iff the graph, which already contains uv, has a copy of p using uv.
bool creates(const SmallGraph& g, int u, int v, const Pattern& p) {
  switch (p.kind) {
    case PatternKind::Triangle: return (g.row(u) & g.row(v)) != 0;
    case PatternKind::OddCycle:
    case PatternKind::Cycle: return path_of_length(g, u, v, p.a - 1, bit(u));
    case PatternKind::CompleteBipartite:
      return kst_with_sides(g, u, v, p.a, p.b) || (p.a != p.b && kst_with_sides(g, v, u, p.a, p.b));
    case PatternKind::Book: return book_through(g, u, v, p.a);
  }
  return false;
}

struct Instance {
  int order = 0;
  std::vector<std::pair<int, int>> slots;
  std::vector<Pattern> patterns;
  // Vertices whose degree is capped by vertex 0 once its row is decided.
  Mask capped_by_zero = 0;
  std::size_t zero_slots = 0;
  std::vector<int> max_degree;
  // tail_bound[a]: upper bound on edges among slots whose first endpoint is > a.
  std::vector<std::int64_t> tail_bound;
  // Bipartite instances: U = 0..left-1. When set, rows 1.. of the biadjacency
  // matrix are kept in non-increasing order, and so are the columns.
  int left = 0;
  bool ordered_matrix = false;
};

struct Outcome {
  std::int64_t value = -1;
  std::vector<int> chosen;
  std::int64_t nodes = 0;
  bool cut_off = false;
};

class Searcher {
 public:
  Searcher(const Instance& inst, std::int64_t floor, std::int64_t budget)
      : inst_(inst), budget_(budget), best_(floor - 1) {
    g_.n = inst.order;
  }

  void apply(const std::vector<int>& prefix) {
    for (int s : prefix) {
      const auto [a, b] = inst_.slots[static_cast<std::size_t>(s)];
      g_.add(a, b);
      chosen_.push_back(s);
    }
  }

  std::int64_t nodes() const { return nodes_; }

  Outcome run(std::size_t from) {
    dfs(from);
    Outcome out;
    out.value = best_value_found_ ? best_ : -1;
    out.chosen = best_chosen_;
    out.nodes = nodes_;
    out.cut_off = cut_off_;
    return out;
  }

  // Descends to depth `stop`, reporting each surviving prefix instead of expanding it.
  template <class Sink>
  void enumerate(std::size_t idx, std::size_t stop, Sink&& sink) {
    ++nodes_;
    if (idx == stop || idx == inst_.slots.size()) {
      sink(chosen_);
      return;
    }
    if (upper_bound(idx) <= best_) return;
    const auto [a, b] = inst_.slots[idx];
    if (can_add(idx, a, b)) {
      push(static_cast<int>(idx), a, b);
      enumerate(idx + 1, stop, sink);
      pop(a, b);
    }
    enumerate(idx + 1, stop, sink);
  }

  // Adds every legal slot in order: the first leaf of the search.
  std::int64_t greedy() {
    for (std::size_t idx = 0; idx < inst_.slots.size(); ++idx) {
      const auto [a, b] = inst_.slots[idx];
      if (can_add(idx, a, b)) push(static_cast<int>(idx), a, b);
    }
    return static_cast<std::int64_t>(chosen_.size());
  }

 private:
  // Degree cap for decisions at slot idx and later. Before vertex 0's slots
  // are settled its final degree is unknown, so only the trivial cap applies.
  int cap(int v, std::size_t idx) const {
    if (idx >= inst_.zero_slots && v != 0 && (inst_.capped_by_zero & bit(v))) {
      return std::min(g_.deg[0], inst_.max_degree[static_cast<std::size_t>(v)]);
    }
    return inst_.max_degree[static_cast<std::size_t>(v)];
  }

  bool legal(int a, int b) {
    g_.add(a, b);
    bool ok = true;
    for (const Pattern& p : inst_.patterns) {
      if (creates(g_, a, b, p)) {
        ok = false;
        break;
      }
    }
    g_.remove(a, b);
    return ok;
  }

  // Setting entry (a, b) to 1 must not push row a above row a-1, nor column b
  // above column b-1, while they agree on the entries decided so far.
  bool keeps_order(int a, int b) const {
    const int m = inst_.left;
    if (a >= 2) {
      const Mask before_b = (bit(b) - 1) & ~(bit(m) - 1);
      if ((g_.row(a) & before_b) == (g_.row(a - 1) & before_b) && !(g_.row(a - 1) & bit(b))) return false;
    }
    if (b > m) {
      const Mask above_a = bit(a) - 1;
      if ((g_.row(b) & above_a) == (g_.row(b - 1) & above_a) && !(g_.row(b - 1) & bit(a))) return false;
    }
    return true;
  }

  bool can_add(std::size_t idx, int a, int b) {
    if (g_.deg[static_cast<std::size_t>(a)] >= cap(a, idx) || g_.deg[static_cast<std::size_t>(b)] >= cap(b, idx)) {
      return false;
    }
    if (inst_.ordered_matrix && !keeps_order(a, b)) return false;
    return legal(a, b);
  }

  std::int64_t upper_bound(std::size_t idx) {
    const auto current = static_cast<std::int64_t>(chosen_.size());
    const auto remaining = static_cast<std::int64_t>(inst_.slots.size() - idx);
    if (current + remaining <= best_) return current + remaining;
    std::array<int, kMaxOrder> row_add{}, vertex_add{};
    std::int64_t addable = 0;
    for (std::size_t s = idx; s < inst_.slots.size(); ++s) {
      const auto [a, b] = inst_.slots[s];
      if (g_.deg[static_cast<std::size_t>(a)] >= cap(a, idx) || g_.deg[static_cast<std::size_t>(b)] >= cap(b, idx)) {
        continue;
      }
      if (!legal(a, b)) continue;
      ++addable;
      ++row_add[static_cast<std::size_t>(a)];
      ++vertex_add[static_cast<std::size_t>(a)];
      ++vertex_add[static_cast<std::size_t>(b)];
    }
    std::int64_t by_row = 0, by_vertex = 0;
    for (int v = 0; v < inst_.order; ++v) {
      const auto vi = static_cast<std::size_t>(v);
      const int room = std::max(0, cap(v, idx) - g_.deg[vi]);
      by_row += std::min(room, row_add[vi]);
      by_vertex += std::min(room, vertex_add[vi]);
    }
    // The current row, plus the untouched rows below it, which form a smaller instance.
    const auto a = static_cast<std::size_t>(inst_.slots[idx].first);
    const std::int64_t by_tail =
        std::min(std::max(0, cap(static_cast<int>(a), idx) - g_.deg[a]), row_add[a]) + inst_.tail_bound[a];
    return current + std::min({addable, by_row, by_vertex / 2, by_tail});
  }

  void push(int s, int a, int b) {
    g_.add(a, b);
    chosen_.push_back(s);
  }
  void pop(int a, int b) {
    g_.remove(a, b);
    chosen_.pop_back();
  }

  void dfs(std::size_t idx) {
    if (cut_off_) return;
    if (++nodes_ > budget_) {
      cut_off_ = true;
      return;
    }
    const auto current = static_cast<std::int64_t>(chosen_.size());
    if (current > best_) {
      best_ = current;
      best_chosen_ = chosen_;
      best_value_found_ = true;
    }
    if (idx == inst_.slots.size()) return;
    if (upper_bound(idx) <= best_) return;
    const auto [a, b] = inst_.slots[idx];
    if (can_add(idx, a, b)) {
      push(static_cast<int>(idx), a, b);
      dfs(idx + 1);
      pop(a, b);
    }
    dfs(idx + 1);
  }

  const Instance& inst_;
  SmallGraph g_;
  std::vector<int> chosen_;
  std::int64_t budget_;
  std::int64_t best_;
  bool best_value_found_ = false;
  std::vector<int> best_chosen_;
  std::int64_t nodes_ = 0;
  bool cut_off_ = false;
};

constexpr std::size_t kPrefixDepth = 10;

SearchResult solve(const Instance& inst, const ForbiddenFamily& fam, const SearchOptions& options) {
  if (options.budget < 1) throw DomainError("budget must be positive");
  std::int64_t nodes = 0;

  Searcher seed(inst, 0, options.budget);
  const std::int64_t floor = seed.greedy();

  // Fixed decomposition, identical for every thread count.
  std::vector<std::vector<int>> prefixes;
  Searcher splitter(inst, floor, options.budget);
  const std::size_t depth = std::min(kPrefixDepth, inst.slots.size());
  splitter.enumerate(0, depth, [&](const std::vector<int>& p) { prefixes.push_back(p); });
  nodes += splitter.nodes();

  std::vector<Outcome> outcomes(prefixes.size());
  parallel_for(prefixes.size(), options.threads, [&](std::size_t i) {
    Searcher task(inst, floor, options.budget);
    task.apply(prefixes[i]);
    outcomes[i] = task.run(depth);
  });

  SearchResult result;
  result.exhaustive = true;
  const Outcome* best = nullptr;
  for (const Outcome& o : outcomes) {
    nodes += o.nodes;
    if (o.cut_off) result.exhaustive = false;
    if (o.value >= 0 && (best == nullptr || o.value > best->value)) best = &o;
  }
  result.nodes_explored = nodes;
  if (best == nullptr) throw InvariantViolation("search found no graph reaching the greedy lower bound");

  std::vector<Edge> edges;
  for (int s : best->chosen) edges.push_back(inst.slots[static_cast<std::size_t>(s)]);
  result.value = best->value;
  result.witness = Graph::from_edge_list(inst.order, edges);
  if (result.witness.size() != result.value) throw InvariantViolation("witness edge count differs from value");
  if (!is_family_free(result.witness, fam).free) throw InvariantViolation("search witness contains a forbidden pattern");
  return result;
}

void require_supported(const ForbiddenFamily& fam) {
  if (fam.patterns.empty()) throw DomainError("forbidden family is empty");
}


// Searches order n, with tail bounds taken from the exact values for smaller orders.
SearchResult ex_single(int n, const ForbiddenFamily& fam, const SearchOptions& options,
                       const std::vector<std::int64_t>& smaller) {
  Instance inst;
  inst.order = n;
  inst.patterns = fam.patterns;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) inst.slots.emplace_back(a, b);
  inst.zero_slots = static_cast<std::size_t>(n - 1);
  inst.capped_by_zero = n == kMaxOrder ? ~Mask{0} : bit(n) - 1;
  inst.max_degree.assign(static_cast<std::size_t>(n), n - 1);
  // Vertices a+1..n-1 span an instance on n-a-1 vertices.
  inst.tail_bound.assign(static_cast<std::size_t>(n), 0);
  for (int a = 0; a < n; ++a) inst.tail_bound[static_cast<std::size_t>(a)] = smaller[static_cast<std::size_t>(n - a - 1)];
  return solve(inst, fam, options);
}

SearchResult z_single(int m, int n, const ForbiddenFamily& fam, const SearchOptions& options,
                      const std::vector<std::int64_t>& fewer_rows) {
  Instance inst;
  inst.order = m + n;
  inst.patterns = fam.patterns;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < n; ++b) inst.slots.emplace_back(a, m + b);
  inst.zero_slots = static_cast<std::size_t>(n);
  inst.capped_by_zero = bit(m) - 1;
  inst.left = m;
  inst.ordered_matrix = true;
  inst.max_degree.assign(static_cast<std::size_t>(m + n), 0);
  for (int v = 0; v < m + n; ++v) inst.max_degree[static_cast<std::size_t>(v)] = v < m ? n : m;
  // Rows a+1..m-1 against all of V span an (m-a-1) x n instance.
  inst.tail_bound.assign(static_cast<std::size_t>(m), 0);
  for (int a = 0; a < m; ++a) inst.tail_bound[static_cast<std::size_t>(a)] = fewer_rows[static_cast<std::size_t>(m - a - 1)];
  return solve(inst, fam, options);
}

}  // namespace

SearchResult ex_exact(int n, const ForbiddenFamily& fam, const SearchOptions& options) {
  if (n < 1) throw DomainError("n must be at least 1");
  if (n > kMaxOrder) throw DomainError("exact search supports at most 64 vertices");
  require_supported(fam);
  // smaller[k] bounds ex(k); a non-exhaustive run falls back to C(k,2).
  std::vector<std::int64_t> smaller{0};
  SearchResult r;
  for (int k = 1; k <= n; ++k) {
    r = ex_single(k, fam, options, smaller);
    smaller.push_back(r.exhaustive ? r.value : static_cast<std::int64_t>(k) * (k - 1) / 2);
  }
  return r;
}

SearchResult z_exact(int m, int n, const ForbiddenFamily& fam, const SearchOptions& options) {
  if (m < 1 || n < 1) throw DomainError("part sizes must be at least 1");
  if (m + n > kMaxOrder) throw DomainError("exact search supports at most 64 vertices");
  require_supported(fam);
  std::vector<std::int64_t> fewer_rows{0};
  SearchResult r;
  for (int rows = 1; rows <= m; ++rows) {
    r = z_single(rows, n, fam, options, fewer_rows);
    fewer_rows.push_back(r.exhaustive ? r.value : static_cast<std::int64_t>(rows) * n);
  }
  return r;
}

std::vector<RatioRow> ratio_table(int n_min, int n_max, const ForbiddenFamily& with_cycle,
                                  const ForbiddenFamily& bipartite, const SearchOptions& options) {
  if (n_min < 1 || n_max < n_min) throw DomainError("need 1 <= n_min <= n_max");
  std::vector<RatioRow> rows;
  for (int n = n_min; n <= n_max; ++n) {
    RatioRow row;
    row.n = n;
    const SearchResult ex = ex_exact(n, with_cycle, options);
    row.ex = ex.value;
    row.exhaustive = ex.exhaustive;
    const int big = (n + 1) / 2, small = n / 2;
    if (small >= 1) {
      const SearchResult z = z_exact(big, small, bipartite, options);
      row.z = z.value;
      row.exhaustive = row.exhaustive && z.exhaustive;
    }
    if (row.z > 0) row.ratio = static_cast<double>(row.ex) / static_cast<double>(row.z);
    rows.push_back(row);
  }
  return rows;
}

std::string ratio_table_csv(const std::vector<RatioRow>& rows) {
  std::ostringstream out;
  out << "n,ex,z,ratio,exhaustive,flag\n";
  for (const auto& r : rows) {
    out << r.n << ',' << r.ex << ',' << r.z << ',';
    if (r.ratio) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.6f", *r.ratio);
      out << buf;
    }
    out << ',' << (r.exhaustive ? "true" : "false") << ',' << (r.ratio ? "" : "ratio_undefined") << '\n';
  }
  return out.str();
}

}  // namespace turanforge
