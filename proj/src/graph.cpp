#include "turanforge/graph.hpp"

#include "turanforge/errors.hpp"

#include <algorithm>
#include <string>

namespace turanforge {

Bitset Bitset::of(int size, std::span<const Vertex> members) {
  Bitset b(size);
  for (Vertex v : members) b.set(v);
  return b;
}

int Bitset::count() const {
  int c = 0;
  for (Word w : words_) c += std::popcount(w);
  return c;
}

bool Bitset::any() const {
  return std::any_of(words_.begin(), words_.end(), [](Word w) { return w != 0; });
}

int Bitset::next(int from) const {
  if (from >= size_) return -1;
  auto w = static_cast<std::size_t>(from / kWordBits);
  Word bits = words_[w] & (~Word{0} << (from % kWordBits));
  for (;;) {
    if (bits != 0) return static_cast<int>(w) * kWordBits + std::countr_zero(bits);
    if (++w == words_.size()) return -1;
    bits = words_[w];
  }
}

Bitset& Bitset::operator&=(std::span<const Word> other) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other[i];
  return *this;
}

Bitset& Bitset::operator|=(const Bitset& other) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

Bitset& Bitset::subtract(const Bitset& other) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~other.words_[i];
  return *this;
}

VertexList Bitset::to_list() const {
  VertexList out;
  for_each([&](int v) { out.push_back(v); });
  return out;
}

int intersection_count(std::span<const Word> a, std::span<const Word> b) {
  int c = 0;
  for (std::size_t i = 0; i < a.size(); ++i) c += std::popcount(a[i] & b[i]);
  return c;
}

int intersection_count(std::span<const Word> a, std::span<const Word> b, std::span<const Word> c) {
  int n = 0;
  for (std::size_t i = 0; i < a.size(); ++i) n += std::popcount(a[i] & b[i] & c[i]);
  return n;
}

int intersection_count_from(std::span<const Word> a, std::span<const Word> b, int from) {
  auto w = static_cast<std::size_t>(from / kWordBits);
  if (w >= a.size()) return 0;
  int c = std::popcount(a[w] & b[w] & (~Word{0} << (from % kWordBits)));
  for (++w; w < a.size(); ++w) c += std::popcount(a[w] & b[w]);
  return c;
}

Graph Graph::empty(int n) {
  if (n < 0) throw DomainError("vertex count must be non-negative");
  Graph g;
  g.n_ = n;
  g.words_ = words_for(n);
  g.bits_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(g.words_), 0);
  g.degree_.assign(static_cast<std::size_t>(n), 0);
  return g;
}

Graph Graph::from_edge_list(int n, std::span<const Edge> edges) {
  Graph g = empty(n);
  for (const auto& [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw DomainError("edge (" + std::to_string(u) + "," + std::to_string(v) + ") has an endpoint outside 0.." +
                        std::to_string(n - 1));
    }
    if (u == v) throw DomainError("loop at vertex " + std::to_string(u));
    const std::size_t ru = g.row_offset(u) + static_cast<std::size_t>(v) / kWordBits;
    const Word mask_v = Word{1} << (v % kWordBits);
    if (g.bits_[ru] & mask_v) continue;
    g.bits_[ru] |= mask_v;
    g.bits_[g.row_offset(v) + static_cast<std::size_t>(u) / kWordBits] |= Word{1} << (u % kWordBits);
    ++g.degree_[static_cast<std::size_t>(u)];
    ++g.degree_[static_cast<std::size_t>(v)];
    ++g.edge_count_;
  }
  return g;
}

Bitset Graph::neighborhood(Vertex v) const {
  Bitset b(n_);
  std::copy(row(v).begin(), row(v).end(), b.words().begin());
  return b;
}

VertexList Graph::neighbors(Vertex v) const { return neighborhood(v).to_list(); }

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(static_cast<std::size_t>(edge_count_));
  for (Vertex u = 0; u < n_; ++u) {
    Bitset nb = neighborhood(u);
    for (int v = nb.next(u + 1); v >= 0; v = nb.next(v + 1)) out.emplace_back(u, v);
  }
  return out;
}

Graph Graph::induced(std::span<const Vertex> keep) const {
  require_vertices_in_range(*this, keep, "induced vertex");
  std::vector<Edge> es;
  for (std::size_t i = 0; i < keep.size(); ++i) {
    for (std::size_t j = i + 1; j < keep.size(); ++j) {
      if (keep[i] != keep[j] && adjacent(keep[i], keep[j])) es.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
  }
  return from_edge_list(static_cast<int>(keep.size()), es);
}

namespace {

VertexList sorted_unique_check(const Graph& g, std::span<const Vertex> vs, const char* what) {
  require_vertices_in_range(g, vs, what);
  VertexList s(vs.begin(), vs.end());
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw DomainError(std::string(what) + " list has duplicates");
  return s;
}

}  // namespace

BipartiteGraph::BipartiteGraph(Graph graph, VertexList left, VertexList right)
    : graph_(std::move(graph)), left_(std::move(left)), right_(std::move(right)) {
  const int n = graph_.order();
  std::vector<int> side(static_cast<std::size_t>(n), -1);
  for (Vertex v : sorted_unique_check(graph_, left_, "left part")) side[static_cast<std::size_t>(v)] = 0;
  for (Vertex v : sorted_unique_check(graph_, right_, "right part")) {
    if (side[static_cast<std::size_t>(v)] != -1) throw DomainError("bipartition parts overlap");
    side[static_cast<std::size_t>(v)] = 1;
  }
  if (std::find(side.begin(), side.end(), -1) != side.end()) throw DomainError("bipartition does not cover every vertex");
  for (const auto& [u, v] : graph_.edges()) {
    if (side[static_cast<std::size_t>(u)] == side[static_cast<std::size_t>(v)]) {
      throw DomainError("edge (" + std::to_string(u) + "," + std::to_string(v) + ") lies inside one part");
    }
  }
}

PartLabeledGraph::PartLabeledGraph(Graph graph, std::vector<VertexList> parts)
    : graph_(std::move(graph)), parts_(std::move(parts)), part_of_(static_cast<std::size_t>(graph_.order()), -1) {
  for (std::size_t p = 0; p < parts_.size(); ++p) {
    require_vertices_in_range(graph_, parts_[p], "part vertex");
    for (Vertex v : parts_[p]) {
      if (part_of_[static_cast<std::size_t>(v)] != -1) throw DomainError("parts are not disjoint");
      part_of_[static_cast<std::size_t>(v)] = static_cast<int>(p);
    }
  }
  if (std::find(part_of_.begin(), part_of_.end(), -1) != part_of_.end()) {
    throw DomainError("parts do not cover every vertex");
  }
}

void require_vertices_in_range(const Graph& g, std::span<const Vertex> vs, const char* what) {
  for (Vertex v : vs) {
    if (v < 0 || v >= g.order()) throw DomainError(std::string(what) + " " + std::to_string(v) + " out of range");
  }
}

void require_disjoint_nonempty(const Graph& g, std::span<const Vertex> xs, std::span<const Vertex> ys) {
  if (xs.empty() || ys.empty()) throw DomainError("vertex sets must be nonempty");
  require_vertices_in_range(g, xs, "vertex");
  require_vertices_in_range(g, ys, "vertex");
  Bitset in_x = Bitset::of(g.order(), xs);
  for (Vertex y : ys) {
    if (in_x.test(y)) throw DomainError("vertex sets overlap at " + std::to_string(y));
  }
}

int codegree(const Graph& g, Vertex u, Vertex v) {
  if (u < 0 || v < 0 || u >= g.order() || v >= g.order()) throw DomainError("codegree vertex out of range");
  if (u == v) throw DomainError("codegree needs two distinct vertices");
  return intersection_count(g.row(u), g.row(v));
}

std::int64_t pair_edge_count(const Graph& g, std::span<const Vertex> xs, std::span<const Vertex> ys) {
  Bitset mask = Bitset::of(g.order(), ys);
  std::int64_t e = 0;
  for (Vertex x : xs) e += intersection_count(g.row(x), mask.words());
  return e;
}

Rational pair_density(const Graph& g, std::span<const Vertex> xs, std::span<const Vertex> ys) {
  require_disjoint_nonempty(g, xs, ys);
  return Rational(pair_edge_count(g, xs, ys)) /
         (Rational(static_cast<std::int64_t>(xs.size())) * static_cast<std::int64_t>(ys.size()));
}

namespace graphs {

Graph complete(int n) {
  std::vector<Edge> es;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) es.emplace_back(u, v);
  return Graph::from_edge_list(n, es);
}

Graph cycle(int n) {
  std::vector<Edge> es;
  for (int i = 0; i < n; ++i) es.emplace_back(i, (i + 1) % n);
  return Graph::from_edge_list(n, es);
}

Graph path(int n) {
  std::vector<Edge> es;
  for (int i = 0; i + 1 < n; ++i) es.emplace_back(i, i + 1);
  return Graph::from_edge_list(n, es);
}

// Parts {0..a-1} and {a..a+b-1}.
Graph complete_bipartite(int a, int b) {
  std::vector<Edge> es;
  for (int u = 0; u < a; ++u)
    for (int v = 0; v < b; ++v) es.emplace_back(u, a + v);
  return Graph::from_edge_list(a + b, es);
}

Graph petersen() {
  std::vector<Edge> es;
  for (int i = 0; i < 5; ++i) {
    es.emplace_back(i, (i + 1) % 5);
    es.emplace_back(i, i + 5);
    es.emplace_back(5 + i, 5 + (i + 2) % 5);
  }
  return Graph::from_edge_list(10, es);
}

}  // namespace graphs

}  // namespace turanforge
