#pragma once

#include "turanforge/rational.hpp"

#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace turanforge {

using Vertex = int;
using VertexList = std::vector<Vertex>;
using Edge = std::pair<Vertex, Vertex>;
using Word = std::uint64_t;

constexpr int kWordBits = 64;

inline int words_for(int bits) { return (bits + kWordBits - 1) / kWordBits; }

/// Fixed-size set of vertex indices packed into 64-bit words.
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(int size) : size_(size), words_(static_cast<std::size_t>(words_for(size)), 0) {}

  static Bitset of(int size, std::span<const Vertex> members);

  int size() const { return size_; }
  bool test(int i) const { return (words_[static_cast<std::size_t>(i) / kWordBits] >> (i % kWordBits)) & 1U; }
  void set(int i) { words_[static_cast<std::size_t>(i) / kWordBits] |= Word{1} << (i % kWordBits); }
  void reset(int i) { words_[static_cast<std::size_t>(i) / kWordBits] &= ~(Word{1} << (i % kWordBits)); }

  int count() const;
  bool any() const;
  bool none() const { return !any(); }

  // Index of the first member >= from, or -1.
  int next(int from) const;
  int first() const { return next(0); }

  std::span<const Word> words() const { return words_; }
  std::span<Word> words() { return words_; }

  Bitset& operator&=(std::span<const Word> other);
  Bitset& operator&=(const Bitset& other) { return *this &= other.words(); }
  Bitset& operator|=(const Bitset& other);
  // Removes every member of other.
  Bitset& subtract(const Bitset& other);

  VertexList to_list() const;

  template <class Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      Word bits = words_[w];
      while (bits != 0) {
        const int b = std::countr_zero(bits);
        fn(static_cast<int>(w) * kWordBits + b);
        bits &= bits - 1;
      }
    }
  }

  friend bool operator==(const Bitset&, const Bitset&) = default;

 private:
  int size_ = 0;
  std::vector<Word> words_;
};

int intersection_count(std::span<const Word> a, std::span<const Word> b);
int intersection_count(std::span<const Word> a, std::span<const Word> b, std::span<const Word> c);
// Members of a ∩ b with index >= from.
int intersection_count_from(std::span<const Word> a, std::span<const Word> b, int from);

/// Undirected simple graph with one adjacency bit row per vertex.
///
/// Immutable once built; share freely between threads.
class Graph {
 public:
  Graph() = default;

  /// Duplicate pairs collapse; loops and out-of-range endpoints throw DomainError.
  static Graph from_edge_list(int n, std::span<const Edge> edges);
  static Graph empty(int n);

  int order() const { return n_; }
  std::int64_t size() const { return edge_count_; }
  int words_per_row() const { return words_; }

  bool adjacent(Vertex u, Vertex v) const {
    return (bits_[row_offset(u) + static_cast<std::size_t>(v) / kWordBits] >> (v % kWordBits)) & 1U;
  }
  std::span<const Word> row(Vertex v) const {
    return {bits_.data() + row_offset(v), static_cast<std::size_t>(words_)};
  }
  int degree(Vertex v) const { return degree_[static_cast<std::size_t>(v)]; }
  const std::vector<int>& degrees() const { return degree_; }
  Bitset neighborhood(Vertex v) const;
  VertexList neighbors(Vertex v) const;

  // Edges (u, v) with u < v in lexicographic order.
  std::vector<Edge> edges() const;

  // Subgraph induced on `keep`, relabelled 0..keep.size()-1 in the given order.
  Graph induced(std::span<const Vertex> keep) const;

  friend bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.bits_ == b.bits_; }

 private:
  std::size_t row_offset(Vertex v) const { return static_cast<std::size_t>(v) * static_cast<std::size_t>(words_); }

  int n_ = 0;
  int words_ = 0;
  std::int64_t edge_count_ = 0;
  std::vector<Word> bits_;
  std::vector<int> degree_;
};

/// Graph together with a bipartition (U, V); every edge crosses.
class BipartiteGraph {
 public:
  BipartiteGraph(Graph graph, VertexList left, VertexList right);

  const Graph& graph() const { return graph_; }
  const VertexList& left() const { return left_; }
  const VertexList& right() const { return right_; }

 private:
  Graph graph_;
  VertexList left_;
  VertexList right_;
};

/// Graph with a labelled partition A_1..A_r of its vertex set.
class PartLabeledGraph {
 public:
  PartLabeledGraph(Graph graph, std::vector<VertexList> parts);

  const Graph& graph() const { return graph_; }
  const std::vector<VertexList>& parts() const { return parts_; }
  int part_of(Vertex v) const { return part_of_[static_cast<std::size_t>(v)]; }

 private:
  Graph graph_;
  std::vector<VertexList> parts_;
  std::vector<int> part_of_;
};

/// |N(u) ∩ N(v)| for u != v.
int codegree(const Graph& g, Vertex u, Vertex v);

/// e(X, Y) for disjoint nonempty X, Y.
std::int64_t pair_edge_count(const Graph& g, std::span<const Vertex> xs, std::span<const Vertex> ys);

/// e(X,Y) / (|X||Y|), exactly.
Rational pair_density(const Graph& g, std::span<const Vertex> xs, std::span<const Vertex> ys);

// Validation helpers shared by modules that accept vertex sets.
void require_vertices_in_range(const Graph& g, std::span<const Vertex> vs, const char* what);
void require_disjoint_nonempty(const Graph& g, std::span<const Vertex> xs, std::span<const Vertex> ys);

// Standard small graphs used throughout tests and tools.
namespace graphs {
Graph complete(int n);
Graph cycle(int n);
Graph path(int n);
Graph complete_bipartite(int a, int b);
Graph petersen();
}  // namespace graphs

}  // namespace turanforge
