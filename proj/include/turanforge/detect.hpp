#pragma once

#include "turanforge/graph.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace turanforge {

enum class PatternKind { Triangle, OddCycle, Cycle, CompleteBipartite, Book };

/// One forbidden subgraph. Cycle/OddCycle use `a` as the length, Book uses
/// `a` as the page count, CompleteBipartite is K_{a,b} with a <= b.
struct Pattern {
  PatternKind kind = PatternKind::Triangle;
  int a = 0;
  int b = 0;

  static Pattern triangle() { return {PatternKind::Triangle, 3, 0}; }
  static Pattern cycle(int k);
  static Pattern odd_cycle(int k);
  static Pattern complete_bipartite(int s, int t);
  static Pattern book(int t);

  // Vertex count of the pattern.
  int order() const;
  std::string name() const;

  friend bool operator==(const Pattern&, const Pattern&) = default;
};

/// Tokens: triangle, c<k>, odd<k> (all odd cycles 3..k), k{s,t}, b<t>,
/// separated by commas outside braces.
struct ForbiddenFamily {
  std::vector<Pattern> patterns;

  static ForbiddenFamily parse(std::string_view text);
  std::string to_string() const;
};

/// Vertex layouts: triangle/cycles in cycle order; K_{s,t} as the s side then
/// the t side; Book as x, y, a1, b1, ..., at, bt with spine xy.
struct Witness {
  Pattern pattern;
  VertexList vertices;
};

bool validate(const Graph& g, const Witness& w);

std::optional<Witness> has_triangle(const Graph& g);
std::int64_t count_triangles(const Graph& g, int threads = 1);
std::int64_t triangles_through(const Graph& g, Vertex v);

// nullopt stands for an infinite girth.
std::optional<int> girth(const Graph& g);
std::optional<int> odd_girth(const Graph& g);
std::optional<Witness> has_cycle_length(const Graph& g, int k);

struct KstOptions {
  // s > 3 is refused unless this is set.
  bool allow_large_s = false;
};
std::optional<Witness> has_kst(const Graph& g, int s, int t, KstOptions options = {});

std::optional<Witness> has_book(const Graph& g, int t);

std::int64_t count_c4(const Graph& g, int threads = 1);

enum class Side { Left, Right };
std::int64_t count_c4_bipartite(const BipartiteGraph& b, Side side = Side::Left);

std::optional<Witness> find_pattern(const Graph& g, const Pattern& p);

struct FreenessReport {
  bool free = true;
  std::optional<Witness> witness;
};
FreenessReport is_family_free(const Graph& g, const ForbiddenFamily& fam);

}  // namespace turanforge
