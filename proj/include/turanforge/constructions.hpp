#pragma once

#include "turanforge/gf.hpp"
#include "turanforge/graph.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace turanforge {

/// Multipliers m(i,j) for parts 0..t+1, stored for i < j only.
///
/// Reads with i > j return -m(j,i); every read goes through at().
class MultiplierSet {
 public:
  MultiplierSet(std::int64_t q, int t);

  std::int64_t q() const { return q_; }
  int t() const { return t_; }
  int parts() const { return t_ + 2; }

  std::int64_t at(int i, int j) const;
  void set(int i, int j, std::int64_t m);

  // Pairs (i, j), i < j, in the order used for storage and search: by j, then i.
  static std::vector<std::pair<int, int>> pair_order(int parts);

  friend bool operator==(const MultiplierSet&, const MultiplierSet&) = default;

 private:
  std::size_t slot(int i, int j) const;

  std::int64_t q_;
  int t_;
  std::vector<std::int64_t> upper_;
};

/// Human-readable reasons the set fails; empty means valid.
std::vector<std::string> multiplier_violations(const MultiplierSet& m);
inline bool is_valid(const MultiplierSet& m) { return multiplier_violations(m).empty(); }

std::string multipliers_to_json(const MultiplierSet& m);
MultiplierSet multipliers_from_json(const std::string& text);

enum class MultiplierStrategy { Backtracking, Greedy };

enum class SearchStatus { Found, NotFound, BudgetExhausted };

struct MultiplierSearch {
  SearchStatus status = SearchStatus::NotFound;
  std::optional<MultiplierSet> multipliers;
  std::int64_t steps = 0;
};

/// Backtracking fixes m(0,1) = 1: scaling every multiplier by a nonzero
/// constant preserves both conditions.
MultiplierSearch find_multipliers(std::int64_t q, int t, MultiplierStrategy strategy, std::int64_t budget);

/// Three parts of F_q x F_q; vertex index = part*q^2 + x1*q + x2.
PartLabeledGraph build_gq(std::int64_t q);

PartLabeledGraph build_gqt(const MultiplierSet& m);

/// Points 0..N-1 then lines N..2N-1, each in lexicographic order of
/// normalized coordinates (first nonzero entry 1), N = q^2+q+1.
BipartiteGraph projective_plane_incidence(std::int64_t q);

double density_ratio(int t);

/// Adjacency of vertices from parts a != b with coordinates x, y, computed algebraically.
bool gqt_adjacent(const PrimeField& f, const MultiplierSet& m, int a, std::int64_t x1, std::int64_t x2, int b,
                  std::int64_t y1, std::int64_t y2);

/// Checks a G_{q,t} without building it. Translations of F_q^2 act on all
/// parts at once, so any triangle or K_{2,s} can be moved to put one vertex
/// at the origin of its part; only those placements are examined.
struct GqtAudit {
  std::int64_t vertices = 0;
  std::int64_t edges = 0;
  bool triangle_free = true;
  int max_codegree = 0;
};
GqtAudit audit_gqt(const MultiplierSet& m);

}  // namespace turanforge
