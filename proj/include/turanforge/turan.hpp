#pragma once

#include "turanforge/detect.hpp"
#include "turanforge/graph.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace turanforge {

struct SearchOptions {
  // Node cap for each subtree task (see README); hitting it clears `exhaustive`.
  std::int64_t budget = 100'000'000;
  int threads = 1;
};

struct SearchResult {
  std::int64_t value = 0;
  Graph witness;
  std::int64_t nodes_explored = 0;
  bool exhaustive = false;
};

/// Maximum edges of an n-vertex graph with no member of `fam`.
///
/// Ties go to the lexicographically least edge set among graphs whose
/// vertex 0 has maximum degree.
SearchResult ex_exact(int n, const ForbiddenFamily& fam, const SearchOptions& options = {});

/// Same search over the m x n bipartite slots. The witness has U = 0..m-1
/// and V = m..m+n-1.
SearchResult z_exact(int m, int n, const ForbiddenFamily& fam, const SearchOptions& options = {});

struct RatioRow {
  int n = 0;
  std::int64_t ex = 0;
  std::int64_t z = 0;
  std::optional<double> ratio;  // absent when z = 0
  bool exhaustive = true;
};

std::vector<RatioRow> ratio_table(int n_min, int n_max, const ForbiddenFamily& with_cycle,
                                  const ForbiddenFamily& bipartite, const SearchOptions& options = {});
std::string ratio_table_csv(const std::vector<RatioRow>& rows);

}  // namespace turanforge
