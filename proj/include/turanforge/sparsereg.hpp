#pragma once

#include "turanforge/graph.hpp"
#include "turanforge/rational.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace turanforge {

/// V = V0 ⊔ V1 ⊔ ... ⊔ Vk with |V1| = ... = |Vk| and |V0| <= eps*n.
struct Partition {
  VertexList exceptional;
  std::vector<VertexList> parts;
  double epsilon = 0.1;
  double p = 1.0;

  int size() const { return static_cast<int>(parts.size()); }

  /// Consecutive blocks of floor(n/k) vertices; the remainder goes to V0.
  static Partition equitable(int n, int k, double epsilon, double p);
  /// Blocks built from an explicit vertex order (for partitions refining a known split).
  static Partition from_order(const VertexList& order, int k, double epsilon, double p);
};

/// Throws DomainError if any Partition invariant fails for g.
void validate_partition(const Graph& g, const Partition& P);

/// e(V_i, V_j) for all i, j (diagonal left at 0).
std::vector<std::vector<std::int64_t>> pair_edge_matrix(const Graph& g, const Partition& P);

// Sums run over ordered pairs of distinct non-exceptional parts.
double energy(const Graph& g, const Partition& P);
Rational energy_exact(const Graph& g, const Partition& P);

double energy_p(const Graph& g, const Partition& P);  // uses P.p
double energy_p(const Graph& g, const Partition& P, double p);
/// Exact version; takes p^2 so that p = n^{-1/2} stays rational.
Rational energy_p_exact(const Graph& g, const Partition& P, const Rational& p_squared);

/// x^2 up to 2L, then the tangent 4L(x - L).
double phi_cap(double x, double L);
Rational phi_cap(const Rational& x, const Rational& L);

double capped_energy(const Graph& g, const Partition& P, double L);
Rational capped_energy_exact(const Graph& g, const Partition& P, const Rational& p, const Rational& L);
/// Pointwise min(x^2, 4L(x-L)) in place of phi_cap; reported for comparison only.
double literal_min_capped_energy(const Graph& g, const Partition& P, double L);

enum class PairStatus { Regular, Irregular, Unknown };

struct PairVerdict {
  PairStatus status = PairStatus::Unknown;
  double density_p = 0.0;
  VertexList x_sub;
  VertexList y_sub;
  double sub_density_p = 0.0;
};

/// Smallest integer a with a >= eps * size.
int min_subset_size(double eps, std::size_t size);

/// True iff the subsets are large enough and their relative density is more than eps off.
bool is_irregularity_witness(const Graph& g, const VertexList& xs, const VertexList& ys, const VertexList& x_sub,
                             const VertexList& y_sub, double eps, double p);

/// Budgeted search for an irregularity witness. "Regular" only means none was
/// found: degree-split candidates first, then `budget` seeded random trials.
PairVerdict witness_irregular(const Graph& g, const VertexList& xs, const VertexList& ys, double eps, double p,
                              int budget, std::uint64_t seed);

struct PairInfo {
  int i = 0;
  int j = 0;
  PairVerdict verdict;
};

struct PairClassification {
  int k = 0;
  std::vector<PairInfo> pairs;  // i < j, ordered by (i, j)

  const PairInfo& at(int i, int j) const;
  int irregular_count() const;
};

/// Stream seed for pair (i, j); independent of thread count.
std::uint64_t pair_seed(std::uint64_t seed, int i, int j);

PairClassification classify_pairs(const Graph& g, const Partition& P, int budget, std::uint64_t seed, int threads = 1);

struct RefineOptions {
  double L = 1.0;
  bool require_energy_gain = true;
};

struct RefineResult {
  Partition partition;
  int common_size = 0;
  bool changed = false;
  // No admissible common size kept the capped energy from dropping.
  bool stalled = false;
};

/// Venn refinement by witness sets, then re-chopping into equal parts.
///
/// The common part size is the largest one that keeps |V0| <= eps*n, keeps
/// k' <= 2^k * ceil(1/eps) and (by default) does not lower the capped energy.
/// Throws DomainError when no size satisfies the first two.
RefineResult refine(const Graph& g, const Partition& P, const PairClassification& cls, const RefineOptions& options = {});

struct RegularityOptions {
  double epsilon = 0.25;
  double p = 1.0;
  double L = 1.0;
  int max_rounds = 8;
  int trials = 64;
  std::uint64_t seed = 1;
  int threads = 1;
};

struct RegularityRun {
  Partition partition;
  PairClassification classification;
  std::vector<double> energy_trace;  // capped energy per round
  std::vector<double> literal_min_trace;
  std::vector<int> irregular_trace;
  int rounds = 0;
  bool converged = false;
  std::string stop_reason;
};

RegularityRun sparse_regular_partition(const Graph& g, const RegularityOptions& options);
RegularityRun sparse_regular_partition(const Graph& g, const Partition& start, const RegularityOptions& options);

struct ClusterGraph {
  int k = 0;
  std::vector<Edge> edges;
  std::vector<int> degrees;
  double epsilon = 0.0;
  double d = 0.0;
  double p = 1.0;
};

ClusterGraph cluster_graph(const Partition& P, const PairClassification& cls, double d);

struct RegularPairParams {
  double epsilon = 0.0;
  double density = 0.0;  // lower bound on relative density
};

RegularPairParams pair_union_params(const RegularPairParams& ab, const RegularPairParams& ac);
RegularPairParams pair_restrict_params(const RegularPairParams& ab, double gamma);

struct EnergyBoundReport {
  bool applicable = false;
  std::string reason;
  double energy_p = 0.0;
  std::optional<Rational> energy_p_exact;  // present when s = 2
  double bound = 0.0;
  bool holds = false;
};

/// Uses p = n^{-1/s}. Checks K_{s,t}-freeness and the part-size condition first.
EnergyBoundReport energy_bound_check(const Graph& g, const Partition& P, int s, int t);

}  // namespace turanforge
