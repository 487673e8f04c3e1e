#pragma once

#include "turanforge/graph.hpp"
#include "turanforge/rational.hpp"
#include "turanforge/sparsereg.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace turanforge {

/// Exponents of a family with z(m, n) = rho*m*n^{alpha-1} + O(n^beta), plus the
/// constant C of the O-term as used by the expansion bounds.
struct SmoothnessParams {
  Rational alpha{3, 2};
  Rational beta{1};
  double rho = 1.0;
  double C = 1.0;
  // Where C came from: "configured" or "fitted".
  std::string c_source = "configured";

  /// Throws DomainError unless 1 <= beta < alpha < 2, rho >= 0 and C >= 1.
  void validate() const;
};

enum class SmoothFamily { K2t, K33, K2tBook };

/// Known exponents for K_{2,t}, K_{3,3} and {K_{2,t}, B_t}. rho is the
/// coefficient in the (n/2)^alpha normalisation; C is left at 1.
SmoothnessParams smoothness_registry(SmoothFamily family, int t = 2);
/// Tags "k2t", "k33", "k2t_book" (case-insensitive).
SmoothFamily parse_smooth_family(const std::string& tag);

struct BipartiteSample {
  std::int64_t m = 0;  // smaller side
  std::int64_t n = 0;
  std::int64_t z = 0;
};

/// Smallest C >= 1 with z <= C(m n^{alpha-1} + n^beta) on every sample.
double fit_smoothness_constant(const std::vector<BipartiteSample>& samples, const Rational& alpha,
                               const Rational& beta);

/// Upper bound on z(m, n, K_{s,t}); needs 2 <= s <= t and m <= n.
double furedi_kst_bound(std::int64_t m, std::int64_t n, int s, int t);
/// Upper bound on z(m, n, {K_{2,t}, B_t}); needs t >= 2 and m <= n.
double book_family_bound(std::int64_t m, std::int64_t n, int t);

/// Lower bound on the number of 4-cycles in an m x n bipartite graph with e
/// edges, or nullopt when e(e - n) < n m (m - 1) / 2 (or m < 2).
std::optional<Rational> c4_lower_bound(std::int64_t m, std::int64_t n, std::int64_t e);

struct EmbeddingThresholds {
  int layers = 0;      // number of expansion layers before the final step
  int min_length = 0;  // 2 * layers + 5
  // Shortest odd length handled by the K_{s,t} route; kept apart on purpose.
  static constexpr int kst_min_length = 5;
};

/// Largest j with beta^j <= (2 beta - beta^2)(alpha - 1)/(alpha - beta), or
/// floor(1/(alpha - 1)) when beta = 1. Exact comparisons only.
EmbeddingThresholds embedding_thresholds(const Rational& alpha, const Rational& beta);

/// 1/(beta-1) + (beta^2 - 2 beta)/((beta-1) beta^i); i itself when beta = 1.
Rational layer_growth_exponent(int i, const Rational& beta);

enum class ExpansionCase { USmaller, ULarger };

struct ExpansionBound {
  bool applicable = false;
  double gamma = 0.0;
  double min_n = 0.0;  // (1/gamma)^{1/(alpha-beta)}
  double value = 0.0;
};

/// Lower bound on |V| when every vertex of U has degree >= delta n^{alpha-1}.
ExpansionBound smooth_expansion_bound(const SmoothnessParams& params, double delta, std::int64_t size_u,
                                      std::int64_t n, ExpansionCase which);

/// (rho_x/(t-1))^{1/(s-1)} (rho_y |Y| - s n^{1/s}).
double kst_expansion_bound(double rho_x, double rho_y, std::int64_t size_y, std::int64_t n, int s, int t);

struct KstExpansionReport {
  bool hypotheses_hold = false;
  std::vector<std::string> violations;
  double rho_x = 0.0;
  double rho_y = 0.0;
  double bound = 0.0;
  std::int64_t actual = 0;  // |N(X) ∩ Y|
  bool vacuous = false;     // bound <= 0
  bool holds = false;
};

/// Checks the hypotheses with the given densities, then compares |N(X) ∩ Y|
/// with the bound. `holds` is only set when the hypotheses hold.
KstExpansionReport kst_expansion_check(const Graph& g, Vertex v, const VertexList& xs, const VertexList& ys, int s,
                                       int t, double rho_x, double rho_y);
/// Same, with rho_x and rho_y measured from X and Y (the largest values the
/// hypotheses allow).
KstExpansionReport kst_expansion_check(const Graph& g, Vertex v, const VertexList& xs, const VertexList& ys, int s,
                                       int t);

struct StabilityOutcome {
  enum class Kind { TriangleRich, Bipartition };
  Kind kind = Kind::Bipartition;
  Vertex vertex = -1;
  std::int64_t triangles = 0;
  VertexList x;
  VertexList y;
  std::int64_t non_crossing = 0;
};

/// Either a vertex in >= gamma n^2 triangles or a split with at most
/// 9 gamma^{1/4} n^2 edges inside the parts. Needs 0 < gamma < 1/8 and
/// e(g) >= (1/4 - gamma) n^2. The outcome is recounted before returning.
StabilityOutcome tri_stab(const Graph& g, double gamma);

struct MaxCutResult {
  std::vector<int> side;  // 0 or 1 per vertex
  int moves = 0;
  std::int64_t cut = 0;
};

std::int64_t cut_size(const Graph& g, const std::vector<int>& side);

/// Moves the lowest-index vertex with strictly more neighbours on its own
/// side until no such vertex remains.
MaxCutResult local_max_cut(const Graph& g, std::vector<int> side);

/// Bookkeeping constants of the layered embedding argument. Not used by the
/// search itself; carried so callers can record the regime they had in mind.
struct ExpansionConstants {
  double tau = 0.0;
  double d = 0.0;
  double epsilon = 0.0;
  double delta = 0.0;
  double delta_tilde = 0.0;
  double gamma_tilde = 0.0;

  /// delta = tau^2 d / 64, delta_tilde = d / 4t, gamma_tilde = delta_tilde / 2C.
  static ExpansionConstants coupled(double tau, double d, double epsilon, int t, double C);
};

struct OddCycleSetup {
  Vertex v = 0;
  std::vector<VertexList> layers;
  // Layers for the second arm; empty means reuse `layers`.
  std::vector<VertexList> layers_second;
  VertexList b;
  VertexList b_second;
  int k = 3;
  std::int64_t max_steps = 2'000'000;
  ExpansionConstants constants;
};

struct OddCycleResult {
  std::optional<VertexList> cycle;  // starts at v
  std::string reason;               // why nothing was found
  std::int64_t steps = 0;
};

/// Grows neighbourhood pyramids from v through the layers, looks for a path
/// alternating between b and b_second of length k - 2l - 2, and closes it into
/// a k-cycle through v. The second arm is grown with the first arm removed.
/// Any cycle returned has been checked edge by edge.
OddCycleResult find_odd_cycle_via_expansion(const Graph& g, const OddCycleSetup& setup);

struct OddCycleSearch {
  OddCycleResult result;
  std::optional<OddCycleSetup> setup;  // the setup that produced the cycle
  int attempts = 0;
};

/// Builds setups from BFS spheres around seeded start vertices: spheres
/// 1..l are the layers and sphere l+1 is split by local max-cut.
OddCycleSearch find_odd_cycle_auto(const Graph& g, int k, std::uint64_t seed, int start_vertices = 8);

/// True iff `cycle` is a k-cycle of g through v with distinct vertices.
bool is_cycle_through(const Graph& g, const VertexList& cycle, Vertex v, int k);

struct ClusterTransfer {
  int cluster = 0;
  std::int64_t edges_met = 0;
  double edge_threshold = 0.0;
  bool meets_threshold = false;
  int irregular_pairs = 0;
  double irregular_threshold = 0.0;
  int degree = 0;
  double degree_threshold = 0.0;
  bool conclusion_holds = false;
};

struct TransferReport {
  std::int64_t n = 0;
  std::int64_t edges = 0;
  double alpha = 0.0;
  double rho = 0.0;
  double gamma = 0.0;
  double p = 0.0;
  int t = 0;
  double mu_power = 0.0;  // mu^{alpha-1}
  std::optional<double> mu;
  bool vacuous = false;
  std::int64_t cluster_edges = 0;
  double cluster_edge_threshold = 0.0;
  bool global_conclusion_holds = false;
  std::vector<ClusterTransfer> clusters;
};

/// Compares a cluster graph against the edge and degree thresholds of the
/// degree-transfer argument. Diagnostic only: nothing is asserted.
TransferReport transfer_report(const Graph& g, const Partition& P, const PairClassification& cls,
                               const ClusterGraph& R, const SmoothnessParams& params, double gamma);

}  // namespace turanforge
