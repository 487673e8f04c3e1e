#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace turanforge {

/// Settings shared by every subcommand.
///
/// Precedence, lowest first: defaults, --config file, TURANFORGE_THREADS,
/// explicit flags.
struct RunConfig {
  std::uint64_t seed = 1;
  int threads = 1;
  std::int64_t budget = 100'000'000;
  std::string output = "json";      // json | csv | graph6 | edgelist
  std::string precision = "float64";  // float64 | rational
};

/// Reads the keys seed, threads, budget, output and precision from a JSON object.
RunConfig load_run_config(const std::string& path, RunConfig base = {});

namespace exit_code {
constexpr int ok = 0;
constexpr int domain_error = 1;
constexpr int budget_exhausted = 2;
constexpr int invariant_violation = 3;
constexpr int usage = 64;
}  // namespace exit_code

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics and usage text to `err`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// One row comparing the algebraic construction with the bipartite upper bound.
struct ConstructionRatioRow {
  std::int64_t q = 0;
  std::int64_t n = 0;
  std::int64_t edges = 0;
  double closed_form = 0.0;     // ((t+1)/(2 sqrt(t+2))) n^{3/2} - (t+1) n / 2
  double bipartite_bound = 0.0;  // sqrt(t)/2 n^{3/2} + n/4
  double ratio = 0.0;           // edges / bipartite_bound
  std::string flag;             // empty when the row is valid
};

/// t = 1 uses the three-part construction; t >= 2 searches for multipliers
/// (with `budget` steps) and audits the result.
std::vector<ConstructionRatioRow> construction_ratio_rows(int t, const std::vector<std::int64_t>& qs,
                                                          std::int64_t budget = 100'000'000);
std::string construction_ratio_csv(const std::vector<ConstructionRatioRow>& rows);

}  // namespace turanforge
