#include "turanforge/cli.hpp"
#include "turanforge/constructions.hpp"
#include "turanforge/graph_io.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace turanforge;
using nlohmann::json;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
  json doc() const { return json::parse(out); }
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  Run r;
  r.code = dispatch(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

class TempDir {
 public:
  TempDir() {
    path_ = std::filesystem::temp_directory_path() / ("turanforge_cli_" + std::to_string(std::rand()) + "_" +
                                                      std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

// Scoped TURANFORGE_THREADS value.
class EnvThreads {
 public:
  explicit EnvThreads(const char* value) { setenv("TURANFORGE_THREADS", value, 1); }
  ~EnvThreads() { unsetenv("TURANFORGE_THREADS"); }
};

}  // namespace

TEST_CASE("construct, verify and count") {
  TempDir dir;
  const std::string g5 = dir.file("g5.g6");
  const Run c = run({"construct", "gq", "--q", "5", "--out", g5});
  REQUIRE(c.code == exit_code::ok);
  CHECK(c.doc()["schema"] == "turanforge/1");
  CHECK(c.doc()["vertices"] == 75);
  CHECK(c.doc()["edges"] == 300);
  CHECK(read_graph_file(g5) == build_gq(5).graph());

  const Run v = run({"verify", "--in", g5, "--forbid", "triangle,k{2,3}"});
  CHECK(v.code == exit_code::ok);
  CHECK(v.doc()["free"] == true);
  CHECK_FALSE(v.doc().contains("witness"));

  const Run w = run({"verify", "--in", g5, "--forbid", "c4"});
  CHECK(w.code == exit_code::ok);
  CHECK(w.doc()["free"] == false);
  CHECK(w.doc()["witness"]["vertices"].size() == 4);

  const Run n = run({"count", "--in", g5});
  CHECK(n.doc()["triangles"] == 0);
  CHECK(n.doc()["odd_girth"] == 5);
  CHECK(n.doc()["c4"] == 450);
}

TEST_CASE("emitted graphs round-trip through their format") {
  for (const char* fmt : {"graph6", "edgelist"}) {
    const Run r = run({"construct", "pg", "--q", "3", "--format", fmt});
    REQUIRE(r.code == exit_code::ok);
    CHECK(parse_graph(r.out) == projective_plane_incidence(3).graph());
  }
  const Run gqt = run({"construct", "gqt", "--q", "11", "--t", "2", "--format", "edgelist"});
  REQUIRE(gqt.code == exit_code::ok);
  CHECK(parse_graph(gqt.out).size() == 6 * 121 * 10);
}

TEST_CASE("multiplier files") {
  TempDir dir;
  const std::string mfile = dir.file("m.json"), gfile = dir.file("g.g6");
  REQUIRE(run({"construct", "gqt", "--q", "13", "--t", "2", "--out", gfile, "--multipliers-out", mfile}).code ==
          exit_code::ok);
  const MultiplierSet m = multipliers_from_json(slurp(mfile));
  CHECK(is_valid(m));
  const Run again = run({"construct", "gqt", "--q", "13", "--t", "2", "--multipliers", mfile, "--format", "graph6"});
  REQUIRE(again.code == exit_code::ok);
  CHECK(decode_graph6(again.out) == read_graph_file(gfile));
  const Run greedy = run({"construct", "gqt", "--q", "5", "--t", "1", "--strategy", "greedy"});
  CHECK(greedy.code == exit_code::domain_error);
  CHECK(greedy.doc()["found"] == false);
}

TEST_CASE("turan subcommands") {
  const Run ex = run({"turan", "ex", "--n", "5", "--forbid", "c4"});
  REQUIRE(ex.code == exit_code::ok);
  CHECK(ex.doc()["value"] == 6);
  CHECK(ex.doc()["exhaustive"] == true);
  CHECK(decode_graph6(ex.doc()["witness"].get<std::string>()).size() == 6);

  const Run z = run({"turan", "z", "--m", "3", "--n", "3", "--forbid", "k{2,2}"});
  CHECK(z.doc()["value"] == 6);

  const Run cut = run({"turan", "ex", "--n", "10", "--forbid", "triangle", "--budget", "5"});
  CHECK(cut.code == exit_code::budget_exhausted);
  CHECK(cut.doc()["exhaustive"] == false);
  CHECK(cut.doc()["value"] <= 25);

  const Run ratio = run({"turan", "ratio", "--t", "1", "--n-min", "4", "--n-max", "6"});
  REQUIRE(ratio.code == exit_code::ok);
  CHECK(ratio.out.starts_with("n,ex,z,ratio,exhaustive,flag\n4,"));
}

TEST_CASE("exit codes") {
  CHECK(run({"--bogus"}).code == exit_code::usage);
  CHECK(run({"frobnicate"}).code == exit_code::usage);
  CHECK(run({"construct", "gq", "--q", "5", "--colour", "red"}).code == exit_code::usage);
  CHECK(run({"construct", "gq", "--q", "7"}).code == exit_code::domain_error);
  CHECK(run({"verify", "--in", "/nonexistent/graph.g6", "--forbid", "c4"}).code == exit_code::domain_error);
  CHECK(run({"turan", "ex", "--n", "5", "--forbid", "hexagon"}).code == exit_code::domain_error);
  CHECK(run({"analyze", "tristab", "--in", "/nonexistent", "--gamma", "0.01"}).code == exit_code::domain_error);
  CHECK(run({"--help"}).code == exit_code::ok);
}

TEST_CASE("bound calculators") {
  const Run c4 = run({"analyze", "bound", "--which", "c4", "--params", "m=3,n=3,e=9"});
  REQUIRE(c4.code == exit_code::ok);
  CHECK(c4.doc()["exact"] == "9");
  const Run ell0 = run({"analyze", "bound", "--which", "ell0", "--params", "alpha=5/3,beta=4/3"});
  REQUIRE(ell0.code == exit_code::ok);
  CHECK(ell0.doc()["layers"] == 2);
  CHECK(ell0.doc()["min_length"] == 9);
  const Run f = run({"analyze", "bound", "--which", "f", "--params", "i=2,beta=3/2"});
  CHECK(f.doc()["exact"] == "4/3");
  const Run furedi = run({"analyze", "bound", "--which", "furedi", "--params", "m=100,n=100,s=2,t=3"});
  CHECK(furedi.doc()["value"].get<double>() == doctest::Approx(1814.2136));
  CHECK(run({"analyze", "bound", "--which", "furedi", "--params", "m=100"}).code == exit_code::domain_error);
  CHECK(run({"analyze", "bound", "--which", "nope", "--params", "m=1"}).code != exit_code::ok);
}

TEST_CASE("constructive procedures") {
  TempDir dir;
  const std::string k = dir.file("k.txt");
  write(k, write_edge_list(graphs::complete(20)));
  const Run t = run({"analyze", "tristab", "--in", k, "--gamma", "0.01"});
  REQUIRE(t.code == exit_code::ok);
  CHECK(t.doc()["kind"] == "triangle_rich");
  CHECK(t.doc()["triangles"] == 171);

  const std::string g5 = dir.file("g5.g6");
  write(g5, encode_graph6(build_gq(5).graph()));
  const Run o = run({"analyze", "oddcycle", "--in", g5, "--k", "5"});
  REQUIRE(o.code == exit_code::ok);
  CHECK(o.doc()["found"] == true);
  CHECK(o.doc()["cycle"].size() == 5);

  const std::string bip = dir.file("k33.txt");
  write(bip, write_edge_list(graphs::complete_bipartite(3, 3)));
  const Run none = run({"analyze", "oddcycle", "--in", bip, "--k", "3"});
  CHECK(none.doc()["found"] == false);
}

TEST_CASE("transfer report echoes values that recompute from the JSON") {
  TempDir dir;
  const std::string g5 = dir.file("g5.g6");
  write(g5, encode_graph6(build_gq(5).graph()));
  const Run r = run({"analyze", "transfer", "--in", g5, "--alpha", "1.5", "--rho", "1.4142135623730951", "--gamma",
                     "0.1", "--eps", "0.25"});
  REQUIRE(r.code == exit_code::ok);
  const json j = r.doc();
  const double n = j["n"], e = j["edges"], rho = j["rho"], p = j["p"], gamma = j["gamma"];
  CHECK(p == std::pow(n, j["alpha"].get<double>() - 2));
  CHECK(j["mu_power"].get<double>() == 2 * e / (rho * p * n * n) - gamma);
}

TEST_CASE("regularity output is deterministic across runs and thread counts") {
  TempDir dir;
  const std::string g5 = dir.file("g5.g6");
  write(g5, encode_graph6(build_gq(5).graph()));
  const std::vector<std::string> base{"regularity", "--in", g5, "--eps", "0.25", "--p", "auto:1.5", "--d", "0.5", "--L", "2"};
  std::vector<std::string> one = base, four = base;
  one.insert(one.end(), {"--threads", "1"});
  four.insert(four.end(), {"--threads", "4"});
  const Run a = run(one), b = run(four), c = run(one);
  REQUIRE(a.code == exit_code::ok);
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
  const json j = a.doc();
  CHECK(j.contains("partition"));
  CHECK(j.contains("cluster_graph"));
  CHECK(j["energy_trace"].size() == j["rounds"].get<std::size_t>());
  std::vector<std::string> exact = base;
  exact.insert(exact.end(), {"--precision", "rational"});
  CHECK(run(exact).doc().contains("energy_exact"));
}

TEST_CASE("report csv") {
  const Run r = run({"report", "--t", "1", "--q", "5,11"});
  REQUIRE(r.code == exit_code::ok);
  CHECK(r.out.starts_with("q,n,edges,closed_form,bipartite_bound,ratio,flag\n5,75,300,300.000000,"));
  const Run empty = run({"report", "--t", "1", "--q", ""});
  CHECK(empty.out == "q,n,edges,closed_form,bipartite_bound,ratio,flag\n");
  const auto rows = construction_ratio_rows(1, {5, 7, 11});
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].closed_form == doctest::Approx(300.0));
  CHECK_FALSE(rows[1].flag.empty());
  CHECK(rows[2].ratio == doctest::Approx(3630.0 / rows[2].bipartite_bound));
}

TEST_CASE("configuration precedence") {
  TempDir dir;
  const std::string cfg = dir.file("cfg.json");
  write(cfg, R"({"budget": 5, "output": "edgelist", "seed": 9})");
  const std::vector<std::string> search{"turan", "ex", "--n", "10", "--forbid", "triangle"};
  auto with = [&](std::vector<std::string> extra) {
    std::vector<std::string> args{"--config", cfg};
    args.insert(args.end(), search.begin(), search.end());
    args.insert(args.end(), extra.begin(), extra.end());
    return run(args);
  };
  CHECK(with({}).code == exit_code::budget_exhausted);
  CHECK(with({"--budget", "100000000"}).code == exit_code::ok);
  const Run el = run({"--config", cfg, "construct", "pg", "--q", "2"});
  CHECK(detect_format(el.out) == GraphFormat::EdgeList);

  CHECK(load_run_config(cfg).seed == 9);
  write(cfg, "{not json");
  CHECK(run({"--config", cfg, "construct", "pg", "--q", "2"}).code == exit_code::domain_error);

  {
    EnvThreads env("0");
    CHECK(run({"construct", "pg", "--q", "2"}).code == exit_code::domain_error);
    CHECK(run({"construct", "pg", "--q", "2", "--threads", "2"}).code == exit_code::ok);
  }
  {
    EnvThreads env("many");
    CHECK(run({"construct", "pg", "--q", "2"}).code == exit_code::domain_error);
  }
}

TEST_CASE("installed binary honours the exit-code contract") {
  const char* bin = std::getenv("TURANFORGE_CLI");
  if (bin == nullptr) return;
  auto status = [&](const std::string& args) {
    const int raw = std::system((std::string(bin) + " " + args + " >/dev/null 2>&1").c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  };
  CHECK(status("turan ex --n 5 --forbid c4") == 0);
  CHECK(status("construct gq --q 7") == 1);
  CHECK(status("turan ex --n 10 --forbid triangle --budget 5") == 2);
  CHECK(status("--no-such-flag") == 64);
}
