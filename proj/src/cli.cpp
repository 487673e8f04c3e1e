#include "turanforge/cli.hpp"

#include "turanforge/constructions.hpp"
#include "turanforge/detect.hpp"
#include "turanforge/errors.hpp"
#include "turanforge/graph_io.hpp"
#include "turanforge/lemmas.hpp"
#include "turanforge/sparsereg.hpp"
#include "turanforge/turan.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

namespace turanforge {

using nlohmann::json;

RunConfig load_run_config(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open config file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw DomainError("config file " + path + ": " + e.what());
  }
  if (!j.is_object()) throw DomainError("config file must hold a JSON object");
  try {
    if (j.contains("seed")) base.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("threads")) base.threads = j.at("threads").get<int>();
    if (j.contains("budget")) base.budget = j.at("budget").get<std::int64_t>();
    if (j.contains("output")) base.output = j.at("output").get<std::string>();
    if (j.contains("precision")) base.precision = j.at("precision").get<std::string>();
  } catch (const json::exception& e) {
    throw DomainError("config file " + path + ": " + e.what());
  }
  return base;
}

namespace {

std::string format_fixed(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

std::string rational_string(const Rational& r) {
  std::ostringstream os;
  os << numerator(r);
  if (denominator(r) != 1) os << '/' << denominator(r);
  return os.str();
}

// "3/2", "-4", "1.25" parsed exactly.
Rational parse_rational(const std::string& text) {
  try {
    if (auto slash = text.find('/'); slash != std::string::npos) {
      const BigInt den(text.substr(slash + 1));
      if (den == 0) throw DomainError("zero denominator in '" + text + "'");
      return Rational(BigInt(text.substr(0, slash)), den);
    }
    if (auto dot = text.find('.'); dot != std::string::npos) {
      const std::string digits = text.substr(0, dot) + text.substr(dot + 1);
      BigInt den = 1;
      for (std::size_t i = dot + 1; i < text.size(); ++i) den *= 10;
      return Rational(BigInt(digits.empty() || digits == "-" ? digits + "0" : digits), den);
    }
    return Rational(BigInt(text));
  } catch (const DomainError&) {
    throw;
  } catch (const std::exception&) {
    throw DomainError("not a rational number: '" + text + "'");
  }
}

json base_report(const std::string& command) {
  json j;
  j["schema"] = "turanforge/1";
  j["command"] = command;
  return j;
}

void emit(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

std::string graph_text(const Graph& g, const std::string& format) {
  if (format == "graph6") return encode_graph6(g) + "\n";
  if (format == "edgelist") return write_edge_list(g);
  throw DomainError("unknown graph format '" + format + "' (expected graph6 or edgelist)");
}

json witness_json(const Witness& w) {
  json j;
  j["pattern"] = w.pattern.name();
  j["vertices"] = w.vertices;
  return j;
}

json partition_json(const Partition& P) {
  json j;
  j["exceptional"] = P.exceptional;
  j["parts"] = P.parts;
  return j;
}

const char* status_name(PairStatus s) {
  switch (s) {
    case PairStatus::Regular: return "regular";
    case PairStatus::Irregular: return "irregular";
    case PairStatus::Unknown: break;
  }
  return "unknown";
}

std::vector<std::int64_t> parse_int_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw DomainError("not an integer: '" + item + "'");
    }
  }
  return out;
}

// "m=100,n=100,s=2" into a map.
std::map<std::string, std::string> parse_params(const std::string& text) {
  std::map<std::string, std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) throw DomainError("parameter '" + item + "' is not key=value");
    out[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return out;
}

class Params {
 public:
  explicit Params(const std::string& text) : values_(parse_params(text)) {}

  const std::string& raw(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw DomainError("missing parameter '" + key + "'");
    return it->second;
  }
  std::int64_t integer(const std::string& key) const {
    const auto v = parse_int_list(raw(key));
    if (v.size() != 1) throw DomainError("parameter '" + key + "' must be one integer");
    return v.front();
  }
  Rational rational(const std::string& key) const { return parse_rational(raw(key)); }
  double real(const std::string& key) const { return to_double(rational(key)); }
  double real_or(const std::string& key, double fallback) const {
    return values_.count(key) ? real(key) : fallback;
  }

 private:
  std::map<std::string, std::string> values_;
};

json bound_report(const std::string& which, const Params& p) {
  json j = base_report("analyze bound");
  j["which"] = which;
  if (which == "furedi") {
    j["value"] = furedi_kst_bound(p.integer("m"), p.integer("n"), static_cast<int>(p.integer("s")),
                                  static_cast<int>(p.integer("t")));
  } else if (which == "book") {
    j["value"] = book_family_bound(p.integer("m"), p.integer("n"), static_cast<int>(p.integer("t")));
  } else if (which == "c4") {
    const auto b = c4_lower_bound(p.integer("m"), p.integer("n"), p.integer("e"));
    j["applicable"] = b.has_value();
    if (b) {
      j["value"] = to_double(*b);
      j["exact"] = rational_string(*b);
    }
  } else if (which == "ell0") {
    const auto th = embedding_thresholds(p.rational("alpha"), p.rational("beta"));
    j["layers"] = th.layers;
    j["min_length"] = th.min_length;
    j["kst_min_length"] = EmbeddingThresholds::kst_min_length;
  } else if (which == "f") {
    const Rational f = layer_growth_exponent(static_cast<int>(p.integer("i")), p.rational("beta"));
    j["exact"] = rational_string(f);
    j["value"] = to_double(f);
  } else if (which == "expansion") {
    SmoothnessParams sp;
    sp.alpha = p.rational("alpha");
    sp.beta = p.rational("beta");
    sp.C = p.real_or("C", 1.0);
    const std::string which_case = p.raw("case");
    if (which_case != "smaller" && which_case != "larger") throw DomainError("case must be smaller or larger");
    const auto b = smooth_expansion_bound(sp, p.real("delta"), p.integer("u"), p.integer("n"),
                                          which_case == "smaller" ? ExpansionCase::USmaller : ExpansionCase::ULarger);
    j["applicable"] = b.applicable;
    j["gamma"] = b.gamma;
    j["min_n"] = b.min_n;
    if (b.applicable) j["value"] = b.value;
  } else if (which == "kst") {
    j["value"] = kst_expansion_bound(p.real("rho_x"), p.real("rho_y"), p.integer("y"), p.integer("n"),
                                     static_cast<int>(p.integer("s")), static_cast<int>(p.integer("t")));
  } else {
    throw DomainError("unknown bound '" + which + "' (expected furedi, book, c4, ell0, f, expansion or kst)");
  }
  return j;
}

json transfer_json(const TransferReport& r) {
  json j = base_report("analyze transfer");
  j["n"] = r.n;
  j["edges"] = r.edges;
  j["alpha"] = r.alpha;
  j["rho"] = r.rho;
  j["gamma"] = r.gamma;
  j["p"] = r.p;
  j["t"] = r.t;
  j["mu_power"] = r.mu_power;
  j["mu"] = r.mu ? json(*r.mu) : json(nullptr);
  j["vacuous"] = r.vacuous;
  j["cluster_edges"] = r.cluster_edges;
  j["cluster_edge_threshold"] = r.cluster_edge_threshold;
  j["global_conclusion_holds"] = r.global_conclusion_holds;
  json clusters = json::array();
  for (const auto& c : r.clusters) {
    clusters.push_back({{"cluster", c.cluster},
                        {"edges_met", c.edges_met},
                        {"edge_threshold", c.edge_threshold},
                        {"meets_threshold", c.meets_threshold},
                        {"irregular_pairs", c.irregular_pairs},
                        {"irregular_threshold", c.irregular_threshold},
                        {"degree", c.degree},
                        {"degree_threshold", c.degree_threshold},
                        {"conclusion_holds", c.conclusion_holds}});
  }
  j["clusters"] = clusters;
  return j;
}

struct Runner {
  RunConfig config;
  std::ostream& out;
  std::function<int()> action;
};

void write_or_print(Runner& r, const Graph& g, std::string format, const std::string& path, json summary) {
  if (format.empty()) format = r.config.output == "edgelist" ? "edgelist" : "graph6";
  const std::string text = graph_text(g, format);
  if (path.empty()) {
    r.out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw DomainError("cannot write " + path);
  file << text;
  summary["vertices"] = g.order();
  summary["edges"] = g.size();
  summary["format"] = format;
  summary["out"] = path;
  emit(r.out, summary);
}

int search_result(Runner& r, json j, const SearchResult& res) {
  j["value"] = res.value;
  j["exhaustive"] = res.exhaustive;
  j["nodes_explored"] = res.nodes_explored;
  j["witness"] = encode_graph6(res.witness);
  emit(r.out, j);
  return res.exhaustive ? exit_code::ok : exit_code::budget_exhausted;
}

SearchOptions search_options(const RunConfig& c) {
  SearchOptions o;
  o.budget = c.budget;
  o.threads = c.threads;
  return o;
}

void add_construct(CLI::App& app, Runner& r) {
  auto* construct = app.add_subcommand("construct", "Build an algebraic construction");
  construct->require_subcommand(1);

  struct Opts {
    std::int64_t q = 0;
    int t = 1;
    std::string strategy = "backtracking";
    std::string multipliers_in;
    std::string multipliers_out;
    std::string out;
    std::string format;  // falls back to the run config, then graph6
  };
  auto o = std::make_shared<Opts>();
  auto common = [&](CLI::App* sub) {
    sub->add_option("--q", o->q, "prime field size")->required();
    sub->add_option("--out", o->out, "output file (stdout when omitted)");
    sub->add_option("--format", o->format, "graph6 or edgelist");
  };

  auto* gq = construct->add_subcommand("gq", "Three-part triangle-free K_{2,3}-free graph");
  common(gq);
  gq->callback([&r, o] {
    r.action = [&r, o] {
      const auto g = build_gq(o->q);
      json s = base_report("construct gq");
      s["q"] = o->q;
      write_or_print(r, g.graph(), o->format, o->out, s);
      return exit_code::ok;
    };
  });

  auto* gqt = construct->add_subcommand("gqt", "(t+2)-part triangle-free K_{2,2t+1}-free graph");
  common(gqt);
  gqt->add_option("--t", o->t, "construction parameter")->required();
  gqt->add_option("--strategy", o->strategy, "backtracking or greedy");
  gqt->add_option("--multipliers", o->multipliers_in, "read multipliers from JSON instead of searching");
  gqt->add_option("--multipliers-out", o->multipliers_out, "write the multipliers used as JSON");
  gqt->callback([&r, o] {
    r.action = [&r, o] {
      std::optional<MultiplierSet> m;
      json s = base_report("construct gqt");
      s["q"] = o->q;
      s["t"] = o->t;
      if (!o->multipliers_in.empty()) {
        std::ifstream in(o->multipliers_in);
        if (!in) throw DomainError("cannot open " + o->multipliers_in);
        std::stringstream buf;
        buf << in.rdbuf();
        m = multipliers_from_json(buf.str());
        if (m->q() != o->q || m->t() != o->t) throw DomainError("multiplier file does not match --q/--t");
      } else {
        MultiplierStrategy strategy;
        if (o->strategy == "backtracking") {
          strategy = MultiplierStrategy::Backtracking;
        } else if (o->strategy == "greedy") {
          strategy = MultiplierStrategy::Greedy;
        } else {
          throw DomainError("unknown strategy '" + o->strategy + "'");
        }
        const auto found = find_multipliers(o->q, o->t, strategy, r.config.budget);
        s["search_steps"] = found.steps;
        if (found.status != SearchStatus::Found) {
          s["found"] = false;
          emit(r.out, s);
          return found.status == SearchStatus::BudgetExhausted ? exit_code::budget_exhausted
                                                               : exit_code::domain_error;
        }
        m = found.multipliers;
      }
      if (!o->multipliers_out.empty()) {
        std::ofstream file(o->multipliers_out, std::ios::binary);
        if (!file) throw DomainError("cannot write " + o->multipliers_out);
        file << multipliers_to_json(*m) << '\n';
      }
      const auto g = build_gqt(*m);
      s["found"] = true;
      write_or_print(r, g.graph(), o->format, o->out, s);
      return exit_code::ok;
    };
  });

  auto* pg = construct->add_subcommand("pg", "Point-line incidence graph of PG(2,q)");
  common(pg);
  pg->callback([&r, o] {
    r.action = [&r, o] {
      const auto b = projective_plane_incidence(o->q);
      json s = base_report("construct pg");
      s["q"] = o->q;
      write_or_print(r, b.graph(), o->format, o->out, s);
      return exit_code::ok;
    };
  });
}

void add_verify_count(CLI::App& app, Runner& r) {
  struct Opts {
    std::string in;
    std::string forbid;
  };
  auto o = std::make_shared<Opts>();
  auto* verify = app.add_subcommand("verify", "Check a graph for forbidden subgraphs");
  verify->add_option("--in", o->in, "graph file (graph6 or edge list)")->required();
  verify->add_option("--forbid", o->forbid, "family, e.g. triangle,c5,k{2,3},b3")->required();
  verify->callback([&r, o] {
    r.action = [&r, o] {
      const Graph g = read_graph_file(o->in);
      const auto fam = ForbiddenFamily::parse(o->forbid);
      const auto rep = is_family_free(g, fam);
      json j = base_report("verify");
      j["free"] = rep.free;
      j["family"] = fam.to_string();
      j["vertices"] = g.order();
      j["edges"] = g.size();
      if (rep.witness) j["witness"] = witness_json(*rep.witness);
      emit(r.out, j);
      return exit_code::ok;
    };
  });

  auto* count = app.add_subcommand("count", "Count triangles and 4-cycles, measure girth");
  count->add_option("--in", o->in, "graph file")->required();
  count->callback([&r, o] {
    r.action = [&r, o] {
      const Graph g = read_graph_file(o->in);
      json j = base_report("count");
      j["vertices"] = g.order();
      j["edges"] = g.size();
      j["triangles"] = count_triangles(g, r.config.threads);
      j["c4"] = count_c4(g, r.config.threads);
      const auto gi = girth(g);
      const auto og = odd_girth(g);
      j["girth"] = gi ? json(*gi) : json(nullptr);
      j["odd_girth"] = og ? json(*og) : json(nullptr);
      emit(r.out, j);
      return exit_code::ok;
    };
  });
}

void add_turan(CLI::App& app, Runner& r) {
  auto* turan = app.add_subcommand("turan", "Exact Turan and Zarankiewicz numbers");
  turan->require_subcommand(1);
  struct Opts {
    int n = 0;
    int m = 0;
    int t = 1;
    int n_min = 1;
    int n_max = 0;
    std::string forbid;
  };
  auto o = std::make_shared<Opts>();

  auto* ex = turan->add_subcommand("ex", "ex(n, F)");
  ex->add_option("--n", o->n, "vertex count")->required();
  ex->add_option("--forbid", o->forbid, "forbidden family")->required();
  ex->callback([&r, o] {
    r.action = [&r, o] {
      const auto fam = ForbiddenFamily::parse(o->forbid);
      json j = base_report("turan ex");
      j["n"] = o->n;
      j["family"] = fam.to_string();
      return search_result(r, j, ex_exact(o->n, fam, search_options(r.config)));
    };
  });

  auto* z = turan->add_subcommand("z", "z(m, n, F)");
  z->add_option("--m", o->m, "first part size")->required();
  z->add_option("--n", o->n, "second part size")->required();
  z->add_option("--forbid", o->forbid, "forbidden family")->required();
  z->callback([&r, o] {
    r.action = [&r, o] {
      const auto fam = ForbiddenFamily::parse(o->forbid);
      json j = base_report("turan z");
      j["m"] = o->m;
      j["n"] = o->n;
      j["family"] = fam.to_string();
      return search_result(r, j, z_exact(o->m, o->n, fam, search_options(r.config)));
    };
  });

  auto* ratio = turan->add_subcommand("ratio", "ex(n,{C3,K_{2,2t+1}}) against z(n/2,n/2,K_{2,2t+1}) as CSV");
  ratio->add_option("--t", o->t, "K_{2,2t+1} parameter")->required();
  ratio->add_option("--n-max", o->n_max, "largest n")->required();
  ratio->add_option("--n-min", o->n_min, "smallest n");
  ratio->callback([&r, o] {
    r.action = [&r, o] {
      if (o->t < 1) throw DomainError("--t must be >= 1");
      const std::string kst = "k{2," + std::to_string(2 * o->t + 1) + "}";
      const auto rows = ratio_table(o->n_min, o->n_max, ForbiddenFamily::parse("triangle," + kst),
                                    ForbiddenFamily::parse(kst), search_options(r.config));
      r.out << ratio_table_csv(rows);
      const bool all = std::all_of(rows.begin(), rows.end(), [](const RatioRow& row) { return row.exhaustive; });
      return all ? exit_code::ok : exit_code::budget_exhausted;
    };
  });
}

void add_regularity(CLI::App& app, Runner& r) {
  struct Opts {
    std::string in;
    double eps = 0.25;
    std::string p = "1";
    double d = 0.5;
    double L = 1.0;
    int max_rounds = 8;
    int trials = 64;
  };
  auto o = std::make_shared<Opts>();
  auto* reg = app.add_subcommand("regularity", "Sparse regular partition and cluster graph");
  reg->add_option("--in", o->in, "graph file")->required();
  reg->add_option("--eps", o->eps, "regularity parameter");
  reg->add_option("--p", o->p, "density scale, or auto:<alpha> for n^{alpha-2}");
  reg->add_option("--d", o->d, "cluster graph density threshold (relative)");
  reg->add_option("--L", o->L, "energy cap");
  reg->add_option("--max-rounds", o->max_rounds, "refinement rounds");
  reg->add_option("--trials", o->trials, "random witness trials per pair");
  reg->callback([&r, o] {
    r.action = [&r, o] {
      const Graph g = read_graph_file(o->in);
      RegularityOptions opts;
      opts.epsilon = o->eps;
      opts.L = o->L;
      opts.max_rounds = o->max_rounds;
      opts.trials = o->trials;
      opts.seed = r.config.seed;
      opts.threads = r.config.threads;
      if (o->p.rfind("auto:", 0) == 0) {
        const double alpha = to_double(parse_rational(o->p.substr(5)));
        opts.p = std::pow(static_cast<double>(g.order()), alpha - 2);
      } else {
        opts.p = to_double(parse_rational(o->p));
      }
      const auto run = sparse_regular_partition(g, opts);
      const auto R = cluster_graph(run.partition, run.classification, o->d);
      json j = base_report("regularity");
      j["epsilon"] = opts.epsilon;
      j["p"] = opts.p;
      j["d"] = o->d;
      j["partition"] = partition_json(run.partition);
      json pairs = json::array();
      for (const auto& info : run.classification.pairs) {
        pairs.push_back({{"i", info.i},
                         {"j", info.j},
                         {"density_p", info.verdict.density_p},
                         {"status", status_name(info.verdict.status)}});
      }
      j["pairs"] = pairs;
      j["cluster_graph"] = {{"k", R.k}, {"edges", R.edges}};
      j["energy_trace"] = run.energy_trace;
      j["literal_min_trace"] = run.literal_min_trace;
      j["irregular_trace"] = run.irregular_trace;
      j["rounds"] = run.rounds;
      j["converged"] = run.converged;
      j["stop_reason"] = run.stop_reason;
      if (r.config.precision == "rational") j["energy_exact"] = rational_string(energy_exact(g, run.partition));
      emit(r.out, j);
      return exit_code::ok;
    };
  });
}

void add_analyze(CLI::App& app, Runner& r) {
  auto* analyze = app.add_subcommand("analyze", "Bound calculators and constructive procedures");
  analyze->require_subcommand(1);
  struct Opts {
    std::string which;
    std::string params;
    std::string in;
    double gamma = 0.01;
    int k = 5;
    int starts = 8;
    std::string alpha = "3/2";
    std::string beta = "1";
    double rho = 1.0;
    double C = 1.0;
    double eps = 0.25;
    double d = 0.5;
    int max_rounds = 8;
    int trials = 64;
  };
  auto o = std::make_shared<Opts>();

  auto* bound = analyze->add_subcommand("bound", "Evaluate a closed-form bound");
  bound->add_option("--which", o->which, "furedi|book|c4|ell0|f|expansion|kst")->required();
  bound->add_option("--params", o->params, "comma-separated key=value list")->required();
  bound->callback([&r, o] {
    r.action = [&r, o] {
      emit(r.out, bound_report(o->which, Params(o->params)));
      return exit_code::ok;
    };
  });

  auto* tristab = analyze->add_subcommand("tristab", "Triangle-rich vertex or near-bipartition");
  tristab->add_option("--in", o->in, "graph file")->required();
  tristab->add_option("--gamma", o->gamma, "in (0, 1/8)")->required();
  tristab->callback([&r, o] {
    r.action = [&r, o] {
      const Graph g = read_graph_file(o->in);
      const auto s = tri_stab(g, o->gamma);
      json j = base_report("analyze tristab");
      j["gamma"] = o->gamma;
      if (s.kind == StabilityOutcome::Kind::TriangleRich) {
        j["kind"] = "triangle_rich";
        j["vertex"] = s.vertex;
        j["triangles"] = s.triangles;
      } else {
        j["kind"] = "bipartition";
        j["x"] = s.x;
        j["y"] = s.y;
        j["non_crossing"] = s.non_crossing;
      }
      emit(r.out, j);
      return exit_code::ok;
    };
  });

  auto* odd = analyze->add_subcommand("oddcycle", "Odd cycle through layered expansion");
  odd->add_option("--in", o->in, "graph file")->required();
  odd->add_option("--k", o->k, "odd cycle length")->required();
  odd->add_option("--starts", o->starts, "start vertices to try");
  odd->callback([&r, o] {
    r.action = [&r, o] {
      const Graph g = read_graph_file(o->in);
      const auto s = find_odd_cycle_auto(g, o->k, r.config.seed, o->starts);
      json j = base_report("analyze oddcycle");
      j["k"] = o->k;
      j["found"] = s.result.cycle.has_value();
      if (s.result.cycle) {
        j["cycle"] = *s.result.cycle;
        j["layers"] = s.setup->layers.size();
      } else {
        j["reason"] = s.result.reason;
      }
      j["steps"] = s.result.steps;
      j["attempts"] = s.attempts;
      emit(r.out, j);
      return exit_code::ok;
    };
  });

  auto* transfer = analyze->add_subcommand("transfer", "Cluster-graph edge and degree thresholds");
  transfer->add_option("--in", o->in, "graph file")->required();
  transfer->add_option("--alpha", o->alpha, "smoothness exponent")->required();
  transfer->add_option("--beta", o->beta, "error exponent");
  transfer->add_option("--rho", o->rho, "relative density")->required();
  transfer->add_option("--gamma", o->gamma, "slack")->required();
  transfer->add_option("--C", o->C, "smoothness constant");
  transfer->add_option("--eps", o->eps, "regularity parameter");
  transfer->add_option("--d", o->d, "cluster graph threshold");
  transfer->add_option("--max-rounds", o->max_rounds, "refinement rounds");
  transfer->add_option("--trials", o->trials, "random witness trials per pair");
  transfer->callback([&r, o] {
    r.action = [&r, o] {
      const Graph g = read_graph_file(o->in);
      SmoothnessParams sp;
      sp.alpha = parse_rational(o->alpha);
      sp.beta = parse_rational(o->beta);
      sp.rho = o->rho;
      sp.C = o->C;
      sp.validate();
      RegularityOptions opts;
      opts.epsilon = o->eps;
      opts.p = std::pow(static_cast<double>(g.order()), to_double(sp.alpha) - 2);
      opts.max_rounds = o->max_rounds;
      opts.trials = o->trials;
      opts.seed = r.config.seed;
      opts.threads = r.config.threads;
      const auto run = sparse_regular_partition(g, opts);
      const auto R = cluster_graph(run.partition, run.classification, o->d);
      emit(r.out, transfer_json(transfer_report(g, run.partition, run.classification, R, sp, o->gamma)));
      return exit_code::ok;
    };
  });
}

void add_report(CLI::App& app, Runner& r) {
  struct Opts {
    int t = 1;
    std::string qs;
  };
  auto o = std::make_shared<Opts>();
  auto* report = app.add_subcommand("report", "Construction edge counts against the bipartite bound (CSV)");
  report->add_option("--t", o->t, "construction parameter");
  report->add_option("--q", o->qs, "comma-separated primes");
  report->callback([&r, o] {
    r.action = [&r, o] {
      const auto rows = construction_ratio_rows(o->t, parse_int_list(o->qs), r.config.budget);
      r.out << construction_ratio_csv(rows);
      return exit_code::ok;
    };
  });
}

}  // namespace

std::vector<ConstructionRatioRow> construction_ratio_rows(int t, const std::vector<std::int64_t>& qs,
                                                          std::int64_t budget) {
  if (t < 1) throw DomainError("t must be >= 1");
  std::vector<ConstructionRatioRow> rows;
  for (std::int64_t q : qs) {
    ConstructionRatioRow row;
    row.q = q;
    row.n = static_cast<std::int64_t>(t + 2) * q * q;
    try {
      if (t == 1) {
        row.edges = build_gq(q).graph().size();
      } else {
        const auto found = find_multipliers(q, t, MultiplierStrategy::Backtracking, budget);
        if (found.status != SearchStatus::Found) {
          row.flag = found.status == SearchStatus::BudgetExhausted ? "budget_exhausted" : "no_multipliers";
        } else {
          const auto audit = audit_gqt(*found.multipliers);
          row.edges = audit.edges;
          if (!audit.triangle_free || audit.max_codegree > 2 * t) row.flag = "audit_failed";
        }
      }
    } catch (const DomainError&) {
      row.flag = "construction_failed";
    }
    const double n = static_cast<double>(row.n);
    row.closed_form = (t + 1) / (2 * std::sqrt(t + 2.0)) * std::pow(n, 1.5) - (t + 1) * n / 2;
    row.bipartite_bound = std::sqrt(static_cast<double>(t)) / 2 * std::pow(n, 1.5) + n / 4;
    row.ratio = row.flag.empty() ? static_cast<double>(row.edges) / row.bipartite_bound : 0.0;
    rows.push_back(row);
  }
  return rows;
}

std::string construction_ratio_csv(const std::vector<ConstructionRatioRow>& rows) {
  std::string out = "q,n,edges,closed_form,bipartite_bound,ratio,flag\n";
  for (const auto& r : rows) {
    out += std::to_string(r.q) + "," + std::to_string(r.n) + "," + std::to_string(r.edges) + "," +
           format_fixed(r.closed_form) + "," + format_fixed(r.bipartite_bound) + "," +
           (r.flag.empty() ? format_fixed(r.ratio) : std::string()) + "," + r.flag + "\n";
  }
  return out;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Extremal graph constructions, exact searches and regularity tools", "turanforge"};
  app.require_subcommand(1);
  app.fallthrough();

  Runner runner{RunConfig{}, out, {}};
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  std::optional<std::int64_t> budget;
  std::optional<std::string> output;
  std::optional<std::string> precision;
  app.add_option("--config", config_path, "JSON file with seed, threads, budget, output, precision");
  app.add_option("--seed", seed, "random seed");
  app.add_option("--threads", threads, "worker threads");
  app.add_option("--budget", budget, "search node / step budget");
  app.add_option("--output", output, "json, csv, graph6 or edgelist");
  app.add_option("--precision", precision, "float64 or rational");

  add_construct(app, runner);
  add_verify_count(app, runner);
  add_turan(app, runner);
  add_regularity(app, runner);
  add_analyze(app, runner);
  add_report(app, runner);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_code::ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return exit_code::usage;
  }

  try {
    RunConfig& c = runner.config;
    if (!config_path.empty()) c = load_run_config(config_path, c);
    if (const char* env = std::getenv("TURANFORGE_THREADS"); env != nullptr && *env != '\0') {
      try {
        c.threads = std::stoi(env);
      } catch (const std::exception&) {
        throw DomainError(std::string("TURANFORGE_THREADS is not an integer: ") + env);
      }
    }
    if (seed) c.seed = *seed;
    if (threads) c.threads = *threads;
    if (budget) c.budget = *budget;
    if (output) c.output = *output;
    if (precision) c.precision = *precision;
    if (c.threads < 1) throw DomainError("threads must be >= 1");
    if (c.budget < 1) throw DomainError("budget must be >= 1");
    if (c.precision != "float64" && c.precision != "rational") throw DomainError("precision must be float64 or rational");
    if (!runner.action) {
      err << app.help();
      return exit_code::usage;
    }
    return runner.action();
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::domain_error;
  } catch (const BudgetExhausted& e) {
    err << "budget exhausted: " << e.what() << "\n";
    return exit_code::budget_exhausted;
  } catch (const InvariantViolation& e) {
    err << "invariant violation: " << e.what() << "\n";
    return exit_code::invariant_violation;
  }
}

}  // namespace turanforge
