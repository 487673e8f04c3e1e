#include "turanforge/sparsereg.hpp"

#include "turanforge/detect.hpp"
#include "turanforge/errors.hpp"
#include "turanforge/parallel.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <map>
#include <random>

namespace turanforge {

Partition Partition::equitable(int n, int k, double epsilon, double p) {
  VertexList order(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) order[static_cast<std::size_t>(v)] = v;
  return from_order(order, k, epsilon, p);
}

Partition Partition::from_order(const VertexList& order, int k, double epsilon, double p) {
  if (k < 1) throw DomainError("need at least one part");
  const int n = static_cast<int>(order.size());
  const int size = n / k;
  if (size < 1) throw DomainError("more parts than vertices");
  Partition P;
  P.epsilon = epsilon;
  P.p = p;
  for (int i = 0; i < k; ++i) {
    P.parts.emplace_back(order.begin() + i * size, order.begin() + (i + 1) * size);
  }
  P.exceptional.assign(order.begin() + k * size, order.end());
  std::sort(P.exceptional.begin(), P.exceptional.end());
  return P;
}

void validate_partition(const Graph& g, const Partition& P) {
  const int n = g.order();
  if (!(P.p > 0.0 && P.p <= 1.0)) throw DomainError("p must lie in (0, 1]");
  if (!(P.epsilon > 0.0 && P.epsilon < 1.0)) throw DomainError("epsilon must lie in (0, 1)");
  if (P.parts.empty()) throw DomainError("partition has no parts");
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  auto mark = [&](const VertexList& vs) {
    require_vertices_in_range(g, vs, "partition vertex");
    for (Vertex v : vs) {
      if (seen[static_cast<std::size_t>(v)]) throw DomainError("vertex " + std::to_string(v) + " appears twice");
      seen[static_cast<std::size_t>(v)] = 1;
    }
  };
  mark(P.exceptional);
  for (const auto& part : P.parts) {
    if (part.size() != P.parts.front().size()) throw DomainError("parts have unequal sizes");
    if (part.empty()) throw DomainError("empty part");
    mark(part);
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end()) throw DomainError("partition does not cover every vertex");
  if (static_cast<double>(P.exceptional.size()) > P.epsilon * n) throw DomainError("exceptional set larger than eps*n");
}

std::vector<std::vector<std::int64_t>> pair_edge_matrix(const Graph& g, const Partition& P) {
  const std::size_t k = P.parts.size();
  std::vector<Bitset> masks;
  for (const auto& part : P.parts) masks.push_back(Bitset::of(g.order(), part));
  std::vector<std::vector<std::int64_t>> e(k, std::vector<std::int64_t>(k, 0));
  for (std::size_t i = 0; i < k; ++i)
    for (Vertex v : P.parts[i])
      for (std::size_t j = i + 1; j < k; ++j) e[i][j] += intersection_count(g.row(v), masks[j].words());
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) e[j][i] = e[i][j];
  return e;
}

namespace {

// Calls fn(weight |X||Y|/n^2 as numerator and denominator, e(X,Y), |X||Y|) for each unordered pair.
template <class Fn>
void for_each_pair(const Graph& g, const Partition& P, Fn&& fn) {
  validate_partition(g, P);
  const auto e = pair_edge_matrix(g, P);
  for (std::size_t i = 0; i < P.parts.size(); ++i)
    for (std::size_t j = i + 1; j < P.parts.size(); ++j) {
      fn(e[i][j], static_cast<std::int64_t>(P.parts[i].size()) * static_cast<std::int64_t>(P.parts[j].size()));
    }
}

}  // namespace

double energy(const Graph& g, const Partition& P) {
  const double n2 = static_cast<double>(g.order()) * g.order();
  double total = 0.0;
  // Ordered pairs: each unordered pair counts twice. w * d^2 = e^2 / (n^2 |X||Y|).
  for_each_pair(g, P, [&](std::int64_t e, std::int64_t xy) {
    total += 2.0 * static_cast<double>(e) * static_cast<double>(e) / (n2 * static_cast<double>(xy));
  });
  return total;
}

Rational energy_exact(const Graph& g, const Partition& P) {
  const Rational n2 = Rational(g.order()) * g.order();
  Rational total = 0;
  for_each_pair(g, P, [&](std::int64_t e, std::int64_t xy) { total += Rational(2 * BigInt(e) * e) / (n2 * xy); });
  return total;
}

double energy_p(const Graph& g, const Partition& P) { return energy_p(g, P, P.p); }

double energy_p(const Graph& g, const Partition& P, double p) {
  if (!(p > 0.0)) throw DomainError("p must be positive");
  return energy(g, P) / (p * p);
}

Rational energy_p_exact(const Graph& g, const Partition& P, const Rational& p_squared) {
  if (p_squared <= 0) throw DomainError("p must be positive");
  return energy_exact(g, P) / p_squared;
}

double phi_cap(double x, double L) {
  if (L < 1.0) throw DomainError("cap L must be at least 1");
  return x <= 2.0 * L ? x * x : 4.0 * L * (x - L);
}

Rational phi_cap(const Rational& x, const Rational& L) {
  if (L < 1) throw DomainError("cap L must be at least 1");
  return x <= 2 * L ? Rational(x * x) : Rational(4 * L * (x - L));
}

double capped_energy(const Graph& g, const Partition& P, double L) {
  if (L < 1.0) throw DomainError("cap L must be at least 1");
  const double n2 = static_cast<double>(g.order()) * g.order();
  double total = 0.0;
  for_each_pair(g, P, [&](std::int64_t e, std::int64_t xy) {
    const double dp = static_cast<double>(e) / static_cast<double>(xy) / P.p;
    total += 2.0 * static_cast<double>(xy) / n2 * phi_cap(dp, L);
  });
  return total;
}

Rational capped_energy_exact(const Graph& g, const Partition& P, const Rational& p, const Rational& L) {
  if (p <= 0) throw DomainError("p must be positive");
  const Rational n2 = Rational(g.order()) * g.order();
  Rational total = 0;
  for_each_pair(g, P, [&](std::int64_t e, std::int64_t xy) {
    const Rational dp = Rational(e) / xy / p;
    total += 2 * Rational(xy) / n2 * phi_cap(dp, L);
  });
  return total;
}

double literal_min_capped_energy(const Graph& g, const Partition& P, double L) {
  if (L < 1.0) throw DomainError("cap L must be at least 1");
  const double n2 = static_cast<double>(g.order()) * g.order();
  double total = 0.0;
  for_each_pair(g, P, [&](std::int64_t e, std::int64_t xy) {
    const double dp = static_cast<double>(e) / static_cast<double>(xy) / P.p;
    total += 2.0 * static_cast<double>(xy) / n2 * std::min(dp * dp, 4.0 * L * (dp - L));
  });
  return total;
}

int min_subset_size(double eps, std::size_t size) {
  const double target = eps * static_cast<double>(size);
  int a = static_cast<int>(std::ceil(target));
  while (a > 1 && a - 1 >= target) --a;
  while (a < target) ++a;
  return std::max(a, 1);
}

namespace {

std::int64_t cross_edges(const Graph& g, const VertexList& xs, const Bitset& ymask) {
  std::int64_t e = 0;
  for (Vertex x : xs) e += intersection_count(g.row(x), ymask.words());
  return e;
}

// |d(X',Y') - d(X,Y)| / p > eps, with the density difference formed exactly.
bool deviates(std::int64_t e_sub, std::int64_t sub_area, std::int64_t e, std::int64_t area, double eps, double p) {
  const __int128 num = static_cast<__int128>(e_sub) * area - static_cast<__int128>(e) * sub_area;
  const __int128 mag = num < 0 ? -num : num;
  const long double den = static_cast<long double>(sub_area) * static_cast<long double>(area);
  return static_cast<long double>(mag) / den / static_cast<long double>(p) > static_cast<long double>(eps);
}

bool subset_of(const VertexList& sub, const Bitset& mask) {
  return std::all_of(sub.begin(), sub.end(), [&](Vertex v) { return v >= 0 && v < mask.size() && mask.test(v); });
}

bool distinct(VertexList vs) {
  std::sort(vs.begin(), vs.end());
  return std::adjacent_find(vs.begin(), vs.end()) == vs.end();
}

// The `count` vertices of `from` with the most (or fewest) neighbours in `into`.
VertexList extreme_by_degree(const Graph& g, const VertexList& from, const Bitset& into, std::size_t count, bool top) {
  std::vector<std::pair<int, Vertex>> keyed;
  keyed.reserve(from.size());
  for (Vertex v : from) keyed.emplace_back(intersection_count(g.row(v), into.words()), v);
  std::stable_sort(keyed.begin(), keyed.end(), [&](const auto& a, const auto& b) {
    if (a.first != b.first) return top ? a.first > b.first : a.first < b.first;
    return a.second < b.second;
  });
  VertexList out;
  for (std::size_t i = 0; i < count && i < keyed.size(); ++i) out.push_back(keyed[i].second);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

bool is_irregularity_witness(const Graph& g, const VertexList& xs, const VertexList& ys, const VertexList& x_sub,
                             const VertexList& y_sub, double eps, double p) {
  const Bitset xmask = Bitset::of(g.order(), xs), ymask = Bitset::of(g.order(), ys);
  if (!subset_of(x_sub, xmask) || !subset_of(y_sub, ymask) || !distinct(x_sub) || !distinct(y_sub)) return false;
  if (static_cast<int>(x_sub.size()) < min_subset_size(eps, xs.size())) return false;
  if (static_cast<int>(y_sub.size()) < min_subset_size(eps, ys.size())) return false;
  const std::int64_t e = cross_edges(g, xs, ymask);
  const std::int64_t e_sub = cross_edges(g, x_sub, Bitset::of(g.order(), y_sub));
  return deviates(e_sub, static_cast<std::int64_t>(x_sub.size() * y_sub.size()), e,
                  static_cast<std::int64_t>(xs.size() * ys.size()), eps, p);
}

PairVerdict witness_irregular(const Graph& g, const VertexList& xs, const VertexList& ys, double eps, double p,
                              int budget, std::uint64_t seed) {
  require_disjoint_nonempty(g, xs, ys);
  if (!(p > 0.0)) throw DomainError("p must be positive");
  const int n = g.order();
  const Bitset xmask = Bitset::of(n, xs), ymask = Bitset::of(n, ys);
  const std::int64_t area = static_cast<std::int64_t>(xs.size() * ys.size());
  const std::int64_t e = cross_edges(g, xs, ymask);
  PairVerdict out;
  out.density_p = static_cast<double>(e) / static_cast<double>(area) / p;
  const auto a = static_cast<std::size_t>(min_subset_size(eps, xs.size()));
  const auto b = static_cast<std::size_t>(min_subset_size(eps, ys.size()));

  auto attempt = [&](const VertexList& xsub, const VertexList& ysub) {
    const std::int64_t e_sub = cross_edges(g, xsub, Bitset::of(n, ysub));
    const auto sub_area = static_cast<std::int64_t>(xsub.size() * ysub.size());
    if (!deviates(e_sub, sub_area, e, area, eps, p)) return false;
    out.status = PairStatus::Irregular;
    out.x_sub = xsub;
    out.y_sub = ysub;
    out.sub_density_p = static_cast<double>(e_sub) / static_cast<double>(sub_area) / p;
    return true;
  };

  for (bool top : {true, false}) {
    const VertexList xsub = extreme_by_degree(g, xs, ymask, a, top);
    const Bitset xsub_mask = Bitset::of(n, xsub);
    for (const VertexList& ysub :
         {ys, extreme_by_degree(g, ys, xsub_mask, b, true), extreme_by_degree(g, ys, xsub_mask, b, false)}) {
      if (attempt(xsub, ysub)) return out;
    }
    const VertexList ysub = extreme_by_degree(g, ys, xmask, b, top);
    const Bitset ysub_mask = Bitset::of(n, ysub);
    for (const VertexList& xsub2 :
         {xs, extreme_by_degree(g, xs, ysub_mask, a, true), extreme_by_degree(g, xs, ysub_mask, a, false)}) {
      if (attempt(xsub2, ysub)) return out;
    }
  }

  std::mt19937_64 rng(seed);
  VertexList xsub(a), ysub(b);
  for (int trial = 0; trial < budget; ++trial) {
    xsub.clear();
    ysub.clear();
    std::sample(xs.begin(), xs.end(), std::back_inserter(xsub), static_cast<std::ptrdiff_t>(a), rng);
    std::sample(ys.begin(), ys.end(), std::back_inserter(ysub), static_cast<std::ptrdiff_t>(b), rng);
    if (attempt(xsub, ysub)) return out;
  }
  out.status = PairStatus::Regular;
  return out;
}

const PairInfo& PairClassification::at(int i, int j) const {
  if (i > j) std::swap(i, j);
  if (i < 0 || j >= k || i == j) throw DomainError("pair index out of range");
  // Row-major over i < j.
  const std::size_t idx = static_cast<std::size_t>(i) * static_cast<std::size_t>(2 * k - i - 1) / 2 +
                          static_cast<std::size_t>(j - i - 1);
  if (idx >= pairs.size() || pairs[idx].i != i || pairs[idx].j != j) throw DomainError("pair not classified");
  return pairs[idx];
}

int PairClassification::irregular_count() const {
  return static_cast<int>(std::count_if(pairs.begin(), pairs.end(),
                                        [](const PairInfo& pi) { return pi.verdict.status == PairStatus::Irregular; }));
}

std::uint64_t pair_seed(std::uint64_t seed, int i, int j) {
  // SplitMix64 finaliser over the seed and the pair index.
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(i) * 0x100000001ULL + static_cast<std::uint64_t>(j) + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

PairClassification classify_pairs(const Graph& g, const Partition& P, int budget, std::uint64_t seed, int threads) {
  validate_partition(g, P);
  PairClassification cls;
  cls.k = P.size();
  for (int i = 0; i < cls.k; ++i)
    for (int j = i + 1; j < cls.k; ++j) cls.pairs.push_back(PairInfo{i, j, {}});
  parallel_for(cls.pairs.size(), threads, [&](std::size_t idx) {
    PairInfo& pi = cls.pairs[idx];
    pi.verdict = witness_irregular(g, P.parts[static_cast<std::size_t>(pi.i)], P.parts[static_cast<std::size_t>(pi.j)],
                                   P.epsilon, P.p, budget, pair_seed(seed, pi.i, pi.j));
  });
  return cls;
}

RefineResult refine(const Graph& g, const Partition& P, const PairClassification& cls, const RefineOptions& options) {
  validate_partition(g, P);
  if (cls.k != P.size()) throw DomainError("classification does not match the partition");
  const int n = g.order();
  RefineResult result;
  result.partition = P;
  if (cls.irregular_count() == 0) return result;

  // Witness sets touching each part.
  std::vector<std::vector<Bitset>> witnesses(P.parts.size());
  for (const PairInfo& pi : cls.pairs) {
    if (pi.verdict.status != PairStatus::Irregular) continue;
    witnesses[static_cast<std::size_t>(pi.i)].push_back(Bitset::of(n, pi.verdict.x_sub));
    witnesses[static_cast<std::size_t>(pi.j)].push_back(Bitset::of(n, pi.verdict.y_sub));
  }

  // Venn atoms in order of first appearance.
  std::vector<VertexList> atoms;
  for (std::size_t i = 0; i < P.parts.size(); ++i) {
    std::map<std::vector<bool>, std::size_t> index;
    std::vector<VertexList> local;
    for (Vertex v : P.parts[i]) {
      std::vector<bool> sig;
      for (const Bitset& w : witnesses[i]) sig.push_back(w.test(v));
      auto [it, inserted] = index.emplace(sig, local.size());
      if (inserted) local.emplace_back();
      local[it->second].push_back(v);
    }
    atoms.insert(atoms.end(), local.begin(), local.end());
  }

  std::size_t largest = 0;
  for (const auto& a : atoms) largest = std::max(largest, a.size());
  const int k_prev = P.size();
  const long long per_round = static_cast<long long>(std::ceil(1.0 / P.epsilon - 1e-12));
  const long long k_cap = k_prev >= 40 ? LLONG_MAX : (1LL << k_prev) * per_round;
  const double before = capped_energy(g, P, options.L);

  bool any_admissible = false;
  for (std::size_t s = largest; s >= 1; --s) {
    long long k_new = 0;
    std::size_t spill = 0;
    for (const auto& a : atoms) {
      k_new += static_cast<long long>(a.size() / s);
      spill += a.size() % s;
    }
    if (k_new == 0) continue;
    if (k_new > k_cap) break;  // smaller sizes only add parts
    if (static_cast<double>(P.exceptional.size() + spill) > P.epsilon * n) continue;
    any_admissible = true;
    Partition next;
    next.epsilon = P.epsilon;
    next.p = P.p;
    next.exceptional = P.exceptional;
    for (const auto& a : atoms) {
      const std::size_t whole = a.size() / s * s;
      for (std::size_t start = 0; start < whole; start += s) next.parts.emplace_back(a.begin() + static_cast<std::ptrdiff_t>(start), a.begin() + static_cast<std::ptrdiff_t>(start + s));
      next.exceptional.insert(next.exceptional.end(), a.begin() + static_cast<std::ptrdiff_t>(whole), a.end());
    }
    std::sort(next.exceptional.begin(), next.exceptional.end());
    if (options.require_energy_gain && capped_energy(g, next, options.L) < before) continue;
    result.partition = std::move(next);
    result.common_size = static_cast<int>(s);
    result.changed = true;
    return result;
  }
  if (!any_admissible) throw DomainError("exceptional overflow: no common part size keeps |V0| <= eps*n");
  result.stalled = true;
  return result;
}

RegularityRun sparse_regular_partition(const Graph& g, const RegularityOptions& options) {
  const double eps = options.epsilon;
  if (!(eps > 0.0 && eps < 0.5)) throw DomainError("epsilon must lie in (0, 1/2)");
  if (static_cast<double>(g.order()) < 1.0 / eps) throw DomainError("graph has fewer than 1/eps vertices");
  const int k = static_cast<int>(std::ceil(1.0 / eps - 1e-12));
  return sparse_regular_partition(g, Partition::equitable(g.order(), k, eps, options.p), options);
}

RegularityRun sparse_regular_partition(const Graph& g, const Partition& start, const RegularityOptions& options) {
  const double eps = options.epsilon;
  if (!(eps > 0.0 && eps < 0.5)) throw DomainError("epsilon must lie in (0, 1/2)");
  if (!(options.p > 0.0 && options.p <= 1.0)) throw DomainError("p must lie in (0, 1]");
  if (options.max_rounds < 1) throw DomainError("max_rounds must be at least 1");
  Partition P = start;
  P.epsilon = eps;
  P.p = options.p;
  validate_partition(g, P);

  RegularityRun run;
  for (int round = 1;; ++round) {
    run.rounds = round;
    run.classification = classify_pairs(g, P, options.trials, options.seed + static_cast<std::uint64_t>(round - 1),
                                        options.threads);
    run.energy_trace.push_back(capped_energy(g, P, options.L));
    run.literal_min_trace.push_back(literal_min_capped_energy(g, P, options.L));
    const int irregular = run.classification.irregular_count();
    run.irregular_trace.push_back(irregular);
    const double k = P.size();
    if (irregular <= eps * k * k) {
      run.converged = true;
      run.stop_reason = "regular";
      break;
    }
    if (round == options.max_rounds) {
      run.stop_reason = "max_rounds";
      break;
    }
    RefineResult next = refine(g, P, run.classification, RefineOptions{options.L, true});
    if (next.stalled || !next.changed) {
      run.stop_reason = "stalled";
      break;
    }
    P = std::move(next.partition);
  }
  run.partition = std::move(P);
  return run;
}

ClusterGraph cluster_graph(const Partition& P, const PairClassification& cls, double d) {
  if (cls.k != P.size() || cls.pairs.size() != static_cast<std::size_t>(cls.k) * static_cast<std::size_t>(cls.k - 1) / 2) {
    throw DomainError("classification does not cover every pair of parts");
  }
  ClusterGraph R;
  R.k = cls.k;
  R.degrees.assign(static_cast<std::size_t>(cls.k), 0);
  R.epsilon = P.epsilon;
  R.d = d;
  R.p = P.p;
  for (int i = 0; i < cls.k; ++i)
    for (int j = i + 1; j < cls.k; ++j) {
      const PairInfo& pi = cls.at(i, j);
      if (pi.verdict.status == PairStatus::Unknown) throw DomainError("pair left unclassified");
      if (pi.verdict.status == PairStatus::Regular && pi.verdict.density_p >= d) {
        R.edges.emplace_back(i, j);
        ++R.degrees[static_cast<std::size_t>(i)];
        ++R.degrees[static_cast<std::size_t>(j)];
      }
    }
  return R;
}

RegularPairParams pair_union_params(const RegularPairParams& ab, const RegularPairParams& ac) {
  return {std::max(ab.epsilon, ac.epsilon), std::min(ab.density, ac.density)};
}

RegularPairParams pair_restrict_params(const RegularPairParams& ab, double gamma) {
  if (!(gamma > ab.epsilon)) throw DomainError("restriction needs gamma > epsilon");
  return {ab.epsilon + ab.epsilon / gamma, ab.density - ab.epsilon};
}

EnergyBoundReport energy_bound_check(const Graph& g, const Partition& P, int s, int t) {
  if (s < 1 || t < s) throw DomainError("need 1 <= s <= t");
  EnergyBoundReport r;
  r.bound = std::ldexp(static_cast<double>(t), s) + 1.0;
  const int n = g.order();
  if (has_kst(g, s, t, {.allow_large_s = true})) {
    r.reason = "graph contains K_{s,t}";
    return r;
  }
  // |X| >= 2s n^{1/s}  <=>  |X|^s >= (2s)^s n.
  const BigInt need = boost::multiprecision::pow(BigInt(2 * s), static_cast<unsigned>(s)) * n;
  for (const auto& part : P.parts) {
    if (boost::multiprecision::pow(BigInt(part.size()), static_cast<unsigned>(s)) < need) {
      r.reason = "part of size " + std::to_string(part.size()) + " is below 2s*n^(1/s)";
      return r;
    }
  }
  r.applicable = true;
  if (s == 2) {
    const Rational exact = energy_p_exact(g, P, Rational(1) / n);
    r.energy_p_exact = exact;
    r.energy_p = to_double(exact);
    r.holds = exact <= Rational(static_cast<std::int64_t>(4 * t + 1));
  } else {
    r.energy_p = energy(g, P) * std::pow(static_cast<double>(n), 2.0 / s);
    r.holds = r.energy_p <= r.bound;
  }
  return r;
}

}  // namespace turanforge
