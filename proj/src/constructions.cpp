#include "turanforge/constructions.hpp"

#include "turanforge/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <tuple>

namespace turanforge {

namespace {

void require_gq_field(std::int64_t q) {
  if (q < 5) throw DomainError("q must be at least 5");
  if (!is_prime(q)) throw DomainError(std::to_string(q) + " is not prime");
  if (q % 3 != 2) throw DomainError(std::to_string(q) + " is not 2 mod 3");
}

std::int64_t vertex_index(std::int64_t q, int part, std::int64_t x1, std::int64_t x2) {
  return part * q * q + x1 * q + x2;
}

}  // namespace

MultiplierSet::MultiplierSet(std::int64_t q, int t) : q_(q), t_(t) {
  if (t < 1) throw DomainError("t must be at least 1");
  if (q < 5 || !is_prime(q)) throw DomainError("q must be a prime >= 5");
  const auto p = static_cast<std::size_t>(t + 2);
  upper_.assign(p * (p - 1) / 2, 0);
}

std::size_t MultiplierSet::slot(int i, int j) const {
  if (i < 0 || j < 0 || i >= parts() || j >= parts() || i == j) {
    throw DomainError("multiplier index (" + std::to_string(i) + "," + std::to_string(j) + ") out of range");
  }
  if (i > j) std::swap(i, j);
  return static_cast<std::size_t>(j) * static_cast<std::size_t>(j - 1) / 2 + static_cast<std::size_t>(i);
}

std::int64_t MultiplierSet::at(int i, int j) const {
  const std::int64_t m = upper_[slot(i, j)];
  if (i < j || m == 0) return m;
  return q_ - m;
}

void MultiplierSet::set(int i, int j, std::int64_t m) {
  m %= q_;
  if (m < 0) m += q_;
  upper_[slot(i, j)] = (i < j || m == 0) ? m : q_ - m;
}

std::vector<std::pair<int, int>> MultiplierSet::pair_order(int parts) {
  std::vector<std::pair<int, int>> out;
  for (int j = 1; j < parts; ++j)
    for (int i = 0; i < j; ++i) out.emplace_back(i, j);
  return out;
}

std::vector<std::string> multiplier_violations(const MultiplierSet& m) {
  const PrimeField f(m.q());
  std::vector<std::string> out;
  const int r = m.parts();
  auto name = [](int i, int j) { return "m(" + std::to_string(i) + "," + std::to_string(j) + ")"; };
  for (const auto& [i, j] : MultiplierSet::pair_order(r)) {
    if (m.at(i, j) == 0) out.push_back(name(i, j) + " is zero");
  }
  if (!out.empty()) return out;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      for (int k = 0; k < r; ++k) {
        if (i == j || j == k || i == k) continue;
        const std::int64_t a = m.at(i, j), b = m.at(j, k), c = m.at(k, i);
        const std::int64_t prod = f.neg(f.mul(f.mul(a, b), f.mul(c, f.add(f.add(a, b), c))));
        if (quadratic_character(f, prod) != CharacterValue::NonResidue) {
          out.push_back("triangle condition fails for (" + std::to_string(i) + "," + std::to_string(j) + "," +
                        std::to_string(k) + ")");
        }
        if (b == f.neg(c)) {
          out.push_back(name(j, k) + " = -" + name(k, i));
        }
      }
  return out;
}

std::string multipliers_to_json(const MultiplierSet& m) {
  nlohmann::json entries = nlohmann::json::array();
  for (int i = 0; i < m.parts(); ++i)
    for (int j = i + 1; j < m.parts(); ++j) entries.push_back({{"i", i}, {"j", j}, {"m", m.at(i, j)}});
  nlohmann::json doc = {{"q", m.q()}, {"t", m.t()}, {"entries", entries}};
  return doc.dump();
}

MultiplierSet multipliers_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
    MultiplierSet m(doc.at("q").get<std::int64_t>(), doc.at("t").get<int>());
    for (const auto& e : doc.at("entries")) m.set(e.at("i").get<int>(), e.at("j").get<int>(), e.at("m").get<std::int64_t>());
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("multiplier JSON: ") + e.what());
  }
}

namespace {

class Backtracker {
 public:
  Backtracker(std::int64_t q, int t, std::int64_t budget)
      : field_(q), set_(q, t), order_(MultiplierSet::pair_order(t + 2)), budget_(budget) {}

  MultiplierSearch run() {
    MultiplierSearch out;
    set_.set(0, 1, 1);
    const bool ok = extend(1);
    out.steps = steps_;
    if (ok) {
      out.status = SearchStatus::Found;
      out.multipliers = set_;
    } else {
      out.status = exhausted_ ? SearchStatus::BudgetExhausted : SearchStatus::NotFound;
    }
    return out;
  }

 private:
  // Pair condition at apex k: m(k,i) != m(k,j) for all other i, j.
  bool consistent(int i, int j) const {
    for (const auto& [a, b] : order_) {
      if (set_.at(a, b) == 0 || (a == i && b == j)) continue;
      if (a != i && a != j && b != i && b != j) continue;
      const int apex = (a == i || a == j) ? a : b;
      const int other_new = apex == i ? j : i;
      const int other_old = apex == a ? b : a;
      if (other_old == other_new) continue;
      if (set_.at(apex, other_new) == set_.at(apex, other_old)) return false;
    }
    for (int k = 0; k < set_.parts(); ++k) {
      if (k == i || k == j) continue;
      const std::int64_t b = set_.at(j, k), c = set_.at(k, i);
      if (b == 0 || c == 0) continue;
      const std::int64_t a = set_.at(i, j);
      const std::int64_t prod =
          field_.neg(field_.mul(field_.mul(a, b), field_.mul(c, field_.add(field_.add(a, b), c))));
      if (quadratic_character(field_, prod) != CharacterValue::NonResidue) return false;
    }
    return true;
  }

  bool extend(std::size_t idx) {
    if (idx == order_.size()) return true;
    const auto [i, j] = order_[idx];
    for (std::int64_t v = 1; v < field_.order(); ++v) {
      if (steps_ >= budget_) {
        exhausted_ = true;
        return false;
      }
      ++steps_;
      set_.set(i, j, v);
      if (consistent(i, j) && extend(idx + 1)) return true;
      if (exhausted_) break;
    }
    set_.set(i, j, 0);
    return false;
  }

  PrimeField field_;
  MultiplierSet set_;
  std::vector<std::pair<int, int>> order_;
  std::int64_t budget_;
  std::int64_t steps_ = 0;
  bool exhausted_ = false;
};

MultiplierSearch greedy_multipliers(std::int64_t q, int t, std::int64_t budget) {
  const PrimeField f(q);
  const int parts = t + 2;
  const std::size_t total = static_cast<std::size_t>(parts * (parts - 1) / 2);
  MultiplierSearch out;
  std::vector<std::int64_t> labels;
  auto excluded = [&](std::int64_t cand) {
    return std::any_of(labels.begin(), labels.end(), [&](std::int64_t m) { return cand == m || cand == f.neg(m); });
  };
  for (std::int64_t x = 1; x <= (q - 1) / 2 && labels.size() < total; ++x) {
    if (out.steps >= budget) {
      out.status = SearchStatus::BudgetExhausted;
      return out;
    }
    ++out.steps;
    const std::int64_t cand = f.mul(x, x);
    if (excluded(cand)) continue;
    bool fits = true;
    if (labels.size() >= 2) {
      for (std::size_t a = 0; a < labels.size() && fits; ++a)
        for (std::size_t b = a + 1; b < labels.size() && fits; ++b) {
          const std::int64_t s = f.neg(f.add(f.add(labels[a], labels[b]), cand));
          fits = quadratic_character(f, s) == CharacterValue::NonResidue;
        }
    }
    if (fits) labels.push_back(cand);
  }
  if (labels.size() < total) {
    out.status = SearchStatus::NotFound;
    return out;
  }
  // Labels go to pairs in lexicographic (i, j) order.
  MultiplierSet m(q, t);
  std::size_t next = 0;
  for (int i = 0; i < parts; ++i)
    for (int j = i + 1; j < parts; ++j) m.set(i, j, labels[next++]);
  if (!is_valid(m)) {
    out.status = SearchStatus::NotFound;
    return out;
  }
  out.status = SearchStatus::Found;
  out.multipliers = m;
  return out;
}

}  // namespace

MultiplierSearch find_multipliers(std::int64_t q, int t, MultiplierStrategy strategy, std::int64_t budget) {
  if (q < 5 || !is_prime(q)) throw DomainError("q must be a prime >= 5");
  if (t < 1) throw DomainError("t must be at least 1");
  MultiplierSearch out =
      strategy == MultiplierStrategy::Backtracking ? Backtracker(q, t, budget).run() : greedy_multipliers(q, t, budget);
  if (out.multipliers && !is_valid(*out.multipliers)) {
    throw InvariantViolation("multiplier search returned an invalid set");
  }
  return out;
}

PartLabeledGraph build_gq(std::int64_t q) {
  require_gq_field(q);
  const PrimeField f(q);
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(3 * q * q * (q - 1)));
  for (int part = 0; part < 3; ++part) {
    const int next = (part + 1) % 3;
    for (std::int64_t x1 = 0; x1 < q; ++x1)
      for (std::int64_t x2 = 0; x2 < q; ++x2)
        for (std::int64_t a = 1; a < q; ++a) {
          const std::int64_t y1 = f.sub(x1, a), y2 = f.sub(x2, f.mul(a, a));
          edges.emplace_back(static_cast<Vertex>(vertex_index(q, part, x1, x2)),
                             static_cast<Vertex>(vertex_index(q, next, y1, y2)));
        }
  }
  std::vector<VertexList> parts(3);
  for (int p = 0; p < 3; ++p)
    for (std::int64_t k = 0; k < q * q; ++k) parts[static_cast<std::size_t>(p)].push_back(static_cast<Vertex>(p * q * q + k));
  return PartLabeledGraph(Graph::from_edge_list(static_cast<int>(3 * q * q), edges), std::move(parts));
}

PartLabeledGraph build_gqt(const MultiplierSet& m) {
  const auto problems = multiplier_violations(m);
  if (!problems.empty()) throw DomainError("invalid multipliers: " + problems.front());
  const std::int64_t q = m.q();
  const PrimeField f(q);
  const int r = m.parts();
  const std::int64_t n = r * q * q;
  if (n > 400000) throw DomainError("graph too large to materialize");
  std::vector<Edge> edges;
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) {
      const std::int64_t mij = m.at(i, j);
      for (std::int64_t x1 = 0; x1 < q; ++x1)
        for (std::int64_t x2 = 0; x2 < q; ++x2)
          for (std::int64_t c = 1; c < q; ++c) {
            const std::int64_t y1 = f.sub(x1, f.mul(mij, c)), y2 = f.sub(x2, f.mul(mij, f.mul(c, c)));
            edges.emplace_back(static_cast<Vertex>(vertex_index(q, i, x1, x2)),
                               static_cast<Vertex>(vertex_index(q, j, y1, y2)));
          }
    }
  std::vector<VertexList> parts(static_cast<std::size_t>(r));
  for (int p = 0; p < r; ++p)
    for (std::int64_t k = 0; k < q * q; ++k) parts[static_cast<std::size_t>(p)].push_back(static_cast<Vertex>(p * q * q + k));
  return PartLabeledGraph(Graph::from_edge_list(static_cast<int>(n), edges), std::move(parts));
}

BipartiteGraph projective_plane_incidence(std::int64_t q) {
  if (!is_prime(q)) throw DomainError(std::to_string(q) + " is not prime");
  std::vector<std::array<std::int64_t, 3>> pts;
  for (std::int64_t a = 0; a < q; ++a)
    for (std::int64_t b = 0; b < q; ++b)
      for (std::int64_t c = 0; c < q; ++c) {
        const std::int64_t lead = a != 0 ? a : (b != 0 ? b : c);
        if (lead == 1) pts.push_back({a, b, c});
      }
  const int n = static_cast<int>(pts.size());
  std::vector<Edge> edges;
  for (int p = 0; p < n; ++p)
    for (int l = 0; l < n; ++l) {
      const auto& x = pts[static_cast<std::size_t>(p)];
      const auto& y = pts[static_cast<std::size_t>(l)];
      if ((x[0] * y[0] + x[1] * y[1] + x[2] * y[2]) % q == 0) edges.emplace_back(p, n + l);
    }
  VertexList left, right;
  for (int v = 0; v < n; ++v) {
    left.push_back(v);
    right.push_back(n + v);
  }
  return BipartiteGraph(Graph::from_edge_list(2 * n, edges), std::move(left), std::move(right));
}

double density_ratio(int t) {
  if (t < 1) throw DomainError("t must be at least 1");
  return (t + 1) / std::sqrt(static_cast<double>(t) * (t + 2));
}

bool gqt_adjacent(const PrimeField& f, const MultiplierSet& m, int a, std::int64_t x1, std::int64_t x2, int b,
                  std::int64_t y1, std::int64_t y2) {
  if (a == b) return false;
  // x - y = m (c, c^2) with c != 0  <=>  d1 != 0 and m d2 = d1^2.
  const std::int64_t d1 = f.sub(x1, y1), d2 = f.sub(x2, y2);
  return d1 != 0 && f.mul(m.at(a, b), d2) == f.mul(d1, d1);
}

GqtAudit audit_gqt(const MultiplierSet& m) {
  const auto problems = multiplier_violations(m);
  if (!problems.empty()) throw DomainError("invalid multipliers: " + problems.front());
  const std::int64_t q = m.q();
  const PrimeField f(q);
  const int r = m.parts();
  GqtAudit out;
  out.vertices = r * q * q;

  struct Point {
    int part;
    std::int64_t x1, x2;
  };
  auto origin_neighbours = [&](int i, int j) {
    std::vector<Point> nb;
    for (std::int64_t c = 1; c < q; ++c) {
      const std::int64_t mij = m.at(i, j);
      nb.push_back({j, f.neg(f.mul(mij, c)), f.neg(f.mul(mij, f.mul(c, c)))});
    }
    return nb;
  };

  std::int64_t degree_sum = 0;
  for (int i = 0; i < r; ++i) {
    std::vector<Point> nb;
    for (int j = 0; j < r; ++j) {
      if (j == i) continue;
      auto part = origin_neighbours(i, j);
      nb.insert(nb.end(), part.begin(), part.end());
    }
    std::sort(nb.begin(), nb.end(), [](const Point& a, const Point& b) {
      return std::tie(a.part, a.x1, a.x2) < std::tie(b.part, b.x1, b.x2);
    });
    const bool distinct = std::adjacent_find(nb.begin(), nb.end(), [](const Point& a, const Point& b) {
                            return a.part == b.part && a.x1 == b.x1 && a.x2 == b.x2;
                          }) == nb.end();
    if (!distinct) throw InvariantViolation("repeated neighbour of a part origin");
    degree_sum += static_cast<std::int64_t>(nb.size()) * q * q;

    for (std::size_t a = 0; a < nb.size() && out.triangle_free; ++a)
      for (std::size_t b = a + 1; b < nb.size(); ++b) {
        if (gqt_adjacent(f, m, nb[a].part, nb[a].x1, nb[a].x2, nb[b].part, nb[b].x1, nb[b].x2)) {
          out.triangle_free = false;
          break;
        }
      }

    // Common neighbours of the origin and every other vertex, via wedges.
    std::map<std::int64_t, int> wedges;
    for (const Point& y : nb) {
      for (int k = 0; k < r; ++k) {
        if (k == y.part) continue;
        const std::int64_t mk = m.at(y.part, k);
        for (std::int64_t c = 1; c < q; ++c) {
          const std::int64_t w1 = f.sub(y.x1, f.mul(mk, c)), w2 = f.sub(y.x2, f.mul(mk, f.mul(c, c)));
          if (k == i && w1 == 0 && w2 == 0) continue;
          ++wedges[vertex_index(q, k, w1, w2)];
        }
      }
    }
    for (const auto& [w, count] : wedges) out.max_codegree = std::max(out.max_codegree, count);
  }
  out.edges = degree_sum / 2;
  return out;
}

}  // namespace turanforge
