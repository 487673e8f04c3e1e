#include "oracles.hpp"

#include "turanforge/constructions.hpp"
#include "turanforge/detect.hpp"
#include "turanforge/errors.hpp"
#include "turanforge/graph_io.hpp"
#include "turanforge/turan.hpp"

#include <doctest.h>

#include <string>

using namespace turanforge;

namespace {

ForbiddenFamily fam(const char* text) { return ForbiddenFamily::parse(text); }

struct Best {
  std::int64_t value = 0;
  Graph witness;
};

// Among the optimal family-free graphs on the given slots that satisfy
// `admissible`, the one whose edge list is lexicographically least.
template <class Admissible>
Best brute_best(int order, const std::vector<Edge>& slots, const ForbiddenFamily& f, Admissible admissible) {
  const auto pats = oracle::pattern_graphs(f);
  const std::size_t s = slots.size();
  std::int64_t best_value = -1;
  std::uint64_t best_key = 0;
  Graph best_graph;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << s); ++mask) {
    const int e = std::popcount(mask);
    if (e < best_value) continue;
    std::vector<Edge> es;
    std::uint64_t key = 0;
    for (std::size_t i = 0; i < s; ++i) {
      if (mask >> i & 1U) {
        es.push_back(slots[i]);
        key |= std::uint64_t{1} << (s - 1 - i);
      }
    }
    const Graph g = Graph::from_edge_list(order, es);
    if (!oracle::family_free(g, pats) || !admissible(g)) continue;
    if (e > best_value || key > best_key) {
      best_value = e;
      best_key = key;
      best_graph = g;
    }
  }
  return {best_value, best_graph};
}

Best brute_ex_witness(int n, const ForbiddenFamily& f) {
  std::vector<Edge> slots;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) slots.emplace_back(a, b);
  return brute_best(n, slots, f, [](const Graph& g) {
    for (int v = 1; v < g.order(); ++v)
      if (g.degree(v) > g.degree(0)) return false;
    return true;
  });
}

// Row 0 carries the largest U-degree. The search also keeps rows 1.. and the
// columns sorted; the lexicographic optimum is sorted anyway, so this oracle
// does not impose it.
Best brute_z_witness(int m, int n, const ForbiddenFamily& f) {
  std::vector<Edge> slots;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < n; ++b) slots.emplace_back(a, m + b);
  return brute_best(m + n, slots, f, [m](const Graph& g) {
    for (int a = 1; a < m; ++a)
      if (g.degree(a) > g.degree(0)) return false;
    return true;
  });
}

}  // namespace

TEST_CASE("ex examples") {
  CHECK(ex_exact(5, fam("triangle")).value == 6);
  CHECK(ex_exact(5, fam("c4")).value == 6);
  CHECK(ex_exact(5, fam("triangle,c4")).value == 5);
  const auto r = ex_exact(5, fam("triangle,c4"));
  CHECK(r.exhaustive);
  CHECK(girth(r.witness) == 5);
  for (int v = 0; v < 5; ++v) CHECK(r.witness.degree(v) == 2);
  CHECK(ex_exact(1, fam("triangle")).value == 0);
  CHECK_THROWS_AS(ex_exact(0, fam("triangle")), DomainError);
  CHECK_THROWS_AS(ex_exact(65, fam("triangle")), DomainError);
}

TEST_CASE("z examples") {
  CHECK(z_exact(2, 2, fam("k{2,2}")).value == 3);
  CHECK(z_exact(3, 3, fam("k{2,2}")).value == 6);
  // The only K_{2,3} in K_{3,2} is the whole graph.
  CHECK(z_exact(3, 2, fam("k{2,3}")).value == 5);
}

TEST_CASE("z(7,7) for C_4 matches the incidence graph of the Fano plane") {
  const auto r = z_exact(7, 7, fam("k{2,2}"));
  CHECK(r.exhaustive);
  CHECK(r.value == 21);
  CHECK(r.value == projective_plane_incidence(2).graph().size());
  CHECK(count_c4(r.witness) == 0);
  CHECK(encode_graph6(r.witness) == "M???FAW`agHOK_J??");
}

TEST_CASE("ex matches brute force for n <= 6") {
  for (const char* f : {"triangle", "c4", "triangle,c4", "c5", "k{2,3}", "b1", "b2", "odd5", "k{1,3}", "triangle,k{2,3}"}) {
    for (int n = 1; n <= 6; ++n) {
      CAPTURE(f);
      CAPTURE(n);
      const auto r = ex_exact(n, fam(f));
      const auto b = brute_ex_witness(n, fam(f));
      CHECK(r.exhaustive);
      CHECK(r.value == b.value);
      CHECK(r.value == oracle::brute_ex(n, fam(f)));
      CHECK(r.witness == b.witness);
    }
  }
}

TEST_CASE("z matches brute force, including the witness choice") {
  for (const char* f : {"k{2,2}", "k{2,3}", "c6", "k{2,2},c6", "b1"}) {
    for (int m = 1; m <= 4; ++m)
      for (int n = 1; n <= 4; ++n) {
        CAPTURE(f);
        CAPTURE(m);
        CAPTURE(n);
        const auto r = z_exact(m, n, fam(f));
        const auto b = brute_z_witness(m, n, fam(f));
        CHECK(r.exhaustive);
        CHECK(r.value == b.value);
        CHECK(r.witness == b.witness);
      }
  }
}

TEST_CASE("monotonicity and z below ex") {
  const auto f = fam("k{2,2}");
  std::int64_t prev = 0;
  for (int n = 1; n <= 9; ++n) {
    const auto v = ex_exact(n, f).value;
    CHECK(v >= prev);
    prev = v;
  }
  for (int m = 1; m <= 4; ++m)
    for (int n = 1; n <= 4; ++n) {
      const auto z = z_exact(m, n, f).value;
      CHECK(z <= ex_exact(m + n, f).value);
      CHECK(z == z_exact(n, m, f).value);
      if (m > 1) CHECK(z >= z_exact(m - 1, n, f).value);
    }
}

TEST_CASE("turan numbers for triangles") {
  for (int n = 1; n <= 9; ++n) CHECK(ex_exact(n, fam("triangle")).value == n * n / 4);
}

TEST_CASE("results do not depend on the thread count") {
  for (int threads : {2, 4}) {
    const auto a = ex_exact(8, fam("c4"), {.budget = 100'000'000, .threads = 1});
    const auto b = ex_exact(8, fam("c4"), {.budget = 100'000'000, .threads = threads});
    CHECK(a.value == b.value);
    CHECK(a.witness == b.witness);
    CHECK(a.nodes_explored == b.nodes_explored);
    const auto c = z_exact(5, 5, fam("k{2,2}"), {.budget = 100'000'000, .threads = 1});
    const auto d = z_exact(5, 5, fam("k{2,2}"), {.budget = 100'000'000, .threads = threads});
    CHECK(c.witness == d.witness);
    CHECK(c.nodes_explored == d.nodes_explored);
  }
}

TEST_CASE("a tiny budget gives a valid non-exhaustive answer") {
  const auto r = ex_exact(10, fam("triangle"), {.budget = 5, .threads = 1});
  CHECK_FALSE(r.exhaustive);
  CHECK(r.value <= 25);
  CHECK(r.witness.size() == r.value);
  CHECK_FALSE(has_triangle(r.witness));
  CHECK_THROWS_AS(ex_exact(4, fam("triangle"), {.budget = 0, .threads = 1}), DomainError);
}

TEST_CASE("ratio table") {
  const auto rows = ratio_table(1, 6, fam("triangle,k{2,3}"), fam("k{2,3}"));
  REQUIRE(rows.size() == 6);
  CHECK_FALSE(rows[0].ratio.has_value());
  CHECK(rows[0].ex == 0);
  CHECK(rows[0].z == 0);
  CHECK(rows[4].ex == 5);
  CHECK(rows[4].z == 5);
  CHECK(*rows[4].ratio == doctest::Approx(1.0));
  for (const auto& r : rows) {
    if (r.ratio) CHECK(*r.ratio == doctest::Approx(static_cast<double>(r.ex) / static_cast<double>(r.z)));
  }
  const std::string csv = ratio_table_csv(rows);
  CHECK(csv.starts_with("n,ex,z,ratio,exhaustive,flag\n1,0,0,,true,ratio_undefined\n"));
  CHECK(csv.find("\n5,5,5,1.000000,true,\n") != std::string::npos);
}
