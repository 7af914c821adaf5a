#include <doctest.h>

#include <algorithm>
#include <random>

#include "helpers.hpp"
#include "sortnet/errors.hpp"
#include "sortnet/oracle.hpp"
#include "sortnet/random_instances.hpp"
#include "sortnet/treewidth.hpp"

using namespace sortnet;
using namespace sortnet::testing;

namespace {

// Reference treewidth: minimum over all elimination orders of the largest
// elimination degree, by brute force over permutations.
int brute_force_width(const Digraph& d) {
  const int n = d.vertex_count();
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  int best = n;
  do {
    auto adj = underlying_adjacency(d);
    int width = 0;
    for (int v : order) {
      auto neighbors = adj[v].to_vector();
      width = std::max(width, static_cast<int>(neighbors.size()));
      for (size_t i = 0; i < neighbors.size(); ++i)
        for (size_t j = i + 1; j < neighbors.size(); ++j) {
          adj[neighbors[i]].set(neighbors[j]);
          adj[neighbors[j]].set(neighbors[i]);
        }
      for (int u : neighbors) adj[u].reset(v);
      adj[v].clear();
    }
    best = std::min(best, width);
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

}  // namespace

TEST_CASE("single edge has width 1") {
  Digraph d(2, {"a", "b"});
  d.add_edge(0, 1);
  auto td = build_nice_tree_decomposition(d);
  CHECK(td.width == 1);
  CHECK(!check_nice_tree_decomposition(d, td).has_value());
}

TEST_CASE("trees have width 1") {
  std::mt19937 rng(101);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 2 + static_cast<int>(rng() % 7);
    Digraph d(n);
    for (int v = 1; v < n; ++v) {
      int parent = static_cast<int>(rng() % v);
      if (rng() % 2)
        d.add_edge(parent, v);
      else
        d.add_edge(v, parent);
    }
    auto td = build_nice_tree_decomposition(d);
    CHECK(td.width == 1);
    CHECK(!check_nice_tree_decomposition(d, td).has_value());
  }
}

TEST_CASE("exact width matches the brute force on random graphs") {
  std::mt19937 rng(103);
  for (int trial = 0; trial < 25; ++trial) {
    int n = 2 + static_cast<int>(rng() % 5);  // n <= 6 keeps n! tame
    Digraph d = random_digraph(rng, n, static_cast<int>(rng() % (2 * n + 1)));
    auto td = build_nice_tree_decomposition(d, TreewidthMode::Exact);
    CHECK(!check_nice_tree_decomposition(d, td).has_value());
    CHECK(td.width == brute_force_width(d));
    // Heuristic mode also yields a valid decomposition, possibly wider.
    auto heur = build_nice_tree_decomposition(d, TreewidthMode::MinFill);
    CHECK(!check_nice_tree_decomposition(d, heur).has_value());
    CHECK(heur.width >= td.width);
  }
}

TEST_CASE("exact mode refuses oversized graphs") {
  Digraph d(20);
  CHECK_THROWS_AS(build_nice_tree_decomposition(d, TreewidthMode::Exact, 13), ExactCapExceeded);
}

TEST_CASE("decomposition round trip through the text format") {
  Instance instance = example_spp_instance();
  auto td = build_nice_tree_decomposition(instance.graph);
  std::string text = serialize_tree_decomposition(td, instance.graph);
  auto parsed = parse_tree_decomposition(text, instance.graph);
  CHECK(!check_nice_tree_decomposition(instance.graph, parsed).has_value());
  CHECK(parsed.width >= td.width);
}

TEST_CASE("malformed decompositions are rejected") {
  Digraph d(2, {"a", "b"});
  d.add_edge(0, 1);
  CHECK_THROWS_AS(parse_tree_decomposition("bag x a\nbag y b\n", d), ValidationError);
  CHECK_THROWS_AS(parse_tree_decomposition("bag x a zzz\n", d), ValidationError);
  CHECK_THROWS_AS(parse_tree_decomposition("nonsense\n", d), ParseError);
}

TEST_CASE("dp solves the no-commodity instance trivially") {
  Digraph d(3);
  d.add_edge(0, 1);
  Instance instance{Variant::RSPP_PL, d, {}, 0, 2};
  auto td = build_nice_tree_decomposition(d);
  auto result = solve_twdp(instance, td);
  CHECK(result.yes);
}

TEST_CASE("example SPP instance through the dp: yes at 2, no at 1") {
  Instance instance = example_spp_instance(2);
  auto td = build_nice_tree_decomposition(instance.graph);
  auto yes = solve_twdp(instance, td);
  CHECK(yes.yes);
  REQUIRE(yes.solution.has_value());
  CHECK(validate_solution(instance, *yes.solution).valid);

  instance.target = 1;
  auto no = solve_twdp(instance, td);
  CHECK(!no.yes);
}

TEST_CASE("unsatisfiable commodities on trees are rejected at any target") {
  Digraph d(3, {"a", "b", "c"});
  d.add_edge(1, 0);  // b -> a
  d.add_edge(1, 2);  // b -> c; nothing reaches b
  Instance instance{Variant::RSPP_PL, d, {{0, 2, std::nullopt}}, 3, 2};
  auto td = build_nice_tree_decomposition(d);
  CHECK(td.width == 1);
  for (int t = 0; t <= 3; ++t) {
    instance.target = t;
    CHECK(!solve_twdp(instance, td).yes);
  }
}

TEST_CASE("dp agrees with the oracle on bounded random instances") {
  std::mt19937 rng(107);
  int done = 0;
  while (done < 60) {
    const Variant variant = (done % 2) ? Variant::SPP : Variant::RSPP_PL;
    const int n = 4 + static_cast<int>(rng() % 5);  // n <= 8
    const int p = 1 + static_cast<int>(rng() % 3);
    const int target = 1 + static_cast<int>(rng() % 2);
    Instance instance =
        random_bounded_instance(rng, n, 3, variant, target, p, 1 + static_cast<int>(rng() % 3));
    ++done;
    auto td = build_nice_tree_decomposition(instance.graph);
    CHECK(td.width <= 2);
    auto fast = solve_twdp(instance, td);
    auto slow = solve_exact(instance);
    REQUIRE(fast.yes == slow.has_value());
    if (fast.solution) CHECK(validate_solution(instance, *fast.solution).valid);
  }
}

TEST_CASE("forget tables are restrictions of their child tables") {
  // Structural inspection via a tiny instance: every candidate at a forget
  // node must arise from some child candidate by dropping the lost scope.
  // Exercised indirectly: dp decisions above; here check determinism.
  std::mt19937 rng(109);
  Instance instance = random_bounded_instance(rng, 6, 3, Variant::SPP, 1, 2, 2);
  auto td = build_nice_tree_decomposition(instance.graph);
  auto a = solve_twdp(instance, td);
  auto b = solve_twdp(instance, td);
  CHECK(a.yes == b.yes);
  if (a.solution && b.solution) CHECK(*a.solution == *b.solution);
}
