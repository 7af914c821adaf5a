#include <doctest.h>

#include <random>
#include <set>

#include "helpers.hpp"
#include "sortnet/errors.hpp"
#include "sortnet/oracle.hpp"
#include "sortnet/random_instances.hpp"
#include "sortnet/spp_commodities.hpp"

using namespace sortnet;
using namespace sortnet::testing;

namespace {

// Straight routed chain s -> m1 -> ... -> t as a one-commodity instance.
Instance chain_instance(int interior, int target) {
  const int n = interior + 2;
  Digraph d(n);
  std::vector<int> route(n);
  for (int v = 0; v + 1 < n; ++v) d.add_edge(v, v + 1);
  for (int v = 0; v < n; ++v) route[v] = v;
  return Instance{Variant::SPP, d, {{0, n - 1, route}}, target, std::nullopt};
}

}  // namespace

TEST_CASE("kernel of a terminal-only instance is isomorphic to it") {
  Digraph d(2, {"s", "t"});
  d.add_edge(0, 1);
  Instance instance{Variant::SPP, d, {{0, 1, std::vector<int>{0, 1}}}, 1, std::nullopt};
  Instance kernel = kernelize_spp_t1(instance);
  CHECK(kernel == instance);
}

TEST_CASE("kernel collapses interior route vertices") {
  Instance instance = chain_instance(1, 1);  // s -> a -> t
  Instance kernel = kernelize_spp_t1(instance);
  CHECK(kernel.graph.vertex_count() == 2);
  CHECK(kernel.graph.edge_count() == 1);
  REQUIRE(kernel.commodities.size() == 1);
  CHECK(*kernel.commodities[0].route == std::vector<int>{0, 1});
}

TEST_CASE("kernel preserves the decision on random instances") {
  std::mt19937 rng(61);
  for (int trial = 0; trial < 120; ++trial) {
    RandomInstanceSpec spec;
    spec.vertices = 3 + static_cast<int>(rng() % 5);  // n <= 7
    spec.edges = static_cast<int>(rng() % (2 * spec.vertices + 1));
    spec.commodities = 1 + static_cast<int>(rng() % 3);
    spec.variant = Variant::SPP;
    spec.target = 1;
    Instance instance = random_instance(rng, spec);
    Instance kernel = kernelize_spp_t1(instance);
    CHECK(kernel.graph.vertex_count() <= 2 * static_cast<int>(instance.commodities.size()));
    CHECK(solve_exact(instance).has_value() == solve_exact(kernel).has_value());
  }
}

TEST_CASE("a single long route encloses its middle vertex") {
  const int q = 1;
  Instance instance = chain_instance(2 * q + 1, 2);
  auto witnesses = find_q_enclosed(instance, q);
  bool middle_found = false;
  for (const auto& w : witnesses) middle_found |= (w.center == 2);
  CHECK(middle_found);
  CHECK(is_q_enclosed(instance, q, 2));
}

TEST_CASE("opposite-direction shared segments still enclose") {
  // Route A runs s -> m1 -> m2 -> m3 -> t, route B runs the segment
  // backwards: s' -> m3 -> m2 -> m1 -> t'.
  Digraph d(7, {"s", "m1", "m2", "m3", "t", "s2", "t2"});
  d.add_edge(0, 1);
  d.add_edge(1, 2);
  d.add_edge(2, 3);
  d.add_edge(3, 4);
  d.add_edge(5, 3);
  d.add_edge(3, 2);
  d.add_edge(2, 1);
  d.add_edge(1, 6);
  std::vector<Commodity> ks = {{0, 4, std::vector<int>{0, 1, 2, 3, 4}},
                               {5, 6, std::vector<int>{5, 3, 2, 1, 6}}};
  Instance instance{Variant::SPP, d, ks, 2, std::nullopt};
  // m1, m2, m3 all have type {0, 1}; the middle m2 is 1-enclosed.
  CHECK(is_q_enclosed(instance, 1, 2));
}

TEST_CASE("find_q_enclosed agrees with an independent subset filter") {
  std::mt19937 rng(67);
  for (int trial = 0; trial < 30; ++trial) {
    RandomInstanceSpec spec;
    spec.vertices = 5 + static_cast<int>(rng() % 6);  // n <= 10
    spec.edges = 2 * spec.vertices;
    spec.commodities = 1 + static_cast<int>(rng() % 2);
    spec.variant = Variant::SPP;
    spec.target = 2;
    Instance instance = random_instance(rng, spec);
    const int q = 1;
    auto witnesses = find_q_enclosed(instance, q);
    std::set<int> centers;
    for (const auto& w : witnesses) centers.insert(w.center);

    // Independent filter: for every vertex and every type class, scan raw
    // position triples directly.
    auto types = vertex_types(instance);
    std::set<int> expected;
    for (int v = 0; v < instance.graph.vertex_count(); ++v) {
      if (types[v].empty()) continue;
      std::vector<int> classmates;
      for (int u = 0; u < instance.graph.vertex_count(); ++u)
        if (types[u] == types[v]) classmates.push_back(u);
      const auto& ref = *instance.commodities[types[v].front()].route;
      std::vector<int> pos(instance.graph.vertex_count(), -1);
      for (size_t i = 0; i < ref.size(); ++i) pos[ref[i]] = static_cast<int>(i);
      for (int a : classmates)
        for (int b : classmates) {
          if (a == b || a == v || b == v) continue;
          if (!(pos[a] < pos[v] && pos[v] < pos[b])) continue;
          bool all_consistent = true;
          for (int ci : types[v]) {
            const auto& route = *instance.commodities[ci].route;
            std::vector<int> rp(instance.graph.vertex_count(), -1);
            for (size_t i = 0; i < route.size(); ++i) rp[route[i]] = static_cast<int>(i);
            bool inc = rp[a] < rp[v] && rp[v] < rp[b];
            bool dec = rp[a] > rp[v] && rp[v] > rp[b];
            if (!inc && !dec) all_consistent = false;
          }
          if (all_consistent) expected.insert(v);
        }
    }
    CHECK(centers == expected);
  }
}

TEST_CASE("ramsey marking with a single commodity and exact-size bound") {
  const int q = 1;
  Instance instance = chain_instance(2 * q + 3, 2);  // 5 interior + terminals
  // Interior vertices share the type {0}; terminals too (endpoints are on
  // the route). The full class has 7 members.
  auto witnesses =
      ramsey_mark(instance, q, [](int64_t, int64_t) { return int64_t{7}; });
  REQUIRE(witnesses.size() >= 1);
  for (const auto& w : witnesses) CHECK(is_q_enclosed(instance, q, w.center));
}

TEST_CASE("ramsey marking leaves small classes alone") {
  // Class size 4 < bound(1 label, chain 5) = 5: the loop never fires.
  Instance instance = chain_instance(2, 2);
  auto witnesses = ramsey_mark(instance, 2, default_ramsey_bound);
  CHECK(witnesses.empty());
}

TEST_CASE("default ramsey bound is sane for tiny parameters") {
  CHECK(default_ramsey_bound(1, 5) == 5);
  CHECK(default_ramsey_bound(2, 3) == 64);  // 2^(2*3)
  CHECK(default_ramsey_bound(64, 31) > 1000000);
}

TEST_CASE("smd with no flexible vertices matches the plain oracle") {
  std::mt19937 rng(71);
  for (int trial = 0; trial < 40; ++trial) {
    RandomInstanceSpec spec;
    spec.vertices = 3 + static_cast<int>(rng() % 4);
    spec.edges = static_cast<int>(rng() % (2 * spec.vertices));
    spec.commodities = 1 + static_cast<int>(rng() % 2);
    spec.variant = Variant::SPP;
    spec.target = static_cast<int>(rng() % 3);
    Instance instance = random_instance(rng, spec);
    SmdInstance smd{instance.graph, std::vector<bool>(instance.graph.vertex_count(), false),
                    instance.commodities, instance.target};
    CHECK(solve_smd_spp(smd).has_value() == solve_exact(instance).has_value());
  }
}

TEST_CASE("smd with every vertex flexible only needs reachability") {
  Instance instance = chain_instance(3, 0);
  SmdInstance smd{instance.graph, std::vector<bool>(instance.graph.vertex_count(), true),
                  instance.commodities, 0};
  auto h = solve_smd_spp(smd);
  REQUIRE(h.has_value());
  CHECK(smd_valid(smd, *h));
}

TEST_CASE("regression: flexible interior vertices can carry shared sources") {
  // Two routes from one source diverge through flexible interiors and meet
  // again; with target 1 the only solutions route through the shared
  // flexible joint.
  Digraph d(6, {"s", "u1", "u2", "w", "t1", "t2"});
  d.add_edge(0, 1);
  d.add_edge(0, 2);
  d.add_edge(1, 3);
  d.add_edge(2, 3);
  d.add_edge(3, 4);
  d.add_edge(3, 5);
  std::vector<Commodity> ks = {{0, 4, std::vector<int>{0, 1, 3, 4}},
                               {0, 5, std::vector<int>{0, 2, 3, 5}}};
  SmdInstance smd;
  smd.graph = d;
  smd.flexible = {false, true, true, true, false, false};
  smd.commodities = ks;
  smd.target = 1;
  auto fast = solve_smd_spp(smd);
  REQUIRE(fast.has_value());
  CHECK(smd_valid(smd, *fast));
  auto slow = smd_decide_by_edge_subsets(smd);
  CHECK(slow.has_value());
}

TEST_CASE("smd decision equals the subgraph brute force on random inputs") {
  std::mt19937 rng(73);
  int done = 0;
  while (done < 40) {
    RandomInstanceSpec spec;
    spec.vertices = 3 + static_cast<int>(rng() % 4);  // n <= 6
    spec.edges = static_cast<int>(rng() % (2 * spec.vertices));
    spec.commodities = 1 + static_cast<int>(rng() % 2);
    spec.variant = Variant::SPP;
    Instance instance = random_instance(rng, spec);
    if (transitive_closure(instance.graph).edge_count() > 15) continue;
    ++done;
    SmdInstance smd;
    smd.graph = instance.graph;
    smd.commodities = instance.commodities;
    smd.target = static_cast<int>(rng() % 3);
    smd.flexible.assign(instance.graph.vertex_count(), false);
    for (int v = 0; v < instance.graph.vertex_count(); ++v) smd.flexible[v] = rng() % 3 == 0;
    bool fast = solve_smd_spp(smd).has_value();
    bool slow = smd_decide_by_edge_subsets(smd).has_value();
    REQUIRE(fast == slow);
  }
}

TEST_CASE("pipeline delegates small graphs to the oracle") {
  std::mt19937 rng(79);
  for (int trial = 0; trial < 60; ++trial) {
    RandomInstanceSpec spec;
    spec.vertices = 3 + static_cast<int>(rng() % 3);  // n <= 5
    spec.edges = static_cast<int>(rng() % (2 * spec.vertices));
    spec.commodities = 1 + static_cast<int>(rng() % 2);
    spec.variant = Variant::SPP;
    spec.target = static_cast<int>(rng() % 3);
    Instance instance = random_instance(rng, spec);
    auto result = solve_spp_by_commodities(instance);
    CHECK(result.yes == solve_exact(instance).has_value());
    if (result.solution) CHECK(validate_solution(instance, *result.solution).valid);
  }
}

TEST_CASE("example instance decided through the pipeline at target 2") {
  Instance instance = example_spp_instance(2);
  auto result = solve_spp_by_commodities(instance);
  CHECK(result.yes);
  REQUIRE(result.solution.has_value());
  CHECK(validate_solution(instance, *result.solution).valid);
}

TEST_CASE("pipeline exercises the marking route under a test-size bound") {
  // A long single-commodity chain: with the override bound the class gets
  // marked, and the flexible search must still reach the right decision.
  Instance instance = chain_instance(12, 2);
  auto ram = [](int64_t, int64_t clique) { return clique; };
  // q for k=1, T=2 is ceil(3 * 2) = 6, so 2q+1 = 13 <= 14 class members.
  auto result = solve_spp_by_commodities(instance, {}, ram);
  CHECK(result.yes == solve_exact(instance).has_value());
  if (result.solution) CHECK(validate_solution(instance, *result.solution).valid);

  auto witnesses = ramsey_mark(instance, 6, ram);
  for (const auto& w : witnesses) CHECK(is_q_enclosed(instance, 6, w.center));
}
