#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "sortnet/errors.hpp"
#include "sortnet/instance.hpp"
#include "sortnet/oracle.hpp"
#include "sortnet/random_instances.hpp"

using namespace sortnet;
using namespace sortnet::testing;

TEST_CASE("empty instance validates with empty solution at target 0") {
  Instance instance{Variant::RSPP, Digraph(3), {}, 0, std::nullopt};
  auto report = validate_solution(instance, Digraph(3));
  CHECK(report.valid);
  CHECK(report.max_outdegree == 0);
}

TEST_CASE("example SPP instance accepts an oracle solution at target 2") {
  Instance instance = example_spp_instance(2);
  auto cover = solve_exact(instance);
  REQUIRE(cover.has_value());
  Digraph h = cover_union(instance, *cover);
  auto report = validate_solution(instance, h);
  CHECK(report.valid);
  CHECK(report.max_outdegree <= 2);
}

TEST_CASE("example RSPP instance: outdegree-one chain is valid at target 1") {
  Instance instance = example_rspp_instance(1);
  Digraph h(6, instance.graph.labels());
  h.add_edge(0, 2);  // v1 -> v3
  h.add_edge(2, 5);  // v3 -> v6
  h.add_edge(5, 3);  // v6 -> v4
  h.add_edge(3, 1);  // v4 -> v2
  h.add_edge(1, 4);  // v2 -> v5 (closure edge via v3)
  auto report = validate_solution(instance, h);
  CHECK(report.valid);
  CHECK(h.max_out_degree() == 1);
}

TEST_CASE("validator flags closure violations and degree offenders") {
  Instance instance = example_rspp_instance(1);
  Digraph h(6, instance.graph.labels());
  h.add_edge(4, 0);  // v5 -> v1 is not in the closure
  auto report = validate_solution(instance, h);
  CHECK(!report.is_subgraph_of_closure);
  CHECK(!report.valid);

  Digraph g(6, instance.graph.labels());
  g.add_edge(2, 3);
  g.add_edge(2, 4);
  auto r2 = validate_solution(instance, g);
  CHECK(r2.offending_vertices == std::vector<int>{2});
}

TEST_CASE("RSPP_PL validation distinguishes base-path lengths") {
  // Route s->a->b->t exists, but with p = 2 the only base paths are too long
  // once the direct closure shortcut needs a 3-edge base path.
  Digraph d(4, {"s", "a", "b", "t"});
  d.add_edge(0, 1);
  d.add_edge(1, 2);
  d.add_edge(2, 3);
  Instance pl{Variant::RSPP_PL, d, {{0, 3, std::nullopt}}, 1, 2};
  Digraph h(4, d.labels());
  h.add_edge(0, 3);
  CHECK(!validate_solution(pl, h).valid);
  pl.path_length = 3;
  CHECK(validate_solution(pl, h).valid);
}

TEST_CASE("validator is monotone in the target") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    Instance instance = random_instance(rng, {6, 9, 2, Variant::RSPP, 3, 2});
    Digraph h = instance.graph;
    for (int t = 0; t <= 3; ++t) {
      instance.target = t;
      if (validate_solution(instance, h).valid) {
        instance.target = t + 1;
        CHECK(validate_solution(instance, h).valid);
      }
    }
  }
}

TEST_CASE("every legal path cover union satisfies all commodities") {
  std::mt19937 rng(29);
  for (int trial = 0; trial < 40; ++trial) {
    Variant variant = trial % 2 ? Variant::SPP : Variant::RSPP;
    Instance instance = random_instance(rng, {5, 7, 2, variant, 4, 2});
    OracleConfig cfg;
    std::vector<std::vector<std::vector<int>>> options;
    bool empty = false;
    for (size_t i = 0; i < instance.commodities.size(); ++i) {
      options.push_back(enumerate_witnesses(instance, static_cast<int>(i), cfg));
      empty |= options.back().empty();
    }
    if (empty) continue;
    PathCover cover;
    for (auto& opts : options) cover.witnesses.push_back(opts[rng() % opts.size()]);
    instance.target = instance.graph.vertex_count();  // only satisfaction matters here
    auto report = validate_solution(instance, cover_union(instance, cover));
    CHECK(report.unsatisfied_commodities.empty());
  }
}

TEST_CASE("trivial yes check covers both observation bounds") {
  Instance instance = example_rspp_instance(1);
  // Target equals the max outdegree of D: the graph itself works.
  instance.target = instance.graph.max_out_degree();
  auto h = trivial_yes_check(instance);
  REQUIRE(h.has_value());
  CHECK(*h == instance.graph);
  CHECK(validate_solution(instance, *h).valid);

  // No commodities and target 0: empty solution.
  Instance empty{Variant::RSPP, Digraph(2), {}, 0, std::nullopt};
  auto he = trivial_yes_check(empty);
  REQUIRE(he.has_value());
  CHECK(he->edge_count() == 0);
}

TEST_CASE("trivial yes check is sufficient but not necessary") {
  // Below both bounds the check returns nothing, yet the instance is YES.
  Digraph d(3, {"s", "a", "t"});
  d.add_edge(0, 1);
  d.add_edge(0, 2);  // delta+ = 2
  Instance instance{Variant::RSPP, d, {{0, 2, std::nullopt}}, 1, std::nullopt};
  CHECK(max_commodities_per_source(instance) == 1);
  // target 1 >= 1 commodity per source, so this configuration actually fires;
  // drop to target 0 for the negative branch.
  instance.target = 0;
  CHECK(!trivial_yes_check(instance).has_value());
  instance.target = 1;
  auto h = trivial_yes_check(instance);
  REQUIRE(h.has_value());
  CHECK(validate_solution(instance, *h).valid);
  CHECK(solve_exact(instance).has_value());
}

TEST_CASE("instance invariants are enforced") {
  Digraph d(3, {"a", "b", "c"});
  d.add_edge(0, 1);
  Instance bad{Variant::SPP, d, {{0, 1, std::nullopt}}, 1, std::nullopt};
  CHECK_THROWS_AS(check_instance(bad), ValidationError);

  Instance self{Variant::RSPP, d, {{1, 1, std::nullopt}}, 1, std::nullopt};
  CHECK_THROWS_AS(check_instance(self), ValidationError);

  Instance no_pl{Variant::RSPP_PL, d, {{0, 1, std::nullopt}}, 1, std::nullopt};
  CHECK_THROWS_AS(check_instance(no_pl), ValidationError);

  Instance broken_route{Variant::SPP, d, {{0, 2, std::vector<int>{0, 2}}}, 1, std::nullopt};
  CHECK_THROWS_AS(check_instance(broken_route), ValidationError);
}
