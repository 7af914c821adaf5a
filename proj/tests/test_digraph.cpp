#include <doctest.h>

#include <algorithm>
#include <random>

#include "helpers.hpp"
#include "sortnet/digraph.hpp"
#include "sortnet/errors.hpp"

using namespace sortnet;
using namespace sortnet::testing;

namespace {

// Independent reachability oracle: repeated single-source BFS on adjacency
// lists, no bitsets.
std::vector<std::vector<bool>> bfs_reachability(const Digraph& d) {
  const int n = d.vertex_count();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (int s = 0; s < n; ++s) {
    std::vector<int> stack{s};
    std::vector<bool> seen(n, false);
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : d.out_neighbors(v))
        if (!seen[w]) {
          seen[w] = true;
          reach[s][w] = true;
          stack.push_back(w);
        }
    }
  }
  return reach;
}

// Floyd-Warshall over the underlying undirected graph.
std::vector<std::vector<int>> undirected_distances(const Digraph& d) {
  const int n = d.vertex_count();
  const int inf = 1 << 20;
  std::vector<std::vector<int>> dist(n, std::vector<int>(n, inf));
  for (int v = 0; v < n; ++v) dist[v][v] = 0;
  for (auto [u, v] : d.edges()) dist[u][v] = dist[v][u] = 1;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        dist[i][j] = std::min(dist[i][j], dist[i][k] + dist[k][j]);
  return dist;
}

}  // namespace

TEST_CASE("transitive closure on basics") {
  CHECK(transitive_closure(Digraph(0)).edge_count() == 0);

  Digraph path(3, {"a", "b", "c"});
  path.add_edge(0, 1);
  path.add_edge(1, 2);
  Digraph t = transitive_closure(path);
  CHECK(t.edge_count() == 3);
  CHECK(t.has_edge(0, 1));
  CHECK(t.has_edge(1, 2));
  CHECK(t.has_edge(0, 2));
}

TEST_CASE("example network closure contains (v1, v2)") {
  Digraph t = transitive_closure(example_network());
  CHECK(t.has_edge(0, 1));
}

TEST_CASE("closure has no self-loops even inside cycles") {
  Digraph two_cycle(2);
  two_cycle.add_edge(0, 1);
  two_cycle.add_edge(1, 0);
  Digraph t = transitive_closure(two_cycle);
  CHECK(t.edge_count() == 2);
}

TEST_CASE("closure properties on random digraphs") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 1 + trial % 7;
    Digraph d = random_digraph(rng, n, rng() % (n * n));
    Digraph t = transitive_closure(d);
    // Every D-edge is a closure edge, closure is idempotent.
    for (auto [u, v] : d.edges()) CHECK(t.has_edge(u, v));
    CHECK(transitive_closure(t) == t);
    // Closure agrees with plain BFS reachability.
    auto reach = bfs_reachability(d);
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v)
        if (u != v) CHECK(t.has_edge(u, v) == reach[u][v]);
    // Condensations of D and T(D) are the same partition.
    auto sd = strongly_connected_components(d);
    auto st = strongly_connected_components(t);
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v) {
        bool same_d = sd.component_of[u] == sd.component_of[v];
        bool same_t = st.component_of[u] == st.component_of[v];
        CHECK(same_d == same_t);
      }
  }
}

TEST_CASE("sccs on basics") {
  Digraph dag(3);
  dag.add_edge(0, 1);
  dag.add_edge(1, 2);
  auto p = strongly_connected_components(dag);
  CHECK(p.components.size() == 3);

  Digraph cyc(2);
  cyc.add_edge(0, 1);
  cyc.add_edge(1, 0);
  auto q = strongly_connected_components(cyc);
  REQUIRE(q.components.size() == 1);
  CHECK(q.components[0] == std::vector<int>{0, 1});
}

TEST_CASE("sccs match brute-force pairwise reachability, order topological") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 80; ++trial) {
    int n = 1 + trial % 6;
    Digraph d = random_digraph(rng, n, rng() % (n * n));
    auto part = strongly_connected_components(d);
    auto reach = bfs_reachability(d);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) {
        bool mutual = reach[u][v] && reach[v][u];
        CHECK(mutual == (part.component_of[u] == part.component_of[v]));
      }
    // Component list order is a topological order of the condensation.
    for (int u = 0; u < n; ++u)
      for (int v : d.out_neighbors(u))
        CHECK(part.component_of[u] <= part.component_of[v]);
    // components[] agrees with component_of.
    for (size_t c = 0; c < part.components.size(); ++c)
      for (int v : part.components[c]) CHECK(part.component_of[v] == static_cast<int>(c));
  }
}

TEST_CASE("topological order basics and prefix") {
  Digraph single(1);
  CHECK(topological_order(single) == std::vector<int>{0});

  Digraph ab(2);
  ab.add_edge(0, 1);
  CHECK(topological_order(ab, {0}) == std::vector<int>{0, 1});

  Digraph cyc(2);
  cyc.add_edge(0, 1);
  cyc.add_edge(1, 0);
  CHECK_THROWS_AS(topological_order(cyc), CycleDetected);

  CHECK_THROWS_AS(topological_order(ab, {1}), InvalidPrefix);
}

TEST_CASE("topological order on random dags, validated") {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 80; ++trial) {
    int n = 1 + trial % 7;
    // Random DAG: edges only low -> high under a random permutation.
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    Digraph d(n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (rng() % 3 == 0) d.add_edge(perm[i], perm[j]);

    // Random prefix: a prefix of some valid order.
    auto base = topological_order(d);
    int take = rng() % (n + 1);
    std::vector<int> prefix(base.begin(), base.begin() + take);

    auto order = topological_order(d, prefix);
    REQUIRE(order.size() == static_cast<size_t>(n));
    std::vector<int> pos(n);
    for (int i = 0; i < n; ++i) pos[order[i]] = i;
    for (auto [u, v] : d.edges()) CHECK(pos[u] < pos[v]);
    for (int i = 0; i < take; ++i) CHECK(order[i] == prefix[i]);
  }
}

TEST_CASE("undirected ball basics") {
  Digraph star(5);
  for (int leaf = 1; leaf < 5; ++leaf) star.add_edge(leaf, 0);  // leaves point at the center

  auto b0 = undirected_ball(star, {0}, 0);
  CHECK(b0.count() == 1);
  auto b1 = undirected_ball(star, {0}, 1);
  CHECK(b1.count() == 5);
}

TEST_CASE("undirected ball equals distance filter, monotone") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 1 + trial % 8;
    Digraph d = random_digraph(rng, n, rng() % (2 * n + 1));
    auto dist = undirected_distances(d);
    std::vector<int> sources;
    for (int v = 0; v < n; ++v)
      if (rng() % 3 == 0) sources.push_back(v);
    if (sources.empty()) sources.push_back(static_cast<int>(rng() % n));
    for (int p = 0; p <= 3; ++p) {
      auto ball = undirected_ball(d, sources, p);
      for (int v = 0; v < n; ++v) {
        int best = 1 << 20;
        for (int s : sources) best = std::min(best, dist[s][v]);
        CHECK(ball.test(v) == (best <= p));
      }
      auto bigger = undirected_ball(d, sources, p + 1);
      ball.for_each([&](int v) { CHECK(bigger.test(v)); });
    }
  }
}

TEST_CASE("induced subgraph keeps labels and edges") {
  Digraph d = example_network();
  Digraph sub = induced_subgraph(d, {1, 2, 3});
  CHECK(sub.vertex_count() == 3);
  CHECK(sub.label(0) == "v2");
  CHECK(sub.has_edge(0, 1));  // v2 -> v3
  CHECK(sub.has_edge(1, 2));  // v3 -> v4
  CHECK(sub.has_edge(2, 0));  // v4 -> v2
  CHECK(sub.edge_count() == 3);
}
