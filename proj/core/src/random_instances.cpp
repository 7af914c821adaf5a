#include "sortnet/random_instances.hpp"

#include <algorithm>
#include <cassert>

namespace sortnet {

std::vector<int> random_simple_path(std::mt19937& rng, const Digraph& d, int max_edges) {
  const int n = d.vertex_count();
  if (n == 0 || max_edges < 1) return {};
  for (int attempt = 0; attempt < 4 * n + 8; ++attempt) {
    int s = static_cast<int>(rng() % n);
    std::vector<int> path{s};
    std::vector<bool> on_path(n, false);
    on_path[s] = true;
    while (static_cast<int>(path.size()) - 1 < max_edges) {
      std::vector<int> options;
      d.out_row(path.back()).for_each([&](int w) {
        if (!on_path[w]) options.push_back(w);
      });
      if (options.empty()) break;
      int next = options[rng() % options.size()];
      path.push_back(next);
      on_path[next] = true;
      if (rng() % 3 == 0) break;  // random early stop
    }
    if (path.size() >= 2) return path;
  }
  return {};
}

Instance random_instance(std::mt19937& rng, const RandomInstanceSpec& spec) {
  Instance instance;
  instance.variant = spec.variant;
  instance.target = spec.target;
  if (spec.variant == Variant::RSPP_PL) instance.path_length = spec.path_length;

  const int n = spec.vertices;
  Digraph d(n);
  std::vector<std::pair<int, int>> pairs;
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v) pairs.emplace_back(u, v);
  std::shuffle(pairs.begin(), pairs.end(), rng);
  for (int i = 0; i < spec.edges && i < static_cast<int>(pairs.size()); ++i)
    d.add_edge(pairs[i].first, pairs[i].second);
  instance.graph = d;

  const int max_edges = spec.variant == Variant::RSPP_PL ? spec.path_length : n;
  for (int i = 0; i < spec.commodities; ++i) {
    auto path = random_simple_path(rng, d, max_edges);
    if (path.empty()) continue;
    Commodity k;
    k.source = path.front();
    k.destination = path.back();
    if (spec.variant == Variant::SPP) k.route = std::move(path);
    instance.commodities.push_back(std::move(k));
  }
  check_instance(instance);
  return instance;
}

Instance random_bounded_instance(std::mt19937& rng, int vertices, int max_degree, Variant variant,
                                 int target, int path_length, int commodities) {
  assert(vertices >= 2 && max_degree >= 2);
  // Undirected skeleton: attach each new vertex to an existing edge (keeps it
  // a partial 2-tree) or, when capacity is short, to a single vertex.
  std::vector<std::pair<int, int>> skeleton{{0, 1}};
  std::vector<int> degree(vertices, 0);
  degree[0] = degree[1] = 1;
  for (int v = 2; v < vertices; ++v) {
    std::vector<std::pair<int, int>> edge_options;
    for (auto [a, b] : skeleton)
      if (degree[a] < max_degree && degree[b] < max_degree) edge_options.emplace_back(a, b);
    if (!edge_options.empty() && rng() % 2 == 0) {
      auto [a, b] = edge_options[rng() % edge_options.size()];
      skeleton.emplace_back(a, v);
      skeleton.emplace_back(b, v);
      degree[a]++;
      degree[b]++;
      degree[v] = 2;
      continue;
    }
    std::vector<int> vertex_options;
    for (int u = 0; u < v; ++u)
      if (degree[u] < max_degree) vertex_options.push_back(u);
    assert(!vertex_options.empty());
    int u = vertex_options[rng() % vertex_options.size()];
    skeleton.emplace_back(u, v);
    degree[u]++;
    degree[v] = 1;
  }

  Digraph d(vertices);
  for (auto [a, b] : skeleton) {
    switch (rng() % 4) {
      case 0: d.add_edge(a, b); break;
      case 1: d.add_edge(b, a); break;
      default:  // both directions; the underlying degree is unchanged
        d.add_edge(a, b);
        d.add_edge(b, a);
        break;
    }
  }

  Instance instance;
  instance.variant = variant;
  instance.graph = d;
  instance.target = target;
  if (variant == Variant::RSPP_PL) instance.path_length = path_length;
  for (int i = 0; i < commodities; ++i) {
    auto path = random_simple_path(rng, d, path_length);
    if (path.empty()) continue;
    Commodity k;
    k.source = path.front();
    k.destination = path.back();
    if (variant == Variant::SPP) k.route = std::move(path);
    instance.commodities.push_back(std::move(k));
  }
  check_instance(instance);
  return instance;
}

}  // namespace sortnet
