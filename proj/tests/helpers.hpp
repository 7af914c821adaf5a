#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "sortnet/digraph.hpp"
#include "sortnet/instance.hpp"

namespace sortnet::testing {

// The worked six-vertex example network; edges are those used by the five
// routed commodities.
inline Digraph example_network() {
  Digraph d(6, {"v1", "v2", "v3", "v4", "v5", "v6"});
  d.add_edge(0, 2);  // v1 -> v3
  d.add_edge(2, 5);  // v3 -> v6
  d.add_edge(5, 3);  // v6 -> v4
  d.add_edge(3, 1);  // v4 -> v2
  d.add_edge(1, 2);  // v2 -> v3
  d.add_edge(2, 4);  // v3 -> v5
  d.add_edge(2, 3);  // v3 -> v4
  return d;
}

inline std::vector<Commodity> example_routed_commodities() {
  return {
      {0, 1, std::vector<int>{0, 2, 5, 3, 1}},  // v1 -> v2 via v3,v6,v4
      {1, 4, std::vector<int>{1, 2, 4}},        // v2 -> v5 via v3
      {2, 1, std::vector<int>{2, 3, 1}},        // v3 -> v2 via v4
      {2, 3, std::vector<int>{2, 3}},           // v3 -> v4
      {2, 5, std::vector<int>{2, 5}},           // v3 -> v6
  };
}

inline Instance example_spp_instance(int target = 2) {
  return Instance{Variant::SPP, example_network(), example_routed_commodities(), target,
                  std::nullopt};
}

inline Instance example_rspp_instance(int target = 1) {
  std::vector<Commodity> ks;
  for (auto& k : example_routed_commodities()) ks.push_back({k.source, k.destination, std::nullopt});
  return Instance{Variant::RSPP, example_network(), ks, target, std::nullopt};
}

// All labeled digraphs on n vertices, as edge masks over ordered pairs.
inline std::vector<std::pair<int, int>> ordered_pairs(int n) {
  std::vector<std::pair<int, int>> ps;
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v) ps.emplace_back(u, v);
  return ps;
}

inline Digraph digraph_from_mask(int n, uint64_t mask) {
  auto pairs = ordered_pairs(n);
  Digraph d(n);
  for (size_t i = 0; i < pairs.size(); ++i)
    if (mask >> i & 1) d.add_edge(pairs[i].first, pairs[i].second);
  return d;
}

inline Digraph random_digraph(std::mt19937& rng, int n, int edges) {
  Digraph d(n);
  auto pairs = ordered_pairs(n);
  std::shuffle(pairs.begin(), pairs.end(), rng);
  for (int i = 0; i < edges && i < static_cast<int>(pairs.size()); ++i)
    d.add_edge(pairs[i].first, pairs[i].second);
  return d;
}

}  // namespace sortnet::testing
