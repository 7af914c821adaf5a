#pragma once

#include <random>

#include "sortnet/instance.hpp"

namespace sortnet {

// Seeded instance sampler used by tests and the CLI. Commodities are always
// routable: each one is the endpoint pair of a sampled simple directed path
// (which becomes the route for SPP and a valid base path for RSPP_PL).
struct RandomInstanceSpec {
  int vertices = 5;
  int edges = 6;
  int commodities = 2;
  Variant variant = Variant::RSPP;
  int target = 1;
  int path_length = 3;  // used when variant == RSPP_PL
};

Instance random_instance(std::mt19937& rng, const RandomInstanceSpec& spec);

// Sampler with underlying treewidth <= 2 and underlying max degree bounded;
// built by attaching each new vertex to an existing edge or vertex.
Instance random_bounded_instance(std::mt19937& rng, int vertices, int max_degree, Variant variant,
                                 int target, int path_length, int commodities);

// A random simple directed path with 1..max_edges edges, or empty when the
// graph has none.
std::vector<int> random_simple_path(std::mt19937& rng, const Digraph& d, int max_edges);

}  // namespace sortnet
