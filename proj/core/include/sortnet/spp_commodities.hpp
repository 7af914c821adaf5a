#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "sortnet/instance.hpp"
#include "sortnet/oracle.hpp"

namespace sortnet {

// Routed problem with a set of flexible vertices whose outdegrees are not
// constrained by the target.
struct SmdInstance {
  Digraph graph;
  std::vector<bool> flexible;  // indexed by vertex
  std::vector<Commodity> commodities;  // all routed
  int target = 0;
};

// Certificate that `center` sits in the middle of a chain of 2q+1 vertices of
// one type that every route of that type traverses in the chain order or its
// exact reverse.
struct EnclosureWitness {
  std::vector<int> type_set;  // commodity indices, ascending
  std::vector<int> chain;     // 2q+1 vertices in traversal order
  int center = -1;            // chain[q]
};

// Per-vertex commodity-membership sets: type(v) = indices of routed
// commodities whose path contains v.
std::vector<std::vector<int>> vertex_types(const Instance& instance);

// Terminal-only kernel for SPP at target <= 1: keeps sources/destinations,
// connects them by closure edges, shortens routes to their kept vertices.
// The result has at most 2|K| vertices and the same decision.
Instance kernelize_spp_t1(const Instance& instance);

// Definition-level enumeration of q-enclosed vertices; exponential, intended
// for test-scale inputs. Witness chains are oriented by the smallest-index
// commodity of their type.
std::vector<EnclosureWitness> find_q_enclosed(const Instance& instance, int q);

// True if some enclosure witness centers on `v`.
bool is_q_enclosed(const Instance& instance, int q, int v);

// Upper bound on the multicolor Ramsey number R(s; r) used by default:
// r^(r*s), saturated at int64 max.
int64_t default_ramsey_bound(int64_t labels, int64_t clique);

using RamseyBound = std::function<int64_t(int64_t labels, int64_t clique)>;

// Marks q-enclosed vertices per type class: while a class holds at least
// ram_bound(2^(|U|-1), 2q+1) unmarked vertices, finds a monochromatic
// (2q+1)-subclique under the orientation labeling inside the first
// ram_bound-many of them and marks its middle vertex. Returns witnesses for
// every marked vertex. Empty-type vertices must have been pruned.
std::vector<EnclosureWitness> ramsey_mark(const Instance& instance, int q,
                                          const RamseyBound& ram_bound = default_ramsey_bound);

// Direct validity check of a candidate solution for the flexible-vertex
// problem: subgraph of the closure, outdegree <= target outside the flexible
// set, and a witness path per commodity inside the route closure.
bool smd_valid(const SmdInstance& smd, const Digraph& solution);

// Exact decision for the flexible-vertex problem: a witness-cover product
// scan whose degree bound binds only outside the flexible set. Any solution
// trims to such a cover, so the scan is complete for arbitrary flexible
// sets. Returns the union of the first qualifying cover.
std::optional<Digraph> solve_smd_spp(const SmdInstance& smd, const OracleConfig& cfg = {});

// Definition-level brute force over all subsets of the closure's edges;
// exists to certify solve_smd_spp on tiny inputs.
std::optional<Digraph> smd_decide_by_edge_subsets(const SmdInstance& smd,
                                                  const OracleConfig& cfg = {});

struct SppByCommoditiesResult {
  bool yes = false;
  std::optional<Digraph> solution;  // may be absent on YES when
                                    // reconstruction is out of budget
};

// Full commodity-parameterized pipeline for SPP: terminal kernel at
// target <= 1; otherwise empty-type pruning, the q threshold, oracle
// delegation for small graphs, and the marking + flexible-vertex route for
// large ones.
SppByCommoditiesResult solve_spp_by_commodities(const Instance& instance,
                                                const OracleConfig& cfg = {},
                                                const RamseyBound& ram_bound = default_ramsey_bound);

// The q threshold ceil((2^k + k) * (1 + k / (T - 1))) for target >= 2.
int64_t enclosure_threshold(int commodities, int target);

}  // namespace sortnet
