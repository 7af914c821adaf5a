#pragma once

#include <optional>
#include <vector>

#include "sortnet/instance.hpp"

namespace sortnet {

// Working state of the target-1 routing algorithm. `cycle_of` maps each
// vertex to the id of the cycle it lies on (-1 otherwise); cycles are stored
// as ascending vertex sets and their edges always visit members in ascending
// order. Every on-cycle vertex has outdegree exactly one in `h`.
struct T1State {
  Digraph h;
  std::vector<int> cycle_of;
  std::vector<std::vector<int>> cycles;  // empty slots after merges stay unused

  std::vector<int> cycle_vertices() const;
  bool on_cycle(int v) const { return cycle_of[v] >= 0; }
};

// Merges the cycle of `a` with `b` (or with b's cycle) into a single cycle
// spanning the union. All existing edges among the merged vertex set are
// replaced by one cycle that visits the set in ascending order.
// Throws std::invalid_argument when `a` is not on a cycle.
void merge_cycles(T1State& state, int a, int b);

// Decision-plus-construction for RSPP with target <= 1. Returns a solution
// graph with max outdegree <= 1 or nothing. Throws std::invalid_argument on a
// non-RSPP instance or a target above 1.
std::optional<Digraph> solve_rspp_target1(const Instance& instance);

}  // namespace sortnet
