#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sortnet/instance.hpp"

namespace sortnet {

struct OracleConfig {
  // Witness paths enumerated per commodity before giving up.
  int64_t max_witnesses_per_commodity = 20000;
  // Cartesian product size (or subset-search space) scanned before giving up.
  int64_t max_product = 4000000;
};

// All legal witness paths of one commodity, shortest first, ties broken by
// lexicographic vertex sequence. Throws BudgetExceeded past the witness cap.
std::vector<std::vector<int>> enumerate_witnesses(const Instance& instance, int commodity,
                                                  const OracleConfig& cfg);

// Product scan over per-commodity witness paths; returns the
// lexicographically first cover whose union respects the target, or nothing.
// Exhaustive within budgets; throws BudgetExceeded when a budget is hit.
std::optional<PathCover> solve_exact(const Instance& instance, const OracleConfig& cfg = {});

// Structurally independent second brute force: scans subsets of the closure's
// edge set and validates each candidate graph directly. Exists to certify
// solve_exact on tiny inputs.
std::optional<Digraph> decide_by_edge_subsets(const Instance& instance,
                                              const OracleConfig& cfg = {});

// Smallest feasible target, scanning T = 0 upward; the scan is capped by the
// always-feasible bound min(max outdegree of D, max commodities per source).
// Throws ValidationError when some commodity cannot be routed at any target.
int min_target_exact(const Digraph& graph, const std::vector<Commodity>& commodities,
                     Variant variant, std::optional<int> path_length = std::nullopt,
                     const OracleConfig& cfg = {});

// Membership-set compaction: repeatedly merges two non-source vertices that
// lie on exactly the same witness paths until all membership sets are
// distinct. Output has at most 2^k + k distinct vertices and is validated at
// the instance's target. Throws InvalidCover on a bad input cover.
PathCover compact_path_cover(const Instance& instance, const PathCover& cover);

// The raw compaction loop, shared with the flexible-vertex variant; performs
// no validation. `is_source` marks vertices exempt from merging. Returns the
// number of merge iterations via `iterations` when non-null.
PathCover compact_witnesses(const PathCover& cover, const std::vector<bool>& is_source,
                            int* iterations = nullptr);

// True if `witness` is a legal witness path for the commodity under the
// instance's variant.
bool witness_legal(const Instance& instance, int commodity, const std::vector<int>& witness);

}  // namespace sortnet
