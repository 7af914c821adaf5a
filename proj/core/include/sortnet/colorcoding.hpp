#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sortnet/instance.hpp"

namespace sortnet {

// Vertex coloring with gamma colors; terminal vertices hold colors that no
// other vertex shares.
struct Coloring {
  int colors = 0;
  std::vector<int> color_of;

  bool operator==(const Coloring&) const = default;
};

// Solution skeleton over colors: the union of one color path per commodity.
// Vertices are the colors themselves; terminals keep their fixed colors.
struct SolutionTemplate {
  std::vector<std::pair<int, int>> edges;             // sorted color pairs
  std::vector<std::vector<int>> commodity_paths;      // color sequence per commodity

  bool operator==(const SolutionTemplate&) const = default;
};

enum class ColoringMode { Exhaustive, Random };

struct ColorCodingConfig {
  ColoringMode mode = ColoringMode::Exhaustive;
  uint32_t seed = 1;
  // <= 0: derive ceil(e^gamma * ln(1/epsilon)) capped at max_colorings.
  int64_t trials = -1;
  double epsilon = 1e-3;
  int64_t max_colorings = 2000000;  // exhaustive cap -> InfeasibleExhaustive
  int64_t max_templates = 2000000;  // template cap -> BudgetExceeded
};

// Colorings of D with `gamma` colors: terminal colors are fixed (terminal i
// gets color i) and identical across the family; the remaining vertices draw
// from the non-terminal colors. Exhaustive mode enumerates every assignment;
// random mode draws `trials` seeded uniform assignments.
std::vector<Coloring> coloring_family(const Digraph& d, const std::vector<int>& terminals,
                                      int gamma, const ColorCodingConfig& cfg = {});

int64_t default_color_trials(int gamma, double epsilon, int64_t cap);

// All solution templates for the given (deduplicated) commodities over
// `gamma` colors, after the discard rules: outdegree above target, a
// nontrivial SCC without a source color, or a terminal-terminal edge missing
// from the closure. Sorted by (edge count, edge list); duplicates by edge
// set removed.
std::vector<SolutionTemplate> enumerate_templates(const Digraph& d,
                                                  const std::vector<Commodity>& commodities,
                                                  const std::vector<int>& terminals, int gamma,
                                                  int target, int64_t max_templates);

// Vertices of each color able to play the corresponding template vertex:
// terminal colors hold exactly their terminal; nontrivial-SCC colors demand
// mutual closure reachability with a source in the SCC; edge and
// terminal-in-edge requirements are pruned to a fixpoint so that every
// surviving vertex has a surviving partner per template out-edge.
// Empty when some used color has no viable vertex.
std::optional<std::vector<std::vector<int>>> viable_vertices(
    const Digraph& d, const Digraph& closure, const std::vector<Commodity>& commodities,
    const std::vector<int>& terminals, const SolutionTemplate& tpl, const Coloring& coloring);

// Colorful decision under one coloring: scans templates and reconstructs a
// solution graph from the first fully viable one. Requires target >= 2.
std::optional<Digraph> solve_colorful_rspp(const Digraph& d,
                                           const std::vector<Commodity>& commodities, int target,
                                           const Coloring& coloring,
                                           const ColorCodingConfig& cfg = {});

struct RsppByCommoditiesResult {
  bool yes = false;
  std::optional<Digraph> solution;
  // NO answers from the random coloring mode carry a false-negative
  // probability; exhaustive mode and YES answers are exact.
  bool exact = true;
};

// Full commodity-parameterized driver for RSPP: target <= 1 delegates to the
// polynomial algorithm, otherwise color coding over the coloring family.
RsppByCommoditiesResult solve_rspp_by_commodities(const Instance& instance,
                                                  const ColorCodingConfig& cfg = {});

// Rewrites every nontrivial strongly connected component that misses
// `is_source` into a path (in-edges redirected to its head); never raises an
// outdegree and preserves source-to-anywhere reachability.
Digraph normalize_solution_sccs(const Digraph& h, const std::vector<bool>& is_source);

}  // namespace sortnet
