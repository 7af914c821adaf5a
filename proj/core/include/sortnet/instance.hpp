#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sortnet/digraph.hpp"

namespace sortnet {

enum class Variant { SPP, RSPP, RSPP_PL };

std::string to_string(Variant v);
std::optional<Variant> variant_from_string(const std::string& s);

struct Commodity {
  int source = -1;
  int destination = -1;
  // Present iff the instance variant is SPP: a directed path in D from
  // source to destination with distinct vertices.
  std::optional<std::vector<int>> route;

  bool operator==(const Commodity&) const = default;
};

struct Instance {
  Variant variant = Variant::RSPP;
  Digraph graph;
  std::vector<Commodity> commodities;
  int target = 0;
  // Required iff variant is RSPP_PL. For SPP the implied bound is the
  // maximum route length.
  std::optional<int> path_length;

  bool operator==(const Instance&) const = default;
};

// One witness path per commodity, aligned by index.
struct PathCover {
  std::vector<std::vector<int>> witnesses;

  bool operator==(const PathCover&) const = default;
};

struct ValidationReport {
  bool is_subgraph_of_closure = false;
  int max_outdegree = 0;
  std::vector<int> offending_vertices;       // outdegree above target
  std::vector<int> unsatisfied_commodities;  // indices into commodities
  bool valid = false;
};

// Checks structural invariants of an instance (route shapes, variant/field
// agreement, s != t). Throws ValidationError on breach.
void check_instance(const Instance& instance);

// Strict solution check for all three variants. H must share the instance's
// vertex indexing. Reports, never throws, for well-formed inputs.
ValidationReport validate_solution(const Instance& instance, const Digraph& solution);

// Observation-style sufficient check: returns a solution graph when the
// target dominates either the graph's max outdegree or the largest number of
// commodities sharing a source. Any returned graph passes validate_solution.
std::optional<Digraph> trivial_yes_check(const Instance& instance);

// Largest number of commodities sharing one source vertex.
int max_commodities_per_source(const Instance& instance);

// Maximum route length (edge count) over SPP commodities; 0 when none.
int max_route_length(const Instance& instance);

// Forward pairs (P_i, P_j), i < j, materialized as a graph over the
// instance's vertex space: the closure of a single path.
Digraph path_closure(int vertex_count, const std::vector<std::string>& labels,
                     const std::vector<int>& path);

// True if `graph` contains a directed s-t-path whose edges all lie in the
// closure of `base_path` (s, t are the path's endpoints).
bool satisfied_along_path(const Digraph& graph, const std::vector<int>& base_path);

// Enumerates simple directed s-t-paths of length <= p in D, invoking fn on
// each until fn returns true; returns whether any fn call returned true.
bool any_base_path(const Digraph& d, int s, int t, int p,
                   const std::function<bool(const std::vector<int>&)>& fn);

// Per-commodity satisfaction in H under the instance's variant.
bool commodity_satisfied(const Instance& instance, const Digraph& solution, int index);

// Union of a cover's witness edges over the instance's vertex space.
Digraph cover_union(const Instance& instance, const PathCover& cover);

}  // namespace sortnet
