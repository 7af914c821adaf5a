#include "sortnet/instance.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <functional>

#include "sortnet/errors.hpp"

namespace sortnet {

std::string to_string(Variant v) {
  switch (v) {
    case Variant::SPP: return "SPP";
    case Variant::RSPP: return "RSPP";
    case Variant::RSPP_PL: return "RSPP_PL";
  }
  return "?";
}

std::optional<Variant> variant_from_string(const std::string& s) {
  if (s == "SPP") return Variant::SPP;
  if (s == "RSPP") return Variant::RSPP;
  if (s == "RSPP_PL") return Variant::RSPP_PL;
  return std::nullopt;
}

void check_instance(const Instance& instance) {
  const int n = instance.graph.vertex_count();
  if (instance.target < 0) throw ValidationError("target must be non-negative");
  if (instance.variant == Variant::RSPP_PL) {
    if (!instance.path_length || *instance.path_length < 1)
      throw ValidationError("RSPP_PL requires path_length >= 1");
  } else if (instance.path_length) {
    throw ValidationError("path_length is only meaningful for RSPP_PL");
  }
  for (size_t i = 0; i < instance.commodities.size(); ++i) {
    const Commodity& k = instance.commodities[i];
    const std::string at = "commodity #" + std::to_string(i);
    if (k.source < 0 || k.source >= n || k.destination < 0 || k.destination >= n)
      throw ValidationError(at + ": endpoint out of range");
    if (k.source == k.destination) throw ValidationError(at + ": source equals destination");
    if (instance.variant == Variant::SPP) {
      if (!k.route) throw ValidationError(at + ": SPP commodity is missing its route");
      const auto& p = *k.route;
      if (p.size() < 2 || p.front() != k.source || p.back() != k.destination)
        throw ValidationError(at + ": route endpoints do not match the commodity");
      std::vector<int> seen(n, 0);
      for (size_t j = 0; j < p.size(); ++j) {
        if (p[j] < 0 || p[j] >= n) throw ValidationError(at + ": route vertex out of range");
        if (seen[p[j]]++) throw ValidationError(at + ": route repeats a vertex");
        if (j + 1 < p.size() && !instance.graph.has_edge(p[j], p[j + 1]))
          throw ValidationError(at + ": route uses a non-edge");
      }
    } else if (k.route) {
      throw ValidationError(at + ": only SPP commodities carry routes");
    }
  }
}

Digraph path_closure(int vertex_count, const std::vector<std::string>& labels,
                     const std::vector<int>& path) {
  Digraph t(vertex_count, labels);
  for (size_t i = 0; i < path.size(); ++i)
    for (size_t j = i + 1; j < path.size(); ++j) t.add_edge(path[i], path[j]);
  return t;
}

bool satisfied_along_path(const Digraph& graph, const std::vector<int>& base_path) {
  // Positions strictly increase along any walk in H ∩ T(P), so a BFS over
  // forward pairs that are also H-edges decides reachability.
  const size_t len = base_path.size();
  std::vector<bool> reached(len, false);
  reached[0] = true;
  std::deque<size_t> queue{0};
  while (!queue.empty()) {
    size_t i = queue.front();
    queue.pop_front();
    if (i == len - 1) return true;
    for (size_t j = i + 1; j < len; ++j) {
      if (!reached[j] && graph.has_edge(base_path[i], base_path[j])) {
        reached[j] = true;
        queue.push_back(j);
      }
    }
  }
  return reached[len - 1];
}

bool any_base_path(const Digraph& d, int s, int t, int p,
                   const std::function<bool(const std::vector<int>&)>& fn) {
  // Bounded DFS over simple paths; prunes with shortest-distance-to-t.
  const int n = d.vertex_count();
  std::vector<int> dist_to_t(n, -1);
  {
    std::deque<int> queue{t};
    dist_to_t[t] = 0;
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      for (int u = 0; u < n; ++u)
        if (dist_to_t[u] < 0 && d.has_edge(u, v)) {
          dist_to_t[u] = dist_to_t[v] + 1;
          queue.push_back(u);
        }
    }
  }
  if (dist_to_t[s] < 0 || dist_to_t[s] > p) return false;
  std::vector<int> path{s};
  std::vector<bool> on_path(n, false);
  on_path[s] = true;
  std::function<bool(int)> dfs = [&](int v) -> bool {
    if (v == t) return fn(path);
    const int remaining = p - (static_cast<int>(path.size()) - 1);
    bool hit = false;
    d.out_row(v).for_each([&](int w) {
      if (hit || on_path[w]) return;
      if (dist_to_t[w] < 0 || dist_to_t[w] > remaining - 1) return;
      on_path[w] = true;
      path.push_back(w);
      if (dfs(w)) hit = true;
      path.pop_back();
      on_path[w] = false;
    });
    return hit;
  };
  return dfs(s);
}

namespace {
bool reachable_in(const Digraph& h, int s, int t) {
  std::vector<bool> seen(h.vertex_count(), false);
  seen[s] = true;
  std::deque<int> queue{s};
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    if (v == t) return true;
    h.out_row(v).for_each([&](int w) {
      if (!seen[w]) {
        seen[w] = true;
        queue.push_back(w);
      }
    });
  }
  return false;
}
}  // namespace

bool commodity_satisfied(const Instance& instance, const Digraph& solution, int index) {
  const Commodity& k = instance.commodities[index];
  switch (instance.variant) {
    case Variant::SPP:
      return satisfied_along_path(solution, *k.route);
    case Variant::RSPP:
      return reachable_in(solution, k.source, k.destination);
    case Variant::RSPP_PL:
      return any_base_path(instance.graph, k.source, k.destination, *instance.path_length,
                           [&](const std::vector<int>& base) {
                             return satisfied_along_path(solution, base);
                           });
  }
  return false;
}

ValidationReport validate_solution(const Instance& instance, const Digraph& solution) {
  assert(solution.vertex_count() == instance.graph.vertex_count());
  ValidationReport report;
  const Digraph closure = transitive_closure(instance.graph);
  report.is_subgraph_of_closure = true;
  for (auto [u, v] : solution.edges())
    if (!closure.has_edge(u, v)) {
      report.is_subgraph_of_closure = false;
      break;
    }
  report.max_outdegree = solution.max_out_degree();
  for (int v = 0; v < solution.vertex_count(); ++v)
    if (solution.out_degree(v) > instance.target) report.offending_vertices.push_back(v);
  for (size_t i = 0; i < instance.commodities.size(); ++i)
    if (!commodity_satisfied(instance, solution, static_cast<int>(i)))
      report.unsatisfied_commodities.push_back(static_cast<int>(i));
  report.valid = report.is_subgraph_of_closure && report.offending_vertices.empty() &&
                 report.unsatisfied_commodities.empty();
  return report;
}

int max_commodities_per_source(const Instance& instance) {
  std::vector<int> per_source(instance.graph.vertex_count(), 0);
  int best = 0;
  for (const Commodity& k : instance.commodities) best = std::max(best, ++per_source[k.source]);
  return best;
}

int max_route_length(const Instance& instance) {
  int best = 0;
  for (const Commodity& k : instance.commodities)
    if (k.route) best = std::max(best, static_cast<int>(k.route->size()) - 1);
  return best;
}

std::optional<Digraph> trivial_yes_check(const Instance& instance) {
  // Candidate 1: the graph itself.
  if (instance.target >= instance.graph.max_out_degree()) {
    if (validate_solution(instance, instance.graph).valid) return instance.graph;
  }
  // Candidate 2: one direct closure edge per commodity.
  if (instance.target >= max_commodities_per_source(instance)) {
    Digraph h(instance.graph.vertex_count(), instance.graph.labels());
    for (const Commodity& k : instance.commodities) h.add_edge(k.source, k.destination);
    if (validate_solution(instance, h).valid) return h;
  }
  return std::nullopt;
}

Digraph cover_union(const Instance& instance, const PathCover& cover) {
  Digraph h(instance.graph.vertex_count(), instance.graph.labels());
  for (const auto& witness : cover.witnesses)
    for (size_t i = 0; i + 1 < witness.size(); ++i) h.add_edge(witness[i], witness[i + 1]);
  return h;
}

}  // namespace sortnet
