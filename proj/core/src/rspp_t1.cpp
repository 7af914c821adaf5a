#include "sortnet/rspp_t1.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

#include "sortnet/errors.hpp"

namespace sortnet {

std::vector<int> T1State::cycle_vertices() const {
  std::vector<int> vs;
  for (int v = 0; v < h.vertex_count(); ++v)
    if (cycle_of[v] >= 0) vs.push_back(v);
  return vs;
}

namespace {

// Installs an ascending cycle over `members` (sorted); removes all existing
// edges among them first so every member ends with outdegree exactly one.
void install_cycle(T1State& state, std::vector<int> members) {
  assert(members.size() >= 2);
  std::sort(members.begin(), members.end());
  for (int u : members)
    for (int v : members)
      if (u != v) state.h.remove_edge(u, v);
  for (size_t i = 0; i < members.size(); ++i)
    state.h.add_edge(members[i], members[(i + 1) % members.size()]);
  int id = static_cast<int>(state.cycles.size());
  for (int v : members) state.cycle_of[v] = id;
  state.cycles.push_back(std::move(members));
}

}  // namespace

void merge_cycles(T1State& state, int a, int b) {
  if (!state.on_cycle(a)) throw std::invalid_argument("merge_cycles: vertex is not on a cycle");
  const int ca = state.cycle_of[a];
  std::vector<int> members = state.cycles[ca];
  // Drop cycle C first; whether b is on a cycle is judged afterwards.
  for (size_t i = 0; i + 1 <= members.size(); ++i)
    state.h.remove_edge(members[i], members[(i + 1) % members.size()]);
  for (int v : members) state.cycle_of[v] = -1;
  state.cycles[ca].clear();

  if (state.on_cycle(b)) {
    const int cb = state.cycle_of[b];
    for (size_t i = 0; i + 1 <= state.cycles[cb].size(); ++i)
      state.h.remove_edge(state.cycles[cb][i],
                          state.cycles[cb][(i + 1) % state.cycles[cb].size()]);
    for (int v : state.cycles[cb]) state.cycle_of[v] = -1;
    members.insert(members.end(), state.cycles[cb].begin(), state.cycles[cb].end());
    state.cycles[cb].clear();
  } else if (std::find(members.begin(), members.end(), b) == members.end()) {
    members.push_back(b);
  }
  install_cycle(state, std::move(members));
}

namespace {

#ifndef NDEBUG
bool subgraph_of(const Digraph& h, const Digraph& closure) {
  for (auto [u, v] : h.edges())
    if (!closure.has_edge(u, v)) return false;
  return true;
}

bool all_commodities_reachable(const Digraph& h, const std::vector<Commodity>& ks) {
  auto reach = reachability(h);
  for (const Commodity& k : ks)
    if (!reach[k.source].test(k.destination)) return false;
  return true;
}
#endif

// Topological order of h restricted to the non-cycle vertices, starting with
// the visited list. Relies on the phase invariant that this graph is acyclic.
std::vector<int> order_off_cycle(const T1State& state, const std::vector<int>& visited) {
  std::vector<int> rest;
  for (int v = 0; v < state.h.vertex_count(); ++v)
    if (!state.on_cycle(v)) rest.push_back(v);
  Digraph sub = induced_subgraph(state.h, rest);
  std::vector<int> to_sub(state.h.vertex_count(), -1);
  for (size_t i = 0; i < rest.size(); ++i) to_sub[rest[i]] = static_cast<int>(i);
  std::vector<int> prefix;
  for (int v : visited) prefix.push_back(to_sub[v]);
  std::vector<int> order = topological_order(sub, prefix);
  for (int& v : order) v = rest[v];
  return order;
}

}  // namespace

std::optional<Digraph> solve_rspp_target1(const Instance& instance) {
  if (instance.variant != Variant::RSPP)
    throw std::invalid_argument("solve_rspp_target1 handles RSPP only");
  if (instance.target > 1)
    throw std::invalid_argument("solve_rspp_target1 handles targets 0 and 1 only");
  check_instance(instance);

  const int n = instance.graph.vertex_count();
  if (instance.target == 0) {
    // Outdegree zero cannot satisfy any commodity.
    if (instance.commodities.empty()) return Digraph(n, instance.graph.labels());
    return std::nullopt;
  }

  const Digraph closure = transitive_closure(instance.graph);
  for (const Commodity& k : instance.commodities)
    if (!closure.has_edge(k.source, k.destination)) return std::nullopt;

  // Phase 1: commodity edges, then one cycle per nontrivial SCC.
  T1State state;
  state.h = Digraph(n, instance.graph.labels());
  state.cycle_of.assign(n, -1);
  for (const Commodity& k : instance.commodities) state.h.add_edge(k.source, k.destination);
  for (const auto& component : strongly_connected_components(state.h).components)
    if (component.size() >= 2) install_cycle(state, component);

  // Phase 2: pull destinations of cycle-leaving commodities into the cycle.
  while (true) {
    int chosen = -1;
    for (size_t i = 0; i < instance.commodities.size() && chosen < 0; ++i) {
      const Commodity& k = instance.commodities[i];
      if (!state.on_cycle(k.source)) continue;
      if (state.on_cycle(k.destination) &&
          state.cycle_of[k.destination] == state.cycle_of[k.source])
        continue;
      chosen = static_cast<int>(i);
    }
    if (chosen < 0) break;
    const Commodity& k = instance.commodities[chosen];
    if (!closure.has_edge(k.destination, k.source)) return std::nullopt;
    merge_cycles(state, k.source, k.destination);
  }

#ifndef NDEBUG
  for (int v : state.cycle_vertices()) assert(state.h.out_degree(v) == 1);
#endif

  // Phase 3: settle the acyclic remainder in topological order.
  std::vector<int> visited;
  std::vector<bool> in_visited(n, false);
  std::vector<int> order = order_off_cycle(state, visited);

  while (true) {
    assert(subgraph_of(state.h, closure));
    assert(all_commodities_reachable(state.h, instance.commodities));
    int current = -1;
    for (int v : order)
      if (!in_visited[v]) {
        current = v;
        break;
      }
    if (current < 0) break;
    in_visited[current] = true;
    visited.push_back(current);

    while (state.h.out_degree(current) >= 2) {
      auto outs = state.h.out_neighbors(current);
      int t = outs[0], t2 = outs[1];
      const bool t_on = state.on_cycle(t), t2_on = state.on_cycle(t2);
      if (t_on && t2_on) {
        // Case 1: both committed to cycles; the cycles must join.
        if (!closure.has_edge(t, t2) || !closure.has_edge(t2, t)) return std::nullopt;
        merge_cycles(state, t, t2);
        state.h.remove_edge(current, t2);
      } else if (t_on || t2_on) {
        // Case 2: route the free endpoint in front of the committed one.
        int committed = t_on ? t : t2;
        int free_end = t_on ? t2 : t;
        if (!closure.has_edge(free_end, committed)) return std::nullopt;
        state.h.add_edge(free_end, committed);
        state.h.remove_edge(current, committed);
      } else {
        // Case 3: both free; orient by the current topological order.
        int pos_t = -1, pos_t2 = -1;
        for (size_t i = 0; i < order.size(); ++i) {
          if (order[i] == t) pos_t = static_cast<int>(i);
          if (order[i] == t2) pos_t2 = static_cast<int>(i);
        }
        assert(pos_t >= 0 && pos_t2 >= 0);
        if (pos_t > pos_t2) std::swap(t, t2);
        if (closure.has_edge(t, t2)) {
          // Subcase 3b.
          state.h.add_edge(t, t2);
          state.h.remove_edge(current, t2);
        } else if (closure.has_edge(t2, t)) {
          // Subcase 3c: the back edge keeps the remainder acyclic because
          // (t, t2) is not in the closure; re-sort starting with the visited
          // prefix.
          state.h.add_edge(t2, t);
          state.h.remove_edge(current, t);
          order = order_off_cycle(state, visited);
        } else {
          // Subcase 3a.
          return std::nullopt;
        }
      }
    }
  }

  assert(state.h.max_out_degree() <= 1);
  assert(validate_solution(instance, state.h).valid);
  return state.h;
}

}  // namespace sortnet
