#include "sortnet/oracle.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <set>

#include "sortnet/errors.hpp"

namespace sortnet {

namespace {

void sort_witnesses(std::vector<std::vector<int>>& ws) {
  std::sort(ws.begin(), ws.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
}

// Subsequences of `route` keeping both endpoints: the s-t-paths in T(route).
void subsequence_witnesses(const std::vector<int>& route, int64_t cap,
                           std::set<std::vector<int>>& out) {
  const int interior = static_cast<int>(route.size()) - 2;
  if (interior < 0) return;
  if (interior >= 62 || (int64_t{1} << interior) > cap * 4)
    throw BudgetExceeded("witness enumeration: route too long");
  for (int64_t mask = 0; mask < (int64_t{1} << interior); ++mask) {
    std::vector<int> w{route.front()};
    for (int i = 0; i < interior; ++i)
      if (mask >> i & 1) w.push_back(route[i + 1]);
    w.push_back(route.back());
    out.insert(std::move(w));
    if (static_cast<int64_t>(out.size()) > cap)
      throw BudgetExceeded("witness enumeration exceeded max_witnesses_per_commodity");
  }
}

// All simple s-t paths of `g`, ascending-neighbor DFS.
void simple_paths(const Digraph& g, int s, int t, int64_t cap,
                  std::vector<std::vector<int>>& out) {
  std::vector<int> path{s};
  std::vector<bool> on_path(g.vertex_count(), false);
  on_path[s] = true;
  std::function<void(int)> dfs = [&](int v) {
    if (v == t) {
      out.push_back(path);
      if (static_cast<int64_t>(out.size()) > cap)
        throw BudgetExceeded("witness enumeration exceeded max_witnesses_per_commodity");
      return;
    }
    g.out_row(v).for_each([&](int w) {
      if (on_path[w]) return;
      on_path[w] = true;
      path.push_back(w);
      dfs(w);
      path.pop_back();
      on_path[w] = false;
    });
  };
  dfs(s);
}

}  // namespace

std::vector<std::vector<int>> enumerate_witnesses(const Instance& instance, int commodity,
                                                  const OracleConfig& cfg) {
  const Commodity& k = instance.commodities[commodity];
  const int64_t cap = cfg.max_witnesses_per_commodity;
  std::vector<std::vector<int>> ws;
  switch (instance.variant) {
    case Variant::SPP: {
      std::set<std::vector<int>> dedup;
      subsequence_witnesses(*k.route, cap, dedup);
      ws.assign(dedup.begin(), dedup.end());
      break;
    }
    case Variant::RSPP: {
      const Digraph closure = transitive_closure(instance.graph);
      simple_paths(closure, k.source, k.destination, cap, ws);
      break;
    }
    case Variant::RSPP_PL: {
      std::set<std::vector<int>> dedup;
      any_base_path(instance.graph, k.source, k.destination, *instance.path_length,
                    [&](const std::vector<int>& base) {
                      subsequence_witnesses(base, cap, dedup);
                      return false;  // keep enumerating base paths
                    });
      ws.assign(dedup.begin(), dedup.end());
      break;
    }
  }
  sort_witnesses(ws);
  return ws;
}

namespace {

// Union-graph degree bookkeeping across stacked witness paths.
struct DegreeLedger {
  int n;
  int target;
  std::vector<int> edge_count;  // n*n multiplicities
  std::vector<int> out_degree;  // distinct out-neighbors
  int over_target = 0;          // vertices with out_degree > target

  DegreeLedger(int n, int target) : n(n), target(target), edge_count(n * n, 0), out_degree(n, 0) {}

  void add(const std::vector<int>& w) {
    for (size_t i = 0; i + 1 < w.size(); ++i) {
      int& c = edge_count[w[i] * n + w[i + 1]];
      if (c++ == 0 && ++out_degree[w[i]] == target + 1) ++over_target;
    }
  }
  void remove(const std::vector<int>& w) {
    for (size_t i = 0; i + 1 < w.size(); ++i) {
      int& c = edge_count[w[i] * n + w[i + 1]];
      if (--c == 0 && out_degree[w[i]]-- == target + 1) --over_target;
    }
  }
};

}  // namespace

std::optional<PathCover> solve_exact(const Instance& instance, const OracleConfig& cfg) {
  const int k = static_cast<int>(instance.commodities.size());
  std::vector<std::vector<std::vector<int>>> witnesses(k);
  int64_t product = 1;
  for (int i = 0; i < k; ++i) {
    witnesses[i] = enumerate_witnesses(instance, i, cfg);
    if (witnesses[i].empty()) return std::nullopt;  // enumeration was complete: a true NO
    product *= static_cast<int64_t>(witnesses[i].size());
    if (product > cfg.max_product)
      throw BudgetExceeded("witness product exceeds max_product");
  }

  DegreeLedger ledger(instance.graph.vertex_count(), instance.target);
  std::vector<int> choice(k, 0);
  std::optional<PathCover> found;
  // Lexicographic scan over choices; a prefix already over the degree bound
  // cannot be completed, since union degrees only grow.
  std::function<void(int)> scan = [&](int depth) {
    if (found) return;
    if (ledger.over_target > 0) return;
    if (depth == k) {
      PathCover cover;
      for (int i = 0; i < k; ++i) cover.witnesses.push_back(witnesses[i][choice[i]]);
      found = std::move(cover);
      return;
    }
    for (size_t j = 0; j < witnesses[depth].size() && !found; ++j) {
      choice[depth] = static_cast<int>(j);
      ledger.add(witnesses[depth][j]);
      scan(depth + 1);
      ledger.remove(witnesses[depth][j]);
    }
  };
  scan(0);
  return found;
}

std::optional<Digraph> decide_by_edge_subsets(const Instance& instance, const OracleConfig& cfg) {
  const Digraph closure = transitive_closure(instance.graph);
  const auto edges = closure.edges();
  const int m = static_cast<int>(edges.size());
  if (m >= 62 || (int64_t{1} << m) > cfg.max_product)
    throw BudgetExceeded("closure edge set too large for subset search");
  for (int64_t mask = 0; mask < (int64_t{1} << m); ++mask) {
    Digraph h(instance.graph.vertex_count(), instance.graph.labels());
    for (int i = 0; i < m; ++i)
      if (mask >> i & 1) h.add_edge(edges[i].first, edges[i].second);
    if (validate_solution(instance, h).valid) return h;
  }
  return std::nullopt;
}

int min_target_exact(const Digraph& graph, const std::vector<Commodity>& commodities,
                     Variant variant, std::optional<int> path_length, const OracleConfig& cfg) {
  Instance instance{variant, graph, commodities, 0, path_length};
  check_instance(instance);
  // Routability pre-check: below, the Observation-style cap is only feasible
  // when every commodity can be routed at all.
  const Digraph closure = transitive_closure(graph);
  for (size_t i = 0; i < commodities.size(); ++i) {
    const Commodity& k = commodities[i];
    bool routable = true;
    if (variant == Variant::RSPP) {
      routable = closure.has_edge(k.source, k.destination);
    } else if (variant == Variant::RSPP_PL) {
      routable = any_base_path(graph, k.source, k.destination, *path_length,
                               [](const std::vector<int>&) { return true; });
    }
    if (!routable)
      throw ValidationError("commodity #" + std::to_string(i) + " cannot be routed at any target");
  }

  const int cap = commodities.empty()
                      ? 0
                      : std::min(graph.max_out_degree(), max_commodities_per_source(instance));
  for (int t = 0; t <= cap; ++t) {
    instance.target = t;
    if (solve_exact(instance, cfg)) return t;
  }
  assert(false && "Observation bound should always be feasible");
  return cap;
}

bool witness_legal(const Instance& instance, int commodity, const std::vector<int>& witness) {
  const Commodity& k = instance.commodities[commodity];
  if (witness.empty() || witness.front() != k.source || witness.back() != k.destination)
    return false;
  std::vector<bool> seen(instance.graph.vertex_count(), false);
  for (int v : witness) {
    if (v < 0 || v >= instance.graph.vertex_count() || seen[v]) return false;
    seen[v] = true;
  }
  auto within_path_closure = [&](const std::vector<int>& base) {
    // Each consecutive witness pair must be a forward pair of `base`.
    std::vector<int> pos(instance.graph.vertex_count(), -1);
    for (size_t i = 0; i < base.size(); ++i) pos[base[i]] = static_cast<int>(i);
    for (size_t i = 0; i + 1 < witness.size(); ++i) {
      if (pos[witness[i]] < 0 || pos[witness[i + 1]] < 0) return false;
      if (pos[witness[i]] >= pos[witness[i + 1]]) return false;
    }
    return true;
  };
  switch (instance.variant) {
    case Variant::SPP:
      return within_path_closure(*k.route);
    case Variant::RSPP: {
      const Digraph closure = transitive_closure(instance.graph);
      for (size_t i = 0; i + 1 < witness.size(); ++i)
        if (!closure.has_edge(witness[i], witness[i + 1])) return false;
      return true;
    }
    case Variant::RSPP_PL:
      return any_base_path(instance.graph, k.source, k.destination, *instance.path_length,
                           within_path_closure);
  }
  return false;
}

PathCover compact_witnesses(const PathCover& cover, const std::vector<bool>& is_source,
                            int* iterations) {
  PathCover result = cover;
  const int n = static_cast<int>(is_source.size());
  int iters = 0;
  while (true) {
    // Membership sets over current witnesses.
    std::vector<uint64_t> q(n, 0);
    for (size_t i = 0; i < result.witnesses.size(); ++i)
      for (int v : result.witnesses[i]) q[v] |= uint64_t{1} << i;
    int mu = -1, mv = -1;
    for (int u = 0; u < n && mu < 0; ++u) {
      if (is_source[u] || q[u] == 0) continue;
      for (int v = u + 1; v < n; ++v) {
        if (is_source[v] || q[v] != q[u]) continue;
        mu = u;
        mv = v;
        break;
      }
    }
    if (mu < 0) break;
    ++iters;
    for (size_t i = 0; i < result.witnesses.size(); ++i) {
      if (!(q[mu] >> i & 1)) continue;
      auto& w = result.witnesses[i];
      auto pu = std::find(w.begin(), w.end(), mu);
      auto pv = std::find(w.begin(), w.end(), mv);
      // Drop the subpath from the earlier vertex (inclusive) to the later
      // one (exclusive).
      if (pu < pv)
        w.erase(pu, pv);
      else
        w.erase(pv, pu);
    }
  }
  if (iterations) *iterations = iters;
  return result;
}

PathCover compact_path_cover(const Instance& instance, const PathCover& cover) {
  const int k = static_cast<int>(instance.commodities.size());
  if (static_cast<int>(cover.witnesses.size()) != k)
    throw InvalidCover("cover size does not match the commodity list");
  if (k > 62) throw InvalidCover("compaction supports at most 62 commodities");
  for (int i = 0; i < k; ++i)
    if (!witness_legal(instance, i, cover.witnesses[i]))
      throw InvalidCover("witness #" + std::to_string(i) + " is not legal for its commodity");
  if (!validate_solution(instance, cover_union(instance, cover)).valid)
    throw InvalidCover("cover union is not a solution at the instance target");

  std::vector<bool> is_source(instance.graph.vertex_count(), false);
  for (const Commodity& c : instance.commodities) is_source[c.source] = true;
  int iters = 0;
  PathCover compacted = compact_witnesses(cover, is_source, &iters);
  assert(iters == 0 || iters < k * instance.graph.vertex_count());

  // The membership sets are now distinct nonempty subsets of [k], plus at
  // most k sources.
  Bitset used(instance.graph.vertex_count());
  for (const auto& w : compacted.witnesses)
    for (int v : w) used.set(v);
  assert(static_cast<int64_t>(used.count()) <= (int64_t{1} << k) + k);
  assert(validate_solution(instance, cover_union(instance, compacted)).valid);
  return compacted;
}

}  // namespace sortnet
