#include "sortnet/treewidth.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "sortnet/errors.hpp"

namespace sortnet {

namespace {

// --- elimination orders ----------------------------------------------------

// Neighbors of v after eliminating `through`: adjacency or a path whose
// interior lies inside `through`.
Bitset fill_neighbors(const std::vector<Bitset>& adj, int n, int v, const Bitset& through) {
  Bitset seen(n), result(n);
  seen.set(v);
  std::deque<int> queue{v};
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    adj[u].for_each([&](int w) {
      if (seen.test(w)) return;
      seen.set(w);
      if (through.test(w))
        queue.push_back(w);
      else
        result.set(w);
    });
  }
  return result;
}

std::vector<int> exact_elimination_order(const std::vector<Bitset>& adj, int n) {
  // f(S): minimal over orders eliminating S first of the largest elimination
  // degree; choice[S] is the vertex eliminated last within S.
  const size_t size = size_t{1} << n;
  std::vector<int> f(size, 0), choice(size, -1);
  for (uint64_t s = 1; s < size; ++s) {
    int best = INT32_MAX, best_v = -1;
    Bitset members(n);
    for (int v = 0; v < n; ++v)
      if (s >> v & 1) members.set(v);
    for (int v = 0; v < n; ++v) {
      if (!(s >> v & 1)) continue;
      Bitset rest = members;
      rest.reset(v);
      int cost = std::max(f[s & ~(uint64_t{1} << v)],
                          fill_neighbors(adj, n, v, rest).count());
      if (cost < best) {
        best = cost;
        best_v = v;
      }
    }
    f[s] = best;
    choice[s] = best_v;
  }
  std::vector<int> order;
  uint64_t s = size - 1;
  while (s) {
    int v = choice[s];
    order.push_back(v);
    s &= ~(uint64_t{1} << v);
  }
  std::reverse(order.begin(), order.end());
  return order;
}

std::vector<int> min_fill_elimination_order(std::vector<Bitset> adj, int n) {
  std::vector<bool> eliminated(n, false);
  std::vector<int> order;
  for (int step = 0; step < n; ++step) {
    int best = -1, best_fill = INT32_MAX;
    for (int v = 0; v < n; ++v) {
      if (eliminated[v]) continue;
      auto neighbors = adj[v].to_vector();
      int fill = 0;
      for (size_t i = 0; i < neighbors.size(); ++i)
        for (size_t j = i + 1; j < neighbors.size(); ++j)
          if (!adj[neighbors[i]].test(neighbors[j])) ++fill;
      if (fill < best_fill) {
        best_fill = fill;
        best = v;
      }
    }
    order.push_back(best);
    eliminated[best] = true;
    auto neighbors = adj[best].to_vector();
    for (size_t i = 0; i < neighbors.size(); ++i)
      for (size_t j = i + 1; j < neighbors.size(); ++j) {
        adj[neighbors[i]].set(neighbors[j]);
        adj[neighbors[j]].set(neighbors[i]);
      }
    for (int u : neighbors) adj[u].reset(best);
    adj[best].clear();
  }
  return order;
}

// --- raw decompositions ------------------------------------------------------

struct RawTd {
  std::vector<std::vector<int>> bags;  // ascending
  std::vector<std::vector<int>> children;
  std::vector<int> roots;  // one per connected piece
};

RawTd td_from_elimination(const std::vector<Bitset>& adj0, int n,
                          const std::vector<int>& order) {
  std::vector<Bitset> adj = adj0;
  std::vector<int> position(n);
  for (int i = 0; i < n; ++i) position[order[i]] = i;
  RawTd raw;
  raw.bags.resize(n);
  raw.children.resize(n);
  std::vector<int> parent(n, -1);
  for (int i = 0; i < n; ++i) {
    int v = order[i];
    auto neighbors = adj[v].to_vector();
    std::vector<int> bag{v};
    bag.insert(bag.end(), neighbors.begin(), neighbors.end());
    std::sort(bag.begin(), bag.end());
    raw.bags[v] = std::move(bag);
    int next = -1;
    for (int u : neighbors)
      if (next < 0 || position[u] < position[next]) next = u;
    parent[v] = next;
    for (size_t a = 0; a < neighbors.size(); ++a)
      for (size_t b = a + 1; b < neighbors.size(); ++b) {
        adj[neighbors[a]].set(neighbors[b]);
        adj[neighbors[b]].set(neighbors[a]);
      }
    for (int u : neighbors) adj[u].reset(v);
    adj[v].clear();
  }
  for (int v = 0; v < n; ++v) {
    if (parent[v] >= 0)
      raw.children[parent[v]].push_back(v);
    else
      raw.roots.push_back(v);
  }
  return raw;
}

// --- refinement to a nice decomposition -------------------------------------

struct NiceBuilder {
  NiceTreeDecomposition td;

  int add(TdNodeKind kind, std::vector<int> bag, int vertex, std::vector<int> children) {
    TdNode node;
    node.kind = kind;
    node.bag = std::move(bag);
    node.vertex = vertex;
    node.children = std::move(children);
    td.nodes.push_back(std::move(node));
    return static_cast<int>(td.nodes.size()) - 1;
  }

  // Chain of introduces from an empty leaf up to `bag`.
  int leaf_chain(const std::vector<int>& bag) {
    int node = add(TdNodeKind::Leaf, {}, -1, {});
    std::vector<int> current;
    for (int v : bag) {
      current.push_back(v);
      node = add(TdNodeKind::Introduce, current, v, {node});
    }
    return node;
  }

  // Forget/introduce chain transforming a node holding `from` into `to`.
  int morph(int node, const std::vector<int>& from, const std::vector<int>& to) {
    std::vector<int> current = from;
    for (int v : from) {
      if (std::binary_search(to.begin(), to.end(), v)) continue;
      current.erase(std::find(current.begin(), current.end(), v));
      node = add(TdNodeKind::Forget, current, v, {node});
    }
    for (int v : to) {
      if (std::binary_search(from.begin(), from.end(), v)) continue;
      current.insert(std::upper_bound(current.begin(), current.end(), v), v);
      node = add(TdNodeKind::Introduce, current, v, {node});
    }
    return node;
  }

  int build_raw(const RawTd& raw, int raw_node) {
    const auto& bag = raw.bags[raw_node];
    std::vector<int> heads;
    for (int child : raw.children[raw_node]) {
      int head = build_raw(raw, child);
      heads.push_back(morph(head, raw.bags[child], bag));
    }
    if (heads.empty()) return leaf_chain(bag);
    while (heads.size() > 1) {
      int b = heads.back();
      heads.pop_back();
      int a = heads.back();
      heads.pop_back();
      heads.push_back(add(TdNodeKind::Join, bag, -1, {a, b}));
    }
    return heads[0];
  }
};

NiceTreeDecomposition nice_from_raw(const RawTd& raw) {
  NiceBuilder builder;
  std::vector<int> heads;
  for (int root : raw.roots) {
    int head = builder.build_raw(raw, root);
    heads.push_back(builder.morph(head, raw.bags[root], {}));
  }
  if (heads.empty()) {
    builder.add(TdNodeKind::Leaf, {}, -1, {});
    heads.push_back(0);
  }
  while (heads.size() > 1) {
    int b = heads.back();
    heads.pop_back();
    int a = heads.back();
    heads.pop_back();
    heads.push_back(builder.add(TdNodeKind::Join, {}, -1, {a, b}));
  }
  builder.td.root = heads[0];
  int width = 0;
  for (const auto& node : builder.td.nodes)
    width = std::max(width, static_cast<int>(node.bag.size()) - 1);
  builder.td.width = width;
  return builder.td;
}

}  // namespace

NiceTreeDecomposition build_nice_tree_decomposition(const Digraph& d, TreewidthMode mode,
                                                    int exact_cap) {
  const int n = d.vertex_count();
  auto adj = underlying_adjacency(d);
  std::vector<int> order;
  if (n == 0) {
    RawTd empty;
    return nice_from_raw(empty);
  }
  if (mode == TreewidthMode::Exact) {
    if (n > exact_cap)
      throw ExactCapExceeded("exact treewidth limited to " + std::to_string(exact_cap) +
                             " vertices");
    order = exact_elimination_order(adj, n);
  } else {
    order = min_fill_elimination_order(adj, n);
  }
  auto td = nice_from_raw(td_from_elimination(adj, n, order));
  assert(!check_nice_tree_decomposition(d, td));
  return td;
}

std::optional<std::string> check_nice_tree_decomposition(const Digraph& d,
                                                         const NiceTreeDecomposition& td) {
  const int n = d.vertex_count();
  if (td.root < 0 || td.root >= static_cast<int>(td.nodes.size())) return "missing root";
  if (!td.nodes[td.root].bag.empty()) return "root bag not empty";

  std::vector<int> parent(td.nodes.size(), -1);
  for (size_t i = 0; i < td.nodes.size(); ++i)
    for (int c : td.nodes[i].children) {
      if (parent[c] >= 0) return "node has two parents";
      parent[c] = static_cast<int>(i);
    }

  for (size_t i = 0; i < td.nodes.size(); ++i) {
    const TdNode& node = td.nodes[i];
    if (!std::is_sorted(node.bag.begin(), node.bag.end())) return "bag not sorted";
    switch (node.kind) {
      case TdNodeKind::Leaf:
        if (!node.children.empty() || !node.bag.empty()) return "bad leaf";
        break;
      case TdNodeKind::Introduce: {
        if (node.children.size() != 1) return "introduce without one child";
        auto child_bag = td.nodes[node.children[0]].bag;
        std::vector<int> expected = child_bag;
        expected.insert(std::upper_bound(expected.begin(), expected.end(), node.vertex),
                        node.vertex);
        if (expected != node.bag ||
            std::binary_search(child_bag.begin(), child_bag.end(), node.vertex))
          return "introduce bag mismatch";
        break;
      }
      case TdNodeKind::Forget: {
        if (node.children.size() != 1) return "forget without one child";
        auto child_bag = td.nodes[node.children[0]].bag;
        std::vector<int> expected;
        for (int v : child_bag)
          if (v != node.vertex) expected.push_back(v);
        if (expected != node.bag ||
            !std::binary_search(child_bag.begin(), child_bag.end(), node.vertex))
          return "forget bag mismatch";
        break;
      }
      case TdNodeKind::Join: {
        if (node.children.size() != 2) return "join without two children";
        if (td.nodes[node.children[0]].bag != node.bag ||
            td.nodes[node.children[1]].bag != node.bag)
          return "join bags differ";
        break;
      }
    }
  }

  // Edge coverage and occurrence connectivity.
  for (auto [u, v] : d.edges()) {
    bool covered = false;
    for (const auto& node : td.nodes)
      covered |= std::binary_search(node.bag.begin(), node.bag.end(), u) &&
                 std::binary_search(node.bag.begin(), node.bag.end(), v);
    if (!covered) return "edge not covered";
  }
  for (int v = 0; v < n; ++v) {
    std::vector<int> holders;
    for (size_t i = 0; i < td.nodes.size(); ++i)
      if (std::binary_search(td.nodes[i].bag.begin(), td.nodes[i].bag.end(), v))
        holders.push_back(static_cast<int>(i));
    if (holders.empty()) return "vertex missing from all bags";
    std::set<int> holder_set(holders.begin(), holders.end());
    // Walk up from every holder; all must converge inside the holder set.
    int top = -1;
    for (int h : holders) {
      int walker = h;
      while (parent[walker] >= 0 && holder_set.count(parent[walker])) walker = parent[walker];
      if (top < 0) top = walker;
      // two distinct maximal holders means a disconnected occurrence set
      if (walker != top) return "vertex occurrences disconnected";
    }
  }
  return std::nullopt;
}

NiceTreeDecomposition parse_tree_decomposition(const std::string& text, const Digraph& d) {
  std::map<std::string, int> label_to_vertex;
  for (int v = 0; v < d.vertex_count(); ++v) label_to_vertex[d.label(v)] = v;

  std::map<std::string, std::vector<int>> bags;
  std::vector<std::pair<std::string, std::string>> tree_edges;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word) || word[0] == '#') continue;
    const std::string at = "line " + std::to_string(line_no);
    if (word == "bag") {
      std::string name;
      if (!(ls >> name)) throw ParseError(at + ": bag needs a name");
      if (bags.count(name)) throw ParseError(at + ": duplicate bag '" + name + "'");
      std::vector<int> bag;
      std::string label;
      while (ls >> label) {
        auto it = label_to_vertex.find(label);
        if (it == label_to_vertex.end())
          throw ValidationError(at + ": unknown vertex '" + label + "'");
        bag.push_back(it->second);
      }
      std::sort(bag.begin(), bag.end());
      bag.erase(std::unique(bag.begin(), bag.end()), bag.end());
      bags[name] = std::move(bag);
    } else if (word == "tree") {
      std::string a, b;
      if (!(ls >> a >> b)) throw ParseError(at + ": tree needs two bag names");
      tree_edges.emplace_back(a, b);
    } else {
      throw ParseError(at + ": expected 'bag' or 'tree'");
    }
  }

  std::map<std::string, int> index;
  RawTd raw;
  for (const auto& [name, bag] : bags) {
    index[name] = static_cast<int>(raw.bags.size());
    raw.bags.push_back(bag);
    raw.children.emplace_back();
  }
  // Build the rooted forest from undirected tree edges.
  std::vector<std::vector<int>> adjacency(raw.bags.size());
  for (const auto& [a, b] : tree_edges) {
    if (!index.count(a) || !index.count(b))
      throw ValidationError("tree edge references an unknown bag");
    adjacency[index[a]].push_back(index[b]);
    adjacency[index[b]].push_back(index[a]);
  }
  std::vector<bool> seen(raw.bags.size(), false);
  for (size_t start = 0; start < raw.bags.size(); ++start) {
    if (seen[start]) continue;
    raw.roots.push_back(static_cast<int>(start));
    std::deque<int> queue{static_cast<int>(start)};
    seen[start] = true;
    while (!queue.empty()) {
      int x = queue.front();
      queue.pop_front();
      for (int y : adjacency[x])
        if (!seen[y]) {
          seen[y] = true;
          raw.children[x].push_back(y);
          queue.push_back(y);
        }
    }
  }

  auto td = nice_from_raw(raw);
  if (auto problem = check_nice_tree_decomposition(d, td))
    throw ValidationError("decomposition invalid: " + *problem);
  return td;
}

std::string serialize_tree_decomposition(const NiceTreeDecomposition& td, const Digraph& d) {
  std::ostringstream out;
  for (size_t i = 0; i < td.nodes.size(); ++i) {
    out << "bag n" << i;
    for (int v : td.nodes[i].bag) out << ' ' << d.label(v);
    out << '\n';
  }
  for (size_t i = 0; i < td.nodes.size(); ++i)
    for (int c : td.nodes[i].children) out << "tree n" << i << " n" << c << '\n';
  return out.str();
}

// --- the dynamic program -----------------------------------------------------

namespace {

struct DpState {
  std::vector<uint8_t> degree;               // aligned with the node's ball
  std::vector<std::pair<int, int>> r_edges;  // sorted, global vertex ids
  int64_t child_a = -1, child_b = -1;        // provenance (global state ids)
};

struct NodeTable {
  std::vector<int> ball;  // ascending
  std::vector<int64_t> states;  // global state ids
};

std::string encode_state(const DpState& s) {
  std::string key;
  key.reserve(s.degree.size() + s.r_edges.size() * 8 + 1);
  for (uint8_t d : s.degree) key.push_back(static_cast<char>(d));
  key.push_back('|');
  for (auto [u, v] : s.r_edges) {
    key.append(reinterpret_cast<const char*>(&u), sizeof(int));
    key.append(reinterpret_cast<const char*>(&v), sizeof(int));
  }
  return key;
}

// Union of route closures: the edge pool every witness lives in.
Digraph witness_edge_pool(const Instance& instance, int p) {
  const int n = instance.graph.vertex_count();
  Digraph pool(n, instance.graph.labels());
  if (instance.variant == Variant::SPP) {
    for (const Commodity& k : instance.commodities) {
      const auto& route = *k.route;
      for (size_t i = 0; i < route.size(); ++i)
        for (size_t j = i + 1; j < route.size(); ++j) pool.add_edge(route[i], route[j]);
    }
  } else {
    for (const Commodity& k : instance.commodities)
      any_base_path(instance.graph, k.source, k.destination, p,
                    [&](const std::vector<int>& base) {
                      for (size_t i = 0; i < base.size(); ++i)
                        for (size_t j = i + 1; j < base.size(); ++j)
                          pool.add_edge(base[i], base[j]);
                      return false;
                    });
  }
  return pool;
}

struct TwdpEngine {
  const Instance& instance;
  const NiceTreeDecomposition& td;
  const TwdpConfig& cfg;
  int p;
  int target;
  Digraph closure;
  Digraph pool;  // any solution is a union of witnesses, whose edges live here

  std::vector<DpState> all_states;
  std::vector<NodeTable> tables;

  TwdpEngine(const Instance& inst, const NiceTreeDecomposition& decomposition,
             const TwdpConfig& config, int path_bound)
      : instance(inst), td(decomposition), cfg(config), p(path_bound),
        target(inst.target), closure(transitive_closure(inst.graph)),
        pool(witness_edge_pool(inst, path_bound)) {}

  int64_t store(NodeTable& table, std::unordered_map<std::string, int64_t>& dedup,
                DpState state) {
    auto key = encode_state(state);
    auto it = dedup.find(key);
    if (it != dedup.end()) return it->second;
    if (static_cast<int64_t>(all_states.size()) >= cfg.max_states)
      throw StateSpaceExceeded("dynamic program exceeded max_states");
    int64_t id = static_cast<int64_t>(all_states.size());
    all_states.push_back(std::move(state));
    dedup.emplace(std::move(key), id);
    table.states.push_back(id);
    return id;
  }

  // Closure of the ball-induced subgraph, as a membership test over global
  // vertex ids.
  Digraph ball_closure(const std::vector<int>& ball) {
    Digraph sub = induced_subgraph(instance.graph, ball);
    Digraph sub_closure = transitive_closure(sub);
    Digraph global(instance.graph.vertex_count(), instance.graph.labels());
    for (auto [u, v] : sub_closure.edges()) global.add_edge(ball[u], ball[v]);
    return global;
  }

  bool commodity_check(const Digraph& r_graph, int v) const {
    for (const Commodity& k : instance.commodities) {
      if (k.source != v && k.destination != v) continue;
      bool ok;
      if (instance.variant == Variant::SPP) {
        ok = satisfied_along_path(r_graph, *k.route);
      } else {
        ok = any_base_path(instance.graph, k.source, k.destination, p,
                           [&](const std::vector<int>& base) {
                             return satisfied_along_path(r_graph, base);
                           });
      }
      if (!ok) return false;
    }
    return true;
  }

  void process_leaf(NodeTable& table) {
    std::unordered_map<std::string, int64_t> dedup;
    store(table, dedup, DpState{});
  }

  void process_introduce(int node, NodeTable& table, const NodeTable& child_table) {
    const TdNode& nd = td.nodes[node];
    const auto& ball = table.ball;
    const auto& child_ball = child_table.ball;
    const Digraph allowed = ball_closure(ball);
    const int n = instance.graph.vertex_count();

    std::vector<int> child_index(n, -1);
    for (size_t i = 0; i < child_ball.size(); ++i) child_index[child_ball[i]] = static_cast<int>(i);
    std::vector<int> delta;
    for (int v : ball)
      if (child_index[v] < 0) delta.push_back(v);
    std::vector<bool> in_delta(n, false);
    for (int v : delta) in_delta[v] = true;

    // Per-source lists of candidate new targets; existing pairs are frozen,
    // so new edges touch the fresh scope.
    struct SourceSlot {
      int vertex;
      int budget;  // max new out-edges
      std::vector<int> targets;
    };

    std::unordered_map<std::string, int64_t> dedup;
    for (int64_t child_id : child_table.states) {
      // copy: all_states may reallocate while new states are stored
      const DpState child = all_states[child_id];
      std::vector<SourceSlot> slots;
      for (int u : ball) {
        SourceSlot s;
        s.vertex = u;
        if (in_delta[u]) {
          s.budget = target;
          for (int w : ball)
            if (allowed.has_edge(u, w) && pool.has_edge(u, w)) s.targets.push_back(w);
        } else {
          s.budget = target - child.degree[child_index[u]];
          for (int w : delta)
            if (allowed.has_edge(u, w) && pool.has_edge(u, w)) s.targets.push_back(w);
        }
        if (!s.targets.empty() && s.budget > 0) slots.push_back(std::move(s));
      }

      std::vector<std::pair<int, int>> additions;
      auto emit = [&]() {
        DpState state;
        state.r_edges = child.r_edges;
        state.r_edges.insert(state.r_edges.end(), additions.begin(), additions.end());
        std::sort(state.r_edges.begin(), state.r_edges.end());
        std::vector<int> new_out(n, 0);
        for (auto [u, w] : additions) ++new_out[u];
        state.degree.resize(ball.size());
        for (size_t i = 0; i < ball.size(); ++i) {
          int u = ball[i];
          int d = (child_index[u] >= 0 ? child.degree[child_index[u]] : 0) + new_out[u];
          assert(d <= target);
          state.degree[i] = static_cast<uint8_t>(d);
        }
        // Commodity requirements of the introduced vertex within the scope.
        Digraph r_graph(n, instance.graph.labels());
        for (auto [u, w] : state.r_edges) r_graph.add_edge(u, w);
        if (!commodity_check(r_graph, nd.vertex)) return;
        state.child_a = child_id;
        store(table, dedup, std::move(state));
      };

      // Product over sources of target subsets within the degree budget.
      std::function<void(size_t)> expand = [&](size_t si) {
        if (si == slots.size()) {
          emit();
          return;
        }
        const SourceSlot& s = slots[si];
        std::function<void(int, int)> pick = [&](int from, int picked) {
          expand(si + 1);
          if (picked == s.budget) return;
          for (int i = from; i < static_cast<int>(s.targets.size()); ++i) {
            additions.emplace_back(s.vertex, s.targets[i]);
            pick(i + 1, picked + 1);
            additions.pop_back();
          }
        };
        pick(0, 0);
      };
      expand(0);
    }
  }

  void process_forget(int node, NodeTable& table, const NodeTable& child_table) {
    const auto& ball = table.ball;
    std::vector<bool> in_ball(instance.graph.vertex_count(), false);
    for (int v : ball) in_ball[v] = true;
    std::vector<int> child_positions;
    for (int v : ball)
      for (size_t i = 0; i < child_table.ball.size(); ++i)
        if (child_table.ball[i] == v) child_positions.push_back(static_cast<int>(i));

    std::unordered_map<std::string, int64_t> dedup;
    for (int64_t child_id : child_table.states) {
      const DpState child = all_states[child_id];
      DpState state;
      state.degree.reserve(ball.size());
      for (int idx : child_positions) state.degree.push_back(child.degree[idx]);
      for (auto [u, v] : child.r_edges)
        if (in_ball[u] && in_ball[v]) state.r_edges.emplace_back(u, v);
      state.child_a = child_id;
      store(table, dedup, std::move(state));
    }
  }

  void process_join(NodeTable& table, const NodeTable& left, const NodeTable& right) {
    std::unordered_map<std::string, std::vector<int64_t>> by_edges;
    for (int64_t id : right.states) {
      std::string key;
      for (auto [u, v] : all_states[id].r_edges) {
        key.append(reinterpret_cast<const char*>(&u), sizeof(int));
        key.append(reinterpret_cast<const char*>(&v), sizeof(int));
      }
      by_edges[key].push_back(id);
    }
    std::unordered_map<std::string, int64_t> dedup;
    for (int64_t left_id : left.states) {
      const DpState a = all_states[left_id];
      std::string key;
      for (auto [u, v] : a.r_edges) {
        key.append(reinterpret_cast<const char*>(&u), sizeof(int));
        key.append(reinterpret_cast<const char*>(&v), sizeof(int));
      }
      auto it = by_edges.find(key);
      if (it == by_edges.end()) continue;
      // outdegree of each ball vertex inside the shared R
      std::vector<int> r_out(table.ball.size(), 0);
      for (auto [u, v] : a.r_edges)
        for (size_t i = 0; i < table.ball.size(); ++i)
          if (table.ball[i] == u) ++r_out[i];
      for (int64_t right_id : it->second) {
        const DpState b = all_states[right_id];
        DpState merged;
        merged.r_edges = a.r_edges;
        merged.degree.resize(table.ball.size());
        bool ok = true;
        for (size_t i = 0; i < table.ball.size() && ok; ++i) {
          int d = a.degree[i] + b.degree[i] - r_out[i];
          if (d < 0 || d > target) ok = false;
          merged.degree[i] = static_cast<uint8_t>(std::max(0, d));
        }
        if (!ok) continue;
        merged.child_a = left_id;
        merged.child_b = right_id;
        store(table, dedup, std::move(merged));
      }
    }
  }

  TwdpResult run() {
    tables.resize(td.nodes.size());
    // children before parents: the builder creates children first, so
    // ascending node ids work as a processing order.
    for (size_t node = 0; node < td.nodes.size(); ++node) {
      const TdNode& nd = td.nodes[node];
      tables[node].ball = undirected_ball(instance.graph, nd.bag, p).to_vector();
      switch (nd.kind) {
        case TdNodeKind::Leaf:
          process_leaf(tables[node]);
          break;
        case TdNodeKind::Introduce:
          process_introduce(static_cast<int>(node), tables[node], tables[nd.children[0]]);
          break;
        case TdNodeKind::Forget:
          process_forget(static_cast<int>(node), tables[node], tables[nd.children[0]]);
          break;
        case TdNodeKind::Join:
          process_join(tables[node], tables[nd.children[0]], tables[nd.children[1]]);
          break;
      }
    }
    const NodeTable& root_table = tables[td.root];
    if (root_table.states.empty()) return {false, std::nullopt};

    // Backtrack: the witness is the union of R edges over the provenance tree.
    Digraph h(instance.graph.vertex_count(), instance.graph.labels());
    std::deque<int64_t> queue{root_table.states.front()};
    while (!queue.empty()) {
      int64_t id = queue.front();
      queue.pop_front();
      const DpState& s = all_states[id];
      for (auto [u, v] : s.r_edges) h.add_edge(u, v);
      if (s.child_a >= 0) queue.push_back(s.child_a);
      if (s.child_b >= 0) queue.push_back(s.child_b);
    }
    assert(validate_solution(instance, h).valid);
    return {true, h};
  }
};

}  // namespace

TwdpResult solve_twdp(const Instance& instance, const NiceTreeDecomposition& td,
                      const TwdpConfig& cfg) {
  if (instance.variant == Variant::RSPP)
    throw std::invalid_argument("solve_twdp handles SPP and RSPP_PL");
  check_instance(instance);
  const int p = instance.variant == Variant::SPP ? std::max(1, max_route_length(instance))
                                                 : *instance.path_length;

  // Infeasible commodities end it early; afterwards the observation bound
  // makes large targets trivially YES, so the DP only runs for small ones.
  if (instance.variant == Variant::RSPP_PL) {
    for (const Commodity& k : instance.commodities) {
      bool routable = any_base_path(instance.graph, k.source, k.destination, p,
                                    [](const std::vector<int>&) { return true; });
      if (!routable) return {false, std::nullopt};
    }
  }
  if (auto trivial = trivial_yes_check(instance)) return {true, trivial};

  TwdpEngine engine(instance, td, cfg, p);
  return engine.run();
}

}  // namespace sortnet
