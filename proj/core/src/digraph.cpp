#include "sortnet/digraph.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <queue>

#include "sortnet/errors.hpp"

namespace sortnet {

namespace {
std::vector<std::string> default_labels(int n) {
  std::vector<std::string> labels(n);
  for (int i = 0; i < n; ++i) labels[i] = "v" + std::to_string(i);
  return labels;
}
}  // namespace

Digraph::Digraph(int n) : Digraph(n, default_labels(n)) {}

Digraph::Digraph(int n, std::vector<std::string> labels)
    : n_(n), labels_(std::move(labels)), out_(n, Bitset(n)) {
  assert(static_cast<int>(labels_.size()) == n_);
}

bool Digraph::add_edge(int u, int v) {
  assert(u >= 0 && u < n_ && v >= 0 && v < n_);
  assert(u != v && "self-loops are not representable");
  if (out_[u].test(v)) return false;
  out_[u].set(v);
  return true;
}

bool Digraph::remove_edge(int u, int v) {
  if (!out_[u].test(v)) return false;
  out_[u].reset(v);
  return true;
}

std::vector<int> Digraph::in_neighbors(int v) const {
  std::vector<int> in;
  for (int u = 0; u < n_; ++u)
    if (out_[u].test(v)) in.push_back(u);
  return in;
}

int Digraph::in_degree(int v) const {
  int c = 0;
  for (int u = 0; u < n_; ++u)
    if (out_[u].test(v)) ++c;
  return c;
}

int Digraph::max_out_degree() const {
  int m = 0;
  for (int v = 0; v < n_; ++v) m = std::max(m, out_degree(v));
  return m;
}

int Digraph::edge_count() const {
  int m = 0;
  for (int v = 0; v < n_; ++v) m += out_degree(v);
  return m;
}

std::vector<std::pair<int, int>> Digraph::edges() const {
  std::vector<std::pair<int, int>> es;
  for (int u = 0; u < n_; ++u) out_[u].for_each([&](int v) { es.emplace_back(u, v); });
  return es;
}

std::vector<Bitset> reachability(const Digraph& d) {
  const int n = d.vertex_count();
  std::vector<Bitset> reach(n);
  for (int v = 0; v < n; ++v) reach[v] = d.out_row(v);
  // Warshall over bitset rows; diagonal bits mark membership in a cycle.
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if (reach[i].test(k)) reach[i] |= reach[k];
  return reach;
}

Digraph transitive_closure(const Digraph& d) {
  const int n = d.vertex_count();
  auto reach = reachability(d);
  Digraph t(n, d.labels());
  for (int u = 0; u < n; ++u)
    reach[u].for_each([&](int v) {
      if (u != v) t.add_edge(u, v);
    });
  return t;
}

namespace {
// Iterative Tarjan; emits components in reverse topological order.
struct TarjanState {
  const Digraph& d;
  std::vector<int> index, low, comp;
  std::vector<bool> on_stack;
  std::vector<int> stack;
  int next_index = 0, comp_count = 0;
  std::vector<std::vector<int>> components;

  explicit TarjanState(const Digraph& g)
      : d(g),
        index(g.vertex_count(), -1),
        low(g.vertex_count(), 0),
        comp(g.vertex_count(), -1),
        on_stack(g.vertex_count(), false) {}

  void run(int root) {
    struct Frame {
      int v;
      int next_neighbor;
    };
    std::vector<Frame> frames;
    frames.push_back({root, 0});
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      Frame& f = frames.back();
      int w = d.out_row(f.v).next_set(f.next_neighbor);
      if (w >= 0) {
        f.next_neighbor = w + 1;
        if (index[w] < 0) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
      } else {
        int v = f.v;
        frames.pop_back();
        if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
        if (low[v] == index[v]) {
          std::vector<int> c;
          while (true) {
            int u = stack.back();
            stack.pop_back();
            on_stack[u] = false;
            comp[u] = comp_count;
            c.push_back(u);
            if (u == v) break;
          }
          std::sort(c.begin(), c.end());
          components.push_back(std::move(c));
          ++comp_count;
        }
      }
    }
  }
};
}  // namespace

SccPartition strongly_connected_components(const Digraph& d) {
  TarjanState t(d);
  for (int v = 0; v < d.vertex_count(); ++v)
    if (t.index[v] < 0) t.run(v);
  // Tarjan finishes sinks first; reverse for a topological order.
  SccPartition p;
  const int k = t.comp_count;
  p.components.resize(k);
  for (int c = 0; c < k; ++c) p.components[c] = std::move(t.components[k - 1 - c]);
  p.component_of.resize(d.vertex_count());
  for (int v = 0; v < d.vertex_count(); ++v) p.component_of[v] = k - 1 - t.comp[v];
  return p;
}

std::vector<int> topological_order(const Digraph& d, const std::vector<int>& prefix) {
  const int n = d.vertex_count();
  {
    auto sccs = strongly_connected_components(d);
    for (const auto& c : sccs.components)
      if (c.size() > 1) throw CycleDetected("digraph has a cycle");
  }
  std::vector<int> indeg(n, 0);
  for (int u = 0; u < n; ++u) d.out_row(u).for_each([&](int v) { ++indeg[v]; });

  std::vector<bool> emitted(n, false), in_prefix(n, false);
  for (int v : prefix) {
    if (v < 0 || v >= n || in_prefix[v]) throw InvalidPrefix("prefix is not a set of vertices");
    in_prefix[v] = true;
  }

  std::vector<int> order;
  order.reserve(n);
  auto emit = [&](int v) {
    emitted[v] = true;
    order.push_back(v);
    d.out_row(v).for_each([&](int w) { --indeg[w]; });
  };
  for (int v : prefix) {
    if (indeg[v] != 0)
      throw InvalidPrefix("no topological order starts with the given prefix");
    emit(v);
  }
  std::priority_queue<int, std::vector<int>, std::greater<int>> ready;
  for (int v = 0; v < n; ++v)
    if (!emitted[v] && indeg[v] == 0) ready.push(v);
  while (!ready.empty()) {
    int v = ready.top();
    ready.pop();
    if (emitted[v]) continue;
    emitted[v] = true;
    order.push_back(v);
    d.out_row(v).for_each([&](int w) {
      if (--indeg[w] == 0 && !emitted[w]) ready.push(w);
    });
  }
  assert(static_cast<int>(order.size()) == n);
  return order;
}

std::vector<Bitset> underlying_adjacency(const Digraph& d) {
  const int n = d.vertex_count();
  std::vector<Bitset> adj(n, Bitset(n));
  for (int u = 0; u < n; ++u)
    d.out_row(u).for_each([&](int v) {
      adj[u].set(v);
      adj[v].set(u);
    });
  return adj;
}

Bitset undirected_ball(const Digraph& d, const std::vector<int>& sources, int p) {
  const int n = d.vertex_count();
  auto adj = underlying_adjacency(d);
  Bitset ball(n);
  std::deque<std::pair<int, int>> queue;
  for (int s : sources) {
    if (!ball.test(s)) {
      ball.set(s);
      queue.emplace_back(s, 0);
    }
  }
  while (!queue.empty()) {
    auto [v, dist] = queue.front();
    queue.pop_front();
    if (dist == p) continue;
    adj[v].for_each([&](int w) {
      if (!ball.test(w)) {
        ball.set(w);
        queue.emplace_back(w, dist + 1);
      }
    });
  }
  return ball;
}

Digraph induced_subgraph(const Digraph& d, const std::vector<int>& vertices) {
  std::vector<std::string> labels;
  labels.reserve(vertices.size());
  std::vector<int> to_new(d.vertex_count(), -1);
  for (size_t i = 0; i < vertices.size(); ++i) {
    labels.push_back(d.label(vertices[i]));
    to_new[vertices[i]] = static_cast<int>(i);
  }
  Digraph sub(static_cast<int>(vertices.size()), std::move(labels));
  for (int v : vertices)
    d.out_row(v).for_each([&](int w) {
      if (to_new[w] >= 0) sub.add_edge(to_new[v], to_new[w]);
    });
  return sub;
}

int directed_distance(const Digraph& d, int s, int t) {
  if (s == t) return 0;
  std::vector<int> dist(d.vertex_count(), -1);
  dist[s] = 0;
  std::deque<int> queue{s};
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    int found = -1;
    d.out_row(v).for_each([&](int w) {
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        if (w == t) found = w;
        queue.push_back(w);
      }
    });
    if (found == t) return dist[t];
  }
  return dist[t];
}

}  // namespace sortnet
