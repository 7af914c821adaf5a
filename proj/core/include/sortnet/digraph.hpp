#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sortnet/bitset.hpp"

namespace sortnet {

// Simple directed graph over dense integer vertices. Labels are carried for
// the I/O boundary only; algorithms work on indices. No self-loops, no
// duplicate edges.
class Digraph {
 public:
  Digraph() = default;
  explicit Digraph(int n);
  Digraph(int n, std::vector<std::string> labels);

  int vertex_count() const { return n_; }
  const std::string& label(int v) const { return labels_[v]; }
  const std::vector<std::string>& labels() const { return labels_; }

  bool has_edge(int u, int v) const { return out_[u].test(v); }
  // Returns false if the edge was already present. Self-loops are rejected.
  bool add_edge(int u, int v);
  bool remove_edge(int u, int v);

  const Bitset& out_row(int v) const { return out_[v]; }
  std::vector<int> out_neighbors(int v) const { return out_[v].to_vector(); }
  std::vector<int> in_neighbors(int v) const;
  int out_degree(int v) const { return out_[v].count(); }
  int in_degree(int v) const;
  int max_out_degree() const;

  int edge_count() const;
  // Edges sorted by (source, target).
  std::vector<std::pair<int, int>> edges() const;

  bool operator==(const Digraph& o) const { return n_ == o.n_ && labels_ == o.labels_ && out_ == o.out_; }

 private:
  int n_ = 0;
  std::vector<std::string> labels_;
  std::vector<Bitset> out_;
};

struct SccPartition {
  std::vector<int> component_of;           // vertex -> component id
  std::vector<std::vector<int>> components;  // topological order of the condensation
};

// T(D): edge (i,j) iff j reachable from i via at least one edge. No self-loops
// recorded even inside cycles.
Digraph transitive_closure(const Digraph& d);

// Dense reachability rows of the closure (row v = closure out-row of v).
std::vector<Bitset> reachability(const Digraph& d);

// Components listed in a topological order of the condensation; vertices
// inside each component ascending.
SccPartition strongly_connected_components(const Digraph& d);

// Total order with all edges pointing forward, beginning with `prefix` in its
// given sequence; remaining ties broken by smallest vertex index.
// Throws CycleDetected / InvalidPrefix.
std::vector<int> topological_order(const Digraph& d, const std::vector<int>& prefix = {});

// All vertices at undirected distance <= p from some vertex of `sources`.
Bitset undirected_ball(const Digraph& d, const std::vector<int>& sources, int p);

// Underlying undirected adjacency (out | in), one row per vertex.
std::vector<Bitset> underlying_adjacency(const Digraph& d);

// Subgraph induced on `vertices` (ascending order expected); keeps labels.
// new index i corresponds to vertices[i].
Digraph induced_subgraph(const Digraph& d, const std::vector<int>& vertices);

// Length (edge count) of a shortest directed path, or -1 if unreachable.
int directed_distance(const Digraph& d, int s, int t);

}  // namespace sortnet
