#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sortnet/instance.hpp"

namespace sortnet {

enum class TdNodeKind { Leaf, Introduce, Forget, Join };

struct TdNode {
  TdNodeKind kind = TdNodeKind::Leaf;
  std::vector<int> bag;  // ascending vertex ids
  int vertex = -1;       // introduced / forgotten vertex
  std::vector<int> children;
};

// Rooted nice tree decomposition: empty leaf and root bags; internal nodes
// are introduce, forget, or join only.
struct NiceTreeDecomposition {
  std::vector<TdNode> nodes;
  int root = -1;
  int width = -1;
};

enum class TreewidthMode { Exact, MinFill };

// Builds a nice tree decomposition of the underlying undirected graph of d.
// Exact mode searches elimination orders via a subset dynamic program and is
// optimal; it refuses graphs above `exact_cap` vertices (ExactCapExceeded).
NiceTreeDecomposition build_nice_tree_decomposition(const Digraph& d,
                                                    TreewidthMode mode = TreewidthMode::Exact,
                                                    int exact_cap = 13);

// Structural check of all nice-decomposition invariants against d's
// underlying graph; returns a diagnostic or nothing when valid.
std::optional<std::string> check_nice_tree_decomposition(const Digraph& d,
                                                         const NiceTreeDecomposition& td);

// External decomposition exchange format: '#' comments, `bag <name>
// <label...>` lines and `tree <name> <name>` lines. The decomposition is
// validated against the instance graph and refined into a nice one.
NiceTreeDecomposition parse_tree_decomposition(const std::string& text, const Digraph& d);
std::string serialize_tree_decomposition(const NiceTreeDecomposition& td, const Digraph& d);

struct TwdpConfig {
  int64_t max_states = 2000000;  // total stored states -> StateSpaceExceeded
};

struct TwdpResult {
  bool yes = false;
  std::optional<Digraph> solution;
};

// Ball-based dynamic program over the decomposition for SPP (p = maximum
// route length) and RSPP_PL (p from the instance). Reconstructs a solution
// graph by backtracking on YES, validated before returning.
TwdpResult solve_twdp(const Instance& instance, const NiceTreeDecomposition& td,
                      const TwdpConfig& cfg = {});

}  // namespace sortnet
