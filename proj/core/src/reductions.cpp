#include "sortnet/reductions.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "sortnet/errors.hpp"

namespace sortnet {

namespace {

// Incremental builder keyed by label strings.
struct GraphBuilder {
  std::vector<std::string> labels;
  std::map<std::string, int> index;
  std::vector<std::pair<int, int>> edges;

  int vertex(const std::string& label) {
    auto it = index.find(label);
    if (it != index.end()) return it->second;
    int id = static_cast<int>(labels.size());
    labels.push_back(label);
    index[label] = id;
    return id;
  }
  void edge(const std::string& from, const std::string& to) {
    edges.emplace_back(vertex(from), vertex(to));
  }
  Digraph graph() const {
    Digraph d(static_cast<int>(labels.size()), labels);
    for (auto [u, v] : edges) d.add_edge(u, v);
    return d;
  }
};

std::map<std::string, int> label_map(const Digraph& d) {
  std::map<std::string, int> m;
  for (int v = 0; v < d.vertex_count(); ++v) m[d.label(v)] = v;
  return m;
}

// Unique directed path in an oriented tree, or empty.
std::vector<int> tree_path(const Digraph& d, int s, int t) {
  std::vector<int> previous(d.vertex_count(), -1);
  std::deque<int> queue{s};
  previous[s] = s;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    if (v == t) break;
    d.out_row(v).for_each([&](int w) {
      if (previous[w] < 0) {
        previous[w] = v;
        queue.push_back(w);
      }
    });
  }
  if (previous[t] < 0) return {};
  std::vector<int> path{t};
  while (path.back() != s) path.push_back(previous[path.back()]);
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

// --- 3-partition -------------------------------------------------------------

void check_three_partition_input(const ThreePartitionInput& input) {
  if (input.m < 1 || input.B < 1) throw ValidationError("m and B must be positive");
  if (static_cast<int>(input.ints.size()) != 3 * input.m)
    throw ValidationError("expected exactly 3m integers");
  int64_t sum = 0;
  std::set<int> distinct;
  for (int v : input.ints) {
    if (4 * v <= input.B || 2 * v >= input.B)
      throw ValidationError("every integer must lie strictly between B/4 and B/2");
    if (!distinct.insert(v).second) throw ValidationError("integers must be distinct");
    sum += v;
  }
  if (sum != static_cast<int64_t>(input.m) * input.B)
    throw ValidationError("integers must sum to m*B");
}

namespace {

std::string w_label(int i, int j) { return "w" + std::to_string(i + 1) + "_" + std::to_string(j + 1); }
std::string r_label(int i, int j) { return "r" + std::to_string(i + 1) + "_" + std::to_string(j + 1); }

}  // namespace

Instance gen_3partition(const ThreePartitionInput& input, bool routed) {
  check_three_partition_input(input);
  const int m = input.m, B = input.B;
  GraphBuilder g;

  // Main path: the s/s' block, the integer-indexed block, the delivery block.
  std::vector<std::string> main_path;
  for (int i = 0; i < m; ++i) {
    main_path.push_back("s" + std::to_string(i + 1));
    main_path.push_back("s'" + std::to_string(i + 1));
  }
  for (int i = 0; i < 3 * m; ++i)
    for (int j = 0; j < input.ints[i]; ++j) main_path.push_back(w_label(i, j));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < B; ++j) main_path.push_back(r_label(i, j));
  for (const auto& label : main_path) g.vertex(label);
  for (size_t i = 0; i + 1 < main_path.size(); ++i) g.edge(main_path[i], main_path[i + 1]);

  for (int i = 0; i < 3 * m; ++i)
    g.edge(w_label(i, input.ints[i] - 1), "w~" + std::to_string(i + 1));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < B; ++j) {
      g.edge(r_label(i, j), "r~" + std::to_string(i + 1) + "_" + std::to_string(j + 1));
      g.edge(r_label(i, j), "r-" + std::to_string(i + 1) + "_" + std::to_string(j + 1));
    }

  Instance instance;
  instance.variant = routed ? Variant::SPP : Variant::RSPP;
  instance.graph = g.graph();
  instance.target = 2;

  auto add_commodity = [&](const std::string& from, const std::string& to) {
    Commodity k;
    k.source = g.index.at(from);
    k.destination = g.index.at(to);
    if (routed) {
      k.route = tree_path(instance.graph, k.source, k.destination);
      assert(!k.route->empty());
    }
    instance.commodities.push_back(std::move(k));
  };
  for (int i = 0; i < m; ++i) {
    add_commodity("s" + std::to_string(i + 1), "s'" + std::to_string(i + 1));
    for (int j = 0; j < B; ++j) add_commodity("s" + std::to_string(i + 1), r_label(i, j));
  }
  for (int i = 0; i < 3 * m; ++i)
    for (int j = 0; j + 1 < input.ints[i]; ++j) add_commodity(w_label(i, j), w_label(i, j + 1));
  for (int i = 0; i < 3 * m; ++i)
    add_commodity(w_label(i, input.ints[i] - 1), "w~" + std::to_string(i + 1));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < B; ++j) {
      add_commodity(r_label(i, j), "r~" + std::to_string(i + 1) + "_" + std::to_string(j + 1));
      add_commodity(r_label(i, j), "r-" + std::to_string(i + 1) + "_" + std::to_string(j + 1));
    }
  check_instance(instance);
  return instance;
}

std::optional<std::vector<std::array<int, 3>>> solve_3partition(const ThreePartitionInput& input) {
  check_three_partition_input(input);
  const int count = 3 * input.m;
  std::vector<bool> used(count, false);
  std::vector<std::array<int, 3>> triples;
  std::function<bool()> search = [&]() {
    int first = -1;
    for (int i = 0; i < count; ++i)
      if (!used[i]) {
        first = i;
        break;
      }
    if (first < 0) return true;
    used[first] = true;
    for (int j = first + 1; j < count; ++j) {
      if (used[j]) continue;
      used[j] = true;
      for (int k = j + 1; k < count; ++k) {
        if (used[k] || input.ints[first] + input.ints[j] + input.ints[k] != input.B) continue;
        used[k] = true;
        triples.push_back({first, j, k});
        if (search()) return true;
        triples.pop_back();
        used[k] = false;
      }
      used[j] = false;
    }
    used[first] = false;
    return false;
  };
  if (search()) return triples;
  return std::nullopt;
}

Digraph three_partition_witness(const Instance& generated, const ThreePartitionInput& input,
                                const std::vector<std::array<int, 3>>& triples) {
  if (static_cast<int>(triples.size()) != input.m)
    throw InvalidSourceSolution("expected m triples");
  std::vector<bool> used(3 * input.m, false);
  for (const auto& t : triples) {
    int sum = 0;
    for (int idx : t) {
      if (idx < 0 || idx >= 3 * input.m || used[idx])
        throw InvalidSourceSolution("triples must partition the index set");
      used[idx] = true;
      sum += input.ints[idx];
    }
    if (sum != input.B) throw InvalidSourceSolution("triple does not sum to B");
  }

  auto ids = label_map(generated.graph);
  Digraph h(generated.graph.vertex_count(), generated.graph.labels());
  auto edge = [&](const std::string& a, const std::string& b) { h.add_edge(ids.at(a), ids.at(b)); };

  for (int i = 0; i < input.m; ++i) edge("s" + std::to_string(i + 1), "s'" + std::to_string(i + 1));
  for (int i = 0; i < input.m; ++i)
    for (int j = 0; j < input.B; ++j) {
      edge(r_label(i, j), "r~" + std::to_string(i + 1) + "_" + std::to_string(j + 1));
      edge(r_label(i, j), "r-" + std::to_string(i + 1) + "_" + std::to_string(j + 1));
    }
  for (int i = 0; i < 3 * input.m; ++i) {
    for (int j = 0; j + 1 < input.ints[i]; ++j) edge(w_label(i, j), w_label(i, j + 1));
    edge(w_label(i, input.ints[i] - 1), "w~" + std::to_string(i + 1));
  }
  for (int i = 0; i < input.m; ++i) {
    const auto& triple = triples[i];
    edge("s" + std::to_string(i + 1), w_label(triple[0], 0));
    edge("s'" + std::to_string(i + 1), w_label(triple[1], 0));
    edge("s'" + std::to_string(i + 1), w_label(triple[2], 0));
    int offset = 0;
    for (int idx : triple) {
      for (int j = 0; j < input.ints[idx]; ++j) edge(w_label(idx, j), r_label(i, offset + j));
      offset += input.ints[idx];
    }
  }
  return h;
}

// --- bounded-occurrence satisfiability ---------------------------------------

void check_sat22_formula(const Sat22Formula& f) {
  if (f.variables < 1) throw ValidationError("formula needs variables");
  std::vector<int> pos_count(f.variables, 0), neg_count(f.variables, 0);
  for (const Sat22Clause& clause : f.clauses) {
    std::set<int> vars;
    for (const Sat22Literal& lit : clause.lits) {
      if (lit.var < 0 || lit.var >= f.variables) throw ValidationError("literal out of range");
      vars.insert(lit.var);
      (lit.positive ? pos_count : neg_count)[lit.var]++;
    }
    if (vars.size() != 3) throw ValidationError("clause variables must be distinct");
  }
  for (int v = 0; v < f.variables; ++v)
    if (pos_count[v] != 2 || neg_count[v] != 2)
      throw ValidationError("every literal must occur in exactly two clauses");
}

namespace {

std::string lit_label(const Sat22Literal& lit) {
  return (lit.positive ? "x" : "~x") + std::to_string(lit.var + 1);
}

}  // namespace

Instance gen_3sat22_rspp_pl(const Sat22Formula& f) {
  check_sat22_formula(f);
  GraphBuilder g;
  for (int v = 0; v < f.variables; ++v) {
    const std::string x = "x" + std::to_string(v + 1);
    const std::string nx = "~x" + std::to_string(v + 1);
    const std::string sx = "s_x" + std::to_string(v + 1);
    const std::string tx = "t_x" + std::to_string(v + 1);
    const std::string tpx = "t'_x" + std::to_string(v + 1);
    const std::string tppx = "t''_x" + std::to_string(v + 1);
    g.edge(sx, x);
    g.edge(sx, nx);
    g.edge(x, tx);
    g.edge(x, tpx);
    g.edge(nx, tpx);
    g.edge(nx, tppx);
  }
  for (size_t i = 0; i < f.clauses.size(); ++i) {
    const auto& lits = f.clauses[i].lits;
    const std::string c = "c" + std::to_string(i + 1);
    const std::string cp = "c'" + std::to_string(i + 1);
    const std::string tc = "t_c" + std::to_string(i + 1);
    g.edge(c, cp);
    g.edge(c, lit_label(lits[0]));
    g.edge(cp, lit_label(lits[1]));
    g.edge(cp, lit_label(lits[2]));
    for (const auto& lit : lits) g.edge(lit_label(lit), tc);
  }

  Instance instance;
  instance.variant = Variant::RSPP_PL;
  instance.graph = g.graph();
  instance.target = 2;
  instance.path_length = 4;
  auto add = [&](const std::string& from, const std::string& to) {
    instance.commodities.push_back({g.index.at(from), g.index.at(to), std::nullopt});
  };
  for (int v = 0; v < f.variables; ++v) {
    const std::string sx = "s_x" + std::to_string(v + 1);
    add(sx, "t_x" + std::to_string(v + 1));
    add(sx, "t'_x" + std::to_string(v + 1));
    add(sx, "t''_x" + std::to_string(v + 1));
  }
  for (size_t i = 0; i < f.clauses.size(); ++i) {
    const std::string c = "c" + std::to_string(i + 1);
    for (const auto& lit : f.clauses[i].lits) add(c, lit_label(lit));
    add(c, "t_c" + std::to_string(i + 1));
  }
  check_instance(instance);
  return instance;
}

Digraph sat22_rspp_pl_witness(const Instance& generated, const Sat22Formula& f,
                              const std::vector<bool>& assignment) {
  if (static_cast<int>(assignment.size()) != f.variables)
    throw InvalidSourceSolution("assignment size mismatch");
  auto ids = label_map(generated.graph);
  Digraph h(generated.graph.vertex_count(), generated.graph.labels());
  auto edge = [&](const std::string& a, const std::string& b) { h.add_edge(ids.at(a), ids.at(b)); };

  for (int v = 0; v < f.variables; ++v) {
    const std::string i = std::to_string(v + 1);
    if (assignment[v]) {
      edge("s_x" + i, "~x" + i);
      edge("s_x" + i, "t_x" + i);
      edge("~x" + i, "t'_x" + i);
      edge("~x" + i, "t''_x" + i);
    } else {
      edge("s_x" + i, "x" + i);
      edge("s_x" + i, "t''_x" + i);
      edge("x" + i, "t_x" + i);
      edge("x" + i, "t'_x" + i);
    }
  }
  for (size_t ci = 0; ci < f.clauses.size(); ++ci) {
    const auto& lits = f.clauses[ci].lits;
    const std::string c = "c" + std::to_string(ci + 1);
    const std::string cp = "c'" + std::to_string(ci + 1);
    edge(c, cp);
    edge(c, lit_label(lits[0]));
    edge(cp, lit_label(lits[1]));
    edge(cp, lit_label(lits[2]));
    const Sat22Literal* chosen = nullptr;
    for (const auto& lit : lits)
      if (assignment[lit.var] == lit.positive && !chosen) chosen = &lit;
    if (!chosen) throw InvalidSourceSolution("assignment leaves a clause unsatisfied");
    edge(lit_label(*chosen), "t_c" + std::to_string(ci + 1));
  }
  return h;
}

Instance gen_3sat22_spp(const Sat22Formula& f) {
  check_sat22_formula(f);
  GraphBuilder g;
  for (int v = 0; v < f.variables; ++v) {
    const std::string i = std::to_string(v + 1);
    g.edge("s_x" + i, "x" + i);
    g.edge("x" + i, "~x" + i);
    for (int s = 1; s <= 3; ++s) g.edge("x" + i, "t" + std::to_string(s) + "_x" + i);
    for (int s = 1; s <= 4; ++s) g.edge("~x" + i, "t" + std::to_string(s) + "_~x" + i);
  }
  for (size_t ci = 0; ci < f.clauses.size(); ++ci) {
    const std::string i = std::to_string(ci + 1);
    const auto& lits = f.clauses[ci].lits;
    g.edge("c" + i, "c'" + i);
    g.edge("c'" + i, "c''" + i);
    g.edge("c''" + i, "c~" + i);
    for (const std::string& a : {"c" + i, "c'" + i, "c''" + i, "c~" + i}) {
      g.edge(a, "t1_" + a);
      g.edge(a, "t2_" + a);
    }
    for (const auto& lit : lits) {
      g.edge("c~" + i, lit_label(lit));
      g.edge(lit_label(lit), "t1_c" + i + "_" + lit_label(lit));
      g.edge(lit_label(lit), "t2_c" + i + "_" + lit_label(lit));
    }
  }

  Instance instance;
  instance.variant = Variant::SPP;
  instance.graph = g.graph();
  instance.target = 4;
  auto add = [&](const std::string& from, const std::string& to,
                 const std::vector<std::string>& route) {
    Commodity k;
    k.source = g.index.at(from);
    k.destination = g.index.at(to);
    std::vector<int> path;
    for (const auto& label : route) path.push_back(g.index.at(label));
    k.route = std::move(path);
    instance.commodities.push_back(std::move(k));
  };
  for (int v = 0; v < f.variables; ++v) {
    const std::string i = std::to_string(v + 1);
    for (int s = 1; s <= 3; ++s) {
      const std::string t = "t" + std::to_string(s) + "_x" + i;
      add("s_x" + i, t, {"s_x" + i, "x" + i, t});
    }
    for (int s = 1; s <= 4; ++s) {
      const std::string t = "t" + std::to_string(s) + "_~x" + i;
      add("s_x" + i, t, {"s_x" + i, "x" + i, "~x" + i, t});
    }
  }
  for (size_t ci = 0; ci < f.clauses.size(); ++ci) {
    const std::string i = std::to_string(ci + 1);
    const auto& lits = f.clauses[ci].lits;
    for (const std::string& a : {"c" + i, "c'" + i, "c''" + i, "c~" + i}) {
      add(a, "t1_" + a, {a, "t1_" + a});
      add(a, "t2_" + a, {a, "t2_" + a});
    }
    add("c" + i, "c'" + i, {"c" + i, "c'" + i});
    add("c'" + i, "c''" + i, {"c'" + i, "c''" + i});
    for (const auto& lit : lits) {
      for (int s = 1; s <= 2; ++s) {
        const std::string t = "t" + std::to_string(s) + "_c" + i + "_" + lit_label(lit);
        add("c" + i, t, {"c" + i, "c'" + i, "c''" + i, "c~" + i, lit_label(lit), t});
      }
    }
  }
  check_instance(instance);
  return instance;
}

Digraph sat22_spp_witness(const Instance& generated, const Sat22Formula& f,
                          const std::vector<bool>& assignment) {
  if (static_cast<int>(assignment.size()) != f.variables)
    throw InvalidSourceSolution("assignment size mismatch");
  auto ids = label_map(generated.graph);
  Digraph h(generated.graph.vertex_count(), generated.graph.labels());
  auto edge = [&](const std::string& a, const std::string& b) { h.add_edge(ids.at(a), ids.at(b)); };

  for (int v = 0; v < f.variables; ++v) {
    const std::string i = std::to_string(v + 1);
    if (assignment[v]) {
      edge("s_x" + i, "~x" + i);
      for (int s = 1; s <= 3; ++s) edge("s_x" + i, "t" + std::to_string(s) + "_x" + i);
      for (int s = 1; s <= 4; ++s) edge("~x" + i, "t" + std::to_string(s) + "_~x" + i);
    } else {
      edge("s_x" + i, "x" + i);
      edge("x" + i, "t4_~x" + i);
      for (int s = 1; s <= 3; ++s) edge("x" + i, "t" + std::to_string(s) + "_x" + i);
      for (int s = 1; s <= 3; ++s) edge("s_x" + i, "t" + std::to_string(s) + "_~x" + i);
    }
  }
  for (size_t ci = 0; ci < f.clauses.size(); ++ci) {
    const std::string i = std::to_string(ci + 1);
    const auto& lits = f.clauses[ci].lits;
    int chosen = -1;
    for (int li = 0; li < 3 && chosen < 0; ++li)
      if (assignment[lits[li].var] == lits[li].positive) chosen = li;
    if (chosen < 0) throw InvalidSourceSolution("assignment leaves a clause unsatisfied");
    const std::string a = lit_label(lits[chosen]);
    const std::string b = lit_label(lits[(chosen + 1) % 3]);
    const std::string d = lit_label(lits[(chosen + 2) % 3]);
    for (const std::string& head : {"c" + i, "c'" + i, "c''" + i, "c~" + i}) {
      edge(head, "t1_" + head);
      edge(head, "t2_" + head);
    }
    edge("c" + i, "c'" + i);
    edge("c'" + i, "c''" + i);
    edge("c" + i, "c~" + i);
    edge("c'" + i, a);
    edge(a, "t1_c" + i + "_" + a);
    edge(a, "t2_c" + i + "_" + a);
    edge("c''" + i, "t1_c" + i + "_" + b);
    edge("c''" + i, "t2_c" + i + "_" + b);
    edge("c~" + i, "t1_c" + i + "_" + d);
    edge("c~" + i, "t2_c" + i + "_" + d);
  }
  return h;
}

std::optional<std::vector<bool>> solve_sat22(const Sat22Formula& f) {
  check_sat22_formula(f);
  if (f.variables > 30) throw BudgetExceeded("truth-table scan limited to 30 variables");
  for (uint64_t bits = 0; bits < (uint64_t{1} << f.variables); ++bits) {
    bool ok = true;
    for (const Sat22Clause& clause : f.clauses) {
      bool sat = false;
      for (const auto& lit : clause.lits) sat |= ((bits >> lit.var & 1) == 1) == lit.positive;
      if (!sat) {
        ok = false;
        break;
      }
    }
    if (ok) {
      std::vector<bool> assignment(f.variables);
      for (int v = 0; v < f.variables; ++v) assignment[v] = bits >> v & 1;
      return assignment;
    }
  }
  return std::nullopt;
}

// --- checkers ---------------------------------------------------------------

namespace {

void check(GadgetReport& report, const std::string& name, bool pass,
           const std::string& detail = "") {
  report.checks.push_back({name, pass, detail});
  report.pass &= pass;
}

bool underlying_tree(const Digraph& d) {
  auto adj = underlying_adjacency(d);
  int undirected_edges = 0;
  for (int v = 0; v < d.vertex_count(); ++v) undirected_edges += adj[v].count();
  undirected_edges /= 2;
  if (undirected_edges != d.vertex_count() - 1) return false;
  if (d.vertex_count() == 0) return true;
  Bitset ball = undirected_ball(d, {0}, d.vertex_count());
  return ball.count() == d.vertex_count();
}

int max_underlying_degree(const Digraph& d) {
  auto adj = underlying_adjacency(d);
  int deg = 0;
  for (int v = 0; v < d.vertex_count(); ++v) deg = std::max(deg, adj[v].count());
  return deg;
}

}  // namespace

GadgetReport check_three_partition_reduction(const Instance& generated,
                                             const ThreePartitionInput& input) {
  GadgetReport report;
  const int m = input.m, B = input.B;
  check(report, "underlying graph is a tree", underlying_tree(generated.graph));
  check(report, "underlying max degree <= 4", max_underlying_degree(generated.graph) <= 4);
  check(report, "vertex count", generated.graph.vertex_count() == (2 * m * B + 2 * m) + 3 * m + 2 * m * B);
  int64_t expected_commodities = static_cast<int64_t>(m) * (B + 1);
  for (int v : input.ints) expected_commodities += v - 1;
  expected_commodities += 3 * m + 2 * m * B;
  check(report, "commodity count",
        static_cast<int64_t>(generated.commodities.size()) == expected_commodities);
  const Digraph closure = transitive_closure(generated.graph);
  bool routable = true;
  for (const Commodity& k : generated.commodities)
    routable &= closure.has_edge(k.source, k.destination);
  check(report, "every commodity pair lies in the closure", routable);
  check(report, "target is 2", generated.target == 2);
  return report;
}

GadgetReport check_sat22_rspp_pl_reduction(const Instance& generated, const Sat22Formula& f) {
  GadgetReport report;
  check(report, "variant and parameters",
        generated.variant == Variant::RSPP_PL && generated.target == 2 &&
            generated.path_length == 4);
  check(report, "underlying max degree <= 7", max_underlying_degree(generated.graph) <= 7);
  auto ids = label_map(generated.graph);
  bool literal_degrees = true;
  for (int v = 0; v < f.variables; ++v)
    for (const std::string& lit :
         {"x" + std::to_string(v + 1), "~x" + std::to_string(v + 1)}) {
      int id = ids.at(lit);
      literal_degrees &= generated.graph.in_degree(id) == 3;
      literal_degrees &= generated.graph.out_degree(id) == 4;
    }
  check(report, "literal vertices have 3 in- and 4 out-edges", literal_degrees);
  bool short_base_paths = true;
  for (const Commodity& k : generated.commodities) {
    int dist = directed_distance(generated.graph, k.source, k.destination);
    short_base_paths &= dist >= 1 && dist <= *generated.path_length;
  }
  check(report, "every commodity has a base path within the length bound", short_base_paths);
  check(report, "vertex count",
        generated.graph.vertex_count() == 6 * f.variables + 3 * static_cast<int>(f.clauses.size()));
  return report;
}

namespace {

// Simple s-t paths, capped; used for uniqueness checks.
int count_paths(const Digraph& d, int s, int t, int cap) {
  int found = 0;
  std::vector<bool> on_path(d.vertex_count(), false);
  on_path[s] = true;
  std::function<void(int)> dfs = [&](int v) {
    if (found > cap) return;
    if (v == t) {
      ++found;
      return;
    }
    d.out_row(v).for_each([&](int w) {
      if (on_path[w]) return;
      on_path[w] = true;
      dfs(w);
      on_path[w] = false;
    });
  };
  dfs(s);
  return found;
}

}  // namespace

GadgetReport check_sat22_spp_reduction(const Instance& generated, const Sat22Formula& f) {
  GadgetReport report;
  check(report, "variant and target", generated.variant == Variant::SPP && generated.target == 4);
  check(report, "underlying max degree <= 11", max_underlying_degree(generated.graph) <= 11);
  bool routes_short = true;
  for (const Commodity& k : generated.commodities)
    routes_short &= static_cast<int>(k.route->size()) - 1 <= 5;
  check(report, "designated path length <= 5", routes_short);
  bool unique_routes = true;
  for (const Commodity& k : generated.commodities)
    unique_routes &= count_paths(generated.graph, k.source, k.destination, 2) == 1;
  check(report, "each commodity's qualifying path is unique", unique_routes);
  auto ids = label_map(generated.graph);
  bool literal_degrees = true;
  for (int v = 0; v < f.variables; ++v)
    for (const std::string& lit :
         {"x" + std::to_string(v + 1), "~x" + std::to_string(v + 1)}) {
      int id = ids.at(lit);
      literal_degrees &= generated.graph.in_degree(id) == 3;
      literal_degrees &= generated.graph.out_degree(id) == 8;
    }
  check(report, "literal vertices have 3 in- and 8 out-edges", literal_degrees);
  // Witness tables stay inside the closure for every choice of true literal.
  const Digraph closure = transitive_closure(generated.graph);
  bool witness_edges = true;
  for (size_t ci = 0; ci < f.clauses.size(); ++ci) {
    const std::string i = std::to_string(ci + 1);
    witness_edges &= closure.has_edge(ids.at("c" + i), ids.at("c~" + i));
    for (const auto& lit : f.clauses[ci].lits) {
      witness_edges &= closure.has_edge(ids.at("c'" + i), ids.at(lit_label(lit)));
      for (int s = 1; s <= 2; ++s) {
        const std::string sink = "t" + std::to_string(s) + "_c" + i + "_" + lit_label(lit);
        witness_edges &= closure.has_edge(ids.at("c''" + i), ids.at(sink));
        witness_edges &= closure.has_edge(ids.at("c~" + i), ids.at(sink));
      }
    }
  }
  for (int v = 0; v < f.variables; ++v) {
    const std::string i = std::to_string(v + 1);
    witness_edges &= closure.has_edge(ids.at("s_x" + i), ids.at("~x" + i));
    for (int s = 1; s <= 3; ++s) {
      witness_edges &= closure.has_edge(ids.at("s_x" + i), ids.at("t" + std::to_string(s) + "_x" + i));
      witness_edges &=
          closure.has_edge(ids.at("s_x" + i), ids.at("t" + std::to_string(s) + "_~x" + i));
    }
    witness_edges &= closure.has_edge(ids.at("x" + i), ids.at("t4_~x" + i));
  }
  check(report, "solution-table edges lie in the closure", witness_edges);

  // The remark about the clause tail vertex: in this reconstruction the
  // literal vertices carry the 3-in/8-out profile instead.
  bool tail_profile = true;
  for (size_t ci = 0; ci < f.clauses.size(); ++ci) {
    int id = ids.at("c~" + std::to_string(ci + 1));
    tail_profile &= generated.graph.in_degree(id) == 3 && generated.graph.out_degree(id) == 8;
  }
  report.soft_flags.push_back({"clause tail vertex has 3 in- and 8 out-edges", tail_profile,
                               tail_profile ? "" : "profile realized at literal vertices instead"});
  return report;
}

// --- documents ---------------------------------------------------------------

namespace {

std::vector<std::string> data_tokens(const std::string& text, bool dimacs_comments) {
  std::vector<std::string> tokens;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first[0] == '#' || (dimacs_comments && first == "c")) continue;
    tokens.push_back(first);
    std::string tok;
    while (ls >> tok) tokens.push_back(tok);
  }
  return tokens;
}

int to_int(const std::string& tok, const std::string& what) {
  try {
    size_t used = 0;
    int value = std::stoi(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return value;
  } catch (const std::exception&) {
    throw ParseError(what + ": expected an integer, got '" + tok + "'");
  }
}

}  // namespace

ThreePartitionInput parse_three_partition_input(const std::string& text) {
  auto tokens = data_tokens(text, false);
  if (tokens.size() < 2) throw ParseError("expected 'm B' followed by 3m integers");
  ThreePartitionInput input;
  input.m = to_int(tokens[0], "m");
  input.B = to_int(tokens[1], "B");
  for (size_t i = 2; i < tokens.size(); ++i)
    input.ints.push_back(to_int(tokens[i], "integer list"));
  check_three_partition_input(input);
  return input;
}

Sat22Formula parse_sat22_formula(const std::string& text) {
  auto tokens = data_tokens(text, true);
  if (tokens.size() < 4 || tokens[0] != "p" || tokens[1] != "cnf")
    throw ParseError("expected a 'p cnf <vars> <clauses>' header");
  Sat22Formula f;
  f.variables = to_int(tokens[2], "variable count");
  int clause_count = to_int(tokens[3], "clause count");
  size_t at = 4;
  for (int ci = 0; ci < clause_count; ++ci) {
    Sat22Clause clause;
    for (int li = 0; li < 3; ++li) {
      if (at >= tokens.size()) throw ParseError("unexpected end of clause list");
      int lit = to_int(tokens[at++], "literal");
      if (lit == 0) throw ParseError("clauses must have exactly three literals");
      clause.lits[li] = {std::abs(lit) - 1, lit > 0};
    }
    if (at >= tokens.size() || to_int(tokens[at++], "terminator") != 0)
      throw ParseError("clauses must terminate with 0");
    f.clauses.push_back(clause);
  }
  check_sat22_formula(f);
  return f;
}

Sat22Formula random_sat22_formula(std::mt19937& rng, int variables) {
  if (variables < 3 || variables % 3 != 0)
    throw std::invalid_argument("variable count must be a positive multiple of 3");
  std::vector<Sat22Literal> slots;
  for (int v = 0; v < variables; ++v)
    for (bool positive : {true, false}) {
      slots.push_back({v, positive});
      slots.push_back({v, positive});
    }
  while (true) {
    std::shuffle(slots.begin(), slots.end(), rng);
    // Repair clauses with repeated variables by swapping with later slots.
    bool ok = true;
    for (size_t c = 0; c + 2 < slots.size() && ok; c += 3) {
      for (int attempt = 0; attempt < 64; ++attempt) {
        if (slots[c].var != slots[c + 1].var && slots[c].var != slots[c + 2].var &&
            slots[c + 1].var != slots[c + 2].var)
          break;
        size_t swap_at = c + 3 + rng() % std::max<size_t>(1, slots.size() - c - 3);
        if (swap_at >= slots.size()) break;
        std::swap(slots[c + rng() % 3], slots[swap_at]);
      }
      ok &= slots[c].var != slots[c + 1].var && slots[c].var != slots[c + 2].var &&
            slots[c + 1].var != slots[c + 2].var;
    }
    if (!ok) continue;
    Sat22Formula f;
    f.variables = variables;
    for (size_t c = 0; c + 2 < slots.size(); c += 3)
      f.clauses.push_back({{slots[c], slots[c + 1], slots[c + 2]}});
    check_sat22_formula(f);
    return f;
  }
}

}  // namespace sortnet
