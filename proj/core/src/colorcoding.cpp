#include "sortnet/colorcoding.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>
#include <unordered_set>

#include "sortnet/errors.hpp"
#include "sortnet/rspp_t1.hpp"

namespace sortnet {

int64_t default_color_trials(int gamma, double epsilon, int64_t cap) {
  double t = std::exp(static_cast<double>(gamma)) * std::log(1.0 / epsilon);
  if (!(t < static_cast<double>(cap))) return cap;
  return std::max<int64_t>(1, static_cast<int64_t>(std::ceil(t)));
}

std::vector<Coloring> coloring_family(const Digraph& d, const std::vector<int>& terminals,
                                      int gamma, const ColorCodingConfig& cfg) {
  const int n = d.vertex_count();
  const int fixed = static_cast<int>(terminals.size());
  if (fixed > gamma) throw std::invalid_argument("more terminals than colors");
  Coloring base;
  base.colors = gamma;
  base.color_of.assign(n, -1);
  for (int i = 0; i < fixed; ++i) base.color_of[terminals[i]] = i;
  std::vector<int> free_vertices;
  for (int v = 0; v < n; ++v)
    if (base.color_of[v] < 0) free_vertices.push_back(v);
  const int pool = gamma - fixed;  // free vertices draw non-terminal colors

  std::vector<Coloring> family;
  if (free_vertices.empty() || pool == 0) {
    for (int v : free_vertices) base.color_of[v] = fixed % std::max(1, gamma);
    family.push_back(base);
    return family;
  }

  if (cfg.mode == ColoringMode::Exhaustive) {
    double size = std::pow(static_cast<double>(pool), static_cast<double>(free_vertices.size()));
    if (!(size <= static_cast<double>(cfg.max_colorings)))
      throw InfeasibleExhaustive("exhaustive coloring family exceeds the configured cap");
    std::vector<int> odometer(free_vertices.size(), 0);
    while (true) {
      Coloring c = base;
      for (size_t i = 0; i < free_vertices.size(); ++i)
        c.color_of[free_vertices[i]] = fixed + odometer[i];
      family.push_back(std::move(c));
      size_t i = 0;
      while (i < odometer.size() && ++odometer[i] == pool) odometer[i++] = 0;
      if (i == odometer.size()) break;
    }
  } else {
    int64_t trials = cfg.trials > 0 ? cfg.trials
                                    : default_color_trials(gamma, cfg.epsilon, cfg.max_colorings);
    trials = std::min(trials, cfg.max_colorings);
    std::mt19937 rng(cfg.seed);
    for (int64_t t = 0; t < trials; ++t) {
      Coloring c = base;
      for (int v : free_vertices) c.color_of[v] = fixed + static_cast<int>(rng() % pool);
      family.push_back(std::move(c));
    }
  }
  return family;
}

namespace {

constexpr int kMaxTemplateColors = 16;
using EdgeMask = std::array<uint64_t, 4>;  // bit u*gamma+v

struct EdgeMaskHash {
  size_t operator()(const EdgeMask& m) const {
    uint64_t h = 1469598103934665603ull;
    for (uint64_t w : m) {
      h ^= w;
      h *= 1099511628211ull;
    }
    return static_cast<size_t>(h);
  }
};

std::vector<int> collect_terminals(const std::vector<Commodity>& ks, int n) {
  std::vector<bool> seen(n, false);
  for (const Commodity& k : ks) seen[k.source] = seen[k.destination] = true;
  std::vector<int> terminals;
  for (int v = 0; v < n; ++v)
    if (seen[v]) terminals.push_back(v);
  return terminals;
}

// Simple color sequences from `from` to `to` over [gamma], shortest first,
// ties lexicographic.
std::vector<std::vector<int>> color_paths(int from, int to, int gamma) {
  std::vector<std::vector<int>> out;
  std::vector<int> seq{from};
  std::vector<bool> used(gamma, false);
  used[from] = true;
  std::function<void()> dfs = [&]() {
    if (seq.back() == to) {
      out.push_back(seq);
      return;
    }
    for (int c = 0; c < gamma; ++c) {
      if (used[c]) continue;
      used[c] = true;
      seq.push_back(c);
      dfs();
      seq.pop_back();
      used[c] = false;
    }
  };
  dfs();
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

struct TemplateGenerator {
  int gamma = 0;
  int64_t cap = 0;
  std::vector<std::vector<std::vector<int>>> per_commodity;
  std::vector<int> choice;
  bool exhausted = false;
  int64_t emitted = 0;
  std::unordered_set<EdgeMask, EdgeMaskHash> seen;

  TemplateGenerator(const std::vector<Commodity>& ks, const std::vector<int>& terminal_color,
                    int gamma, int64_t cap)
      : gamma(gamma), cap(cap) {
    if (gamma > kMaxTemplateColors)
      throw BudgetExceeded("template enumeration infeasible at this commodity count");
    for (const Commodity& k : ks) {
      per_commodity.push_back(
          color_paths(terminal_color[k.source], terminal_color[k.destination], gamma));
      if (per_commodity.back().empty()) exhausted = true;
    }
    choice.assign(ks.size(), 0);
  }

  // Next template new by edge set, in odometer order over per-commodity
  // paths (shortest-first within each commodity).
  std::optional<SolutionTemplate> next() {
    while (!exhausted) {
      if (++emitted > cap) throw BudgetExceeded("template enumeration exceeds cap");
      EdgeMask mask{};
      for (size_t i = 0; i < per_commodity.size(); ++i) {
        const auto& path = per_commodity[i][choice[i]];
        for (size_t j = 0; j + 1 < path.size(); ++j) {
          int bit = path[j] * gamma + path[j + 1];
          mask[bit >> 6] |= uint64_t{1} << (bit & 63);
        }
      }
      SolutionTemplate tpl;
      bool fresh = seen.insert(mask).second;
      if (fresh)
        for (size_t i = 0; i < per_commodity.size(); ++i)
          tpl.commodity_paths.push_back(per_commodity[i][choice[i]]);

      size_t i = 0;
      while (i < choice.size() &&
             ++choice[i] == static_cast<int>(per_commodity[i].size()))
        choice[i++] = 0;
      if (i == choice.size()) exhausted = true;

      if (fresh) {
        for (int u = 0; u < gamma; ++u)
          for (int v = 0; v < gamma; ++v) {
            int bit = u * gamma + v;
            if (mask[bit >> 6] >> (bit & 63) & 1) tpl.edges.emplace_back(u, v);
          }
        return tpl;
      }
    }
    return std::nullopt;
  }
};

// Discard rules: outdegree above target, a nontrivial SCC without a source
// color, a terminal-terminal edge outside the closure.
bool template_discarded(const SolutionTemplate& tpl, int gamma, int target, int fixed,
                        const std::vector<bool>& is_source_color,
                        const std::vector<int>& terminals, const Digraph& closure) {
  std::vector<int> outdeg(gamma, 0);
  for (auto [u, v] : tpl.edges) {
    if (++outdeg[u] > target) return true;
    if (u < fixed && v < fixed && !closure.has_edge(terminals[u], terminals[v])) return true;
  }
  Digraph tg(gamma);
  for (auto [u, v] : tpl.edges) tg.add_edge(u, v);
  for (const auto& component : strongly_connected_components(tg).components) {
    if (component.size() < 2) continue;
    bool has_source = false;
    for (int c : component) has_source |= c < fixed && is_source_color[c];
    if (!has_source) return true;
  }
  return false;
}

}  // namespace

std::vector<SolutionTemplate> enumerate_templates(const Digraph& d,
                                                  const std::vector<Commodity>& commodities,
                                                  const std::vector<int>& terminals, int gamma,
                                                  int target, int64_t max_templates) {
  const Digraph closure = transitive_closure(d);
  const int fixed = static_cast<int>(terminals.size());
  std::vector<int> terminal_color(d.vertex_count(), -1);
  for (int i = 0; i < fixed; ++i) terminal_color[terminals[i]] = i;
  std::vector<bool> is_source_color(gamma, false);
  for (const Commodity& k : commodities) is_source_color[terminal_color[k.source]] = true;

  TemplateGenerator gen(commodities, terminal_color, gamma, max_templates);
  std::vector<SolutionTemplate> out;
  while (auto tpl = gen.next())
    if (!template_discarded(*tpl, gamma, target, fixed, is_source_color, terminals, closure))
      out.push_back(std::move(*tpl));
  std::sort(out.begin(), out.end(), [](const SolutionTemplate& a, const SolutionTemplate& b) {
    if (a.edges.size() != b.edges.size()) return a.edges.size() < b.edges.size();
    return a.edges < b.edges;
  });
  return out;
}

std::optional<std::vector<std::vector<int>>> viable_vertices(
    const Digraph& d, const Digraph& closure, const std::vector<Commodity>& commodities,
    const std::vector<int>& terminals, const SolutionTemplate& tpl, const Coloring& coloring) {
  const int gamma = coloring.colors;
  const int fixed = static_cast<int>(terminals.size());

  std::vector<bool> used_color(gamma, false);
  for (auto [u, v] : tpl.edges) used_color[u] = used_color[v] = true;
  for (int i = 0; i < fixed; ++i) used_color[i] = true;

  std::vector<int> terminal_of_color(gamma, -1);
  for (int i = 0; i < fixed; ++i) terminal_of_color[i] = terminals[i];
  std::vector<bool> is_source_color(gamma, false);
  for (const Commodity& k : commodities)
    is_source_color[coloring.color_of[k.source]] = true;

  // Anchor source per nontrivial template SCC.
  Digraph tg(gamma);
  for (auto [u, v] : tpl.edges) tg.add_edge(u, v);
  std::vector<int> scc_anchor(gamma, -1);
  for (const auto& component : strongly_connected_components(tg).components) {
    if (component.size() < 2) continue;
    int anchor = -1;
    for (int c : component)
      if (c < fixed && is_source_color[c] && anchor < 0) anchor = terminal_of_color[c];
    if (anchor < 0) return std::nullopt;  // template shape is discarded
    for (int c : component) scc_anchor[c] = anchor;
  }

  std::vector<std::vector<int>> viable(gamma);
  for (int c = 0; c < gamma; ++c) {
    if (!used_color[c]) continue;
    if (c < fixed) {
      viable[c] = {terminal_of_color[c]};
      continue;
    }
    for (int v = 0; v < d.vertex_count(); ++v) {
      if (coloring.color_of[v] != c) continue;
      bool ok = true;
      if (scc_anchor[c] >= 0)
        ok = closure.has_edge(v, scc_anchor[c]) && closure.has_edge(scc_anchor[c], v);
      for (auto [a, b] : tpl.edges)
        if (b == c && a < fixed && !closure.has_edge(terminal_of_color[a], v)) ok = false;
      if (ok) viable[c].push_back(v);
    }
    if (viable[c].empty()) return std::nullopt;
  }

  // Partner fixpoint: each survivor keeps, per template out-edge of its
  // color, a surviving closure-successor. Pruning only removes vertices that
  // can never serve the template, so a realizable template stays viable.
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto [a, b] : tpl.edges) {
      auto& candidates = viable[a];
      for (size_t i = 0; i < candidates.size();) {
        int v = candidates[i];
        bool has_partner = false;
        for (int w : viable[b])
          if (closure.has_edge(v, w)) {
            has_partner = true;
            break;
          }
        if (has_partner) {
          ++i;
        } else {
          candidates.erase(candidates.begin() + static_cast<long>(i));
          changed = true;
        }
      }
      if (candidates.empty()) return std::nullopt;
    }
  }
  return viable;
}

namespace {

Digraph reconstruct_from_template(const Digraph& d, const Digraph& closure,
                                  const SolutionTemplate& tpl,
                                  const std::vector<std::vector<int>>& viable) {
  Digraph h(d.vertex_count(), d.labels());
  for (auto [a, b] : tpl.edges) {
    for (int v : viable[a]) {
      int partner = -1;
      for (int w : viable[b])
        if (closure.has_edge(v, w)) {
          partner = w;
          break;
        }
      assert(partner >= 0 && "fixpoint guarantees a partner");
      h.add_edge(v, partner);
    }
  }
  return h;
}

std::optional<Digraph> colorful_scan(const Digraph& d, const Digraph& closure,
                                     const std::vector<Commodity>& commodities, int target,
                                     const std::vector<int>& terminals, const Coloring& coloring,
                                     const ColorCodingConfig& cfg) {
  const int fixed = static_cast<int>(terminals.size());
  std::vector<int> terminal_color(d.vertex_count(), -1);
  for (int i = 0; i < fixed; ++i) terminal_color[terminals[i]] = i;
  std::vector<bool> is_source_color(coloring.colors, false);
  for (const Commodity& k : commodities) is_source_color[terminal_color[k.source]] = true;

  TemplateGenerator gen(commodities, terminal_color, coloring.colors, cfg.max_templates);
  while (auto tpl = gen.next()) {
    if (template_discarded(*tpl, coloring.colors, target, fixed, is_source_color, terminals,
                           closure))
      continue;
    auto viable = viable_vertices(d, closure, commodities, terminals, *tpl, coloring);
    if (!viable) continue;
    return reconstruct_from_template(d, closure, *tpl, *viable);
  }
  return std::nullopt;
}

}  // namespace

std::optional<Digraph> solve_colorful_rspp(const Digraph& d,
                                           const std::vector<Commodity>& commodities, int target,
                                           const Coloring& coloring,
                                           const ColorCodingConfig& cfg) {
  if (target < 2) throw std::invalid_argument("solve_colorful_rspp requires target >= 2");
  auto terminals = collect_terminals(commodities, d.vertex_count());
  const Digraph closure = transitive_closure(d);
  auto h = colorful_scan(d, closure, commodities, target, terminals, coloring, cfg);
#ifndef NDEBUG
  if (h) {
    Instance as_rspp{Variant::RSPP, d, commodities, target, std::nullopt};
    assert(validate_solution(as_rspp, *h).valid);
  }
#endif
  return h;
}

RsppByCommoditiesResult solve_rspp_by_commodities(const Instance& instance,
                                                  const ColorCodingConfig& cfg) {
  if (instance.variant != Variant::RSPP)
    throw std::invalid_argument("solve_rspp_by_commodities requires RSPP");
  check_instance(instance);

  if (instance.commodities.empty())
    return {true, Digraph(instance.graph.vertex_count(), instance.graph.labels()), true};

  if (instance.target <= 1) {
    auto h = solve_rspp_target1(instance);
    return {h.has_value(), h, true};
  }

  const Digraph closure = transitive_closure(instance.graph);
  for (const Commodity& k : instance.commodities)
    if (!closure.has_edge(k.source, k.destination)) return {false, std::nullopt, true};

  // Duplicate commodities are satisfied by one witness; drop them.
  std::vector<Commodity> ks;
  for (const Commodity& k : instance.commodities) {
    bool dup = false;
    for (const Commodity& seen : ks)
      dup |= seen.source == k.source && seen.destination == k.destination;
    if (!dup) ks.push_back(k);
  }
  const int k = static_cast<int>(ks.size());
  if (k > 10) throw BudgetExceeded("too many commodities for template enumeration");
  const int gamma = (1 << k) + k;

  auto terminals = collect_terminals(ks, instance.graph.vertex_count());
  auto family = coloring_family(instance.graph, terminals, gamma, cfg);
  for (const Coloring& coloring : family) {
    auto h = colorful_scan(instance.graph, closure, ks, instance.target, terminals, coloring,
                           cfg);
    if (h) {
      assert(validate_solution(instance, *h).valid);
      return {true, h, true};
    }
  }
  return {false, std::nullopt, cfg.mode == ColoringMode::Exhaustive};
}

Digraph normalize_solution_sccs(const Digraph& h, const std::vector<bool>& is_source) {
  Digraph out = h;
  for (const auto& component : strongly_connected_components(h).components) {
    if (component.size() < 2) continue;
    bool has_source = false;
    for (int v : component) has_source |= is_source[v];
    if (has_source) continue;
    std::vector<bool> in_component(h.vertex_count(), false);
    for (int v : component) in_component[v] = true;
    // Internal edges become one ascending path; in-edges land on its head.
    for (int u : component)
      for (int v : component)
        if (u != v) out.remove_edge(u, v);
    for (size_t i = 0; i + 1 < component.size(); ++i)
      out.add_edge(component[i], component[i + 1]);
    const int head = component.front();
    for (int u = 0; u < h.vertex_count(); ++u) {
      if (in_component[u]) continue;
      bool had = false;
      for (int v : component) had |= out.remove_edge(u, v);
      if (had) out.add_edge(u, head);
    }
  }
  return out;
}

}  // namespace sortnet
