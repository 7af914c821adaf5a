#include "sortnet/dispatch.hpp"

#include <stdexcept>

#include "sortnet/rspp_t1.hpp"
#include "sortnet/spp_commodities.hpp"

namespace sortnet {

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::Auto: return "auto";
    case Algorithm::Oracle: return "oracle";
    case Algorithm::T1: return "t1";
    case Algorithm::SppKernel: return "spp-kernel";
    case Algorithm::SppRamsey: return "spp-ramsey";
    case Algorithm::RsppColorcode: return "rspp-colorcode";
    case Algorithm::Twdp: return "twdp";
  }
  return "?";
}

std::optional<Algorithm> algorithm_from_string(const std::string& s) {
  for (Algorithm a : {Algorithm::Auto, Algorithm::Oracle, Algorithm::T1, Algorithm::SppKernel,
                      Algorithm::SppRamsey, Algorithm::RsppColorcode, Algorithm::Twdp})
    if (to_string(a) == s) return a;
  return std::nullopt;
}

namespace {

bool oracle_friendly(const Instance& instance) {
  return instance.graph.vertex_count() <= 6 && instance.commodities.size() <= 3;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

}  // namespace

Algorithm choose_algorithm(const Instance& instance, const SolveOptions& options) {
  if (options.algorithm != Algorithm::Auto) {
    const Algorithm a = options.algorithm;
    switch (a) {
      case Algorithm::T1:
        require(instance.variant == Variant::RSPP && instance.target <= 1,
                "t1 requires an RSPP instance with target <= 1");
        break;
      case Algorithm::SppKernel:
        require(instance.variant == Variant::SPP && instance.target <= 1,
                "spp-kernel requires an SPP instance with target <= 1");
        break;
      case Algorithm::SppRamsey:
        require(instance.variant == Variant::SPP, "spp-ramsey requires an SPP instance");
        break;
      case Algorithm::RsppColorcode:
        require(instance.variant == Variant::RSPP, "rspp-colorcode requires an RSPP instance");
        break;
      case Algorithm::Twdp:
        require(instance.variant != Variant::RSPP, "twdp requires SPP or RSPP_PL");
        break;
      default:
        break;
    }
    return a;
  }
  if (oracle_friendly(instance)) return Algorithm::Oracle;
  if (instance.variant == Variant::RSPP && instance.target <= 1) return Algorithm::T1;
  if (instance.variant == Variant::SPP && instance.target <= 1) return Algorithm::SppKernel;
  if (instance.variant == Variant::RSPP_PL) return Algorithm::Twdp;
  if (instance.variant == Variant::SPP && options.decomposition) return Algorithm::Twdp;
  if (instance.variant == Variant::RSPP) return Algorithm::RsppColorcode;
  return Algorithm::SppRamsey;
}

SolveOutcome solve_with(const Instance& instance, const SolveOptions& options) {
  check_instance(instance);
  SolveOutcome outcome;
  outcome.used = choose_algorithm(instance, options);
  switch (outcome.used) {
    case Algorithm::Oracle: {
      auto cover = solve_exact(instance, options.oracle);
      outcome.yes = cover.has_value();
      if (cover) outcome.solution = cover_union(instance, *cover);
      break;
    }
    case Algorithm::T1: {
      auto h = solve_rspp_target1(instance);
      outcome.yes = h.has_value();
      outcome.solution = h;
      break;
    }
    case Algorithm::SppKernel:
    case Algorithm::SppRamsey: {
      auto result = solve_spp_by_commodities(instance, options.oracle);
      outcome.yes = result.yes;
      outcome.solution = result.solution;
      break;
    }
    case Algorithm::RsppColorcode: {
      auto result = solve_rspp_by_commodities(instance, options.coloring);
      outcome.yes = result.yes;
      outcome.solution = result.solution;
      outcome.exact = result.exact;
      break;
    }
    case Algorithm::Twdp: {
      NiceTreeDecomposition td;
      if (options.decomposition) {
        td = *options.decomposition;
      } else if (instance.graph.vertex_count() <= options.treewidth_exact_cap) {
        td = build_nice_tree_decomposition(instance.graph, TreewidthMode::Exact,
                                           options.treewidth_exact_cap);
      } else {
        td = build_nice_tree_decomposition(instance.graph, TreewidthMode::MinFill);
      }
      auto result = solve_twdp(instance, td, options.twdp);
      outcome.yes = result.yes;
      outcome.solution = result.solution;
      break;
    }
    case Algorithm::Auto:
      break;  // unreachable: choose_algorithm never returns Auto
  }
  return outcome;
}

}  // namespace sortnet
