#pragma once

#include <optional>
#include <string>

#include "sortnet/colorcoding.hpp"
#include "sortnet/instance.hpp"
#include "sortnet/oracle.hpp"
#include "sortnet/treewidth.hpp"

namespace sortnet {

enum class Algorithm { Auto, Oracle, T1, SppKernel, SppRamsey, RsppColorcode, Twdp };

std::string to_string(Algorithm a);
std::optional<Algorithm> algorithm_from_string(const std::string& s);

struct SolveOptions {
  Algorithm algorithm = Algorithm::Auto;
  OracleConfig oracle;
  ColorCodingConfig coloring;
  TwdpConfig twdp;
  std::optional<NiceTreeDecomposition> decomposition;  // external, for Twdp
  int treewidth_exact_cap = 13;
};

struct SolveOutcome {
  bool yes = false;
  std::optional<Digraph> solution;
  Algorithm used = Algorithm::Oracle;
  // False only for NO answers from random-mode color coding.
  bool exact = true;
};

// The solver the Auto policy would pick; throws std::invalid_argument for a
// forced algorithm that does not fit the instance's variant or target.
Algorithm choose_algorithm(const Instance& instance, const SolveOptions& options);

SolveOutcome solve_with(const Instance& instance, const SolveOptions& options = {});

}  // namespace sortnet
