#pragma once

#include <array>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "sortnet/instance.hpp"

namespace sortnet {

// --- number partitioning source ------------------------------------------

struct ThreePartitionInput {
  int m = 0;
  int B = 0;
  std::vector<int> ints;  // 3m distinct values, each in (B/4, B/2), sum m*B
};

// Throws ValidationError when the invariants fail.
void check_three_partition_input(const ThreePartitionInput& input);

// Tree-shaped instance with target 2 realizing the partition question:
// RSPP by default; `routed` assigns every commodity its unique tree path and
// switches the variant to SPP.
Instance gen_3partition(const ThreePartitionInput& input, bool routed);

// Exhaustive search for a partition into triples summing to B; triples are
// index triples into `ints`, each ascending, list ascending.
std::optional<std::vector<std::array<int, 3>>> solve_3partition(const ThreePartitionInput& input);

// The explicit solution-edge tables for a known partition. Throws
// InvalidSourceSolution when the triples do not solve the input.
Digraph three_partition_witness(const Instance& generated, const ThreePartitionInput& input,
                                const std::vector<std::array<int, 3>>& triples);

// --- bounded-occurrence satisfiability source -------------------------------

struct Sat22Literal {
  int var = 0;  // 0-based
  bool positive = true;

  bool operator==(const Sat22Literal&) const = default;
};

struct Sat22Clause {
  std::array<Sat22Literal, 3> lits;
};

// Three distinct variables per clause; each literal occurs in exactly two
// clauses (so the clause count is 4n/3).
struct Sat22Formula {
  int variables = 0;
  std::vector<Sat22Clause> clauses;
};

void check_sat22_formula(const Sat22Formula& f);

// Path-length-bounded routing instance (target 2, path length 4, underlying
// degree at most 7) whose answer matches satisfiability.
Instance gen_3sat22_rspp_pl(const Sat22Formula& f);

// Routed instance (target 4, route lengths at most 5, underlying degree at
// most 11) whose answer matches satisfiability.
Instance gen_3sat22_spp(const Sat22Formula& f);

// Truth-table scan; exact at desk scale.
std::optional<std::vector<bool>> solve_sat22(const Sat22Formula& f);

Digraph sat22_rspp_pl_witness(const Instance& generated, const Sat22Formula& f,
                              const std::vector<bool>& assignment);
Digraph sat22_spp_witness(const Instance& generated, const Sat22Formula& f,
                          const std::vector<bool>& assignment);

// --- structural checkers ------------------------------------------------------

struct GadgetCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct GadgetReport {
  std::vector<GadgetCheck> checks;      // required structural claims
  std::vector<GadgetCheck> soft_flags;  // tracked remarks, not required
  bool pass = true;                     // conjunction of `checks`
};

GadgetReport check_three_partition_reduction(const Instance& generated,
                                             const ThreePartitionInput& input);
GadgetReport check_sat22_rspp_pl_reduction(const Instance& generated, const Sat22Formula& f);
GadgetReport check_sat22_spp_reduction(const Instance& generated, const Sat22Formula& f);

// --- source documents -------------------------------------------------------

// "m B" on the first data line, then the 3m integers; '#' comments allowed.
ThreePartitionInput parse_three_partition_input(const std::string& text);

// DIMACS-style: "p cnf <vars> <clauses>" then three nonzero literals and a
// terminating 0 per clause; 'c' and '#' comment lines allowed.
Sat22Formula parse_sat22_formula(const std::string& text);

// Random formula with every literal in exactly two clauses (a perfect
// matching of literal slots into clauses over distinct variables).
Sat22Formula random_sat22_formula(std::mt19937& rng, int variables);

}  // namespace sortnet
