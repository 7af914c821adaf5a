#pragma once

#include <string>
#include <vector>

#include "sortnet/instance.hpp"

namespace sortnet {

// Instance and solution documents are JSON with optional leading-'#' comment
// lines (used for provenance headers). Unknown fields are rejected.
//
// Instance document:
//   problem      "SPP" | "RSPP" | "RSPP_PL"
//   vertices     list of unique label strings
//   edges        list of [from_label, to_label]
//   commodities  list of {source, destination, path?}
//   target       integer >= 0
//   path_length  integer >= 1 (RSPP_PL only)
//
// Solution document:
//   edges        list of [from_label, to_label]

Instance parse_instance(const std::string& text);
std::string serialize_instance(const Instance& instance,
                               const std::vector<std::string>& comments = {});

// Solutions are resolved against an instance's vertex labels.
Digraph parse_solution(const std::string& text, const Instance& instance);
std::string serialize_solution(const Digraph& solution,
                               const std::vector<std::string>& comments = {});

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace sortnet
