#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace barw {

// Finite graph for the particle-level process. `allow_self` adds each
// vertex to its own move targets (the complete-graph mean-field convention).
struct GraphSpec {
  int vertex_count = 0;
  std::vector<std::vector<int>> adjacency;
  bool allow_self = false;

  // Number of legal move targets from v.
  int target_count(int v) const {
    return static_cast<int>(adjacency[static_cast<std::size_t>(v)].size()) + (allow_self ? 1 : 0);
  }

  // Throws DomainError on isolated vertices, duplicate or out-of-range
  // neighbours.
  void validate() const;
};

GraphSpec complete_graph(int n, bool allow_self);

// Text format: first line "vertices=<count> self_loops=<0|1>", then one
// 0-based undirected edge "a b" per line. Duplicate edges are rejected.
GraphSpec parse_graph(std::istream& in, const std::string& source_name = "<stream>");

// "complete:<n>" (self moves on) or "complete:<n>:<0|1>", else a file path.
GraphSpec load_graph(std::string_view spec);

}  // namespace barw
