#include "barw/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>
#include <utility>

#include "barw/errors.hpp"

namespace barw {

namespace {

int parse_int(std::string_view text, const std::string& context) {
  int value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end)
    throw DomainError(context + ": expected an integer, got '" + std::string(text) + "'");
  return value;
}

}  // namespace

void GraphSpec::validate() const {
  if (vertex_count < 1) throw DomainError("graph: vertex_count must be >= 1");
  if (adjacency.size() != static_cast<std::size_t>(vertex_count))
    throw DomainError("graph: adjacency size differs from vertex_count");
  for (int v = 0; v < vertex_count; ++v) {
    const auto& nbrs = adjacency[static_cast<std::size_t>(v)];
    if (nbrs.empty() && !allow_self)
      throw DomainError("graph: vertex " + std::to_string(v) + " has no legal move target");
    std::vector<int> sorted(nbrs);
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw DomainError("graph: duplicate neighbour at vertex " + std::to_string(v));
    for (int w : sorted) {
      if (w < 0 || w >= vertex_count || w == v)
        throw DomainError("graph: bad neighbour " + std::to_string(w) + " at vertex " +
                          std::to_string(v));
    }
  }
}

GraphSpec complete_graph(int n, bool allow_self) {
  if (n < 1) throw DomainError("complete_graph: n must be >= 1");
  GraphSpec g{n, std::vector<std::vector<int>>(static_cast<std::size_t>(n)), allow_self};
  for (int v = 0; v < n; ++v) {
    auto& nbrs = g.adjacency[static_cast<std::size_t>(v)];
    nbrs.reserve(static_cast<std::size_t>(n - 1));
    for (int w = 0; w < n; ++w)
      if (w != v) nbrs.push_back(w);
  }
  g.validate();
  return g;
}

GraphSpec parse_graph(std::istream& in, const std::string& source_name) {
  std::string line;
  if (!std::getline(in, line)) throw DomainError(source_name + ": empty graph file");

  std::istringstream header(line);
  std::string vertices_field;
  std::string self_field;
  header >> vertices_field >> self_field;
  constexpr std::string_view kVertices = "vertices=";
  constexpr std::string_view kSelf = "self_loops=";
  if (!vertices_field.starts_with(kVertices) || !self_field.starts_with(kSelf))
    throw DomainError(source_name + ": header must read 'vertices=<count> self_loops=<0|1>'");
  const int count = parse_int(std::string_view(vertices_field).substr(kVertices.size()),
                              source_name + " header");
  const int self = parse_int(std::string_view(self_field).substr(kSelf.size()), source_name + " header");
  if (self != 0 && self != 1) throw DomainError(source_name + ": self_loops must be 0 or 1");
  if (count < 1) throw DomainError(source_name + ": vertices must be >= 1");

  GraphSpec g{count, std::vector<std::vector<int>>(static_cast<std::size_t>(count)), self == 1};
  std::set<std::pair<int, int>> seen;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream edge(line);
    std::string a_text;
    std::string b_text;
    std::string extra;
    edge >> a_text >> b_text;
    const std::string where = source_name + ":" + std::to_string(line_no);
    if (b_text.empty() || (edge >> extra)) throw DomainError(where + ": expected 'a b'");
    const int a = parse_int(a_text, where);
    const int b = parse_int(b_text, where);
    if (a < 0 || b < 0 || a >= count || b >= count)
      throw DomainError(where + ": vertex out of range");
    if (a == b) throw DomainError(where + ": self edge; use self_loops=1 instead");
    if (!seen.insert(std::minmax(a, b)).second) throw DomainError(where + ": duplicate edge");
    g.adjacency[static_cast<std::size_t>(a)].push_back(b);
    g.adjacency[static_cast<std::size_t>(b)].push_back(a);
  }
  g.validate();
  return g;
}

GraphSpec load_graph(std::string_view spec) {
  constexpr std::string_view kComplete = "complete:";
  if (spec.starts_with(kComplete)) {
    std::string_view rest = spec.substr(kComplete.size());
    bool self = true;
    if (const auto colon = rest.find(':'); colon != std::string_view::npos) {
      const int flag = parse_int(rest.substr(colon + 1), "graph spec");
      if (flag != 0 && flag != 1) throw DomainError("graph spec: self flag must be 0 or 1");
      self = flag == 1;
      rest = rest.substr(0, colon);
    }
    return complete_graph(parse_int(rest, "graph spec"), self);
  }
  const std::string path(spec);
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open graph file '" + path + "'");
  return parse_graph(in, path);
}

}  // namespace barw
