#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace oim {

struct Edge {
  int i = 0;  // 0-based, i < j
  int j = 0;
  double w = 0.0;
};

inline bool operator==(const Edge& a, const Edge& b) {
  return a.i == b.i && a.j == b.j && a.w == b.w;
}

// Undirected weighted graph for Max-Cut instances. Edges are stored in
// input order with canonical orientation i < j; no self-loops, no
// duplicate pairs.
struct MaxCutGraph {
  int n = 0;
  std::vector<Edge> edges;
};

inline bool operator==(const MaxCutGraph& a, const MaxCutGraph& b) {
  return a.n == b.n && a.edges == b.edges;
}

// Edge-list text format: '#' comment lines anywhere, first data line
// "N M", then exactly M data lines "i j w" (1-indexed, i != j).
// Malformed input throws ParseError carrying the offending line number.
MaxCutGraph parse_edge_list(std::istream& in);
MaxCutGraph parse_edge_list(const std::string& text);
MaxCutGraph load_edge_list(const std::string& path);

// Emits "N M" then one "i j w" line per edge, 1-indexed, i < j, weights
// with 17 significant digits. parse(serialize(g)) == g.
void serialize_edge_list(const MaxCutGraph& g, std::ostream& out);
std::string serialize_edge_list(const MaxCutGraph& g);

// Total weight crossing the partition induced by spins:
// sum over edges of E_ij * (1 - s_i s_j) / 2.
double cut_value(const MaxCutGraph& g, const std::vector<int>& spins);

}  // namespace oim
