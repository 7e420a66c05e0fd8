#include "oim/graph.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <utility>

#include "oim/errors.hpp"
#include "oim/fmt.hpp"

namespace oim {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    std::size_t start = i;
    while (i < line.size() &&
           !std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

long parse_int(const std::string& tok, int line_no, const char* what) {
  long value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw ParseError(line_no, std::string("expected integer ") + what +
                                  ", got '" + tok + "'");
  return value;
}

double parse_real(const std::string& tok, int line_no, const char* what) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw ParseError(line_no, std::string("expected real ") + what +
                                  ", got '" + tok + "'");
  return value;
}

bool is_comment_or_blank(const std::string& line) {
  for (char c : line) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '#';
  }
  return true;  // blank
}

}  // namespace

MaxCutGraph parse_edge_list(std::istream& in) {
  MaxCutGraph g;
  std::string line;
  int line_no = 0;
  long declared_edges = -1;
  std::set<std::pair<int, int>> seen;

  while (std::getline(in, line)) {
    ++line_no;
    if (is_comment_or_blank(line)) continue;
    const auto fields = split_fields(line);

    if (declared_edges < 0) {
      // Header "N M".
      if (fields.size() != 2)
        throw ParseError(line_no, "header must be 'N M'");
      const long n = parse_int(fields[0], line_no, "node count");
      const long m = parse_int(fields[1], line_no, "edge count");
      if (n < 1) throw ParseError(line_no, "node count must be >= 1");
      if (m < 0) throw ParseError(line_no, "edge count must be >= 0");
      g.n = static_cast<int>(n);
      declared_edges = m;
      g.edges.reserve(static_cast<std::size_t>(m));
      continue;
    }

    if (static_cast<long>(g.edges.size()) == declared_edges)
      throw ParseError(line_no, "more edges than declared in header");
    if (fields.size() != 3)
      throw ParseError(line_no, "edge line must be 'i j w'");
    const long i1 = parse_int(fields[0], line_no, "node index");
    const long j1 = parse_int(fields[1], line_no, "node index");
    const double w = parse_real(fields[2], line_no, "edge weight");
    if (i1 < 1 || i1 > g.n || j1 < 1 || j1 > g.n)
      throw ParseError(line_no, "node index out of range 1..N");
    if (i1 == j1) throw ParseError(line_no, "self-loop");
    int i = static_cast<int>(i1) - 1;
    int j = static_cast<int>(j1) - 1;
    if (i > j) std::swap(i, j);
    if (!seen.insert({i, j}).second)
      throw ParseError(line_no, "duplicate edge");
    g.edges.push_back(Edge{i, j, w});
  }

  if (declared_edges < 0) throw ParseError(line_no + 1, "missing 'N M' header");
  if (static_cast<long>(g.edges.size()) != declared_edges)
    throw ParseError(line_no + 1,
                     "edge count mismatch: header declares " +
                         std::to_string(declared_edges) + ", found " +
                         std::to_string(g.edges.size()));
  return g;
}

MaxCutGraph parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  return parse_edge_list(in);
}

MaxCutGraph load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return parse_edge_list(in);
}

void serialize_edge_list(const MaxCutGraph& g, std::ostream& out) {
  out << g.n << ' ' << g.edges.size() << '\n';
  for (const Edge& e : g.edges)
    out << e.i + 1 << ' ' << e.j + 1 << ' ' << g17(e.w) << '\n';
}

std::string serialize_edge_list(const MaxCutGraph& g) {
  std::ostringstream out;
  serialize_edge_list(g, out);
  return out.str();
}

double cut_value(const MaxCutGraph& g, const std::vector<int>& spins) {
  if (static_cast<int>(spins.size()) != g.n)
    throw DimensionError("spin vector length does not match node count");
  double cut = 0.0;
  for (const Edge& e : g.edges)
    cut += e.w * (1.0 - spins[static_cast<std::size_t>(e.i)] *
                            spins[static_cast<std::size_t>(e.j)]) /
           2.0;
  return cut;
}

}  // namespace oim
