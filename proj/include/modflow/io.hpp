#pragma once

#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "modflow/graph.hpp"
#include "modflow/kernels/flow.hpp"

namespace modflow {

enum class GraphFormat { edge_list, dimacs };

inline GraphFormat parse_format(const std::string& name) {
  if (name == "edge-list") return GraphFormat::edge_list;
  if (name == "dimacs") return GraphFormat::dimacs;
  throw GraphError(GraphErrc::bad_value, "unknown graph format '" + name + "'");
}

namespace detail {

/// Non-blank, non-comment lines with their 1-based line numbers.
class LineReader {
 public:
  explicit LineReader(std::istream& in, char comment) : in_(in), comment_(comment) {}

  bool next(std::vector<std::string>& tokens) {
    std::string text;
    while (std::getline(in_, text)) {
      ++line_;
      auto first = text.find_first_not_of(" \t\r");
      if (first == std::string::npos || text[first] == comment_) continue;
      tokens.clear();
      std::istringstream ss(text);
      for (std::string tok; ss >> tok;) tokens.push_back(tok);
      return true;
    }
    if (in_.bad()) throw GraphError(GraphErrc::io, "read failure", line_);
    return false;
  }
  std::size_t line() const noexcept { return line_; }

 private:
  std::istream& in_;
  char comment_;
  std::size_t line_ = 0;
};

inline std::int64_t parse_int(const std::string& tok, std::size_t line) {
  std::size_t used = 0;
  std::int64_t x = 0;
  try {
    x = std::stoll(tok, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != tok.size() || tok.empty())
    throw GraphError(GraphErrc::bad_value, "expected an integer, got '" + tok + "'", line);
  return x;
}

inline Vertex parse_endpoint(const std::string& tok, std::size_t line, std::int64_t n, std::int64_t shift) {
  const std::int64_t x = parse_int(tok, line) - shift;
  if (x < 0 || x >= n)
    throw GraphError(GraphErrc::out_of_range, "vertex " + tok + " out of range for n=" + std::to_string(n), line);
  return static_cast<Vertex>(x);
}

inline Graph finish(std::size_t n, std::vector<Edge>& edges, const std::vector<std::size_t>& lines) {
  try {
    return build_graph(n, edges);
  } catch (const GraphError& e) {
    if (e.code() != GraphErrc::duplicate_edge && e.code() != GraphErrc::self_loop) throw;
  }
  // Re-scan to attach the offending line number.
  std::vector<Edge> seen;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    Edge e{std::min(edges[i].u, edges[i].v), std::max(edges[i].u, edges[i].v)};
    if (e.u == e.v) throw GraphError(GraphErrc::self_loop, "self-loop at vertex " + std::to_string(e.u), lines[i]);
    seen.push_back(e);
  }
  std::vector<std::size_t> order(seen.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return seen[a] < seen[b]; });
  std::size_t worst = 0;
  Edge dup{};
  for (std::size_t i = 1; i < order.size(); ++i)
    if (seen[order[i]] == seen[order[i - 1]] && (worst == 0 || lines[order[i]] < worst)) {
      worst = lines[order[i]];
      dup = seen[order[i]];
    }
  throw GraphError(GraphErrc::duplicate_edge,
                   "duplicate edge {" + std::to_string(dup.u) + "," + std::to_string(dup.v) + "}", worst);
}

}  // namespace detail

/// Edge list: header "n m", then m lines "u v" (0-based); '#' lines ignored.
inline Graph read_edge_list(std::istream& in) {
  detail::LineReader reader(in, '#');
  std::vector<std::string> tok;
  if (!reader.next(tok)) throw GraphError(GraphErrc::malformed_header, "missing 'n m' header", reader.line());
  if (tok.size() != 2) throw GraphError(GraphErrc::malformed_header, "header must be 'n m'", reader.line());
  const auto n = detail::parse_int(tok[0], reader.line());
  const auto m = detail::parse_int(tok[1], reader.line());
  if (n < 0 || m < 0) throw GraphError(GraphErrc::malformed_header, "negative count in header", reader.line());
  std::vector<Edge> edges;
  std::vector<std::size_t> lines;
  while (reader.next(tok)) {
    if (tok.size() != 2)
      throw GraphError(GraphErrc::token_count, "edge line needs 2 tokens, got " + std::to_string(tok.size()),
                       reader.line());
    if (static_cast<std::int64_t>(edges.size()) == m)
      throw GraphError(GraphErrc::edge_count, "more edges than the header's m=" + std::to_string(m), reader.line());
    edges.push_back({detail::parse_endpoint(tok[0], reader.line(), n, 0),
                     detail::parse_endpoint(tok[1], reader.line(), n, 0)});
    lines.push_back(reader.line());
  }
  if (static_cast<std::int64_t>(edges.size()) != m)
    throw GraphError(GraphErrc::edge_count,
                     "header declares " + std::to_string(m) + " edges, found " + std::to_string(edges.size()),
                     reader.line());
  return detail::finish(static_cast<std::size_t>(n), edges, lines);
}

/// DIMACS: "p edge n m", then "e u v" lines (1-based); 'c' lines ignored.
inline Graph read_dimacs(std::istream& in) {
  detail::LineReader reader(in, 'c');
  std::vector<std::string> tok;
  if (!reader.next(tok)) throw GraphError(GraphErrc::malformed_header, "missing 'p edge n m' header", reader.line());
  if (tok.size() != 4 || tok[0] != "p" || (tok[1] != "edge" && tok[1] != "col"))
    throw GraphError(GraphErrc::malformed_header, "header must be 'p edge n m'", reader.line());
  const auto n = detail::parse_int(tok[2], reader.line());
  const auto m = detail::parse_int(tok[3], reader.line());
  if (n < 0 || m < 0) throw GraphError(GraphErrc::malformed_header, "negative count in header", reader.line());
  std::vector<Edge> edges;
  std::vector<std::size_t> lines;
  while (reader.next(tok)) {
    if (tok[0] != "e") throw GraphError(GraphErrc::malformed_header, "unexpected line type '" + tok[0] + "'", reader.line());
    if (tok.size() != 3)
      throw GraphError(GraphErrc::token_count, "edge line needs 'e u v', got " + std::to_string(tok.size()) + " tokens",
                       reader.line());
    if (static_cast<std::int64_t>(edges.size()) == m)
      throw GraphError(GraphErrc::edge_count, "more edges than the header's m=" + std::to_string(m), reader.line());
    edges.push_back({detail::parse_endpoint(tok[1], reader.line(), n, 1),
                     detail::parse_endpoint(tok[2], reader.line(), n, 1)});
    lines.push_back(reader.line());
  }
  if (static_cast<std::int64_t>(edges.size()) != m)
    throw GraphError(GraphErrc::edge_count,
                     "header declares " + std::to_string(m) + " edges, found " + std::to_string(edges.size()),
                     reader.line());
  return detail::finish(static_cast<std::size_t>(n), edges, lines);
}

inline Graph read_graph(std::istream& in, GraphFormat format) {
  return format == GraphFormat::dimacs ? read_dimacs(in) : read_edge_list(in);
}

inline Graph read_graph(const std::string& path, GraphFormat format) {
  std::ifstream in(path);
  if (!in) throw GraphError(GraphErrc::io, "cannot open '" + path + "'");
  return read_graph(in, format);
}

/// Writes edges sorted lexicographically as u < v pairs.
inline void write_graph(const Graph& g, std::ostream& out, GraphFormat format = GraphFormat::edge_list) {
  const auto edges = g.edges();
  if (format == GraphFormat::dimacs) {
    out << "p edge " << g.num_vertices() << ' ' << edges.size() << '\n';
    for (const auto& e : edges) out << "e " << e.u + 1 << ' ' << e.v + 1 << '\n';
  } else {
    out << g.num_vertices() << ' ' << edges.size() << '\n';
    for (const auto& e : edges) out << e.u << ' ' << e.v << '\n';
  }
}

inline void write_graph(const Graph& g, const std::string& path, GraphFormat format = GraphFormat::edge_list) {
  std::ofstream out(path);
  if (!out) throw GraphError(GraphErrc::io, "cannot write '" + path + "'");
  write_graph(g, out, format);
}

/// One non-negative integer per line, in vertex order.
inline VertexWeights read_values(std::istream& in, std::size_t expected) {
  detail::LineReader reader(in, '#');
  std::vector<std::string> tok;
  std::vector<std::int64_t> values;
  while (reader.next(tok)) {
    if (tok.size() != 1) throw GraphError(GraphErrc::token_count, "expected one value per line", reader.line());
    auto x = detail::parse_int(tok[0], reader.line());
    if (x < 0) throw GraphError(GraphErrc::bad_value, "negative value", reader.line());
    values.push_back(x);
  }
  if (values.size() != expected)
    throw GraphError(GraphErrc::token_count,
                     "expected " + std::to_string(expected) + " values, found " + std::to_string(values.size()));
  return VertexWeights(std::move(values));
}

inline VertexWeights read_values(const std::string& path, std::size_t expected) {
  std::ifstream in(path);
  if (!in) throw GraphError(GraphErrc::io, "cannot open '" + path + "'");
  return read_values(in, expected);
}

/// DIMACS max-flow: "p max N A", "n s s", "n t t", "a u v cap" (1-based).
/// Undirected edges become two opposite arcs; zero-capacity arcs are omitted.
inline void write_dimacs_flow(const FlowNetwork& net, std::ostream& out) {
  std::size_t arcs = 0;
  for (const auto& a : net.arcs())
    if (a.capacity > 0) arcs += a.undirected ? 2 : 1;
  out << "p max " << net.num_nodes() << ' ' << arcs << '\n';
  out << "n " << net.source() + 1 << " s\n";
  out << "n " << net.sink() + 1 << " t\n";
  for (const auto& a : net.arcs()) {
    if (a.capacity == 0) continue;
    out << "a " << a.from + 1 << ' ' << a.to + 1 << ' ' << a.capacity << '\n';
    if (a.undirected) out << "a " << a.to + 1 << ' ' << a.from + 1 << ' ' << a.capacity << '\n';
  }
}

inline FlowNetwork read_dimacs_flow(std::istream& in) {
  detail::LineReader reader(in, 'c');
  std::vector<std::string> tok;
  if (!reader.next(tok) || tok.size() != 4 || tok[0] != "p" || tok[1] != "max")
    throw GraphError(GraphErrc::malformed_header, "header must be 'p max N A'", reader.line());
  const auto n = detail::parse_int(tok[2], reader.line());
  const auto a = detail::parse_int(tok[3], reader.line());
  if (n < 2 || a < 0) throw GraphError(GraphErrc::malformed_header, "bad node or arc count", reader.line());
  Vertex s = -1, t = -1;
  struct Arc {
    Vertex u, v;
    Capacity c;
  };
  std::vector<Arc> arcs;
  while (reader.next(tok)) {
    if (tok[0] == "n") {
      if (tok.size() != 3) throw GraphError(GraphErrc::token_count, "node line needs 'n id s|t'", reader.line());
      Vertex v = detail::parse_endpoint(tok[1], reader.line(), n, 1);
      if (tok[2] == "s") s = v;
      else if (tok[2] == "t") t = v;
      else throw GraphError(GraphErrc::bad_value, "node designator must be s or t", reader.line());
    } else if (tok[0] == "a") {
      if (tok.size() != 4) throw GraphError(GraphErrc::token_count, "arc line needs 'a u v cap'", reader.line());
      auto u = detail::parse_endpoint(tok[1], reader.line(), n, 1);
      auto v = detail::parse_endpoint(tok[2], reader.line(), n, 1);
      auto c = detail::parse_int(tok[3], reader.line());
      if (c < 0) throw GraphError(GraphErrc::bad_value, "negative capacity", reader.line());
      arcs.push_back({u, v, c});
    } else {
      throw GraphError(GraphErrc::malformed_header, "unexpected line type '" + tok[0] + "'", reader.line());
    }
  }
  if (s < 0 || t < 0) throw GraphError(GraphErrc::malformed_header, "missing source or sink line", reader.line());
  if (static_cast<std::int64_t>(arcs.size()) != a)
    throw GraphError(GraphErrc::edge_count,
                     "header declares " + std::to_string(a) + " arcs, found " + std::to_string(arcs.size()),
                     reader.line());
  if (s == t) throw GraphError(GraphErrc::bad_value, "source equals sink");
  FlowNetwork net(static_cast<std::size_t>(n), s, t);
  for (const auto& x : arcs) net.add_arc(x.u, x.v, x.c);
  return net;
}

}  // namespace modflow
