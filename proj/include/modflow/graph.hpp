#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace modflow {

using Vertex = std::int32_t;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Error categories raised while building or parsing graphs.
enum class GraphErrc {
  out_of_range,
  duplicate_edge,
  self_loop,
  malformed_header,
  token_count,
  edge_count,
  bad_value,
  io,
};

inline const char* to_string(GraphErrc c) {
  switch (c) {
    case GraphErrc::out_of_range: return "vertex out of range";
    case GraphErrc::duplicate_edge: return "duplicate edge";
    case GraphErrc::self_loop: return "self-loop";
    case GraphErrc::malformed_header: return "malformed header";
    case GraphErrc::token_count: return "token count mismatch";
    case GraphErrc::edge_count: return "edge count mismatch";
    case GraphErrc::bad_value: return "bad value";
    case GraphErrc::io: return "io error";
  }
  return "graph error";
}

class GraphError : public std::runtime_error {
 public:
  GraphError(GraphErrc code, const std::string& what, std::size_t line = 0)
      : std::runtime_error(line ? what + " (line " + std::to_string(line) + ")" : what),
        code_(code),
        line_(line) {}

  GraphErrc code() const noexcept { return code_; }
  /// 1-based input line, 0 when not parsing.
  std::size_t line() const noexcept { return line_; }

 private:
  GraphErrc code_;
  std::size_t line_;
};

/// Immutable undirected simple graph in compressed adjacency form.
/// Neighbor lists are sorted ascending and symmetric.
class Graph {
 public:
  Graph() : offsets_(1, 0) {}

  /// Internal fast path: `adjacency` must already be symmetric, sorted and
  /// loop/duplicate free.
  static Graph from_adjacency(std::vector<std::vector<Vertex>> adjacency) {
    Graph g;
    g.offsets_.assign(adjacency.size() + 1, 0);
    for (std::size_t v = 0; v < adjacency.size(); ++v)
      g.offsets_[v + 1] = g.offsets_[v] + adjacency[v].size();
    g.adj_.reserve(g.offsets_.back());
    for (auto& list : adjacency) g.adj_.insert(g.adj_.end(), list.begin(), list.end());
    return g;
  }

  /// Internal fast path over CSR arrays with the same preconditions.
  static Graph from_csr(std::vector<std::size_t> offsets, std::vector<Vertex> adj) {
    Graph g;
    g.offsets_ = std::move(offsets);
    g.adj_ = std::move(adj);
    return g;
  }

  std::size_t num_vertices() const noexcept { return offsets_.size() - 1; }
  std::size_t num_edges() const noexcept { return adj_.size() / 2; }

  std::span<const Vertex> neighbors(Vertex v) const {
    auto i = static_cast<std::size_t>(v);
    return {adj_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
  }

  std::size_t degree(Vertex v) const {
    auto i = static_cast<std::size_t>(v);
    return offsets_[i + 1] - offsets_[i];
  }

  bool adjacent(Vertex u, Vertex v) const {
    auto nb = neighbors(degree(u) <= degree(v) ? u : v);
    Vertex other = degree(u) <= degree(v) ? v : u;
    return std::binary_search(nb.begin(), nb.end(), other);
  }

  /// Edges with u < v in lexicographic order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(num_edges());
    for (Vertex u = 0; u < static_cast<Vertex>(num_vertices()); ++u)
      for (Vertex v : neighbors(u))
        if (u < v) out.push_back({u, v});
    return out;
  }

  std::size_t min_degree() const {
    std::size_t best = num_vertices() ? degree(0) : 0;
    for (Vertex v = 1; v < static_cast<Vertex>(num_vertices()); ++v) best = std::min(best, degree(v));
    return best;
  }

  /// Checks symmetry, sortedness, and absence of loops and parallel edges.
  bool valid() const {
    const auto n = static_cast<Vertex>(num_vertices());
    for (Vertex u = 0; u < n; ++u) {
      auto nb = neighbors(u);
      for (std::size_t i = 0; i < nb.size(); ++i) {
        if (nb[i] < 0 || nb[i] >= n || nb[i] == u) return false;
        if (i && nb[i - 1] >= nb[i]) return false;
        auto back = neighbors(nb[i]);
        if (!std::binary_search(back.begin(), back.end(), u)) return false;
      }
    }
    return true;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.offsets_ == b.offsets_ && a.adj_ == b.adj_;
  }

 private:
  std::vector<std::size_t> offsets_;
  std::vector<Vertex> adj_;
};

/// Builds a graph from an edge list, rejecting out-of-range endpoints,
/// self-loops, and repeated unordered pairs.
inline Graph build_graph(std::size_t n, std::span<const Edge> edges) {
  std::vector<std::size_t> deg(n + 1, 0);
  for (const auto& e : edges) {
    if (e.u < 0 || e.v < 0 || static_cast<std::size_t>(e.u) >= n || static_cast<std::size_t>(e.v) >= n)
      throw GraphError(GraphErrc::out_of_range,
                       "edge {" + std::to_string(e.u) + "," + std::to_string(e.v) + "} out of range for n=" +
                           std::to_string(n));
    if (e.u == e.v) throw GraphError(GraphErrc::self_loop, "self-loop at vertex " + std::to_string(e.u));
    ++deg[e.u + 1];
    ++deg[e.v + 1];
  }
  std::partial_sum(deg.begin(), deg.end(), deg.begin());
  std::vector<Vertex> adj(deg.back());
  std::vector<std::size_t> fill(deg.begin(), deg.end() - 1);
  for (const auto& e : edges) {
    adj[fill[e.u]++] = e.v;
    adj[fill[e.v]++] = e.u;
  }
  for (std::size_t v = 0; v < n; ++v) {
    auto first = adj.begin() + static_cast<std::ptrdiff_t>(deg[v]);
    auto last = adj.begin() + static_cast<std::ptrdiff_t>(deg[v + 1]);
    std::sort(first, last);
    if (auto dup = std::adjacent_find(first, last); dup != last)
      throw GraphError(GraphErrc::duplicate_edge,
                       "duplicate edge {" + std::to_string(v) + "," + std::to_string(*dup) + "}");
  }
  return Graph::from_csr(std::move(deg), std::move(adj));
}

inline Graph build_graph(std::size_t n, std::initializer_list<Edge> edges) {
  return build_graph(n, std::span<const Edge>(edges.begin(), edges.size()));
}

/// Per-vertex non-negative integer weights (capacities or degree bounds).
class VertexWeights {
 public:
  VertexWeights() = default;
  explicit VertexWeights(std::vector<std::int64_t> values) : values_(std::move(values)) {
    for (auto x : values_)
      if (x < 0) throw GraphError(GraphErrc::bad_value, "negative vertex weight");
  }
  static VertexWeights uniform(std::size_t n, std::int64_t value) {
    return VertexWeights(std::vector<std::int64_t>(n, value));
  }

  std::size_t size() const noexcept { return values_.size(); }
  std::int64_t operator[](Vertex v) const { return values_[static_cast<std::size_t>(v)]; }
  std::span<const std::int64_t> values() const noexcept { return values_; }
  std::int64_t total() const { return std::accumulate(values_.begin(), values_.end(), std::int64_t{0}); }

 private:
  std::vector<std::int64_t> values_;
};

/// Relabeled subgraph induced by `vertices`; the returned map sends each new
/// vertex id to its id in `g`. New ids follow the order of `vertices`.
inline std::pair<Graph, std::vector<Vertex>> induced_subgraph(const Graph& g, std::span<const Vertex> vertices) {
  const auto n = g.num_vertices();
  std::vector<Vertex> local(n, -1);
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    Vertex v = vertices[i];
    if (v < 0 || static_cast<std::size_t>(v) >= n)
      throw GraphError(GraphErrc::out_of_range, "vertex " + std::to_string(v) + " out of range");
    if (local[v] != -1) throw GraphError(GraphErrc::bad_value, "vertex listed twice in induced subgraph");
    local[v] = static_cast<Vertex>(i);
  }
  const bool monotone = std::is_sorted(vertices.begin(), vertices.end());
  std::vector<std::size_t> offsets(vertices.size() + 1, 0);
  std::vector<Vertex> adj;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const auto begin = adj.size();
    for (Vertex w : g.neighbors(vertices[i]))
      if (local[w] != -1) adj.push_back(local[w]);
    if (!monotone) std::sort(adj.begin() + static_cast<std::ptrdiff_t>(begin), adj.end());
    offsets[i + 1] = adj.size();
  }
  return {Graph::from_csr(std::move(offsets), std::move(adj)), std::vector<Vertex>(vertices.begin(), vertices.end())};
}

/// Connected components, each sorted, ordered by smallest vertex.
inline std::vector<std::vector<Vertex>> connected_components(const Graph& g) {
  const auto n = static_cast<Vertex>(g.num_vertices());
  std::vector<char> seen(n, 0);
  std::vector<std::vector<Vertex>> out;
  std::vector<Vertex> stack;
  for (Vertex r = 0; r < n; ++r) {
    if (seen[r]) continue;
    auto& comp = out.emplace_back();
    seen[r] = 1;
    stack.push_back(r);
    while (!stack.empty()) {
      Vertex u = stack.back();
      stack.pop_back();
      comp.push_back(u);
      for (Vertex w : g.neighbors(u))
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
    }
    std::sort(comp.begin(), comp.end());
  }
  return out;
}

/// Components of the complement graph without materializing it.
inline std::vector<std::vector<Vertex>> complement_components(const Graph& g) {
  const auto n = static_cast<Vertex>(g.num_vertices());
  std::vector<Vertex> remaining(n);
  std::iota(remaining.begin(), remaining.end(), 0);
  std::vector<char> mark(n, 0);
  std::vector<std::vector<Vertex>> out;
  std::vector<Vertex> queue;
  std::vector<Vertex> keep;
  while (!remaining.empty()) {
    auto& comp = out.emplace_back();
    queue.assign(1, remaining.front());
    remaining.erase(remaining.begin());
    for (std::size_t head = 0; head < queue.size(); ++head) {
      Vertex u = queue[head];
      comp.push_back(u);
      for (Vertex w : g.neighbors(u)) mark[w] = 1;
      keep.clear();
      for (Vertex w : remaining) (mark[w] ? keep : queue).push_back(w);
      for (Vertex w : g.neighbors(u)) mark[w] = 0;
      remaining.swap(keep);
    }
    std::sort(comp.begin(), comp.end());
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return out;
}

namespace detail {

/// Dense symmetric 0/1 adjacency, for small quotient-sized graphs.
class AdjacencyMatrix {
 public:
  explicit AdjacencyMatrix(const Graph& g) : n_(g.num_vertices()), bits_(n_ * n_, 0) {
    for (Vertex u = 0; u < static_cast<Vertex>(n_); ++u)
      for (Vertex v : g.neighbors(u)) bits_[static_cast<std::size_t>(u) * n_ + v] = 1;
  }
  std::size_t size() const noexcept { return n_; }
  bool operator()(std::size_t u, std::size_t v) const { return bits_[u * n_ + v] != 0; }
  const std::uint8_t* row(std::size_t u) const { return bits_.data() + u * n_; }

 private:
  std::size_t n_;
  std::vector<std::uint8_t> bits_;
};

inline Graph complete_graph(std::size_t n) {
  std::vector<std::vector<Vertex>> adj(n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      if (u != v) adj[u].push_back(static_cast<Vertex>(v));
  return Graph::from_adjacency(std::move(adj));
}

inline Graph edgeless_graph(std::size_t n) { return Graph::from_adjacency(std::vector<std::vector<Vertex>>(n)); }

}  // namespace detail

}  // namespace modflow
