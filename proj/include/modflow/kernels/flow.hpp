#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "modflow/graph.hpp"

namespace modflow {

using Capacity = std::int64_t;

/// Directed network with non-negative capacities. Undirected edges may be
/// added directly; they carry flow in either direction up to their capacity.
class FlowNetwork {
 public:
  struct Arc {
    Vertex from;
    Vertex to;
    Capacity capacity;
    bool undirected;
  };

  FlowNetwork(std::size_t num_nodes, Vertex source, Vertex sink) : n_(num_nodes), source_(source), sink_(sink) {
    if (source == sink) throw std::invalid_argument("flow network source equals sink");
    check(source);
    check(sink);
  }

  std::size_t add_arc(Vertex u, Vertex v, Capacity c) { return push(u, v, c, false); }
  std::size_t add_edge(Vertex u, Vertex v, Capacity c) { return push(u, v, c, true); }

  std::size_t num_nodes() const noexcept { return n_; }
  std::size_t num_arcs() const noexcept { return arcs_.size(); }
  Vertex source() const noexcept { return source_; }
  Vertex sink() const noexcept { return sink_; }
  const std::vector<Arc>& arcs() const noexcept { return arcs_; }

  Capacity total_capacity() const {
    Capacity sum = 0;
    for (const auto& a : arcs_)
      if (__builtin_add_overflow(sum, a.capacity, &sum)) throw std::overflow_error("capacity sum overflows int64");
    return sum;
  }

 private:
  void check(Vertex v) const {
    if (v < 0 || static_cast<std::size_t>(v) >= n_) throw std::out_of_range("flow network node out of range");
  }
  std::size_t push(Vertex u, Vertex v, Capacity c, bool undirected) {
    check(u);
    check(v);
    if (c < 0) throw std::invalid_argument("negative capacity");
    arcs_.push_back({u, v, c, undirected});
    return arcs_.size() - 1;
  }

  std::size_t n_;
  Vertex source_;
  Vertex sink_;
  std::vector<Arc> arcs_;
};

struct FlowResult {
  Capacity value = 0;
  /// Flow per arc in construction order. For undirected edges this is the net
  /// flow from `from` to `to`, negative when it runs backwards.
  std::vector<Capacity> flow;
  /// Nodes reachable from the source in the final residual graph.
  std::vector<char> source_side;
};

namespace detail {

class Dinic {
 public:
  explicit Dinic(const FlowNetwork& net) : net_(net), n_(net.num_nodes()) {
    const auto& arcs = net.arcs();
    head_.assign(n_ + 1, 0);
    for (const auto& a : arcs) {
      ++head_[a.from + 1];
      ++head_[a.to + 1];
    }
    for (std::size_t i = 0; i < n_; ++i) head_[i + 1] += head_[i];
    std::vector<std::size_t> fill(head_.begin(), head_.end() - 1);
    const auto m = arcs.size();
    to_.resize(2 * m);
    rescap_.resize(2 * m);
    adj_.resize(2 * m);
    for (std::size_t i = 0; i < m; ++i) {
      const auto& a = arcs[i];
      to_[2 * i] = a.to;
      rescap_[2 * i] = a.capacity;
      to_[2 * i + 1] = a.from;
      rescap_[2 * i + 1] = a.undirected ? a.capacity : 0;
      adj_[fill[a.from]++] = static_cast<std::uint32_t>(2 * i);
      adj_[fill[a.to]++] = static_cast<std::uint32_t>(2 * i + 1);
    }
    level_.resize(n_);
    cursor_.resize(n_);
  }

  FlowResult run() {
    const Vertex s = net_.source();
    const Vertex t = net_.sink();
    Capacity total = 0;
    while (bfs(s, t)) {
      for (std::size_t v = 0; v < n_; ++v) cursor_[v] = head_[v];
      while (Capacity pushed = dfs(s, t, std::numeric_limits<Capacity>::max())) total += pushed;
    }
    FlowResult out;
    out.value = total;
    const auto& arcs = net_.arcs();
    out.flow.resize(arcs.size());
    for (std::size_t i = 0; i < arcs.size(); ++i) out.flow[i] = arcs[i].capacity - rescap_[2 * i];
    out.source_side.assign(n_, 0);
    for (std::size_t v = 0; v < n_; ++v) out.source_side[v] = level_[v] >= 0;
    return out;
  }

 private:
  bool bfs(Vertex s, Vertex t) {
    std::fill(level_.begin(), level_.end(), -1);
    queue_.clear();
    queue_.push_back(s);
    level_[s] = 0;
    for (std::size_t h = 0; h < queue_.size(); ++h) {
      Vertex u = queue_[h];
      for (std::size_t k = head_[u]; k < head_[u + 1]; ++k) {
        auto e = adj_[k];
        if (rescap_[e] > 0 && level_[to_[e]] < 0) {
          level_[to_[e]] = level_[u] + 1;
          queue_.push_back(to_[e]);
        }
      }
    }
    return level_[t] >= 0;
  }

  Capacity dfs(Vertex u, Vertex t, Capacity limit) {
    if (u == t) return limit;
    for (auto& k = cursor_[u]; k < head_[u + 1]; ++k) {
      auto e = adj_[k];
      Vertex w = to_[e];
      if (rescap_[e] <= 0 || level_[w] != level_[u] + 1) continue;
      if (Capacity got = dfs(w, t, std::min(limit, rescap_[e]))) {
        rescap_[e] -= got;
        rescap_[e ^ 1U] += got;
        return got;
      }
    }
    return 0;
  }

  const FlowNetwork& net_;
  std::size_t n_;
  std::vector<std::size_t> head_;
  std::vector<std::uint32_t> adj_;
  std::vector<Vertex> to_;
  std::vector<Capacity> rescap_;
  std::vector<int> level_;
  std::vector<std::size_t> cursor_;
  std::vector<Vertex> queue_;
};

}  // namespace detail

/// Maximum source-sink flow by blocking flows over BFS level graphs.
inline FlowResult max_flow(const FlowNetwork& net) { return detail::Dinic(net).run(); }

/// Node ids used by vertex_split: vertex v becomes in(v) -> out(v).
inline Vertex split_in(Vertex v) { return 2 * v; }
inline Vertex split_out(Vertex v) { return 2 * v + 1; }

/// Reduces an s-t vertex-capacitated flow instance to an arc-capacitated
/// network: v_in -> v_out with capacity c(v) and, for every edge {u,v}, arcs
/// u_out -> v_in and v_out -> u_in with capacity sum(c) + 1. The source is
/// out(s) and the sink in(t).
inline FlowNetwork vertex_split(const Graph& g, const VertexWeights& c, Vertex s, Vertex t) {
  const auto n = g.num_vertices();
  if (s == t) throw std::invalid_argument("vertex_split requires s != t");
  if (s < 0 || t < 0 || static_cast<std::size_t>(s) >= n || static_cast<std::size_t>(t) >= n)
    throw std::out_of_range("vertex_split endpoint out of range");
  if (c.size() != n) throw std::invalid_argument("capacity vector length differs from vertex count");
  Capacity infinite = 1;
  for (auto x : c.values())
    if (__builtin_add_overflow(infinite, x, &infinite)) throw std::overflow_error("capacity sum overflows int64");
  FlowNetwork net(2 * n, split_out(s), split_in(t));
  for (Vertex v = 0; v < static_cast<Vertex>(n); ++v)
    net.add_arc(split_in(v), split_out(v), (v == s || v == t) ? infinite : c[v]);
  for (Vertex u = 0; u < static_cast<Vertex>(n); ++u)
    for (Vertex v : g.neighbors(u)) net.add_arc(split_out(u), split_in(v), infinite);
  return net;
}

/// Whole-graph unit-capacity flow: the number of edge-disjoint s-t paths.
inline Capacity unit_edge_flow(const Graph& g, Vertex s, Vertex t) {
  FlowNetwork net(g.num_vertices(), s, t);
  for (const auto& e : g.edges()) net.add_edge(e.u, e.v, 1);
  return max_flow(net).value;
}

}  // namespace modflow
