#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "modflow/graph.hpp"

namespace modflow {

struct CutResult {
  std::int64_t value = 0;
  /// One side of a minimum cut, sorted.
  std::vector<Vertex> side;
};

/// Dense symmetric non-negative weight matrix.
class WeightMatrix {
 public:
  explicit WeightMatrix(std::size_t n) : n_(n), w_(n * n, 0) {}
  std::size_t size() const noexcept { return n_; }
  std::int64_t operator()(std::size_t u, std::size_t v) const { return w_[u * n_ + v]; }
  void add(std::size_t u, std::size_t v, std::int64_t x) {
    if (x < 0) throw std::invalid_argument("negative edge weight");
    if (u == v) return;
    w_[u * n_ + v] += x;
    w_[v * n_ + u] += x;
  }

 private:
  std::size_t n_;
  std::vector<std::int64_t> w_;
};

/// Global minimum weighted cut by maximum-adjacency orderings, O(n^3).
inline CutResult stoer_wagner_mincut(WeightMatrix w) {
  const auto n = w.size();
  if (n < 2) throw std::invalid_argument("minimum cut needs at least two vertices");
  std::vector<std::vector<std::int64_t>> a(n, std::vector<std::int64_t>(n));
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v) a[u][v] = w(u, v);
  // members[v]: original vertices merged into super-vertex v
  std::vector<std::vector<Vertex>> members(n);
  for (std::size_t v = 0; v < n; ++v) members[v] = {static_cast<Vertex>(v)};
  std::vector<char> alive(n, 1);
  CutResult best;
  best.value = std::numeric_limits<std::int64_t>::max();
  std::vector<std::int64_t> key(n);
  std::vector<char> added(n);
  for (std::size_t phase = 0; phase + 1 < n; ++phase) {
    std::fill(key.begin(), key.end(), 0);
    std::fill(added.begin(), added.end(), 0);
    std::size_t prev = n, last = n;
    for (std::size_t step = 0; step < n - phase; ++step) {
      std::size_t pick = n;
      for (std::size_t v = 0; v < n; ++v)
        if (alive[v] && !added[v] && (pick == n || key[v] > key[pick])) pick = v;
      added[pick] = 1;
      prev = last;
      last = pick;
      for (std::size_t v = 0; v < n; ++v)
        if (alive[v] && !added[v]) key[v] += a[pick][v];
    }
    if (key[last] < best.value) {
      best.value = key[last];
      best.side = members[last];
    }
    // merge last into prev
    alive[last] = 0;
    members[prev].insert(members[prev].end(), members[last].begin(), members[last].end());
    for (std::size_t v = 0; v < n; ++v) {
      a[prev][v] += a[last][v];
      a[v][prev] = a[prev][v];
    }
    a[prev][prev] = 0;
  }
  std::sort(best.side.begin(), best.side.end());
  return best;
}

/// Stoer-Wagner over a graph with per-edge weights in `g.edges()` order.
inline CutResult stoer_wagner_mincut(const Graph& g, std::span<const std::int64_t> weights) {
  const auto edges = g.edges();
  if (weights.size() != edges.size()) throw std::invalid_argument("one weight per edge required");
  WeightMatrix w(g.num_vertices());
  for (std::size_t i = 0; i < edges.size(); ++i) w.add(edges[i].u, edges[i].v, weights[i]);
  return stoer_wagner_mincut(std::move(w));
}

inline CutResult stoer_wagner_mincut(const Graph& g) {
  std::vector<std::int64_t> ones(g.num_edges(), 1);
  return stoer_wagner_mincut(g, ones);
}

}  // namespace modflow
