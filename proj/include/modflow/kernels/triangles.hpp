#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "modflow/graph.hpp"
#include "modflow/wide.hpp"

namespace modflow {

/// Whole-graph triangle count: orient edges from lower to higher
/// (degree, id) rank and intersect forward neighbor lists.
inline wide_uint count_triangles_forward(const Graph& g) {
  const auto n = static_cast<Vertex>(g.num_vertices());
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
    return g.degree(a) != g.degree(b) ? g.degree(a) < g.degree(b) : a < b;
  });
  std::vector<Vertex> rank(n);
  for (Vertex i = 0; i < n; ++i) rank[order[i]] = i;
  std::vector<std::vector<Vertex>> out(n);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v : g.neighbors(u))
      if (rank[v] > rank[u]) out[u].push_back(rank[v]);
    std::sort(out[u].begin(), out[u].end());
  }
  wide_uint total = 0;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex rv : out[u]) {
      const auto& a = out[u];
      const auto& b = out[order[rv]];
      std::size_t i = 0, j = 0;
      while (i < a.size() && j < b.size()) {
        if (a[i] < b[j]) ++i;
        else if (a[i] > b[j]) ++j;
        else {
          ++total;
          ++i;
          ++j;
        }
      }
    }
  return total;
}

}  // namespace modflow
