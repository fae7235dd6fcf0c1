#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "modflow/graph.hpp"
#include "modflow/mdtree.hpp"
#include "modflow/report.hpp"
#include "modflow/wide.hpp"

namespace modflow {

struct TriangleStats {
  std::uint64_t n = 1;
  std::uint64_t m = 0;
  wide_uint t = 0;

  friend bool operator==(const TriangleStats&, const TriangleStats&) = default;
};

inline TriangleStats combine_parallel(std::span<const TriangleStats> children) {
  if (children.size() < 2) throw std::invalid_argument("parallel combination needs at least two children");
  TriangleStats out{0, 0, 0};
  for (const auto& c : children) {
    out.n += c.n;
    out.m += c.m;
    out.t += c.t;
  }
  return out;
}

/// Join of two modules: every vertex of one sees every vertex of the other.
inline TriangleStats combine_series_binary(const TriangleStats& a, const TriangleStats& b) {
  TriangleStats out;
  out.n = a.n + b.n;
  out.m = a.m + b.m + a.n * b.n;
  out.t = a.t + b.t + wide_uint(a.m) * b.n + wide_uint(b.m) * a.n;
  return out;
}

/// Sum over quotient triangles {i,j,k} of n_i n_j n_k, via W = A D A with
/// D = diag(n): each triangle is seen once from each of its three edges.
inline wide_uint separated_triangles(const Graph& quotient, std::span<const std::uint64_t> sizes) {
  const auto l = quotient.num_vertices();
  if (sizes.size() != l) throw std::invalid_argument("one size per quotient vertex required");
  for (auto s : sizes)
    if (s == 0) throw std::invalid_argument("module sizes must be positive");
  const detail::AdjacencyMatrix a(quotient);
  wide_uint total = 0;
  for (std::size_t i = 0; i < l; ++i) {
    const auto* ai = a.row(i);
    for (Vertex jv : quotient.neighbors(Vertex(i))) {
      const auto j = static_cast<std::size_t>(jv);
      if (j <= i) continue;
      const auto* aj = a.row(j);
      wide_uint w = 0;
      for (std::size_t k = 0; k < l; ++k)
        if (ai[k] & aj[k]) w += sizes[k];
      total += wide_uint(sizes[i]) * sizes[j] * w;
    }
  }
  return total / 3;
}

inline TriangleStats combine_prime(const Graph& quotient, std::span<const TriangleStats> children) {
  const auto l = quotient.num_vertices();
  if (children.size() != l) throw std::invalid_argument("one child per quotient vertex required");
  TriangleStats out{0, 0, 0};
  std::vector<std::uint64_t> sizes(l);
  for (std::size_t i = 0; i < l; ++i) {
    out.n += children[i].n;
    out.m += children[i].m;
    out.t += children[i].t;
    sizes[i] = children[i].n;
  }
  for (const auto& e : quotient.edges()) {
    const auto& x = children[e.u];
    const auto& y = children[e.v];
    out.m += x.n * y.n;
    out.t += wide_uint(x.m) * y.n + wide_uint(y.m) * x.n;
  }
  out.t += separated_triangles(quotient, sizes);
  return out;
}

/// Exact triangle count, bottom-up over the binarized decomposition tree.
inline SolveReport count_triangles_mw(const Graph& g) {
  Stopwatch clock;
  SolveReport r;
  r.problem = "triangles";
  r.n = g.num_vertices();
  r.m = g.num_edges();
  if (g.num_vertices() == 0) {
    r.value = Value::finite(0);
    return r;
  }
  const auto tree = decompose(g);
  const auto bin = binarize_series(tree);
  std::vector<TriangleStats> stats(bin.size());
  std::vector<TriangleStats> kids;
  for (NodeId id : bin.postorder()) {
    const auto& node = bin[id];
    kids.clear();
    for (NodeId c : node.children) kids.push_back(stats[c]);
    switch (node.kind) {
      case NodeKind::leaf: stats[id] = TriangleStats{}; break;
      case NodeKind::parallel: stats[id] = combine_parallel(kids); break;
      case NodeKind::series: stats[id] = combine_series_binary(kids[0], kids[1]); break;
      case NodeKind::prime: stats[id] = combine_prime(node.quotient, kids); break;
    }
  }
  r.tree = decomposition_stats(tree);
  r.value = Value::finite(stats[bin.root()].t);
  r.time_ms = clock.elapsed_ms();
  return r;
}

}  // namespace modflow
