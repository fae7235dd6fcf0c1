#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "modflow/graph.hpp"
#include "modflow/kernels/matching.hpp"
#include "modflow/mdtree.hpp"
#include "modflow/report.hpp"

namespace modflow {

/// Per-module summary: n is the vertex count (or b-sum), f the factor's optimum.
struct MatchStats {
  std::int64_t n = 0;
  std::int64_t f = 0;
};

/// Triple v_i^1, v_i^2, v_i^3 of module i is vertices 3i, 3i+1, 3i+2.
struct AuxBMatchingInstance {
  Graph graph;
  VertexWeights b;
};

inline AuxBMatchingInstance build_aux_instance(const Graph& quotient, std::span<const MatchStats> stats) {
  const auto l = quotient.num_vertices();
  if (l == 0) throw std::invalid_argument("auxiliary instance needs at least one module");
  if (stats.size() != l) throw std::invalid_argument("one MatchStats per quotient vertex required");
  std::vector<std::int64_t> b(3 * l);
  std::vector<std::vector<Vertex>> adj(3 * l);
  for (std::size_t i = 0; i < l; ++i) {
    const auto& s = stats[i];
    if (s.f < 0 || s.n < 2 * s.f) throw std::invalid_argument("module stats violate 0 <= 2f <= n");
    b[3 * i] = b[3 * i + 1] = s.f;
    b[3 * i + 2] = s.n - 2 * s.f;
    adj[3 * i].push_back(Vertex(3 * i + 1));
    adj[3 * i + 1].push_back(Vertex(3 * i));
  }
  for (const auto& e : quotient.edges())
    for (int c = 0; c < 3; ++c)
      for (int d = 0; d < 3; ++d) {
        adj[3 * e.u + c].push_back(Vertex(3 * e.v + d));
        adj[3 * e.v + d].push_back(Vertex(3 * e.u + c));
      }
  for (auto& list : adj) std::sort(list.begin(), list.end());
  return {Graph::from_adjacency(std::move(adj)), VertexWeights(std::move(b))};
}

namespace detail {

struct MatchingPass {
  std::int64_t value = 0;
  std::vector<Edge> witness;
};

/// Bottom-up evaluation over a binarized tree. With `b` null every vertex
/// counts once and a witness matching may be assembled on the way up.
inline MatchingPass match_bottom_up(const MDTree& t, const VertexWeights* b, bool want_witness) {
  std::vector<MatchStats> stats(t.size());
  std::vector<std::vector<Edge>> witness(want_witness ? t.size() : 0);
  std::vector<char> covered(want_witness ? t.num_vertices() : 0, 0);
  for (NodeId id : t.postorder()) {
    const auto& node = t[id];
    auto& out = stats[id];
    if (node.kind == NodeKind::leaf) {
      out = {b ? (*b)[node.vertices[0]] : 1, 0};
      continue;
    }
    if (node.kind == NodeKind::parallel) {
      for (NodeId c : node.children) {
        out.n += stats[c].n;
        out.f += stats[c].f;
        if (want_witness) {
          auto& w = witness[c];
          witness[id].insert(witness[id].end(), w.begin(), w.end());
          std::vector<Edge>().swap(w);
        }
      }
      continue;
    }
    std::vector<MatchStats> child(node.children.size());
    for (std::size_t i = 0; i < child.size(); ++i) {
      child[i] = stats[node.children[i]];
      out.n += child[i].n;
    }
    const auto aux = build_aux_instance(node.quotient, child);
    const auto sol = b_matching_reduced(aux.graph, aux.b);
    out.f = sol.value;
    if (!want_witness) continue;

    // Keep a_i pairs of each child's matching, then realize every cross
    // unit with fresh uncovered vertices of the two modules.
    auto& mine = witness[id];
    std::vector<std::vector<Vertex>> pool(child.size());
    for (std::size_t i = 0; i < child.size(); ++i) {
      const NodeId c = node.children[i];
      const auto intra = sol.multiplicity[edge_index(sol.edges, Vertex(3 * i), Vertex(3 * i + 1))];
      auto& w = witness[c];
      for (std::int64_t k = 0; k < intra; ++k) {
        mine.push_back(w[k]);
        covered[w[k].u] = covered[w[k].v] = 1;
      }
      for (Vertex v : t[c].vertices)
        if (covered[v]) covered[v] = 0;
        else pool[i].push_back(v);
      std::vector<Edge>().swap(w);
    }
    for (std::size_t k = 0; k < sol.edges.size(); ++k) {
      const auto i = static_cast<std::size_t>(sol.edges[k].u / 3), j = static_cast<std::size_t>(sol.edges[k].v / 3);
      if (i == j) continue;
      for (std::int64_t r = 0; r < sol.multiplicity[k]; ++r) {
        Vertex x = pool[i].back(), y = pool[j].back();
        pool[i].pop_back();
        pool[j].pop_back();
        mine.push_back({std::min(x, y), std::max(x, y)});
      }
    }
  }
  MatchingPass pass;
  pass.value = stats[t.root()].f;
  if (want_witness) pass.witness = std::move(witness[t.root()]);
  return pass;
}

inline SolveReport matching_report(const char* problem, const Graph& g, const MDTree& t, std::int64_t value) {
  SolveReport r;
  r.problem = problem;
  r.n = g.num_vertices();
  r.m = g.num_edges();
  r.tree = decomposition_stats(t);
  r.value = Value::finite(static_cast<wide_uint>(value));
  return r;
}

}  // namespace detail

/// Maximum matching size by compressing every non-parallel module to a
/// 3l-vertex b-matching instance.
inline SolveReport solve_matching_mw(const Graph& g) {
  Stopwatch clock;
  if (g.num_vertices() == 0) {
    SolveReport r;
    r.problem = "matching";
    r.value = Value::finite(0);
    return r;
  }
  const auto tree = decompose(g);
  const auto bin = binarize_series(tree);
  auto r = detail::matching_report("matching", g, tree, detail::match_bottom_up(bin, nullptr, false).value);
  r.time_ms = clock.elapsed_ms();
  return r;
}

/// Maximum b-matching value; modules are summarized by their b-sums.
inline SolveReport solve_bmatching_mw(const Graph& g, const VertexWeights& b) {
  Stopwatch clock;
  if (b.size() != g.num_vertices()) throw std::invalid_argument("b vector length differs from vertex count");
  if (g.num_vertices() == 0) {
    SolveReport r;
    r.problem = "bmatching";
    r.value = Value::finite(0);
    return r;
  }
  const auto tree = decompose(g);
  const auto bin = binarize_series(tree);
  auto r = detail::matching_report("bmatching", g, tree, detail::match_bottom_up(bin, &b, false).value);
  r.time_ms = clock.elapsed_ms();
  return r;
}

/// An explicit maximum matching, lifted module by module.
inline Matching matching_witness(const Graph& g) {
  Matching m;
  if (g.num_vertices() == 0) return m;
  m.edges = detail::match_bottom_up(binarize_series(decompose(g)), nullptr, true).witness;
  std::sort(m.edges.begin(), m.edges.end());
  return m;
}

}  // namespace modflow
