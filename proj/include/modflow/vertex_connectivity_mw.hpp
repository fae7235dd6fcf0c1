#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "modflow/graph.hpp"
#include "modflow/kernels/flow.hpp"
#include "modflow/mdtree.hpp"
#include "modflow/report.hpp"

namespace modflow {

/// Either a finite non-negative capacity or infinity.
class CutValue {
 public:
  static CutValue infinite() { return CutValue(); }
  static CutValue finite(Capacity v) { return CutValue(v); }

  bool is_infinite() const noexcept { return !v_.has_value(); }
  Capacity get() const {
    if (!v_) throw std::logic_error("cut value is infinite");
    return *v_;
  }
  CutValue plus(Capacity x) const { return v_ ? CutValue(*v_ + x) : *this; }
  friend CutValue min(const CutValue& a, const CutValue& b) {
    if (a.is_infinite()) return b;
    if (b.is_infinite()) return a;
    return CutValue(std::min(*a.v_, *b.v_));
  }
  friend bool operator==(const CutValue&, const CutValue&) = default;

  Value as_value() const { return v_ ? Value::finite(static_cast<wide_uint>(*v_)) : Value::unbounded(); }

 private:
  CutValue() = default;
  explicit CutValue(Capacity v) : v_(v) {}
  std::optional<Capacity> v_;
};

/// Minimum over non-adjacent quotient pairs of their vertex-capacitated
/// flow; infinite when the quotient is complete.
inline CutValue quotient_global_vertex_cut(const Graph& quotient, const VertexWeights& c) {
  const auto l = quotient.num_vertices();
  if (l < 2) throw std::invalid_argument("quotient cut needs at least two vertices");
  if (c.size() != l) throw std::invalid_argument("one capacity per quotient vertex required");
  auto best = CutValue::infinite();
  for (Vertex a = 0; a < Vertex(l); ++a)
    for (Vertex b = a + 1; b < Vertex(l); ++b)
      if (!quotient.adjacent(a, b)) best = min(best, CutValue::finite(max_flow(vertex_split(quotient, c, a, b)).value));
  return best;
}

/// Maximum s-t flow under vertex capacities (s and t uncapacitated):
/// one flow on the quotient at the deepest module holding both, plus the
/// capacities of s's neighbors outside that module.
inline SolveReport max_vertex_flow_mw(const Graph& g, const VertexWeights& c, Vertex s, Vertex t) {
  Stopwatch clock;
  const auto n = g.num_vertices();
  if (s == t) throw std::invalid_argument("vertex flow needs s != t");
  if (s < 0 || t < 0 || std::size_t(s) >= n || std::size_t(t) >= n) throw std::out_of_range("s or t out of range");
  if (c.size() != n) throw std::invalid_argument("capacity vector length differs from vertex count");
  SolveReport r;
  r.problem = "vflow";
  r.n = n;
  r.m = g.num_edges();
  if (g.adjacent(s, t)) {
    r.value = Value::unbounded();
    r.note = "s and t adjacent";
    r.time_ms = clock.elapsed_ms();
    return r;
  }
  const auto tree = decompose(g);
  r.tree = decomposition_stats(tree);
  const NodeId at = lca(tree, s, t);
  const auto& node = tree[at];
  Capacity inner = 0;
  if (node.kind == NodeKind::series) throw std::logic_error("non-adjacent s and t cannot meet at a series node");
  if (node.kind == NodeKind::prime) {
    const auto l = node.children.size();
    std::vector<Capacity> cap(l, 0);
    Vertex qs = -1, qt = -1;
    for (std::size_t i = 0; i < l; ++i) {
      const auto& vs = tree[node.children[i]].vertices;
      for (Vertex v : vs) cap[i] += c[v];
      if (std::binary_search(vs.begin(), vs.end(), s)) qs = Vertex(i);
      if (std::binary_search(vs.begin(), vs.end(), t)) qt = Vertex(i);
    }
    inner = max_flow(vertex_split(node.quotient, VertexWeights(std::move(cap)), qs, qt)).value;
    r.kernel_nodes = 2 * l;
  }
  Capacity outside = 0;
  for (Vertex w : g.neighbors(s))
    if (!std::binary_search(node.vertices.begin(), node.vertices.end(), w)) outside += c[w];
  r.value = Value::finite(static_cast<wide_uint>(inner + outside));
  r.time_ms = clock.elapsed_ms();
  return r;
}

/// Cheapest vertex set whose removal disconnects the graph; unbounded for
/// complete graphs.
inline SolveReport global_vertex_mincut_mw(const Graph& g, const VertexWeights& c) {
  Stopwatch clock;
  const auto n = g.num_vertices();
  if (n < 2) throw std::invalid_argument("global vertex cut needs at least two vertices");
  if (c.size() != n) throw std::invalid_argument("capacity vector length differs from vertex count");
  SolveReport r;
  r.problem = "gvcut";
  r.n = n;
  r.m = g.num_edges();
  const auto tree = decompose(g);
  r.tree = decomposition_stats(tree);
  std::vector<CutValue> pi(tree.size(), CutValue::infinite());
  std::vector<Capacity> weight(tree.size(), 0);
  for (NodeId id : tree.postorder()) {
    const auto& node = tree[id];
    if (node.kind == NodeKind::leaf) {
      weight[id] = c[node.vertices[0]];
      continue;
    }
    for (NodeId ch : node.children) weight[id] += weight[ch];
    auto best = CutValue::infinite();
    switch (node.kind) {
      case NodeKind::parallel: best = CutValue::finite(0); break;
      case NodeKind::series:
        for (NodeId ch : node.children) best = min(best, pi[ch].plus(weight[id] - weight[ch]));
        break;
      case NodeKind::prime: {
        const auto l = node.children.size();
        std::vector<Capacity> cap(l);
        for (std::size_t i = 0; i < l; ++i) cap[i] = weight[node.children[i]];
        for (std::size_t i = 0; i < l; ++i) {
          Capacity around = 0;
          for (Vertex j : node.quotient.neighbors(Vertex(i))) around += cap[j];
          best = min(best, pi[node.children[i]].plus(around));
        }
        best = min(best, quotient_global_vertex_cut(node.quotient, VertexWeights(std::move(cap))));
        break;
      }
      default: break;
    }
    pi[id] = best;
  }
  const auto root = pi[tree.root()];
  r.value = root.as_value();
  if (root.is_infinite()) r.note = "complete graph, no cut";
  r.time_ms = clock.elapsed_ms();
  return r;
}

}  // namespace modflow
