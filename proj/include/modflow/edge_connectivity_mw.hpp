#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "modflow/graph.hpp"
#include "modflow/io.hpp"
#include "modflow/kernels/flow.hpp"
#include "modflow/kernels/mincut.hpp"
#include "modflow/mdtree.hpp"
#include "modflow/report.hpp"

namespace modflow {

/// Flow network on l+2 nodes: node 0 is {s}, node l+1 is {t}, node i in
/// 1..l stands for the i-th module minus s and t.
struct EdgeFlowKernel {
  FlowNetwork network{2, 0, 1};
  /// parts[i] lists the vertices node i stands for; empty parts stay.
  std::vector<std::vector<Vertex>> parts;
};

/// Builds the kernel over a modular partition of `g` in which s and t lie in
/// different parts. Module order: s's module first, t's module last.
inline EdgeFlowKernel build_edge_flow_kernel(const Graph& g, Vertex s, Vertex t, const ModularPartition& p) {
  if (s == t) throw std::invalid_argument("kernel needs s != t");
  const auto l = p.parts.size();
  std::vector<int> part_of(g.num_vertices(), -1);
  for (std::size_t i = 0; i < l; ++i)
    for (Vertex v : p.parts[i]) part_of[v] = static_cast<int>(i);
  const int ps = part_of.at(s), pt = part_of.at(t);
  if (ps < 0 || pt < 0) throw std::invalid_argument("partition does not cover s and t");
  if (ps == pt) throw std::invalid_argument("s and t lie in the same module");

  // position[i] = kernel node of partition part i
  std::vector<std::size_t> position(l);
  position[ps] = 1;
  position[pt] = l;
  std::size_t next = 2;
  for (std::size_t i = 0; i < l; ++i)
    if (int(i) != ps && int(i) != pt) position[i] = next++;

  EdgeFlowKernel k;
  k.network = FlowNetwork(l + 2, 0, Vertex(l + 1));
  k.parts.assign(l + 2, {});
  k.parts[0] = {s};
  k.parts[l + 1] = {t};
  for (std::size_t i = 0; i < l; ++i)
    for (Vertex v : p.parts[i])
      if (v != s && v != t) k.parts[position[i]].push_back(v);

  auto size = [&](std::size_t node) { return static_cast<Capacity>(k.parts[node].size()); };
  auto inner_degree = [&](Vertex v) {
    Capacity d = 0;
    for (Vertex w : g.neighbors(v)) d += part_of[w] == part_of[v];
    return d;
  };
  const auto s_node = std::size_t{1}, t_node = l;
  k.network.add_edge(0, Vertex(s_node), inner_degree(s));
  k.network.add_edge(Vertex(t_node), Vertex(l + 1), inner_degree(t));
  std::vector<std::size_t> s_side, t_side;
  for (const auto& e : p.quotient.edges()) {
    const auto a = position[e.u], b = position[e.v];
    k.network.add_edge(Vertex(a), Vertex(b), size(a) * size(b));
    if (a == s_node) s_side.push_back(b);
    if (b == s_node) s_side.push_back(a);
    if (a == t_node) t_side.push_back(b);
    if (b == t_node) t_side.push_back(a);
  }
  bool st_adjacent = false;
  for (auto j : s_side) {
    if (j == t_node) st_adjacent = true;
    k.network.add_edge(0, Vertex(j), size(j));
  }
  for (auto j : t_side) k.network.add_edge(Vertex(j), Vertex(l + 1), size(j));
  if (st_adjacent) k.network.add_edge(0, Vertex(l + 1), 1);
  return k;
}

namespace detail {

/// Minimum-degree endpoint's incident edges: a cut of size min(deg s, deg t).
inline std::vector<Edge> star_cut(const Graph& g, Vertex s, Vertex t) {
  const Vertex v = g.degree(s) <= g.degree(t) ? s : t;
  std::vector<Edge> out;
  for (Vertex w : g.neighbors(v)) out.push_back({std::min(v, w), std::max(v, w)});
  return out;
}

struct EdgeCase {
  enum Kind { separated, trivial, kernel } kind = separated;
  /// Component of s and t, relabeled; ids map back through `ids`.
  Graph component;
  std::vector<Vertex> ids;
  Vertex s = -1, t = -1;
  ModularPartition partition;
};

inline EdgeCase classify_edge_query(const Graph& g, Vertex s, Vertex t) {
  const auto n = g.num_vertices();
  if (s == t) throw std::invalid_argument("edge-disjoint paths need s != t");
  if (s < 0 || t < 0 || std::size_t(s) >= n || std::size_t(t) >= n) throw std::out_of_range("s or t out of range");
  EdgeCase c;
  const auto comps = connected_components(g);
  const std::vector<Vertex>* home = nullptr;
  for (const auto& comp : comps)
    if (std::binary_search(comp.begin(), comp.end(), s)) home = &comp;
  if (!std::binary_search(home->begin(), home->end(), t)) return c;
  if (home->size() == n) {
    c.component = g;
    c.ids.resize(n);
    for (std::size_t v = 0; v < n; ++v) c.ids[v] = Vertex(v);
    c.s = s;
    c.t = t;
  } else {
    auto [sub, ids] = induced_subgraph(g, *home);
    c.component = std::move(sub);
    c.ids = std::move(ids);
    c.s = Vertex(std::lower_bound(home->begin(), home->end(), s) - home->begin());
    c.t = Vertex(std::lower_bound(home->begin(), home->end(), t) - home->begin());
  }
  c.partition = root_partition(c.component);
  c.kind = EdgeCase::trivial;
  if (c.partition.kind != NodeKind::prime) return c;
  for (const auto& part : c.partition.parts)
    if (std::binary_search(part.begin(), part.end(), c.s))
      if (!std::binary_search(part.begin(), part.end(), c.t)) c.kind = EdgeCase::kernel;
  return c;
}

}  // namespace detail

/// Maximum number of edge-disjoint s-t paths, with a minimum cut as witness.
inline SolveReport edge_disjoint_st(const Graph& g, Vertex s, Vertex t) {
  Stopwatch clock;
  SolveReport r;
  r.problem = "edp";
  r.n = g.num_vertices();
  r.m = g.num_edges();
  auto c = detail::classify_edge_query(g, s, t);
  if (c.kind == detail::EdgeCase::separated) {
    r.value = Value::finite(0);
    r.note = "s and t in different components";
  } else {
    r.root_width = c.partition.kind == NodeKind::prime ? c.partition.parts.size() : 2;
    if (c.kind == detail::EdgeCase::trivial) {
      r.value = Value::finite(std::min(g.degree(s), g.degree(t)));
      r.witness_edges = detail::star_cut(g, s, t);
    } else {
      const auto k = build_edge_flow_kernel(c.component, c.s, c.t, c.partition);
      const auto f = max_flow(k.network);
      r.kernel_nodes = k.network.num_nodes();
      r.value = Value::finite(static_cast<wide_uint>(f.value));
      std::vector<char> source_side(c.component.num_vertices(), 0);
      for (std::size_t i = 0; i < k.parts.size(); ++i)
        if (f.source_side[i])
          for (Vertex v : k.parts[i]) source_side[v] = 1;
      for (const auto& e : c.component.edges())
        if (source_side[e.u] != source_side[e.v]) {
          Vertex a = c.ids[e.u], b = c.ids[e.v];
          r.witness_edges.push_back({std::min(a, b), std::max(a, b)});
        }
      std::sort(r.witness_edges.begin(), r.witness_edges.end());
    }
  }
  r.time_ms = clock.elapsed_ms();
  return r;
}

/// The flow instance edge_disjoint_st solves: the kernel when it applies,
/// otherwise two nodes joined by an arc of capacity min(deg s, deg t), or
/// no arc when s and t are disconnected.
inline FlowNetwork edge_flow_instance(const Graph& g, Vertex s, Vertex t) {
  auto c = detail::classify_edge_query(g, s, t);
  if (c.kind == detail::EdgeCase::kernel) return build_edge_flow_kernel(c.component, c.s, c.t, c.partition).network;
  FlowNetwork net(2, 0, 1);
  if (c.kind == detail::EdgeCase::trivial)
    net.add_arc(0, 1, static_cast<Capacity>(std::min(g.degree(s), g.degree(t))));
  return net;
}

/// Writes edge_flow_instance in DIMACS max-flow format; returns its node count.
inline std::size_t emit_kernel(const Graph& g, Vertex s, Vertex t, std::ostream& out) {
  const auto net = edge_flow_instance(g, s, t);
  write_dimacs_flow(net, out);
  return net.num_nodes();
}

inline std::size_t emit_kernel(const Graph& g, Vertex s, Vertex t, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw GraphError(GraphErrc::io, "cannot write '" + path + "'");
  return emit_kernel(g, s, t, out);
}

/// Global minimum edge cut. Returns the value and one side of a cut.
inline SolveReport global_edge_mincut(const Graph& g) {
  Stopwatch clock;
  const auto n = g.num_vertices();
  if (n < 2) throw std::invalid_argument("global minimum cut needs at least two vertices");
  SolveReport r;
  r.problem = "gmincut";
  r.n = n;
  r.m = g.num_edges();
  const auto part = root_partition(g);
  r.root_width = part.kind == NodeKind::prime ? part.parts.size() : 2;
  if (part.kind == NodeKind::parallel) {
    r.value = Value::finite(0);
    r.witness_vertices = part.parts[0];
  } else if (part.kind == NodeKind::series) {
    Vertex best = 0;
    for (Vertex v = 1; v < Vertex(n); ++v)
      if (g.degree(v) < g.degree(best)) best = v;
    r.value = Value::finite(g.degree(best));
    r.witness_vertices = {best};
  } else {
    const auto l = part.parts.size();
    std::vector<int> part_of(n);
    for (std::size_t i = 0; i < l; ++i)
      for (Vertex v : part.parts[i]) part_of[v] = int(i);
    std::vector<std::size_t> inner(n, 0);
    for (Vertex v = 0; v < Vertex(n); ++v)
      for (Vertex w : g.neighbors(v)) inner[v] += part_of[w] == part_of[v];
    // node i: the representative of part i; node l + i: the rest, if any
    std::vector<std::vector<Vertex>> members(2 * l);
    std::vector<Vertex> node_of(n);
    for (std::size_t i = 0; i < l; ++i) {
      Vertex rep = part.parts[i].front();
      for (Vertex v : part.parts[i])
        if (inner[v] < inner[rep]) rep = v;
      for (Vertex v : part.parts[i]) {
        node_of[v] = Vertex(v == rep ? i : l + i);
        members[node_of[v]].push_back(v);
      }
    }
    std::vector<Vertex> compact(2 * l, -1);
    std::size_t used = 0;
    for (std::size_t x = 0; x < 2 * l; ++x)
      if (!members[x].empty()) compact[x] = Vertex(used++);
    WeightMatrix w(used);
    for (std::size_t i = 0; i < l; ++i)
      if (!members[l + i].empty())
        w.add(compact[i], compact[l + i], static_cast<std::int64_t>(inner[members[i].front()]));
    for (const auto& e : part.quotient.edges())
      for (auto a : {std::size_t(e.u), l + e.u})
        for (auto b : {std::size_t(e.v), l + e.v})
          if (!members[a].empty() && !members[b].empty())
            w.add(compact[a], compact[b], std::int64_t(members[a].size() * members[b].size()));
    const auto cut = stoer_wagner_mincut(std::move(w));
    r.kernel_nodes = used;
    r.value = Value::finite(static_cast<wide_uint>(cut.value));
    std::vector<char> in_side(used, 0);
    for (Vertex x : cut.side) in_side[x] = 1;
    for (std::size_t x = 0; x < 2 * l; ++x)
      if (compact[x] >= 0 && in_side[compact[x]])
        r.witness_vertices.insert(r.witness_vertices.end(), members[x].begin(), members[x].end());
    std::sort(r.witness_vertices.begin(), r.witness_vertices.end());
  }
  r.time_ms = clock.elapsed_ms();
  return r;
}

}  // namespace modflow
