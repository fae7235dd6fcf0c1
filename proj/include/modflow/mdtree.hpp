#pragma once

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "modflow/graph.hpp"

namespace modflow {

enum class NodeKind { leaf, parallel, series, prime };

inline const char* to_string(NodeKind k) {
  switch (k) {
    case NodeKind::leaf: return "leaf";
    case NodeKind::parallel: return "parallel";
    case NodeKind::series: return "series";
    case NodeKind::prime: return "prime";
  }
  return "?";
}

using NodeId = std::int32_t;

struct MDNode {
  NodeKind kind = NodeKind::leaf;
  /// The module, as sorted vertex ids of the decomposed graph.
  std::vector<Vertex> vertices;
  /// Ordered children; quotient vertex i stands for children[i].
  std::vector<NodeId> children;
  NodeId parent = -1;
  Graph quotient;
  /// Set on the two-child series nodes produced by binarize_series.
  bool series_binary = false;

  std::size_t quotient_index(NodeId child) const {
    auto it = std::find(children.begin(), children.end(), child);
    if (it == children.end()) throw std::invalid_argument("node is not a child");
    return static_cast<std::size_t>(it - children.begin());
  }
};

class MDTree {
 public:
  std::size_t size() const noexcept { return nodes_.size(); }
  NodeId root() const noexcept { return root_; }
  const MDNode& node(NodeId id) const { return nodes_.at(static_cast<std::size_t>(id)); }
  const MDNode& operator[](NodeId id) const { return nodes_[static_cast<std::size_t>(id)]; }
  std::size_t num_vertices() const noexcept { return leaf_of_.size(); }
  NodeId leaf(Vertex v) const { return leaf_of_.at(static_cast<std::size_t>(v)); }
  std::size_t depth(NodeId id) const { return depth_[static_cast<std::size_t>(id)]; }

  /// Children before parents.
  std::vector<NodeId> postorder() const {
    std::vector<NodeId> order = preorder();
    std::reverse(order.begin(), order.end());
    return order;
  }

  /// Parents before children, children in their stored order.
  std::vector<NodeId> preorder() const {
    std::vector<NodeId> order;
    order.reserve(nodes_.size());
    std::vector<NodeId> stack{root_};
    while (!stack.empty()) {
      NodeId id = stack.back();
      stack.pop_back();
      order.push_back(id);
      const auto& ch = nodes_[id].children;
      for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
    }
    return order;
  }

 private:
  void finalize() {
    depth_.assign(nodes_.size(), 0);
    for (NodeId id : preorder())
      if (nodes_[id].parent >= 0) depth_[id] = depth_[nodes_[id].parent] + 1;
  }

  std::vector<MDNode> nodes_;
  NodeId root_ = 0;
  std::vector<NodeId> leaf_of_;
  std::vector<std::size_t> depth_;

  friend MDTree decompose(const Graph& g);
  friend MDTree binarize_series(const MDTree& t);
};

/// True iff every vertex outside `s` sees all of `s` or none of it.
inline bool is_module(const Graph& g, std::span<const Vertex> s) {
  if (s.empty()) throw std::invalid_argument("is_module needs a nonempty set");
  const auto n = g.num_vertices();
  std::vector<char> inside(n, 0);
  for (Vertex v : s) {
    if (v < 0 || static_cast<std::size_t>(v) >= n) throw std::out_of_range("vertex out of range");
    inside[v] = 1;
  }
  std::size_t size = 0;
  for (char c : inside) size += c;
  std::vector<std::size_t> seen(n, 0);
  for (Vertex v : s)
    for (Vertex w : g.neighbors(v))
      if (!inside[w]) ++seen[w];
  for (std::size_t x = 0; x < n; ++x)
    if (!inside[x] && seen[x] != 0 && seen[x] != size) return false;
  return true;
}

namespace detail {

/// Ordered partition of 0..n-1 into contiguous blocks, split by vertex sets.
class PartitionRefinement {
 public:
  explicit PartitionRefinement(std::size_t n) : elems_(n), pos_(n), part_of_(n, 0) {
    for (std::size_t i = 0; i < n; ++i) {
      elems_[i] = static_cast<Vertex>(i);
      pos_[i] = i;
    }
    parts_.push_back({0, n, 0});
  }

  std::size_t num_parts() const noexcept { return parts_.size(); }
  int part_of(Vertex v) const { return part_of_[v]; }
  std::span<const Vertex> part(int p) const {
    return {elems_.data() + parts_[p].begin, parts_[p].end - parts_[p].begin};
  }

  /// Splits every part other than `skip` into its members inside `set` and
  /// the rest; `on_split(old, fresh)` fires for each proper split.
  template <class OnSplit>
  void refine(std::span<const Vertex> set, int skip, OnSplit&& on_split) {
    touched_.clear();
    for (Vertex y : set) {
      int p = part_of_[y];
      if (p == skip) continue;
      auto& part = parts_[p];
      if (part.marked == 0) touched_.push_back(p);
      std::size_t target = part.begin + part.marked;
      std::size_t here = pos_[y];
      std::swap(elems_[target], elems_[here]);
      pos_[elems_[here]] = here;
      pos_[elems_[target]] = target;
      ++part.marked;
    }
    for (int p : touched_) {
      auto& part = parts_[p];
      const std::size_t marked = part.marked;
      part.marked = 0;
      if (marked == part.end - part.begin) continue;
      const int fresh = static_cast<int>(parts_.size());
      const std::size_t begin = part.begin;
      parts_[p].begin = begin + marked;
      parts_.push_back({begin, begin + marked, 0});
      for (std::size_t i = begin; i < begin + marked; ++i) part_of_[elems_[i]] = fresh;
      on_split(p, fresh);
    }
  }

 private:
  struct Block {
    std::size_t begin, end, marked;
  };
  std::vector<Vertex> elems_;
  std::vector<std::size_t> pos_;
  std::vector<int> part_of_;
  std::vector<Block> parts_;
  std::vector<int> touched_;
};

/// Quotient over a partition into modules, using one representative each.
inline Graph quotient_graph(const Graph& g, const std::vector<std::vector<Vertex>>& parts) {
  std::vector<int> part_of(g.num_vertices(), -1);
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (Vertex v : parts[i]) part_of[v] = static_cast<int>(i);
  std::vector<std::vector<Vertex>> adj(parts.size());
  std::vector<char> mark(parts.size(), 0);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (Vertex w : g.neighbors(parts[i].front())) {
      int j = part_of[w];
      if (j >= 0 && j != static_cast<int>(i) && !mark[j]) {
        mark[j] = 1;
        adj[i].push_back(j);
      }
    }
    for (Vertex j : adj[i]) mark[j] = 0;
    std::sort(adj[i].begin(), adj[i].end());
  }
  return Graph::from_adjacency(std::move(adj));
}

/// Smallest module of the dense graph `a` containing x and y: true iff it
/// is proper (not all vertices).
inline bool pair_closure_is_proper(const AdjacencyMatrix& a, std::size_t x, std::size_t y,
                                   std::vector<char>& in_closure) {
  const auto k = a.size();
  std::fill(in_closure.begin(), in_closure.end(), 0);
  std::vector<std::size_t> count(k, 0);
  std::vector<std::size_t> pending{x, y};
  std::size_t size = 0;
  in_closure[x] = in_closure[y] = 1;
  for (std::size_t h = 0; h < pending.size(); ++h) {
    const auto* row = a.row(pending[h]);
    ++size;
    for (std::size_t z = 0; z < k; ++z)
      if (!in_closure[z]) count[z] += row[z];
    if (h + 1 < pending.size()) continue;
    // all pending members are in; collect the new splitters
    for (std::size_t z = 0; z < k; ++z)
      if (!in_closure[z] && count[z] != 0 && count[z] != size) {
        in_closure[z] = 1;
        pending.push_back(z);
      }
  }
  return size < k;
}

}  // namespace detail

namespace detail {

inline std::vector<std::vector<Vertex>> maximal_modular_partition_unchecked(const Graph& g) {
  const auto n = g.num_vertices();
  // Maximal modules not containing the pivot vertex 0.
  detail::PartitionRefinement pr(n);
  std::vector<Vertex> queue;
  std::vector<char> queued(n, 0);
  auto enqueue_part = [&](int p) {
    for (Vertex v : pr.part(p))
      if (!queued[v]) {
        queued[v] = 1;
        queue.push_back(v);
      }
  };
  auto on_split = [&](int old_part, int fresh) {
    enqueue_part(old_part);
    enqueue_part(fresh);
  };
  const Vertex pivot = 0;
  pr.refine(std::span<const Vertex>(&pivot, 1), -1, [](int, int) {});
  for (Vertex v = 0; v < static_cast<Vertex>(n); ++v) {
    queued[v] = 1;
    queue.push_back(v);
  }
  for (std::size_t h = 0; h < queue.size(); ++h) {
    Vertex x = queue[h];
    queued[x] = 0;
    pr.refine(g.neighbors(x), pr.part_of(x), on_split);
  }

  std::vector<std::vector<Vertex>> parts;
  parts.reserve(pr.num_parts());
  for (int p = 0; p < static_cast<int>(pr.num_parts()); ++p) {
    auto span = pr.part(p);
    auto& part = parts.emplace_back(span.begin(), span.end());
    std::sort(part.begin(), part.end());
  }
  std::sort(parts.begin(), parts.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
  // parts[0] = {pivot}

  // The maximal proper module containing the pivot is the union of the
  // parts whose pair closure with the pivot is proper.
  const auto quotient = detail::quotient_graph(g, parts);
  const detail::AdjacencyMatrix a(quotient);
  const auto k = parts.size();
  std::vector<char> with_pivot(k, 0), closure(k, 0);
  with_pivot[0] = 1;
  for (std::size_t i = 1; i < k; ++i) {
    if (with_pivot[i]) continue;
    if (detail::pair_closure_is_proper(a, 0, i, closure))
      for (std::size_t j = 0; j < k; ++j) with_pivot[j] |= closure[j];
  }
  std::vector<std::vector<Vertex>> out;
  std::vector<Vertex> merged;
  for (std::size_t i = 0; i < k; ++i) {
    if (with_pivot[i]) merged.insert(merged.end(), parts[i].begin(), parts[i].end());
    else out.push_back(std::move(parts[i]));
  }
  std::sort(merged.begin(), merged.end());
  out.push_back(std::move(merged));
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.front() < y.front(); });
  return out;
}

}  // namespace detail

/// Coarsest partition of a connected and co-connected graph into its
/// maximal proper modules, each part sorted, parts ordered by smallest vertex.
inline std::vector<std::vector<Vertex>> maximal_modular_partition(const Graph& g) {
  if (g.num_vertices() < 4) throw std::invalid_argument("maximal_modular_partition needs a prime-case graph (n >= 4)");
  if (connected_components(g).size() != 1 || complement_components(g).size() != 1)
    throw std::invalid_argument("maximal_modular_partition needs a connected and co-connected graph");
  return detail::maximal_modular_partition_unchecked(g);
}

/// One level of the decomposition: the children of the root node.
struct ModularPartition {
  NodeKind kind = NodeKind::leaf;
  std::vector<std::vector<Vertex>> parts;
  Graph quotient;
};

inline ModularPartition root_partition(const Graph& g) {
  ModularPartition out;
  const auto n = g.num_vertices();
  if (n == 0) throw std::invalid_argument("empty graph has no decomposition");
  if (n == 1) {
    out.parts = {{0}};
    return out;
  }
  if (auto comps = connected_components(g); comps.size() > 1) {
    out.kind = NodeKind::parallel;
    out.quotient = detail::edgeless_graph(comps.size());
    out.parts = std::move(comps);
    return out;
  }
  if (auto cocomps = complement_components(g); cocomps.size() > 1) {
    out.kind = NodeKind::series;
    out.quotient = detail::complete_graph(cocomps.size());
    out.parts = std::move(cocomps);
    return out;
  }
  out.kind = NodeKind::prime;
  out.parts = detail::maximal_modular_partition_unchecked(g);
  out.quotient = detail::quotient_graph(g, out.parts);
  return out;
}

/// Modular decomposition tree by recursive splitting on connectivity of the
/// graph, of its complement, and otherwise on the maximal modular partition.
/// Children are ordered by their smallest vertex.
inline MDTree decompose(const Graph& g) {
  const auto n = g.num_vertices();
  if (n == 0) throw std::invalid_argument("cannot decompose an empty graph");
  MDTree t;
  t.leaf_of_.assign(n, -1);
  t.nodes_.emplace_back();
  t.nodes_[0].vertices.resize(n);
  for (std::size_t v = 0; v < n; ++v) t.nodes_[0].vertices[v] = static_cast<Vertex>(v);

  struct Task {
    Graph graph;
    std::vector<Vertex> ids;
    NodeId node;
  };
  // the root task works on g itself
  std::vector<Task> stack;
  stack.push_back({Graph{}, t.nodes_[0].vertices, 0});
  while (!stack.empty()) {
    Task task = std::move(stack.back());
    stack.pop_back();
    const NodeId id = task.node;
    const Graph& cur = id == 0 ? g : task.graph;
    if (cur.num_vertices() == 1) {
      t.nodes_[id].kind = NodeKind::leaf;
      t.leaf_of_[task.ids[0]] = id;
      continue;
    }
    auto level = root_partition(cur);
    t.nodes_[id].kind = level.kind;
    t.nodes_[id].quotient = std::move(level.quotient);
    std::vector<Task> pending;
    for (auto& part : level.parts) {
      const auto child = static_cast<NodeId>(t.nodes_.size());
      t.nodes_.emplace_back();
      auto& node = t.nodes_.back();
      node.parent = id;
      node.vertices.reserve(part.size());
      for (Vertex v : part) node.vertices.push_back(task.ids[v]);
      t.nodes_[id].children.push_back(child);
      if (part.size() == 1) {
        t.leaf_of_[task.ids[part[0]]] = child;
        continue;
      }
      auto [sub, local] = induced_subgraph(cur, part);
      for (auto& v : local) v = task.ids[v];
      pending.push_back({std::move(sub), std::move(local), child});
    }
    task = Task{};
    for (auto it = pending.rbegin(); it != pending.rend(); ++it) stack.push_back(std::move(*it));
  }
  t.finalize();
  return t;
}

struct ModularWidth {
  std::size_t value = 2;
};

inline ModularWidth modular_width(const MDTree& t) {
  ModularWidth w;
  for (NodeId id = 0; id < static_cast<NodeId>(t.size()); ++id)
    if (t[id].kind == NodeKind::prime) w.value = std::max(w.value, t[id].children.size());
  return w;
}

/// Replaces each series node with l > 2 children by a left-deep chain of
/// l - 1 two-child series nodes flagged series_binary.
inline MDTree binarize_series(const MDTree& t) {
  MDTree out = t;
  const auto original = static_cast<NodeId>(out.nodes_.size());
  for (NodeId id = 0; id < original; ++id) {
    if (out.nodes_[id].kind != NodeKind::series || out.nodes_[id].children.size() <= 2) continue;
    const std::vector<NodeId> ch = out.nodes_[id].children;
    NodeId acc = ch[0];
    for (std::size_t i = 1; i + 1 < ch.size(); ++i) {
      const auto fresh = static_cast<NodeId>(out.nodes_.size());
      MDNode node;
      node.kind = NodeKind::series;
      node.series_binary = true;
      node.parent = id;
      node.children = {acc, ch[i]};
      node.quotient = detail::complete_graph(2);
      const auto& left = out.nodes_[acc].vertices;
      const auto& right = out.nodes_[ch[i]].vertices;
      node.vertices.resize(left.size() + right.size());
      std::merge(left.begin(), left.end(), right.begin(), right.end(), node.vertices.begin());
      out.nodes_.push_back(std::move(node));
      out.nodes_[acc].parent = fresh;
      out.nodes_[ch[i]].parent = fresh;
      acc = fresh;
    }
    auto& top = out.nodes_[id];
    top.children = {acc, ch.back()};
    top.quotient = detail::complete_graph(2);
    top.series_binary = true;
    out.nodes_[acc].parent = id;
  }
  out.finalize();
  return out;
}

/// Deepest node whose module contains both u and v.
inline NodeId lca(const MDTree& t, Vertex u, Vertex v) {
  if (u == v) throw std::invalid_argument("lca needs two distinct vertices");
  NodeId a = t.leaf(u), b = t.leaf(v);
  while (t.depth(a) > t.depth(b)) a = t[a].parent;
  while (t.depth(b) > t.depth(a)) b = t[b].parent;
  while (a != b) {
    a = t[a].parent;
    b = t[b].parent;
  }
  return a;
}

struct DecompositionStats {
  std::size_t modular_width = 2;
  std::size_t nodes = 0;
  std::size_t leaves = 0;
  std::size_t parallel = 0;
  std::size_t series = 0;
  std::size_t prime = 0;
};

inline DecompositionStats decomposition_stats(const MDTree& t) {
  DecompositionStats s;
  s.modular_width = modular_width(t).value;
  s.nodes = t.size();
  for (NodeId id = 0; id < static_cast<NodeId>(t.size()); ++id) switch (t[id].kind) {
      case NodeKind::leaf: ++s.leaves; break;
      case NodeKind::parallel: ++s.parallel; break;
      case NodeKind::series: ++s.series; break;
      case NodeKind::prime: ++s.prime; break;
    }
  return s;
}

/// Pre-order dump: "id kind parent l [vertex]" per node, then the
/// quotient edges "  i j" indented below internal nodes.
inline void dump_tree(const MDTree& t, std::ostream& os) {
  for (NodeId id : t.preorder()) {
    const auto& node = t[id];
    os << id << ' ' << to_string(node.kind) << ' ' << node.parent << ' ' << node.children.size();
    if (node.kind == NodeKind::leaf) os << ' ' << node.vertices.front();
    os << '\n';
    for (const auto& e : node.quotient.edges()) os << "  " << e.u << ' ' << e.v << '\n';
  }
}

}  // namespace modflow
