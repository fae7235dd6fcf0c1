#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "modflow/graph.hpp"
#include "modflow/kernels/flow.hpp"

namespace modflow {

struct Matching {
  std::vector<Edge> edges;
  std::size_t size() const noexcept { return edges.size(); }
};

/// Edges pairwise disjoint and present in `g`.
inline bool is_valid_matching(const Graph& g, const Matching& m) {
  std::vector<char> used(g.num_vertices(), 0);
  for (const auto& e : m.edges) {
    if (e.u < 0 || e.v < 0 || static_cast<std::size_t>(e.u) >= g.num_vertices() ||
        static_cast<std::size_t>(e.v) >= g.num_vertices())
      return false;
    if (e.u == e.v || !g.adjacent(e.u, e.v) || used[e.u] || used[e.v]) return false;
    used[e.u] = used[e.v] = 1;
  }
  return true;
}

struct BMatchingResult {
  /// g.edges() order.
  std::vector<Edge> edges;
  std::vector<std::int64_t> multiplicity;
  std::int64_t value = 0;
};

inline bool is_valid_b_matching(const Graph& g, const VertexWeights& b, const BMatchingResult& r) {
  if (r.edges != g.edges() || r.multiplicity.size() != r.edges.size()) return false;
  std::vector<std::int64_t> load(g.num_vertices(), 0);
  std::int64_t total = 0;
  for (std::size_t i = 0; i < r.edges.size(); ++i) {
    if (r.multiplicity[i] < 0) return false;
    load[r.edges[i].u] += r.multiplicity[i];
    load[r.edges[i].v] += r.multiplicity[i];
    total += r.multiplicity[i];
  }
  for (Vertex v = 0; v < static_cast<Vertex>(g.num_vertices()); ++v)
    if (load[v] > b[v]) return false;
  return total == r.value;
}

namespace detail {

/// Edmonds' blossom algorithm, O(n^3). `mate` may carry an initial matching.
class Blossom {
 public:
  explicit Blossom(const Graph& g) : g_(g), n_(static_cast<Vertex>(g.num_vertices())) {
    mate_.assign(n_, -1);
    parent_.resize(n_);
    base_.resize(n_);
    used_.resize(n_);
    in_blossom_.resize(n_);
    seen_.resize(n_);
  }

  void set_initial(const std::vector<Vertex>& mate) { mate_ = mate; }

  void greedy_initial() {
    for (Vertex v = 0; v < n_; ++v) {
      if (mate_[v] != -1) continue;
      for (Vertex w : g_.neighbors(v))
        if (mate_[w] == -1) {
          mate_[v] = w;
          mate_[w] = v;
          break;
        }
    }
  }

  const std::vector<Vertex>& solve() {
    for (Vertex v = 0; v < n_; ++v) {
      if (mate_[v] != -1 || g_.degree(v) == 0) continue;
      Vertex end = find_path(v);
      while (end != -1) {
        Vertex pv = parent_[end];
        Vertex next = mate_[pv];
        mate_[end] = pv;
        mate_[pv] = end;
        end = next;
      }
    }
    return mate_;
  }

 private:
  Vertex lca(Vertex a, Vertex b) {
    std::fill(seen_.begin(), seen_.end(), 0);
    for (;;) {
      a = base_[a];
      seen_[a] = 1;
      if (mate_[a] == -1) break;
      a = parent_[mate_[a]];
    }
    for (;;) {
      b = base_[b];
      if (seen_[b]) return b;
      b = parent_[mate_[b]];
    }
  }

  void mark_path(Vertex v, Vertex b, Vertex child) {
    while (base_[v] != b) {
      in_blossom_[base_[v]] = in_blossom_[base_[mate_[v]]] = 1;
      parent_[v] = child;
      child = mate_[v];
      v = parent_[mate_[v]];
    }
  }

  Vertex find_path(Vertex root) {
    std::fill(used_.begin(), used_.end(), 0);
    std::fill(parent_.begin(), parent_.end(), -1);
    std::iota(base_.begin(), base_.end(), 0);
    used_[root] = 1;
    queue_.assign(1, root);
    for (std::size_t h = 0; h < queue_.size(); ++h) {
      Vertex v = queue_[h];
      for (Vertex to : g_.neighbors(v)) {
        if (base_[v] == base_[to] || mate_[v] == to) continue;
        if (to == root || (mate_[to] != -1 && parent_[mate_[to]] != -1)) {
          Vertex cur = lca(v, to);
          std::fill(in_blossom_.begin(), in_blossom_.end(), 0);
          mark_path(v, cur, to);
          mark_path(to, cur, v);
          for (Vertex i = 0; i < n_; ++i)
            if (in_blossom_[base_[i]]) {
              base_[i] = cur;
              if (!used_[i]) {
                used_[i] = 1;
                queue_.push_back(i);
              }
            }
        } else if (parent_[to] == -1) {
          parent_[to] = v;
          if (mate_[to] == -1) return to;
          used_[mate_[to]] = 1;
          queue_.push_back(mate_[to]);
        }
      }
    }
    return -1;
  }

  const Graph& g_;
  Vertex n_;
  std::vector<Vertex> mate_, parent_, base_, queue_;
  std::vector<char> used_, in_blossom_, seen_;
};

inline Matching matching_from_mates(const std::vector<Vertex>& mate) {
  Matching m;
  for (Vertex v = 0; v < static_cast<Vertex>(mate.size()); ++v)
    if (mate[v] > v) m.edges.push_back({v, mate[v]});
  return m;
}

/// Copies of each compact vertex in a blow-up, connected like their owners.
struct BlowUp {
  std::vector<Vertex> owner;
  Graph graph;
};

inline BlowUp make_blow_up(const Graph& g, const std::vector<std::vector<Vertex>>& copies) {
  BlowUp out;
  std::size_t total = 0;
  for (const auto& c : copies) total += c.size();
  out.owner.assign(total, -1);
  for (Vertex v = 0; v < static_cast<Vertex>(copies.size()); ++v)
    for (Vertex c : copies[v]) out.owner[c] = v;
  std::vector<std::vector<Vertex>> adj(total);
  for (Vertex c = 0; c < static_cast<Vertex>(total); ++c) {
    for (Vertex w : g.neighbors(out.owner[c])) adj[c].insert(adj[c].end(), copies[w].begin(), copies[w].end());
    std::sort(adj[c].begin(), adj[c].end());
  }
  out.graph = Graph::from_adjacency(std::move(adj));
  return out;
}

inline std::size_t edge_index(const std::vector<Edge>& edges, Vertex a, Vertex b) {
  Edge key{std::min(a, b), std::max(a, b)};
  auto it = std::lower_bound(edges.begin(), edges.end(), key);
  return static_cast<std::size_t>(it - edges.begin());
}

}  // namespace detail

/// Maximum cardinality matching (Edmonds' blossom algorithm).
inline Matching blossom_max_matching(const Graph& g) {
  detail::Blossom solver(g);
  solver.greedy_initial();
  return detail::matching_from_mates(solver.solve());
}

/// Maximum b-matching by blowing every vertex v up into b(v) copies and
/// running the blossom algorithm; multiplicities are projected back.
inline BMatchingResult b_matching_max(const Graph& g, const VertexWeights& b) {
  if (b.size() != g.num_vertices()) throw std::invalid_argument("b vector length differs from vertex count");
  std::vector<std::vector<Vertex>> copies(g.num_vertices());
  Vertex next = 0;
  for (Vertex v = 0; v < static_cast<Vertex>(g.num_vertices()); ++v)
    for (std::int64_t k = 0; k < b[v]; ++k) copies[v].push_back(next++);
  auto blow = detail::make_blow_up(g, copies);
  auto m = blossom_max_matching(blow.graph);
  BMatchingResult r;
  r.edges = g.edges();
  r.multiplicity.assign(r.edges.size(), 0);
  for (const auto& e : m.edges) ++r.multiplicity[detail::edge_index(r.edges, blow.owner[e.u], blow.owner[e.v])];
  r.value = static_cast<std::int64_t>(m.size());
  return r;
}

/// Exact maximum b-matching whose cost does not grow with the b-values.
///
/// Starts from the rounded-down optimum of the fractional relaxation (solved
/// as a flow on the bipartite double cover), fills greedily, then improves
/// inside a truncated blow-up that keeps at most two matched copy pairs per
/// edge and two free copies per vertex. Copies of one vertex are twins, so
/// any augmenting path can be shortened to visit each compact vertex at most
/// once per orientation and then mapped into the truncated blow-up; no
/// augmenting path there means the current b-matching is maximum.
inline BMatchingResult b_matching_reduced(const Graph& g, const VertexWeights& b) {
  const auto n = static_cast<Vertex>(g.num_vertices());
  if (b.size() != g.num_vertices()) throw std::invalid_argument("b vector length differs from vertex count");
  BMatchingResult r;
  r.edges = g.edges();
  const auto& edges = r.edges;
  r.multiplicity.assign(edges.size(), 0);
  if (edges.empty()) return r;

  // fractional relaxation on the double cover
  const Vertex source = 2 * n, sink = 2 * n + 1;
  FlowNetwork cover(static_cast<std::size_t>(2 * n + 2), source, sink);
  for (Vertex v = 0; v < n; ++v) {
    cover.add_arc(source, v, b[v]);
    cover.add_arc(n + v, sink, b[v]);
  }
  std::vector<std::size_t> forward(edges.size()), backward(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto cap = std::min(b[edges[i].u], b[edges[i].v]);
    forward[i] = cover.add_arc(edges[i].u, n + edges[i].v, cap);
    backward[i] = cover.add_arc(edges[i].v, n + edges[i].u, cap);
  }
  const auto frac = max_flow(cover);
  const std::int64_t upper = frac.value / 2;

  auto& x = r.multiplicity;
  std::vector<std::int64_t> spare(b.values().begin(), b.values().end());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    x[i] = (frac.flow[forward[i]] + frac.flow[backward[i]]) / 2;
    spare[edges[i].u] -= x[i];
    spare[edges[i].v] -= x[i];
  }
  for (std::size_t i = 0; i < edges.size(); ++i) {
    auto add = std::min(spare[edges[i].u], spare[edges[i].v]);
    x[i] += add;
    spare[edges[i].u] -= add;
    spare[edges[i].v] -= add;
  }
  std::int64_t value = std::accumulate(x.begin(), x.end(), std::int64_t{0});

  while (value < upper) {
    std::vector<std::vector<Vertex>> copies(n);
    std::vector<Vertex> mate;
    std::vector<std::int64_t> kept(edges.size(), 0);
    Vertex next = 0;
    for (Vertex v = 0; v < n; ++v)
      for (std::int64_t k = 0; k < std::min<std::int64_t>(spare[v], 2); ++k) {
        copies[v].push_back(next++);
        mate.push_back(-1);
      }
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      kept[i] = std::min<std::int64_t>(x[i], 2);
      for (std::int64_t k = 0; k < kept[i]; ++k) {
        Vertex a = next++, c = next++;
        copies[edges[i].u].push_back(a);
        copies[edges[i].v].push_back(c);
        mate.push_back(c);
        mate.push_back(a);
        ++pairs;
      }
    }
    if (static_cast<std::int64_t>(next) >= b.total()) return b_matching_max(g, b);
    auto blow = detail::make_blow_up(g, copies);
    detail::Blossom solver(blow.graph);
    solver.set_initial(mate);
    auto improved = detail::matching_from_mates(solver.solve());
    if (improved.size() == pairs) break;
    for (std::size_t i = 0; i < edges.size(); ++i) x[i] -= kept[i];
    for (const auto& e : improved.edges) ++x[detail::edge_index(edges, blow.owner[e.u], blow.owner[e.v])];
    std::copy(b.values().begin(), b.values().end(), spare.begin());
    for (std::size_t i = 0; i < edges.size(); ++i) {
      spare[edges[i].u] -= x[i];
      spare[edges[i].v] -= x[i];
    }
    value = std::accumulate(x.begin(), x.end(), std::int64_t{0});
  }
  r.value = value;
  return r;
}

}  // namespace modflow
