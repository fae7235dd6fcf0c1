#pragma once

// Brute-force reference answers for small graphs. Nothing here calls the
// library's solvers; only the Graph container is shared.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <unordered_map>
#include <vector>

#include "modflow/graph.hpp"

namespace oracle {

using modflow::Edge;
using modflow::Graph;
using modflow::Vertex;

inline std::uint64_t neighbor_mask(const Graph& g, Vertex v) {
  std::uint64_t m = 0;
  for (Vertex w : g.neighbors(v)) m |= std::uint64_t{1} << w;
  return m;
}

/// Largest matching by enumerating every matching edge by edge.
inline std::size_t matching_by_enumeration(const Graph& g) {
  const auto edges = g.edges();
  std::vector<char> used(g.num_vertices(), 0);
  std::size_t best = 0;
  std::function<void(std::size_t, std::size_t)> go = [&](std::size_t i, std::size_t size) {
    best = std::max(best, size);
    if (size + (edges.size() - i) <= best) return;
    for (std::size_t j = i; j < edges.size(); ++j) {
      auto [u, v] = edges[j];
      if (used[u] || used[v]) continue;
      used[u] = used[v] = 1;
      go(j + 1, size + 1);
      used[u] = used[v] = 0;
    }
  };
  go(0, 0);
  return best;
}

/// Largest matching by a memoized recursion over vertex subsets (n <= 24).
inline std::size_t matching_by_subsets(const Graph& g) {
  const auto n = g.num_vertices();
  std::vector<std::uint32_t> nb(n);
  for (std::size_t v = 0; v < n; ++v) nb[v] = static_cast<std::uint32_t>(neighbor_mask(g, static_cast<Vertex>(v)));
  std::unordered_map<std::uint32_t, std::uint8_t> memo;
  std::function<std::size_t(std::uint32_t)> f = [&](std::uint32_t mask) -> std::size_t {
    if (mask == 0) return 0;
    if (auto it = memo.find(mask); it != memo.end()) return it->second;
    int v = __builtin_ctz(mask);
    std::uint32_t rest = mask & ~(1U << v);
    std::size_t best = f(rest);
    for (std::uint32_t cand = nb[v] & rest; cand; cand &= cand - 1) {
      int u = __builtin_ctz(cand);
      best = std::max(best, 1 + f(rest & ~(1U << u)));
    }
    memo[mask] = static_cast<std::uint8_t>(best);
    return best;
  };
  return f(n == 32 ? 0xFFFFFFFFU : ((1U << n) - 1));
}

/// Largest b-matching by trying every multiplicity vector.
inline std::int64_t b_matching_by_enumeration(const Graph& g, const std::vector<std::int64_t>& b) {
  const auto edges = g.edges();
  std::vector<std::int64_t> left = b;
  std::int64_t best = 0;
  std::function<void(std::size_t, std::int64_t)> go = [&](std::size_t i, std::int64_t value) {
    if (i == edges.size()) {
      best = std::max(best, value);
      return;
    }
    auto [u, v] = edges[i];
    const auto cap = std::min(left[u], left[v]);
    for (std::int64_t x = cap; x >= 0; --x) {
      left[u] -= x;
      left[v] -= x;
      go(i + 1, value + x);
      left[u] += x;
      left[v] += x;
    }
  };
  go(0, 0);
  return best;
}

inline std::uint64_t triangles_by_triples(const Graph& g) {
  const auto n = static_cast<Vertex>(g.num_vertices());
  std::uint64_t t = 0;
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b) {
      if (!g.adjacent(a, b)) continue;
      for (Vertex c = b + 1; c < n; ++c)
        if (g.adjacent(a, c) && g.adjacent(b, c)) ++t;
    }
  return t;
}

/// Global minimum edge cut over all bipartitions (n <= 20); 0 when n < 2.
inline std::int64_t edge_cut_by_bipartitions(const Graph& g) {
  const auto n = g.num_vertices();
  if (n < 2) return 0;
  const auto edges = g.edges();
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  // vertex n-1 always on the far side
  for (std::uint64_t side = 1; side < (std::uint64_t{1} << (n - 1)); ++side) {
    std::int64_t cut = 0;
    for (auto [u, v] : edges) cut += ((side >> u) & 1) != ((side >> v) & 1);
    best = std::min(best, cut);
  }
  return best;
}

/// Minimum number of edges whose removal separates s from t (n <= 20).
inline std::int64_t st_edge_cut_by_bipartitions(const Graph& g, Vertex s, Vertex t) {
  const auto n = g.num_vertices();
  const auto edges = g.edges();
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  for (std::uint64_t side = 0; side < (std::uint64_t{1} << n); ++side) {
    if (!((side >> s) & 1) || ((side >> t) & 1)) continue;
    std::int64_t cut = 0;
    for (auto [u, v] : edges) cut += ((side >> u) & 1) != ((side >> v) & 1);
    best = std::min(best, cut);
  }
  return best;
}

inline bool connected_avoiding(const Graph& g, std::uint64_t removed, Vertex s, Vertex t) {
  std::uint64_t seen = std::uint64_t{1} << s;
  std::vector<Vertex> stack{s};
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    if (v == t) return true;
    for (Vertex w : g.neighbors(v)) {
      auto bit = std::uint64_t{1} << w;
      if ((removed & bit) || (seen & bit)) continue;
      seen |= bit;
      stack.push_back(w);
    }
  }
  return false;
}

/// Cheapest vertex set avoiding s and t that separates them; nullopt when
/// s and t are adjacent.
inline std::optional<std::int64_t> st_vertex_cut_by_subsets(const Graph& g, const std::vector<std::int64_t>& c,
                                                            Vertex s, Vertex t) {
  if (g.adjacent(s, t)) return std::nullopt;
  const auto n = g.num_vertices();
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
    if (((x >> s) & 1) || ((x >> t) & 1)) continue;
    std::int64_t w = 0;
    for (std::size_t v = 0; v < n; ++v)
      if ((x >> v) & 1) w += c[v];
    if (w >= best) continue;
    if (!connected_avoiding(g, x, s, t)) best = w;
  }
  return best;
}

/// Cheapest vertex set whose removal leaves a disconnected graph; nullopt
/// when none exists (complete graphs).
inline std::optional<std::int64_t> global_vertex_cut_by_subsets(const Graph& g, const std::vector<std::int64_t>& c) {
  const auto n = g.num_vertices();
  std::optional<std::int64_t> best;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
    std::vector<Vertex> rest;
    std::int64_t w = 0;
    for (std::size_t v = 0; v < n; ++v) {
      if ((x >> v) & 1) w += c[v];
      else rest.push_back(static_cast<Vertex>(v));
    }
    if (rest.size() < 2 || (best && w >= *best)) continue;
    bool split = false;
    for (std::size_t i = 1; i < rest.size() && !split; ++i)
      split = !connected_avoiding(g, x, rest[0], rest[i]);
    if (split) best = w;
  }
  return best;
}

inline bool is_module_mask(const Graph& g, std::uint64_t m) {
  const auto n = g.num_vertices();
  for (std::size_t x = 0; x < n; ++x) {
    if ((m >> x) & 1) continue;
    auto seen = neighbor_mask(g, static_cast<Vertex>(x)) & m;
    if (seen != 0 && seen != m) return false;
  }
  return true;
}

/// Every module, as vertex bitmasks (n <= 20).
inline std::vector<std::uint64_t> all_modules(const Graph& g) {
  std::vector<std::uint64_t> out;
  const auto n = g.num_vertices();
  for (std::uint64_t m = 1; m < (std::uint64_t{1} << n); ++m)
    if (is_module_mask(g, m)) out.push_back(m);
  return out;
}

/// Modules that overlap no other module.
inline std::vector<std::uint64_t> strong_modules(const Graph& g) {
  auto mods = all_modules(g);
  std::vector<std::uint64_t> out;
  for (auto a : mods) {
    bool strong = true;
    for (auto b : mods) {
      auto both = a & b;
      if (both && both != a && both != b) {
        strong = false;
        break;
      }
    }
    if (strong) out.push_back(a);
  }
  return out;
}

/// True iff the only modules are the singletons and the whole vertex set.
inline bool has_only_trivial_modules(const Graph& g) {
  const auto n = g.num_vertices();
  const auto full = (std::uint64_t{1} << n) - 1;
  for (std::uint64_t m = 1; m < full; ++m)
    if (__builtin_popcountll(m) >= 2 && is_module_mask(g, m)) return false;
  return true;
}

/// Maximal strong modules strictly inside V (the prime-case partition).
inline std::vector<std::vector<Vertex>> maximal_strong_modules(const Graph& g) {
  const auto n = g.num_vertices();
  const auto full = (std::uint64_t{1} << n) - 1;
  auto strong = strong_modules(g);
  std::vector<std::vector<Vertex>> out;
  for (auto a : strong) {
    if (a == full) continue;
    bool maximal = true;
    for (auto b : strong)
      if (b != full && b != a && (a & b) == a) maximal = false;
    if (!maximal) continue;
    auto& part = out.emplace_back();
    for (std::size_t v = 0; v < n; ++v)
      if ((a >> v) & 1) part.push_back(static_cast<Vertex>(v));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace oracle
