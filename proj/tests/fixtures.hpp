#pragma once

#include <random>
#include <vector>

#include "modflow/graph.hpp"

namespace fixtures {

using modflow::Edge;
using modflow::Graph;
using modflow::Vertex;

inline Graph path(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t i = 0; i + 1 < n; ++i) e.push_back({Vertex(i), Vertex(i + 1)});
  return modflow::build_graph(n, e);
}

inline Graph cycle(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t i = 0; i < n; ++i) e.push_back({Vertex(i), Vertex((i + 1) % n)});
  return modflow::build_graph(n, e);
}

inline Graph complete(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) e.push_back({Vertex(i), Vertex(j)});
  return modflow::build_graph(n, e);
}

inline Graph edgeless(std::size_t n) { return modflow::build_graph(n, std::vector<Edge>{}); }

// triangle 0-1-2, pendants 3-0 and 4-1
inline Graph bull() { return modflow::build_graph(5, {{0, 1}, {1, 2}, {0, 2}, {3, 0}, {4, 1}}); }

inline Graph petersen() {
  std::vector<Edge> e;
  for (Vertex i = 0; i < 5; ++i) {
    e.push_back({i, Vertex((i + 1) % 5)});
    e.push_back({Vertex(i + 5), Vertex((i + 2) % 5 + 5)});
    e.push_back({i, Vertex(i + 5)});
  }
  return modflow::build_graph(10, e);
}

inline Graph random_graph(std::size_t n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> e;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (coin(rng)) e.push_back({Vertex(i), Vertex(j)});
  return modflow::build_graph(n, e);
}

/// Random graph with a random size in [lo, hi] and random density.
inline Graph random_graph_in(std::size_t lo, std::size_t hi, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> size(lo, hi);
  std::uniform_real_distribution<double> density(0.05, 0.95);
  const auto n = size(rng);
  return random_graph(n, density(rng), rng);
}

inline std::vector<std::int64_t> random_values(std::size_t n, std::int64_t lo, std::int64_t hi, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> d(lo, hi);
  std::vector<std::int64_t> out(n);
  for (auto& x : out) x = d(rng);
  return out;
}

}  // namespace fixtures
