#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "modflow/kernels/flow.hpp"
#include "oracles.hpp"

using namespace modflow;

namespace {

// Conservation, capacity bounds, and value = capacity of the residual cut.
void expect_certified(const FlowNetwork& net, const FlowResult& r) {
  std::vector<Capacity> excess(net.num_nodes(), 0);
  Capacity cut = 0;
  const auto& arcs = net.arcs();
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    const auto& a = arcs[i];
    const auto f = r.flow[i];
    if (a.undirected) { ASSERT_LE(std::abs(f), a.capacity); }
    else { ASSERT_TRUE(f >= 0 && f <= a.capacity); }
    excess[a.from] -= f;
    excess[a.to] += f;
    if (r.source_side[a.from] && !r.source_side[a.to]) cut += a.capacity;
    if (a.undirected && r.source_side[a.to] && !r.source_side[a.from]) cut += a.capacity;
  }
  for (Vertex v = 0; v < Vertex(net.num_nodes()); ++v)
    if (v != net.source() && v != net.sink()) { ASSERT_EQ(excess[v], 0); }
  ASSERT_EQ(excess[net.sink()], r.value);
  ASSERT_TRUE(r.source_side[net.source()]);
  ASSERT_FALSE(r.source_side[net.sink()]);
  ASSERT_EQ(cut, r.value);
}

}  // namespace

TEST(MaxFlow, SingleArc) {
  FlowNetwork net(2, 0, 1);
  net.add_arc(0, 1, 7);
  EXPECT_EQ(max_flow(net).value, 7);
}

TEST(MaxFlow, TwoDisjointPaths) {
  FlowNetwork net(4, 0, 3);
  net.add_arc(0, 1, 2);
  net.add_arc(1, 3, 2);
  net.add_arc(0, 2, 3);
  net.add_arc(2, 3, 3);
  EXPECT_EQ(max_flow(net).value, 5);
}

TEST(MaxFlow, Diamond) {
  FlowNetwork net(4, 0, 3);
  for (auto [u, v] : std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 3}, {2, 3}}) net.add_arc(u, v, 1);
  auto r = max_flow(net);
  EXPECT_EQ(r.value, 2);
  expect_certified(net, r);
}

TEST(MaxFlow, RejectsBadInput) {
  EXPECT_THROW(FlowNetwork(3, 1, 1), std::invalid_argument);
  FlowNetwork net(3, 0, 2);
  EXPECT_THROW(net.add_arc(0, 1, -1), std::invalid_argument);
  EXPECT_THROW(net.add_arc(0, 3, 1), std::out_of_range);
}

TEST(MaxFlow, RandomNetworksAreCertified) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 300; ++i) {
    const std::size_t n = 2 + rng() % 12;
    FlowNetwork net(n, 0, Vertex(n - 1));
    const std::size_t arcs = rng() % (3 * n);
    for (std::size_t k = 0; k < arcs; ++k) {
      Vertex u = rng() % n, v = rng() % n;
      if (u == v) continue;
      if (rng() % 3 == 0) net.add_edge(u, v, rng() % 6);
      else net.add_arc(u, v, rng() % 6);
    }
    expect_certified(net, max_flow(net));
  }
}

TEST(VertexSplit, PathThroughMiddle) {
  auto g = fixtures::path(3);
  auto net = vertex_split(g, VertexWeights({1, 4, 1}), 0, 2);
  EXPECT_EQ(max_flow(net).value, 4);
}

TEST(VertexSplit, CycleOppositeEnds) {
  EXPECT_EQ(max_flow(vertex_split(fixtures::cycle(4), VertexWeights::uniform(4, 1), 0, 2)).value, 2);
}

TEST(VertexSplit, CliqueMinusEdge) {
  auto g = build_graph(4, {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}});
  EXPECT_EQ(max_flow(vertex_split(g, VertexWeights::uniform(4, 1), 0, 3)).value, 2);
  EXPECT_THROW(vertex_split(g, VertexWeights::uniform(4, 1), 1, 1), std::invalid_argument);
}

TEST(VertexSplit, MatchesSeparatorEnumeration) {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 300; ++i) {
    auto g = fixtures::random_graph_in(2, 9, rng);
    auto c = fixtures::random_values(g.num_vertices(), 0, 8, rng);
    Vertex s = rng() % g.num_vertices(), t = rng() % g.num_vertices();
    if (s == t || g.adjacent(s, t)) continue;
    ASSERT_EQ(max_flow(vertex_split(g, VertexWeights(c), s, t)).value, *oracle::st_vertex_cut_by_subsets(g, c, s, t));
  }
}

TEST(UnitEdgeFlow, MatchesCutEnumeration) {
  std::mt19937_64 rng(29);
  for (int i = 0; i < 300; ++i) {
    auto g = fixtures::random_graph_in(2, 10, rng);
    Vertex s = rng() % g.num_vertices(), t = rng() % g.num_vertices();
    if (s == t) continue;
    ASSERT_EQ(unit_edge_flow(g, s, t), oracle::st_edge_cut_by_bipartitions(g, s, t));
  }
}
