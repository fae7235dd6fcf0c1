#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "modflow/generate.hpp"
#include "modflow/matching_mw.hpp"
#include "oracles.hpp"

using namespace modflow;

namespace {

std::int64_t mw_value(const Graph& g) { return static_cast<std::int64_t>(solve_matching_mw(g).value.get()); }

std::int64_t mw_bvalue(const Graph& g, const std::vector<std::int64_t>& b) {
  return static_cast<std::int64_t>(solve_bmatching_mw(g, VertexWeights(b)).value.get());
}

}  // namespace

TEST(AuxInstance, TwoSingletons) {
  std::vector<MatchStats> st{{1, 0}, {1, 0}};
  auto aux = build_aux_instance(fixtures::complete(2), st);
  EXPECT_EQ(aux.graph.num_vertices(), 6u);
  EXPECT_EQ(aux.graph.num_edges(), 11u);
  EXPECT_EQ(std::vector<std::int64_t>(aux.b.values().begin(), aux.b.values().end()),
            (std::vector<std::int64_t>{0, 0, 1, 0, 0, 1}));
  EXPECT_EQ(b_matching_max(aux.graph, aux.b).value, 1);
}

TEST(AuxInstance, EdgeJoinedWithVertex) {
  std::vector<MatchStats> st{{2, 1}, {1, 0}};
  auto aux = build_aux_instance(fixtures::complete(2), st);
  EXPECT_EQ(std::vector<std::int64_t>(aux.b.values().begin(), aux.b.values().end()),
            (std::vector<std::int64_t>{1, 1, 0, 0, 0, 1}));
  // the module pair is K_2 joined with a vertex, i.e. a triangle
  EXPECT_EQ(b_matching_max(aux.graph, aux.b).value,
            std::int64_t(oracle::matching_by_enumeration(fixtures::complete(3))));
}

TEST(AuxInstance, RejectsBadInput) {
  EXPECT_THROW(build_aux_instance(Graph{}, std::vector<MatchStats>{}), std::invalid_argument);
  std::vector<MatchStats> bad{{1, 1}, {1, 0}};
  EXPECT_THROW(build_aux_instance(fixtures::complete(2), bad), std::invalid_argument);
}

TEST(MatchingMw, Examples) {
  EXPECT_EQ(mw_value(fixtures::edgeless(5)), 0);
  EXPECT_EQ(mw_value(fixtures::complete(4)), 2);
  EXPECT_EQ(mw_value(fixtures::cycle(5)), 2);
  EXPECT_EQ(mw_value(fixtures::path(4)), 2);
  EXPECT_EQ(mw_value(Graph{}), 0);
  EXPECT_EQ(solve_matching_mw(fixtures::path(4)).modular_width(), 4u);
}

TEST(MatchingMw, RandomSmallMatchesBlossom) {
  std::mt19937_64 rng(101);
  for (int i = 0; i < 1000; ++i) {
    auto g = fixtures::random_graph_in(1, 16, rng);
    ASSERT_EQ(mw_value(g), std::int64_t(blossom_max_matching(g).size()));
  }
}

TEST(MatchingMw, MediumAndComposed) {
  std::mt19937_64 rng(103);
  for (int i = 0; i < 200; ++i) {
    auto g = fixtures::random_graph_in(1, 60, rng);
    ASSERT_EQ(mw_value(g), std::int64_t(blossom_max_matching(g).size()));
    auto h = random_composed_graph(60, rng).graph;
    ASSERT_EQ(mw_value(h), std::int64_t(blossom_max_matching(h).size()));
  }
}

TEST(MatchingWitness, Examples) {
  auto w = matching_witness(fixtures::complete(2));
  EXPECT_EQ(w.edges, (std::vector<Edge>{{0, 1}}));
  auto c5 = matching_witness(fixtures::cycle(5));
  EXPECT_EQ(c5.size(), 2u);
  EXPECT_TRUE(is_valid_matching(fixtures::cycle(5), c5));
  auto two = matching_witness(build_graph(4, {{0, 1}, {2, 3}}));
  EXPECT_EQ(two.edges, (std::vector<Edge>{{0, 1}, {2, 3}}));
}

TEST(MatchingWitness, ValidAndMaximum) {
  std::mt19937_64 rng(107);
  for (int i = 0; i < 500; ++i) {
    auto g = i % 2 ? fixtures::random_graph_in(1, 40, rng) : random_composed_graph(50, rng).graph;
    auto w = matching_witness(g);
    ASSERT_TRUE(is_valid_matching(g, w));
    ASSERT_EQ(w.size(), blossom_max_matching(g).size());
  }
}

TEST(MatchingMw, ModuleCompressionKeepsMatchingNumber) {
  // replace a module M by K_{f,f} plus n - 2f isolated vertices
  std::mt19937_64 rng(109);
  for (int i = 0; i < 300; ++i) {
    auto g = fixtures::random_graph_in(2, 16, rng);
    auto t = decompose(g);
    const auto& node = t[NodeId(rng() % t.size())];
    const auto& mod = node.vertices;
    if (mod.size() < 2 || mod.size() == g.num_vertices()) continue;
    const auto f = blossom_max_matching(induced_subgraph(g, mod).first).size();
    std::vector<char> in(g.num_vertices(), 0);
    for (Vertex v : mod) in[v] = 1;
    std::vector<Edge> e;
    for (auto [u, v] : g.edges())
      if (!(in[u] && in[v])) e.push_back({u, v});
    for (std::size_t a = 0; a < f; ++a)
      for (std::size_t b = 0; b < f; ++b) e.push_back({mod[a], mod[f + b]});
    auto h = build_graph(g.num_vertices(), e);
    ASSERT_EQ(blossom_max_matching(h).size(), blossom_max_matching(g).size());
  }
}

TEST(BMatchingMw, Examples) {
  EXPECT_EQ(mw_bvalue(fixtures::complete(2), {3, 5}), 3);
  EXPECT_EQ(mw_bvalue(fixtures::cycle(4), {2, 1, 2, 1}), 2);
  EXPECT_EQ(oracle::b_matching_by_enumeration(fixtures::cycle(4), {2, 1, 2, 1}), 2);
  EXPECT_EQ(mw_bvalue(fixtures::complete(3), {0, 0, 0}), 0);
  EXPECT_THROW(solve_bmatching_mw(fixtures::complete(3), VertexWeights({1, 1})), std::invalid_argument);
}

TEST(BMatchingMw, UnitBoundsEqualMatching) {
  std::mt19937_64 rng(113);
  for (int i = 0; i < 300; ++i) {
    auto g = fixtures::random_graph_in(1, 20, rng);
    ASSERT_EQ(mw_bvalue(g, std::vector<std::int64_t>(g.num_vertices(), 1)), mw_value(g));
  }
}

TEST(BMatchingMw, MatchesBlowUp) {
  std::mt19937_64 rng(127);
  for (int i = 0; i < 300; ++i) {
    auto g = i % 2 ? fixtures::random_graph_in(1, 30, rng) : random_composed_graph(30, rng).graph;
    auto b = fixtures::random_values(g.num_vertices(), 0, 4, rng);
    ASSERT_EQ(mw_bvalue(g, b), b_matching_max(g, VertexWeights(b)).value);
  }
}
