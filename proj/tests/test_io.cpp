#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "modflow/io.hpp"

using namespace modflow;

namespace {

Graph parse(const std::string& text, GraphFormat f = GraphFormat::edge_list) {
  std::istringstream in(text);
  return read_graph(in, f);
}

GraphError parse_error(const std::string& text, GraphFormat f = GraphFormat::edge_list) {
  try {
    parse(text, f);
  } catch (const GraphError& e) {
    return e;
  }
  ADD_FAILURE() << "no error for: " << text;
  return GraphError(GraphErrc::io, "none");
}

}  // namespace

TEST(ReadGraph, EdgeListPath) { EXPECT_EQ(parse("3 2\n0 1\n1 2\n"), fixtures::path(3)); }

TEST(ReadGraph, DimacsTriangle) {
  EXPECT_EQ(parse("p edge 3 3\ne 1 2\ne 2 3\ne 1 3\n", GraphFormat::dimacs), fixtures::complete(3));
}

TEST(ReadGraph, CommentsAndBlankLines) {
  EXPECT_EQ(parse("# hello\n3 2\n\n0 1\n  # more\n1 2\n"), fixtures::path(3));
  EXPECT_EQ(parse("c x\np edge 2 1\nc y\ne 1 2\n", GraphFormat::dimacs), fixtures::complete(2));
}

TEST(ReadGraph, OutOfRange) {
  auto e = parse_error("2 1\n0 2\n");
  EXPECT_EQ(e.code(), GraphErrc::out_of_range);
  EXPECT_EQ(e.line(), 2u);
  EXPECT_EQ(parse_error("p edge 2 1\ne 0 1\n", GraphFormat::dimacs).code(), GraphErrc::out_of_range);
}

TEST(ReadGraph, ErrorsCarryLines) {
  EXPECT_EQ(parse_error("").code(), GraphErrc::malformed_header);
  EXPECT_EQ(parse_error("3\n").code(), GraphErrc::malformed_header);
  auto tokens = parse_error("3 2\n0 1\n1 2 3\n");
  EXPECT_EQ(tokens.code(), GraphErrc::token_count);
  EXPECT_EQ(tokens.line(), 3u);
  EXPECT_EQ(parse_error("3 3\n0 1\n1 2\n").code(), GraphErrc::edge_count);
  EXPECT_EQ(parse_error("3 1\n0 1\n1 2\n").code(), GraphErrc::edge_count);
  auto dup = parse_error("3 3\n0 1\n1 2\n1 0\n");
  EXPECT_EQ(dup.code(), GraphErrc::duplicate_edge);
  EXPECT_EQ(dup.line(), 4u);
  auto loop = parse_error("3 2\n0 1\n2 2\n");
  EXPECT_EQ(loop.code(), GraphErrc::self_loop);
  EXPECT_EQ(loop.line(), 3u);
  EXPECT_EQ(parse_error("2 1\n0 x\n").code(), GraphErrc::bad_value);
  EXPECT_EQ(parse_error("p edge 3\n", GraphFormat::dimacs).code(), GraphErrc::malformed_header);
  EXPECT_NE(std::string(parse_error("3 2\n0 1\n1 2 3\n").what()).find("line 3"), std::string::npos);
}

TEST(WriteGraph, RoundTripBothFormats) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    auto g = fixtures::random_graph_in(0, 40, rng);
    for (auto f : {GraphFormat::edge_list, GraphFormat::dimacs}) {
      std::ostringstream out;
      write_graph(g, out, f);
      ASSERT_EQ(parse(out.str(), f), g);
    }
  }
}

TEST(WriteGraph, SortedOutput) {
  std::ostringstream out;
  write_graph(build_graph(3, {{2, 1}, {0, 2}}), out);
  EXPECT_EQ(out.str(), "3 2\n0 2\n1 2\n");
}

TEST(ReadValues, LengthChecked) {
  std::istringstream ok("1\n2\n3\n");
  EXPECT_EQ(read_values(ok, 3).total(), 6);
  std::istringstream shortish("1\n2\n");
  EXPECT_THROW(read_values(shortish, 3), GraphError);
  std::istringstream neg("1\n-2\n");
  EXPECT_THROW(read_values(neg, 2), GraphError);
}

TEST(DimacsFlow, RoundTripIsByteStable) {
  FlowNetwork net(4, 0, 3);
  net.add_arc(0, 1, 3);
  net.add_edge(1, 2, 2);
  net.add_arc(2, 3, 0);
  net.add_arc(1, 3, 5);
  std::ostringstream a;
  write_dimacs_flow(net, a);
  EXPECT_EQ(a.str(), "p max 4 4\nn 1 s\nn 4 t\na 1 2 3\na 2 3 2\na 3 2 2\na 2 4 5\n");
  std::istringstream in(a.str());
  auto back = read_dimacs_flow(in);
  std::ostringstream b;
  write_dimacs_flow(back, b);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(max_flow(back).value, max_flow(net).value);
}

TEST(DimacsFlow, Malformed) {
  std::istringstream missing("p max 3 0\nn 1 s\n");
  EXPECT_THROW(read_dimacs_flow(missing), GraphError);
  std::istringstream count("p max 3 2\nn 1 s\nn 3 t\na 1 3 1\n");
  EXPECT_THROW(read_dimacs_flow(count), GraphError);
}
