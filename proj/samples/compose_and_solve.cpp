// Builds a graph by substitution, then solves every problem on it with the
// decomposition-based solvers and the whole-graph solvers side by side.
#include <iostream>

#include "modflow/modflow.hpp"

int main(int argc, char** argv) {
  using namespace modflow;
  auto recipe = parse_recipe(nlohmann::json::parse(R"({
    "seed": 5,
    "root": {"quotient": "C5", "children": [
      {"quotient": "K3"}, {"quotient": "E4"}, "leaf",
      {"quotient": "P4", "fill": {"quotient": "E2"}}, {"quotient": "K2"}]}
  })"));
  if (argc > 1) recipe.seed = std::stoull(argv[1]);
  const auto g = generate_substitution(recipe);
  const auto tree = decompose(g);
  std::cout << "n=" << g.num_vertices() << " m=" << g.num_edges() << " mw=" << modular_width(tree).value << "\n";
  dump_tree(tree, std::cout);

  int failures = 0;
  for (Problem p : all_problems) {
    const auto args = random_args(p, g, recipe.seed);
    const auto report = run_problem(p, g, args);
    const auto base = run_baseline(p, g, args);
    const bool same = report.value == base;
    failures += !same;
    std::cout << to_string(p) << ": " << report.value.str() << " (whole graph " << base.str() << ")"
              << (same ? "" : "  MISMATCH") << "\n";
  }
  return failures == 0 ? 0 : 2;
}
