#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "modflow/modflow.hpp"

using namespace modflow;

namespace {

constexpr int exit_ok = 0, exit_error = 1, exit_mismatch = 2;

struct SolveOptions {
  std::string graph_file;
  std::string format = "edge-list";
  std::optional<std::int64_t> s, t;
  std::string capacities, b, emit_kernel;
  bool dump_md = false, oracle = false, json = false;
};

nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error("'" + path + "' is not valid JSON: " + e.what());
  }
}

const char* describe(Problem p) {
  switch (p) {
    case Problem::matching: return "Maximum matching size";
    case Problem::bmatching: return "Maximum b-matching (edges may repeat up to the vertex bounds)";
    case Problem::triangles: return "Number of triangles";
    case Problem::edp: return "Edge-disjoint s-t paths";
    case Problem::gmincut: return "Global minimum edge cut";
    case Problem::vflow: return "Vertex-capacitated s-t flow";
    case Problem::gvcut: return "Global minimum vertex cut under capacities";
  }
  return "";
}

Vertex checked_vertex(std::int64_t v, const Graph& g, const char* flag) {
  if (v < 0 || static_cast<std::size_t>(v) >= g.num_vertices())
    throw std::invalid_argument(std::string(flag) + " " + std::to_string(v) + " is not a vertex (graph has " +
                                std::to_string(g.num_vertices()) + " vertices, ids are 0-based)");
  return static_cast<Vertex>(v);
}

int solve(Problem problem, const SolveOptions& o) {
  const auto g = read_graph(o.graph_file, parse_format(o.format));
  ProblemArgs args;
  if (o.s) args.s = checked_vertex(*o.s, g, "--s");
  if (o.t) args.t = checked_vertex(*o.t, g, "--t");
  if (!o.capacities.empty()) {
    if (!needs_capacities(problem))
      throw std::invalid_argument(std::string("--capacities does not apply to ") + to_string(problem));
    args.capacities = read_values(o.capacities, g.num_vertices());
  }
  if (!o.b.empty()) {
    if (problem != Problem::bmatching) throw std::invalid_argument("--b only applies to bmatching");
    args.b = read_values(o.b, g.num_vertices());
  }
  if (!o.emit_kernel.empty() && problem != Problem::edp) throw std::invalid_argument("--emit-kernel only applies to edp");

  if (o.dump_md && g.num_vertices() > 0) dump_tree(decompose(g), std::cerr);

  Stopwatch sw;
  auto report = run_problem(problem, g, args);
  report.time_ms = sw.elapsed_ms();
  if (o.json && problem == Problem::matching) report.witness_edges = matching_witness(g).edges;
  if (!o.emit_kernel.empty()) emit_kernel(g, *args.s, *args.t, o.emit_kernel);

  auto j = to_json(report);
  if (!o.json) {
    j.erase("witness_edges");
    j.erase("witness_vertices");
    j.erase("tree");
  }
  int code = exit_ok;
  if (o.oracle) {
    const auto base = run_baseline(problem, g, args);
    j["oracle"] = base.str();
    j["oracle_match"] = base == report.value;
    if (!(base == report.value)) code = exit_mismatch;
  }
  std::cout << (o.json ? j.dump(2) : j.dump()) << '\n';
  if (code == exit_mismatch) std::cerr << "error: mw value " << report.value.str() << " differs from baseline\n";
  return code;
}

int bench(const std::string& suite_file, const std::string& out_file, std::optional<std::size_t> threads) {
  auto suite = parse_suite(load_json(suite_file));
  if (threads) suite.threads = std::max<std::size_t>(1, *threads);
  const auto res = run_bench(suite);
  std::ofstream out(out_file);
  if (!out) throw std::runtime_error("cannot write '" + out_file + "'");
  if (out_file.size() >= 4 && out_file.compare(out_file.size() - 4, 4, ".csv") == 0) {
    write_csv(res, out);
  } else {
    out << to_json(res, suite).dump(2) << '\n';
  }
  std::cout << res.records.size() << " records, " << res.mismatched_instances.size() << " mismatches\n";
  if (!res.ok()) {
    for (auto i : res.mismatched_instances) std::cerr << "mismatch on instance " << i << '\n';
    return exit_mismatch;
  }
  return exit_ok;
}

int gen(const std::string& recipe_file, const std::string& out_file, const std::string& format,
        std::optional<std::uint64_t> seed) {
  auto recipe = parse_recipe(load_json(recipe_file));
  if (seed) recipe.seed = *seed;
  const auto g = generate_substitution(recipe);
  write_graph(g, out_file, parse_format(format));
  std::cout << g.num_vertices() << " vertices, " << g.num_edges() << " edges\n";
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph problems solved over the modular decomposition, checked against whole-graph solvers."};
  app.require_subcommand(1);

  SolveOptions opts;
  std::optional<Problem> chosen;
  for (Problem p : all_problems) {
    auto* sub = app.add_subcommand(to_string(p), describe(p));
    sub->add_option("graph", opts.graph_file, "Graph file")->required()->check(CLI::ExistingFile);
    sub->add_option("--format", opts.format, "edge-list (0-based) or dimacs (1-based)")
        ->check(CLI::IsMember({"edge-list", "dimacs"}));
    if (needs_terminals(p)) {
      sub->add_option("--s", opts.s, "Source vertex (0-based)")->required();
      sub->add_option("--t", opts.t, "Sink vertex (0-based)")->required();
    }
    if (needs_capacities(p)) sub->add_option("--capacities", opts.capacities, "One capacity per line")->check(CLI::ExistingFile);
    if (p == Problem::bmatching) sub->add_option("--b", opts.b, "One bound per line")->check(CLI::ExistingFile);
    if (p == Problem::edp) sub->add_option("--emit-kernel", opts.emit_kernel, "Write the reduced flow instance (DIMACS max)");
    sub->add_flag("--dump-md", opts.dump_md, "Print the decomposition tree to stderr");
    sub->add_flag("--oracle", opts.oracle, "Also run the whole-graph solver; exit 2 on disagreement");
    sub->add_flag("--json", opts.json, "Pretty-print the full report, witnesses included");
    sub->callback([&chosen, p] { chosen = p; });
  }

  std::string suite_file, bench_out;
  std::optional<std::size_t> threads;
  auto* bench_cmd = app.add_subcommand("bench", "Run a benchmark suite");
  bench_cmd->add_option("--suite", suite_file, "Suite JSON")->required()->check(CLI::ExistingFile);
  bench_cmd->add_option("--out", bench_out, "Output file (.csv for CSV, JSON otherwise)")->required();
  bench_cmd->add_option("--threads", threads, "Override the suite's worker count");

  std::string recipe_file, gen_out, gen_format = "edge-list";
  std::optional<std::uint64_t> gen_seed;
  auto* gen_cmd = app.add_subcommand("gen", "Expand a substitution recipe into a graph");
  gen_cmd->add_option("--recipe", recipe_file, "Recipe JSON")->required()->check(CLI::ExistingFile);
  gen_cmd->add_option("--out", gen_out, "Output graph file")->required();
  gen_cmd->add_option("--format", gen_format, "edge-list or dimacs")->check(CLI::IsMember({"edge-list", "dimacs"}));
  gen_cmd->add_option("--seed", gen_seed, "Override the recipe's seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? exit_ok : exit_error;
  }

  try {
    if (chosen) return solve(*chosen, opts);
    if (bench_cmd->parsed()) return bench(suite_file, bench_out, threads);
    if (gen_cmd->parsed()) return gen(recipe_file, gen_out, gen_format, gen_seed);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_error;
  }
  return exit_error;
}
