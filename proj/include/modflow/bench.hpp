#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <mutex>
#include <optional>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "modflow/edge_connectivity_mw.hpp"
#include "modflow/generate.hpp"
#include "modflow/kernels/mincut.hpp"
#include "modflow/kernels/triangles.hpp"
#include "modflow/matching_mw.hpp"
#include "modflow/report.hpp"
#include "modflow/triangles_mw.hpp"
#include "modflow/vertex_connectivity_mw.hpp"

namespace modflow {

enum class Problem { matching, bmatching, triangles, edp, gmincut, vflow, gvcut };

inline constexpr Problem all_problems[] = {Problem::matching, Problem::bmatching, Problem::triangles, Problem::edp,
                                           Problem::gmincut,  Problem::vflow,     Problem::gvcut};

inline const char* to_string(Problem p) {
  switch (p) {
    case Problem::matching: return "matching";
    case Problem::bmatching: return "bmatching";
    case Problem::triangles: return "triangles";
    case Problem::edp: return "edp";
    case Problem::gmincut: return "gmincut";
    case Problem::vflow: return "vflow";
    case Problem::gvcut: return "gvcut";
  }
  return "?";
}

inline Problem parse_problem(const std::string& name) {
  for (Problem p : all_problems)
    if (name == to_string(p)) return p;
  throw std::invalid_argument("unknown problem '" + name + "'");
}

inline bool needs_terminals(Problem p) { return p == Problem::edp || p == Problem::vflow; }
inline bool needs_capacities(Problem p) { return p == Problem::vflow || p == Problem::gvcut; }

/// Per-problem inputs beyond the graph. Missing capacities or b-values
/// default to all ones.
struct ProblemArgs {
  std::optional<Vertex> s, t;
  std::optional<VertexWeights> capacities;
  std::optional<VertexWeights> b;
};

namespace detail {

inline std::pair<Vertex, Vertex> terminals(Problem p, const ProblemArgs& a) {
  if (!a.s || !a.t) throw std::invalid_argument(std::string(to_string(p)) + " needs both --s and --t");
  return {*a.s, *a.t};
}

inline VertexWeights weights_or_ones(const std::optional<VertexWeights>& w, const Graph& g) {
  return w ? *w : VertexWeights::uniform(g.num_vertices(), 1);
}

inline Value split_flow_value(const Graph& g, const VertexWeights& c, Vertex s, Vertex t) {
  if (g.adjacent(s, t)) return Value::unbounded();
  return Value::finite(static_cast<wide_uint>(max_flow(vertex_split(g, c, s, t)).value));
}

}  // namespace detail

inline SolveReport run_problem(Problem p, const Graph& g, const ProblemArgs& a = {}) {
  switch (p) {
    case Problem::matching: return solve_matching_mw(g);
    case Problem::bmatching: return solve_bmatching_mw(g, detail::weights_or_ones(a.b, g));
    case Problem::triangles: return count_triangles_mw(g);
    case Problem::edp: {
      auto [s, t] = detail::terminals(p, a);
      return edge_disjoint_st(g, s, t);
    }
    case Problem::gmincut: return global_edge_mincut(g);
    case Problem::vflow: {
      auto [s, t] = detail::terminals(p, a);
      return max_vertex_flow_mw(g, detail::weights_or_ones(a.capacities, g), s, t);
    }
    case Problem::gvcut: return global_vertex_mincut_mw(g, detail::weights_or_ones(a.capacities, g));
  }
  throw std::invalid_argument("unknown problem");
}

/// Whole-graph solver for the same problem, with no decomposition.
inline Value run_baseline(Problem p, const Graph& g, const ProblemArgs& a = {}) {
  switch (p) {
    case Problem::matching: return Value::finite(blossom_max_matching(g).size());
    case Problem::bmatching:
      return Value::finite(static_cast<wide_uint>(b_matching_max(g, detail::weights_or_ones(a.b, g)).value));
    case Problem::triangles: return Value::finite(count_triangles_forward(g));
    case Problem::edp: {
      auto [s, t] = detail::terminals(p, a);
      return Value::finite(static_cast<wide_uint>(unit_edge_flow(g, s, t)));
    }
    case Problem::gmincut: return Value::finite(static_cast<wide_uint>(stoer_wagner_mincut(g).value));
    case Problem::vflow: {
      auto [s, t] = detail::terminals(p, a);
      if (s == t) throw std::invalid_argument("vflow needs s != t");
      return detail::split_flow_value(g, detail::weights_or_ones(a.capacities, g), s, t);
    }
    case Problem::gvcut: {
      if (g.num_vertices() < 2) throw std::invalid_argument("global vertex cut needs at least two vertices");
      const auto c = detail::weights_or_ones(a.capacities, g);
      std::optional<wide_uint> best;
      for (Vertex s = 0; s < Vertex(g.num_vertices()); ++s)
        for (Vertex t = s + 1; t < Vertex(g.num_vertices()); ++t)
          if (!g.adjacent(s, t)) {
            auto v = detail::split_flow_value(g, c, s, t).get();
            if (!best || v < *best) best = v;
          }
      return best ? Value::finite(*best) : Value::unbounded();
    }
  }
  throw std::invalid_argument("unknown problem");
}

/// Instance family of a suite entry.
struct GeneratorSpec {
  enum Kind { width, composed, recipe } kind = width;
  std::size_t n = 0;
  std::size_t width_value = 4;
  double p = 0.5;
  SlotSizes sizes = SlotSizes::equal;
  nlohmann::json recipe_json;
};

struct SuiteEntry {
  std::vector<Problem> problems;
  GeneratorSpec generator;
  std::size_t count = 1;
};

struct BenchSuite {
  std::uint64_t seed = 1;
  std::size_t threads = 1;
  std::size_t repeats = 1;
  std::vector<SuiteEntry> entries;
};

/// Suite JSON:
///   {"seed": 1, "threads": 4, "repeats": 3, "instances": [
///     {"problem": "matching", "generator": {"width": 8, "n": 500, "sizes": "random"}, "count": 10},
///     {"problem": ["edp", "vflow"], "generator": {"composed": 60}, "count": 100},
///     {"problem": "triangles", "generator": {"recipe": RECIPE}}]}
inline BenchSuite parse_suite(const nlohmann::json& j) {
  try {
    BenchSuite s;
    s.seed = j.value("seed", std::uint64_t{1});
    s.threads = std::max<std::size_t>(1, j.value("threads", std::size_t{1}));
    s.repeats = std::max<std::size_t>(1, j.value("repeats", std::size_t{1}));
    for (const auto& e : j.at("instances")) {
      SuiteEntry entry;
      const auto& pj = e.at("problem");
      if (pj.is_array()) {
        for (const auto& x : pj) entry.problems.push_back(parse_problem(x.get<std::string>()));
      } else {
        entry.problems.push_back(parse_problem(pj.get<std::string>()));
      }
      if (entry.problems.empty()) throw std::invalid_argument("suite entry without problems");
      entry.count = e.value("count", std::size_t{1});
      const auto& gj = e.at("generator");
      auto& gen = entry.generator;
      if (gj.contains("width")) {
        gen.kind = GeneratorSpec::width;
        gen.width_value = gj.at("width").get<std::size_t>();
        gen.n = gj.at("n").get<std::size_t>();
        gen.p = gj.value("p", 0.5);
        gen.sizes = parse_slot_sizes(gj.value("sizes", std::string("equal")));
      } else if (gj.contains("composed")) {
        gen.kind = GeneratorSpec::composed;
        gen.n = gj.at("composed").get<std::size_t>();
      } else if (gj.contains("recipe")) {
        gen.kind = GeneratorSpec::recipe;
        gen.recipe_json = gj.at("recipe");
        parse_recipe(nlohmann::json{{"root", gen.recipe_json}});
      } else {
        throw std::invalid_argument("generator needs one of width, composed, recipe");
      }
      s.entries.push_back(std::move(entry));
    }
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed suite: ") + e.what());
  }
}

struct BenchRecord {
  std::size_t instance = 0;
  std::string problem;
  std::size_t n = 0, m = 0, mw = 0;
  std::string algorithm;
  std::string value;
  double time_ms = 0;
  std::uint64_t seed = 0;
};

struct BenchResult {
  std::vector<BenchRecord> records;
  std::vector<std::size_t> mismatched_instances;
  bool ok() const { return mismatched_instances.empty(); }
};

inline Graph generate_instance(const GeneratorSpec& gen, std::uint64_t seed) {
  switch (gen.kind) {
    case GeneratorSpec::width: return width_controlled_graph(gen.n, gen.width_value, seed, gen.p, gen.sizes);
    case GeneratorSpec::composed: {
      std::mt19937_64 rng(seed);
      return random_composed_graph(gen.n, rng).graph;
    }
    case GeneratorSpec::recipe: {
      auto r = parse_recipe(nlohmann::json{{"root", gen.recipe_json}});
      r.seed = seed;
      return generate_substitution(r);
    }
  }
  throw std::invalid_argument("bad generator");
}

/// Terminals, capacities in 1..8 and b-values in 0..4, all drawn from `seed`.
/// vflow prefers a non-adjacent pair.
inline ProblemArgs random_args(Problem p, const Graph& g, std::uint64_t seed) {
  std::mt19937_64 rng(splitmix64(seed ^ 0x5bd1e995u));
  ProblemArgs a;
  const auto n = g.num_vertices();
  if (needs_terminals(p) && n >= 2) {
    Vertex s = Vertex(rng() % n), t = Vertex(rng() % (n - 1));
    if (t >= s) ++t;
    for (int tries = 0; p == Problem::vflow && g.adjacent(s, t) && tries < 64; ++tries) {
      s = Vertex(rng() % n);
      t = Vertex(rng() % (n - 1));
      if (t >= s) ++t;
    }
    a.s = s;
    a.t = t;
  }
  std::vector<std::int64_t> c(n), b(n);
  for (auto& x : c) x = 1 + std::int64_t(rng() % 8);
  for (auto& x : b) x = std::int64_t(rng() % 5);
  if (needs_capacities(p)) a.capacities = VertexWeights(std::move(c));
  if (p == Problem::bmatching) a.b = VertexWeights(std::move(b));
  return a;
}

namespace detail {

template <class F>
double median_time(std::size_t repeats, F&& f) {
  std::vector<double> t;
  for (std::size_t r = 0; r < repeats; ++r) {
    Stopwatch sw;
    f();
    t.push_back(sw.elapsed_ms());
  }
  std::sort(t.begin(), t.end());
  return t[t.size() / 2];
}

struct Job {
  Problem problem;
  const GeneratorSpec* generator;
  std::uint64_t seed;
};

}  // namespace detail

/// Runs every (instance, problem) pair through the mw solver and the
/// baseline. Each pair yields two records; a value disagreement marks the
/// instance as mismatched.
inline BenchResult run_bench(const BenchSuite& suite) {
  std::vector<detail::Job> jobs;
  std::uint64_t index = 0;
  for (const auto& e : suite.entries)
    for (std::size_t k = 0; k < e.count; ++k) {
      const auto seed = derive_seed(suite.seed, index++);
      for (Problem p : e.problems) jobs.push_back({p, &e.generator, seed});
    }
  std::vector<std::array<BenchRecord, 2>> out(jobs.size());
  std::vector<char> bad(jobs.size(), 0);
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < jobs.size();) {
      try {
        const auto& job = jobs[i];
        const auto g = generate_instance(*job.generator, job.seed);
        const auto args = random_args(job.problem, g, job.seed);
        const auto mw = g.num_vertices() ? modular_width(decompose(g)).value : 2;
        Value mw_value, base_value;
        const double mw_ms = detail::median_time(suite.repeats, [&] { mw_value = run_problem(job.problem, g, args).value; });
        const double base_ms = detail::median_time(suite.repeats, [&] { base_value = run_baseline(job.problem, g, args); });
        BenchRecord r;
        r.instance = i;
        r.problem = to_string(job.problem);
        r.n = g.num_vertices();
        r.m = g.num_edges();
        r.mw = mw;
        r.seed = job.seed;
        out[i][0] = r;
        out[i][0].algorithm = "mw";
        out[i][0].value = mw_value.str();
        out[i][0].time_ms = mw_ms;
        out[i][1] = r;
        out[i][1].algorithm = "baseline";
        out[i][1].value = base_value.str();
        out[i][1].time_ms = base_ms;
        bad[i] = !(mw_value == base_value);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = jobs.size();
      }
    }
  };
  const auto threads = std::min(suite.threads, std::max<std::size_t>(1, jobs.size()));
  std::vector<std::thread> pool;
  for (std::size_t k = 1; k < threads; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);

  BenchResult res;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    res.records.push_back(std::move(out[i][0]));
    res.records.push_back(std::move(out[i][1]));
    if (bad[i]) res.mismatched_instances.push_back(i);
  }
  return res;
}

inline nlohmann::json to_json(const BenchRecord& r) {
  return {{"instance", r.instance}, {"problem", r.problem}, {"n", r.n},         {"m", r.m},
          {"mw", r.mw},             {"algorithm", r.algorithm}, {"value", r.value}, {"time_ms", r.time_ms},
          {"seed", r.seed}};
}

inline nlohmann::json to_json(const BenchResult& res, const BenchSuite& suite) {
  nlohmann::json j{{"schema", 1}, {"seed", suite.seed}, {"repeats", suite.repeats}};
  j["records"] = nlohmann::json::array();
  for (const auto& r : res.records) j["records"].push_back(to_json(r));
  j["mismatches"] = res.mismatched_instances;
  return j;
}

inline void write_csv(const BenchResult& res, std::ostream& out) {
  out << "instance,problem,n,m,mw,algorithm,value,time_ms,seed\n";
  for (const auto& r : res.records)
    out << r.instance << ',' << r.problem << ',' << r.n << ',' << r.m << ',' << r.mw << ',' << r.algorithm << ','
        << r.value << ',' << r.time_ms << ',' << r.seed << '\n';
}

inline nlohmann::json to_json(const SolveReport& r) {
  nlohmann::json j{{"problem", r.problem}, {"value", r.value.str()}, {"n", r.n}, {"m", r.m}, {"time_ms", r.time_ms}};
  if (r.tree) {
    j["mw"] = r.tree->modular_width;
    j["tree"] = {{"nodes", r.tree->nodes},       {"leaves", r.tree->leaves}, {"parallel", r.tree->parallel},
                 {"series", r.tree->series},     {"prime", r.tree->prime}};
  }
  if (r.root_width) j["root_width"] = *r.root_width;
  if (r.kernel_nodes) j["kernel_nodes"] = *r.kernel_nodes;
  if (!r.witness_edges.empty()) {
    auto& w = j["witness_edges"] = nlohmann::json::array();
    for (const auto& e : r.witness_edges) w.push_back({e.u, e.v});
  }
  if (!r.witness_vertices.empty()) j["witness_vertices"] = r.witness_vertices;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

}  // namespace modflow
