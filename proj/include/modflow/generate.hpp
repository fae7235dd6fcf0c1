#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "modflow/graph.hpp"
#include "modflow/mdtree.hpp"

namespace modflow {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Independent seed for instance `index` of a run seeded with `seed`.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

class RecipeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Quotient template: a named graph, K_k, E_k, or a random prime graph.
struct QuotientTemplate {
  enum Kind { named, clique, edgeless, random_prime } kind = named;
  std::string name;
  std::size_t size = 0;
  double p = 0.5;
};

struct RecipeNode {
  bool leaf = true;
  QuotientTemplate quotient;
  std::vector<RecipeNode> children;
};

struct SubstitutionRecipe {
  RecipeNode root;
  std::uint64_t seed = 0;
};

/// Expanded graph plus every module the recipe guarantees, as vertex sets.
struct Substitution {
  Graph graph;
  std::vector<std::vector<Vertex>> modules;
};

namespace detail {

inline Graph named_quotient(const std::string& name) {
  auto cycle = [](Vertex n) {
    std::vector<Edge> e;
    for (Vertex i = 0; i < n; ++i) e.push_back({i, Vertex((i + 1) % n)});
    return build_graph(std::size_t(n), e);
  };
  if (name == "P4") return build_graph(4, {{0, 1}, {1, 2}, {2, 3}});
  if (name == "C5") return cycle(5);
  if (name == "C7") return cycle(7);
  if (name == "bull") return build_graph(5, {{0, 1}, {1, 2}, {0, 2}, {3, 0}, {4, 1}});
  if (name == "petersen") {
    std::vector<Edge> e;
    for (Vertex i = 0; i < 5; ++i) {
      e.push_back({i, Vertex((i + 1) % 5)});
      e.push_back({Vertex(i + 5), Vertex((i + 2) % 5 + 5)});
      e.push_back({i, Vertex(i + 5)});
    }
    return build_graph(10, e);
  }
  throw RecipeError("unknown quotient template '" + name + "'");
}

inline bool is_prime_graph(const Graph& g) {
  if (g.num_vertices() < 4) return false;
  if (connected_components(g).size() != 1 || complement_components(g).size() != 1) return false;
  return maximal_modular_partition(g).size() == g.num_vertices();
}

inline std::size_t template_size(const QuotientTemplate& q) {
  return q.kind == QuotientTemplate::named ? named_quotient(q.name).num_vertices() : q.size;
}

}  // namespace detail

/// Rejection-samples G(l, p) until the sample has only trivial modules.
inline Graph random_prime_graph(std::size_t l, double p, std::mt19937_64& rng) {
  if (l < 4) throw RecipeError("prime graphs need at least 4 vertices");
  if (!(p > 0.0 && p < 1.0)) throw RecipeError("random prime density must lie in (0,1)");
  std::bernoulli_distribution coin(p);
  for (int attempt = 0; attempt < 100000; ++attempt) {
    std::vector<Edge> e;
    for (std::size_t i = 0; i < l; ++i)
      for (std::size_t j = i + 1; j < l; ++j)
        if (coin(rng)) e.push_back({Vertex(i), Vertex(j)});
    auto g = build_graph(l, e);
    if (detail::is_prime_graph(g)) return g;
  }
  throw RecipeError("no prime graph found on " + std::to_string(l) + " vertices at p=" + std::to_string(p));
}

/// Rejection-samples uniform graphs with exactly `edges` edges until one is prime.
inline Graph random_prime_graph_exact(std::size_t l, std::size_t edges, std::mt19937_64& rng) {
  if (l < 4) throw RecipeError("prime graphs need at least 4 vertices");
  std::vector<Edge> all;
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = i + 1; j < l; ++j) all.push_back({Vertex(i), Vertex(j)});
  if (edges < l - 1 || edges > all.size() - (l - 1))
    throw RecipeError("edge count leaves no room for a prime graph on " + std::to_string(l) + " vertices");
  for (int attempt = 0; attempt < 100000; ++attempt) {
    for (std::size_t i = 0; i < edges; ++i) std::swap(all[i], all[i + rng() % (all.size() - i)]);
    auto g = build_graph(l, std::span<const Edge>(all.data(), edges));
    if (detail::is_prime_graph(g)) return g;
  }
  throw RecipeError("no prime graph found on " + std::to_string(l) + " vertices with " + std::to_string(edges) +
                    " edges");
}

inline Graph instantiate_quotient(const QuotientTemplate& q, std::mt19937_64& rng) {
  switch (q.kind) {
    case QuotientTemplate::named: return detail::named_quotient(q.name);
    case QuotientTemplate::clique: return detail::complete_graph(q.size);
    case QuotientTemplate::edgeless: return detail::edgeless_graph(q.size);
    case QuotientTemplate::random_prime: return random_prime_graph(q.size, q.p, rng);
  }
  throw RecipeError("bad quotient template");
}

namespace detail {

inline void expand(const RecipeNode& node, std::mt19937_64& rng, std::size_t depth, std::vector<Edge>& edges,
                   std::vector<std::vector<Vertex>>& modules, Vertex& next) {
  if (depth > 64) throw RecipeError("recipe nested deeper than 64 levels");
  if (node.leaf) {
    modules.push_back({next++});
    return;
  }
  const auto q = instantiate_quotient(node.quotient, rng);
  const auto l = q.num_vertices();
  if (l < 2) throw RecipeError("quotient must have at least 2 vertices");
  if (node.children.size() != l)
    throw RecipeError("quotient has " + std::to_string(l) + " slots but " + std::to_string(node.children.size()) +
                      " children were given");
  const Vertex first = next;
  std::vector<std::pair<Vertex, Vertex>> range(l);
  for (std::size_t i = 0; i < l; ++i) {
    range[i].first = next;
    expand(node.children[i], rng, depth + 1, edges, modules, next);
    range[i].second = next;
  }
  for (const auto& e : q.edges())
    for (Vertex a = range[e.u].first; a < range[e.u].second; ++a)
      for (Vertex b = range[e.v].first; b < range[e.v].second; ++b) edges.push_back({a, b});
  auto& mine = modules.emplace_back();
  for (Vertex v = first; v < next; ++v) mine.push_back(v);
}

inline QuotientTemplate parse_quotient(const nlohmann::json& j) {
  QuotientTemplate q;
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s.size() >= 2 && (s[0] == 'K' || s[0] == 'E') && s.find_first_not_of("0123456789", 1) == std::string::npos) {
      q.kind = s[0] == 'K' ? QuotientTemplate::clique : QuotientTemplate::edgeless;
      q.size = std::stoul(s.substr(1));
      if (q.size < 2) throw RecipeError("quotient '" + s + "' needs at least 2 vertices");
      return q;
    }
    q.name = s;
    named_quotient(s);
    return q;
  }
  if (j.is_object() && j.contains("random_prime")) {
    q.kind = QuotientTemplate::random_prime;
    q.size = j.at("random_prime").get<std::size_t>();
    q.p = j.value("p", 0.5);
    if (q.size < 4) throw RecipeError("random_prime needs at least 4 vertices");
    return q;
  }
  throw RecipeError("quotient must be a template name or {\"random_prime\": l}");
}

inline RecipeNode parse_node(const nlohmann::json& j, std::size_t depth) {
  if (depth > 64) throw RecipeError("recipe nested deeper than 64 levels");
  RecipeNode node;
  if (j.is_string() && j.get<std::string>() == "leaf") return node;
  if (!j.is_object() || !j.contains("quotient")) throw RecipeError("recipe node must be \"leaf\" or an object with a quotient");
  node.leaf = false;
  node.quotient = parse_quotient(j.at("quotient"));
  const auto l = template_size(node.quotient);
  if (j.contains("children")) {
    if (j.contains("fill")) throw RecipeError("give either children or fill, not both");
    for (const auto& c : j.at("children")) node.children.push_back(parse_node(c, depth + 1));
    if (node.children.size() != l)
      throw RecipeError("quotient has " + std::to_string(l) + " slots but " + std::to_string(node.children.size()) +
                        " children were given");
  } else {
    const auto fill = parse_node(j.contains("fill") ? j.at("fill") : nlohmann::json("leaf"), depth + 1);
    node.children.assign(l, fill);
  }
  return node;
}

}  // namespace detail

/// Recipe JSON: {"seed": 7, "root": NODE}, with NODE either "leaf" or
/// {"quotient": Q, "children": [NODE...]} / {"quotient": Q, "fill": NODE}
/// and Q one of "P4", "C5", "C7", "bull", "petersen", "K<k>", "E<k>",
/// {"random_prime": l, "p": 0.5}.
inline SubstitutionRecipe parse_recipe(const nlohmann::json& j) {
  try {
    SubstitutionRecipe r;
    r.seed = j.value("seed", std::uint64_t{0});
    r.root = detail::parse_node(j.at("root"), 0);
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw RecipeError(std::string("malformed recipe: ") + e.what());
  }
}

inline Substitution generate_substitution_with_modules(const SubstitutionRecipe& recipe) {
  std::mt19937_64 rng(recipe.seed);
  std::vector<Edge> edges;
  Substitution out;
  Vertex next = 0;
  detail::expand(recipe.root, rng, 0, edges, out.modules, next);
  out.graph = build_graph(std::size_t(next), edges);
  return out;
}

inline Graph generate_substitution(const SubstitutionRecipe& recipe) {
  return generate_substitution_with_modules(recipe).graph;
}

enum class SlotSizes { equal, band, random };

inline SlotSizes parse_slot_sizes(const std::string& name) {
  if (name == "equal") return SlotSizes::equal;
  if (name == "band") return SlotSizes::band;
  if (name == "random") return SlotSizes::random;
  throw RecipeError("slot sizes must be 'equal', 'band' or 'random', got '" + name + "'");
}

/// n vertices spread over the slots of a random prime quotient on `width`
/// vertices with round(p * C(width, 2)) edges, each slot an independent set.
/// The root is prime with `width` children, so the modular-width is exactly
/// `width`. Slot sizes are balanced, drawn within [0.5, 1.5] * n / width
/// (band), or a uniform random composition of n; labels are shuffled.
inline Graph width_controlled_graph(std::size_t n, std::size_t width, std::uint64_t seed, double p = 0.5,
                                    SlotSizes sizes = SlotSizes::equal) {
  if (width < 4 || n < width) throw RecipeError("width-controlled graphs need 4 <= width <= n");
  std::mt19937_64 rng(seed);
  const std::size_t pairs = width * (width - 1) / 2;
  const auto qedges = std::clamp<std::size_t>(std::size_t(std::llround(p * double(pairs))), width - 1, pairs - width + 1);
  const auto q = random_prime_graph_exact(width, qedges, rng);
  std::vector<Vertex> start(width + 1, 0);
  if (sizes == SlotSizes::equal) {
    for (std::size_t i = 0; i < width; ++i) start[i + 1] = start[i] + Vertex(n / width + (i < n % width ? 1 : 0));
  } else if (sizes == SlotSizes::band) {
    std::uniform_real_distribution<double> weight(0.5, 1.5);
    std::vector<double> x(width);
    for (auto& v : x) v = weight(rng);
    const double total = std::accumulate(x.begin(), x.end(), 0.0);
    std::size_t placed = 0;
    for (std::size_t i = 0; i < width; ++i) {
      const auto left = width - i - 1;
      auto size = i + 1 == width ? n - placed
                                 : std::clamp<std::size_t>(std::size_t(double(n) * x[i] / total), 1, n - placed - left);
      placed += size;
      start[i + 1] = Vertex(placed);
    }
  } else {
    std::vector<Vertex> cuts(n - 1);
    std::iota(cuts.begin(), cuts.end(), 1);
    for (std::size_t i = 0; i + 1 < width; ++i) std::swap(cuts[i], cuts[i + rng() % (cuts.size() - i)]);
    std::sort(cuts.begin(), cuts.begin() + (width - 1));
    std::copy(cuts.begin(), cuts.begin() + (width - 1), start.begin() + 1);
    start[width] = Vertex(n);
  }
  std::vector<Vertex> label(n);
  std::iota(label.begin(), label.end(), 0);
  std::shuffle(label.begin(), label.end(), rng);
  std::vector<Edge> edges;
  for (const auto& e : q.edges())
    for (Vertex a = start[e.u]; a < start[e.u + 1]; ++a)
      for (Vertex b = start[e.v]; b < start[e.v + 1]; ++b) edges.push_back({label[a], label[b]});
  return build_graph(n, edges);
}

/// Random nested recipe with at most `max_n` leaves.
inline RecipeNode random_recipe(std::size_t max_n, std::mt19937_64& rng, std::size_t depth = 0) {
  RecipeNode node;
  if (max_n < 2 || depth > 6 || (depth > 0 && rng() % 4 == 0)) return node;
  node.leaf = false;
  // candidate quotient arities that fit the budget
  std::vector<QuotientTemplate> options;
  auto add_named = [&](const char* name) {
    QuotientTemplate q;
    q.name = name;
    if (detail::template_size(q) <= max_n) options.push_back(q);
  };
  for (auto name : {"P4", "C5", "C7", "bull", "petersen"}) add_named(name);
  const std::size_t cap = std::min<std::size_t>(max_n, 6);
  for (std::size_t k = 2; k <= cap; ++k) {
    options.push_back({QuotientTemplate::clique, "", k, 0.5});
    options.push_back({QuotientTemplate::edgeless, "", k, 0.5});
  }
  if (max_n >= 4) options.push_back({QuotientTemplate::random_prime, "", 4 + rng() % (std::min<std::size_t>(max_n, 9) - 3), 0.5});
  node.quotient = options[rng() % options.size()];
  const auto l = detail::template_size(node.quotient);
  std::size_t budget = max_n - l;
  for (std::size_t i = 0; i < l; ++i) {
    const std::size_t extra = budget ? rng() % (budget + 1) : 0;
    std::size_t share = std::min<std::size_t>(budget, extra / 2);
    auto child = random_recipe(share + 1, rng, depth + 1);
    budget -= share;
    node.children.push_back(std::move(child));
  }
  return node;
}

/// A random graph with nontrivial modules, at most `max_n` vertices.
inline Substitution random_composed_graph(std::size_t max_n, std::mt19937_64& rng) {
  SubstitutionRecipe r;
  r.root = random_recipe(max_n, rng);
  r.seed = rng();
  return generate_substitution_with_modules(r);
}

}  // namespace modflow
