#ifndef POPMATCH_FUZZ_HPP
#define POPMATCH_FUZZ_HPP

// Seeded generators and the differential harness that cross-checks the
// structural popularity detector against the definitional brute force.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "popmatch/core.hpp"
#include "popmatch/popularity.hpp"
#include "popmatch/pvc.hpp"

namespace popmatch {

using Rng = std::mt19937_64;

/// Erdos-Renyi graph on n vertices with uniformly random strict preferences.
inline PreferenceInstance random_instance(Rng& rng, std::size_t n, double edge_probability = 0.5) {
  std::bernoulli_distribution coin(edge_probability);
  std::vector<std::vector<Vertex>> lists(n);
  for (Vertex u = 1; u <= n; ++u) {
    for (Vertex v = u + 1; v <= n; ++v) {
      if (coin(rng)) {
        lists[u - 1].push_back(v);
        lists[v - 1].push_back(u);
      }
    }
  }
  for (auto& list : lists) std::shuffle(list.begin(), list.end(), rng);
  return PreferenceInstance::validate(std::move(lists));
}

/// Greedy maximal matching over a shuffled edge order.
inline Matching random_maximal_matching(Rng& rng, const PreferenceInstance& inst) {
  std::vector<Edge> edges = inst.edges();
  std::shuffle(edges.begin(), edges.end(), rng);
  Matching m(inst.size());
  for (const Edge& e : edges) {
    if (!m.is_matched(e.u) && !m.is_matched(e.v)) m.insert(e);
  }
  return m;
}

/// Formula with `vars` variables and `clauses` clauses of three independent
/// uniformly random literals (repeats allowed).
inline CnfFormula random_formula(Rng& rng, std::uint32_t vars, std::size_t clauses) {
  std::uniform_int_distribution<std::uint32_t> var(1, vars);
  std::bernoulli_distribution sign(0.5);
  CnfFormula cnf{vars, {}};
  for (std::size_t c = 0; c < clauses; ++c) {
    Clause clause;
    for (Literal& l : clause) l = Literal{var(rng), sign(rng)};
    cnf.clauses.push_back(clause);
  }
  return cnf;
}

/// PVC instance with a planted solution: vertices are shuffled into `pairs`
/// pairs and `triples` triangles, a random valid selection is fixed, and
/// every other vertex pair it covers becomes an edge with probability
/// `extra_edge_probability`.
inline PvcInstance random_solvable_pvc(Rng& rng, std::size_t pairs, std::size_t triples,
                                       double extra_edge_probability = 0.3) {
  const std::size_t n = 2 * pairs + 3 * triples;
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), Vertex{1});
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<VertexPair> ps;
  std::vector<VertexTriple> ts;
  std::vector<Edge> edges;
  std::vector<char> selected(n + 1, 0);
  std::size_t next = 0;
  for (std::size_t k = 0; k < pairs; ++k, next += 2) {
    const Vertex x = order[next], y = order[next + 1];
    ps.push_back({x, y});
    edges.emplace_back(x, y);
    selected[std::uniform_int_distribution<int>(0, 1)(rng) ? x : y] = 1;
  }
  for (std::size_t k = 0; k < triples; ++k, next += 3) {
    const Vertex x = order[next], y = order[next + 1], z = order[next + 2];
    ts.push_back({x, y, z});
    edges.emplace_back(x, y);
    edges.emplace_back(y, z);
    edges.emplace_back(x, z);
    const int skip = std::uniform_int_distribution<int>(0, 2)(rng);
    for (int s = 0; s < 3; ++s) {
      if (s != skip) selected[order[next + s]] = 1;
    }
  }
  std::sort(edges.begin(), edges.end());
  std::bernoulli_distribution coin(extra_edge_probability);
  std::vector<Edge> extra;
  for (Vertex u = 1; u <= n; ++u) {
    for (Vertex v = u + 1; v <= n; ++v) {
      if (!(selected[u] || selected[v])) continue;
      if (std::binary_search(edges.begin(), edges.end(), Edge(u, v))) continue;
      if (coin(rng)) extra.emplace_back(u, v);
    }
  }
  edges.insert(edges.end(), extra.begin(), extra.end());
  return PvcInstance::validate(SimpleGraph::validate(n, std::move(edges)), std::move(ps), std::move(ts));
}

/// Popularity decision under test: returns true for "popular".
using PopularityDecider = std::function<bool(const PreferenceInstance&, const Matching&)>;

inline bool detector_decision(const PreferenceInstance& inst, const Matching& m) {
  return is_popular(inst, m).popular;
}

struct FuzzOptions {
  std::uint64_t seed = 1;
  std::size_t count = 100;
  std::size_t min_n = 1;
  std::size_t max_n = 6;
  double edge_probability = 0.5;
};

struct Divergence {
  PreferenceInstance instance;
  Matching matching;
  bool decider_says_popular = false;
  bool bruteforce_says_popular = false;
  std::size_t instance_index = 0;
};

struct FuzzReport {
  std::size_t instances = 0;
  std::size_t matchings_checked = 0;
  std::size_t popular_matchings = 0;
  std::size_t instances_with_popular = 0;
  std::optional<Divergence> divergence;
};

namespace detail {

inline PreferenceInstance without_edge(const PreferenceInstance& inst, const Edge& e) {
  std::vector<std::vector<Vertex>> lists;
  for (Vertex v = 1; v <= inst.size(); ++v) {
    auto prefs = inst.preferences(v);
    std::vector<Vertex> kept;
    for (Vertex u : prefs) {
      if (!(Edge(u, v) == e)) kept.push_back(u);
    }
    lists.push_back(std::move(kept));
  }
  return PreferenceInstance::validate(std::move(lists));
}

inline std::pair<PreferenceInstance, Matching> without_vertex(const PreferenceInstance& inst, const Matching& m,
                                                              Vertex gone) {
  auto rename = [gone](Vertex v) { return v > gone ? v - 1 : v; };
  std::vector<std::vector<Vertex>> lists;
  for (Vertex v = 1; v <= inst.size(); ++v) {
    if (v == gone) continue;
    std::vector<Vertex> kept;
    for (Vertex u : inst.preferences(v)) {
      if (u != gone) kept.push_back(rename(u));
    }
    lists.push_back(std::move(kept));
  }
  auto smaller = PreferenceInstance::validate(std::move(lists));
  std::vector<Edge> edges;
  for (const Edge& e : m.edges()) edges.emplace_back(rename(e.u), rename(e.v));
  auto matching = Matching::from_edges(smaller, edges);
  return {std::move(smaller), std::move(matching)};
}

inline bool diverges(const PopularityDecider& decide, const PreferenceInstance& inst, const Matching& m) {
  return decide(inst, m) != is_popular_bruteforce(inst, m).popular;
}

}  // namespace detail

/// Greedily drops non-matching edges, then unmatched isolated vertices, while
/// the disagreement persists.
inline Divergence minimize_divergence(const PopularityDecider& decide, Divergence d) {
  bool shrunk = true;
  while (shrunk) {
    shrunk = false;
    for (const Edge& e : d.instance.edges()) {
      if (d.matching.contains(e)) continue;
      auto smaller = detail::without_edge(d.instance, e);
      auto m = Matching::from_edges(smaller, d.matching.edges());
      if (detail::diverges(decide, smaller, m)) {
        d.instance = std::move(smaller);
        d.matching = std::move(m);
        shrunk = true;
        break;
      }
    }
    if (shrunk) continue;
    for (Vertex v = 1; v <= d.instance.size(); ++v) {
      if (d.instance.degree(v) != 0) continue;
      auto [smaller, m] = detail::without_vertex(d.instance, d.matching, v);
      if (detail::diverges(decide, smaller, m)) {
        d.instance = std::move(smaller);
        d.matching = std::move(m);
        shrunk = true;
        break;
      }
    }
  }
  d.decider_says_popular = decide(d.instance, d.matching);
  d.bruteforce_says_popular = is_popular_bruteforce(d.instance, d.matching).popular;
  return d;
}

/// Generates `count` random instances and compares `decide` with the
/// brute-force oracle on every matching of each. Stops at the first
/// disagreement, which is minimized before being reported.
inline FuzzReport run_fuzz(const FuzzOptions& opts, const PopularityDecider& decide = detector_decision) {
  Rng rng(opts.seed);
  std::uniform_int_distribution<std::size_t> size(opts.min_n, std::max(opts.min_n, opts.max_n));
  FuzzReport report;
  for (std::size_t k = 0; k < opts.count; ++k) {
    const PreferenceInstance inst = random_instance(rng, size(rng), opts.edge_probability);
    const auto matchings = all_matchings(inst);
    ++report.instances;
    bool any_popular = false;
    for (const Matching& m : matchings) {
      ++report.matchings_checked;
      const bool oracle = is_popular_bruteforce(inst, m, matchings).popular;
      const bool verdict = decide(inst, m);
      any_popular |= oracle;
      report.popular_matchings += oracle;
      if (oracle != verdict) {
        report.divergence = minimize_divergence(decide, Divergence{inst, m, verdict, oracle, k});
        return report;
      }
    }
    report.instances_with_popular += any_popular;
  }
  return report;
}

}  // namespace popmatch

#endif  // POPMATCH_FUZZ_HPP
