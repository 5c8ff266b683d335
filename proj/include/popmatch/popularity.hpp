#ifndef POPMATCH_POPULARITY_HPP
#define POPMATCH_POPULARITY_HPP

// Edge labels relative to a matching, the marked subgraph G_M, and exact
// detection of the three alternating structures whose absence characterizes
// popular matchings. A definitional brute-force oracle lives here as well.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "popmatch/core.hpp"

namespace popmatch {

enum class EdgeLabel : int { minus_two = -2, zero = 0, plus_two = 2 };

inline int value(EdgeLabel l) { return static_cast<int>(l); }

/// Label of a non-matching edge: +2 if both endpoints prefer each other to
/// their current status, -2 if neither does, 0 otherwise.
inline EdgeLabel label_edge(const PreferenceInstance& inst, const Matching& m, const Edge& e) {
  if (m.contains(e)) {
    throw Error(Errc::edge_in_matching, to_string(e));
  }
  if (!inst.has_edge(e)) {
    throw Error(Errc::not_a_neighbor, to_string(e) + " is not an edge of the instance");
  }
  const bool u_wants = inst.rank(e.u, e.v) < inst.rank(e.u, m.partner(e.u));
  const bool v_wants = inst.rank(e.v, e.u) < inst.rank(e.v, m.partner(e.v));
  if (u_wants && v_wants) return EdgeLabel::plus_two;
  if (!u_wants && !v_wants) return EdgeLabel::minus_two;
  return EdgeLabel::zero;
}

/// Subgraph keeping every matching edge and every non-matching edge whose
/// label is not -2.
class MarkedGraph {
 public:
  struct Arc {
    Vertex to;
    bool matched;
    EdgeLabel label;  // zero for matching edges
  };

  MarkedGraph(const PreferenceInstance& inst, const Matching& m) : arcs_(inst.size() + 1) {
    check_matching(inst, m);
    for (const Edge& e : inst.edges()) {
      if (m.contains(e)) {
        add(e, true, EdgeLabel::zero);
        continue;
      }
      const EdgeLabel l = label_edge(inst, m, e);
      if (l != EdgeLabel::minus_two) add(e, false, l);
    }
  }

  std::size_t size() const { return arcs_.size() - 1; }
  std::span<const Arc> arcs(Vertex v) const { return arcs_.at(v); }

  const std::vector<Edge>& kept_edges() const { return kept_; }
  bool is_kept(const Edge& e) const { return std::binary_search(kept_.begin(), kept_.end(), e); }

  /// Label of a kept non-matching edge; nullopt for matching or dropped edges.
  std::optional<EdgeLabel> label(const Edge& e) const {
    for (const Arc& a : arcs_.at(e.u)) {
      if (a.to == e.v) return a.matched ? std::nullopt : std::optional<EdgeLabel>(a.label);
    }
    return std::nullopt;
  }

 private:
  void add(const Edge& e, bool matched, EdgeLabel l) {
    arcs_[e.u].push_back({e.v, matched, l});
    arcs_[e.v].push_back({e.u, matched, l});
    kept_.push_back(e);  // inst.edges() is sorted, so kept_ stays sorted
  }

  std::vector<std::vector<Arc>> arcs_;
  std::vector<Edge> kept_;
};

inline MarkedGraph build_marked_graph(const PreferenceInstance& inst, const Matching& m) {
  return MarkedGraph(inst, m);
}

enum class WitnessKind { cycle_with_plus, path_from_unmatched_with_plus, path_with_two_plus };

inline std::string_view to_string(WitnessKind k) {
  switch (k) {
    case WitnessKind::cycle_with_plus: return "CycleWithPlus";
    case WitnessKind::path_from_unmatched_with_plus: return "PathFromUnmatchedWithPlus";
    case WitnessKind::path_with_two_plus: return "PathWithTwoPlus";
  }
  return "Unknown";
}

/// Alternating path or cycle in G_M. Edge t joins vertices[t] and
/// vertices[t + 1]; a cycle has one extra closing edge back to vertices[0].
struct Witness {
  WitnessKind kind = WitnessKind::cycle_with_plus;
  std::vector<Vertex> vertices;
  std::vector<std::size_t> plus_edges;  // indices of +2 edges along the traversal

  bool is_cycle() const { return kind == WitnessKind::cycle_with_plus; }

  std::size_t edge_count() const {
    if (vertices.empty()) return 0;
    return is_cycle() ? vertices.size() : vertices.size() - 1;
  }

  Edge edge(std::size_t t) const {
    return Edge(vertices[t], vertices[(t + 1) % vertices.size()]);
  }

  friend bool operator==(const Witness&, const Witness&) = default;
};

struct SearchOptions {
  std::uint64_t node_budget = 10'000'000;
};

struct SearchStats {
  std::uint64_t nodes = 0;
};

namespace detail {

inline std::vector<std::size_t> plus_positions(const MarkedGraph& g, const Witness& w) {
  std::vector<std::size_t> out;
  for (std::size_t t = 0; t < w.edge_count(); ++t) {
    if (g.label(w.edge(t)) == EdgeLabel::plus_two) out.push_back(t);
  }
  return out;
}

/// Cycles start at their minimum vertex and head toward its smaller cycle
/// neighbor; paths with an unmatched endpoint start there (smaller id if both
/// are unmatched); other paths start at the smaller endpoint.
inline Witness canonicalize(const MarkedGraph& g, const Matching& m, Witness w) {
  auto& vs = w.vertices;
  if (w.is_cycle()) {
    auto min_it = std::min_element(vs.begin(), vs.end());
    std::rotate(vs.begin(), min_it, vs.end());
    if (vs.size() > 2 && vs.back() < vs[1]) std::reverse(vs.begin() + 1, vs.end());
  } else {
    const bool front_free = !m.is_matched(vs.front());
    const bool back_free = !m.is_matched(vs.back());
    bool flip = vs.back() < vs.front();
    if (w.kind == WitnessKind::path_from_unmatched_with_plus && front_free != back_free) {
      flip = back_free;
    }
    if (flip) std::reverse(vs.begin(), vs.end());
  }
  w.plus_edges = plus_positions(g, w);
  return w;
}

class ForbiddenStructureSearch {
 public:
  ForbiddenStructureSearch(const MarkedGraph& g, const Matching& m, const SearchOptions& opts)
      : g_(g), m_(m), opts_(opts), on_path_(g.size() + 1, 0) {}

  std::optional<Witness> run() {
    for (Vertex s = 1; s <= g_.size(); ++s) {
      start_free_ = !m_.is_matched(s);
      path_.assign(1, s);
      on_path_[s] = 1;
      // A path may leave a matched start only through its matching edge.
      const bool found = extend(s, /*need_matched=*/!start_free_, 0);
      on_path_[s] = 0;
      if (found) return canonicalize(g_, m_, *found_);
    }
    return std::nullopt;
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  void count_node() {
    if (++nodes_ > opts_.node_budget) {
      throw Error(Errc::budget_exceeded,
                  "forbidden-structure search exceeded " + std::to_string(opts_.node_budget) + " nodes");
    }
  }

  // Called whenever the path ends at a legal endpoint.
  bool check_path(int plus) {
    const bool free_end = start_free_ || !m_.is_matched(path_.back());
    if (free_end && plus >= 1) {
      found_ = Witness{WitnessKind::path_from_unmatched_with_plus, path_, {}};
      return true;
    }
    if (plus >= 2) {
      found_ = Witness{WitnessKind::path_with_two_plus, path_, {}};
      return true;
    }
    return false;
  }

  bool push(Vertex w) {
    count_node();
    path_.push_back(w);
    on_path_[w] = 1;
    return true;
  }

  void pop() {
    on_path_[path_.back()] = 0;
    path_.pop_back();
  }

  bool extend(Vertex v, bool need_matched, int plus) {
    if (need_matched) {
      if (!m_.is_matched(v)) return false;
      const Vertex w = m_.partner(v);
      if (on_path_[w]) return false;
      push(w);
      const bool found = check_path(plus) || extend(w, false, plus);
      pop();
      return found;
    }
    const Vertex start = path_.front();
    for (const MarkedGraph::Arc& a : g_.arcs(v)) {
      if (a.matched) continue;
      const int next_plus = std::min(2, plus + (a.label == EdgeLabel::plus_two ? 1 : 0));
      if (a.to == start) {
        // Closing non-matching edge; the path left `start` on its matching edge.
        if (!start_free_ && path_.size() >= 4 && next_plus >= 1) {
          count_node();
          found_ = Witness{WitnessKind::cycle_with_plus, path_, {}};
          return true;
        }
        continue;
      }
      if (on_path_[a.to]) continue;
      push(a.to);
      bool found = false;
      if (!m_.is_matched(a.to)) {
        found = check_path(next_plus);  // a non-matching edge may only end at a free vertex
      } else {
        found = extend(a.to, true, next_plus);
      }
      pop();
      if (found) return true;
    }
    return false;
  }

  const MarkedGraph& g_;
  const Matching& m_;
  SearchOptions opts_;
  std::vector<char> on_path_;
  std::vector<Vertex> path_;
  bool start_free_ = false;
  std::uint64_t nodes_ = 0;
  std::optional<Witness> found_;
};

}  // namespace detail

/// Exhaustive backtracking over simple alternating paths and cycles of G_M.
/// Returns the first structure found, in canonical orientation, or nullopt
/// when none exists. Exceeding the node budget throws instead of answering.
inline std::optional<Witness> find_forbidden_structure(const PreferenceInstance& inst, const Matching& m,
                                                       const SearchOptions& opts = {},
                                                       SearchStats* stats = nullptr) {
  const MarkedGraph g(inst, m);
  detail::ForbiddenStructureSearch search(g, m, opts);
  auto result = search.run();
  if (stats) stats->nodes += search.nodes();
  return result;
}

struct PopularityVerdict {
  bool popular = false;
  std::optional<Witness> witness;
  std::uint64_t nodes = 0;
};

inline PopularityVerdict is_popular(const PreferenceInstance& inst, const Matching& m,
                                    const SearchOptions& opts = {}) {
  SearchStats stats;
  auto w = find_forbidden_structure(inst, m, opts, &stats);
  return PopularityVerdict{!w.has_value(), std::move(w), stats.nodes};
}

/// Re-checks a witness against the definitions from scratch: alternation,
/// membership in G_M, endpoint rules, and the +2 count its kind demands.
inline void validate_witness(const PreferenceInstance& inst, const Matching& m, const Witness& w) {
  auto fail = [](const std::string& why) { throw Error(Errc::invalid_witness, why); };
  check_matching(inst, m);
  const auto& vs = w.vertices;
  if (vs.size() < 2) fail("fewer than two vertices");
  for (Vertex v : vs) {
    if (v < 1 || v > inst.size()) fail("vertex " + std::to_string(v) + " out of range");
  }
  std::vector<Vertex> sorted = vs;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) fail("repeated vertex");

  const std::size_t k = w.edge_count();
  if (w.is_cycle() && (vs.size() < 4 || vs.size() % 2 != 0)) fail("cycle must be even with length >= 4");

  std::vector<std::size_t> plus;
  std::vector<bool> in_matching(k);
  for (std::size_t t = 0; t < k; ++t) {
    const Edge e = w.edge(t);
    if (!inst.has_edge(e)) fail(to_string(e) + " is not an edge");
    in_matching[t] = m.contains(e);
    if (!in_matching[t]) {
      const EdgeLabel l = label_edge(inst, m, e);
      if (l == EdgeLabel::minus_two) fail(to_string(e) + " is labeled -2");
      if (l == EdgeLabel::plus_two) plus.push_back(t);
    }
    if (t > 0 && in_matching[t] == in_matching[t - 1]) fail("edges do not alternate at " + std::to_string(t));
  }
  if (w.is_cycle() && in_matching[0] == in_matching[k - 1]) fail("cycle does not alternate at its start");
  if (plus != w.plus_edges) fail("recorded +2 positions do not match the labels");

  if (!w.is_cycle()) {
    if (!in_matching.front() && m.is_matched(vs.front())) fail("matched start leaves on a non-matching edge");
    if (!in_matching.back() && m.is_matched(vs.back())) fail("matched end reached on a non-matching edge");
  }
  switch (w.kind) {
    case WitnessKind::cycle_with_plus:
      if (plus.empty()) fail("cycle carries no +2 edge");
      break;
    case WitnessKind::path_from_unmatched_with_plus:
      if (m.is_matched(vs.front())) fail("path does not start at an unmatched vertex");
      if (plus.empty()) fail("path carries no +2 edge");
      break;
    case WitnessKind::path_with_two_plus:
      if (plus.size() < 2) fail("path carries fewer than two +2 edges");
      break;
  }
}

/// Exchanges matching and non-matching edges along a validated witness.
inline Matching apply_witness(const PreferenceInstance& inst, const Matching& m, const Witness& w) {
  validate_witness(inst, m, w);
  Matching out = m;
  std::vector<Edge> added;
  for (std::size_t t = 0; t < w.edge_count(); ++t) {
    const Edge e = w.edge(t);
    if (m.contains(e)) {
      out.erase(e);
    } else {
      added.push_back(e);
    }
  }
  for (const Edge& e : added) out.insert(e);
  return out;
}

struct BruteForceVerdict {
  bool popular = false;
  std::optional<Matching> better;  // a challenger with the largest margin
  int best_margin = 0;
};

/// Definitional check against a precomputed list of every matching.
inline BruteForceVerdict is_popular_bruteforce(const PreferenceInstance& inst, const Matching& m,
                                               std::span<const Matching> candidates) {
  BruteForceVerdict verdict;
  const Matching* best = nullptr;
  for (const Matching& other : candidates) {
    const int d = delta(inst, other, m);
    if (d > verdict.best_margin) {
      verdict.best_margin = d;
      best = &other;
    }
  }
  verdict.popular = best == nullptr;
  if (best) verdict.better = *best;
  return verdict;
}

inline BruteForceVerdict is_popular_bruteforce(const PreferenceInstance& inst, const Matching& m,
                                               std::optional<std::uint64_t> node_budget = std::nullopt) {
  check_matching(inst, m);
  const auto candidates = all_matchings(inst, EnumerationMode::all, node_budget);
  return is_popular_bruteforce(inst, m, candidates);
}

/// First matching in enumeration order that no other matching beats.
inline std::optional<Matching> solve_bruteforce(const PreferenceInstance& inst,
                                                std::optional<std::uint64_t> node_budget = std::nullopt) {
  const auto candidates = all_matchings(inst, EnumerationMode::all, node_budget);
  for (const Matching& m : candidates) {
    if (!is_maximal(inst, m)) continue;  // popular implies maximal
    if (is_popular_bruteforce(inst, m, candidates).popular) return m;
  }
  return std::nullopt;
}

}  // namespace popmatch

#endif  // POPMATCH_POPULARITY_HPP
