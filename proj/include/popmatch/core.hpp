#ifndef POPMATCH_CORE_HPP
#define POPMATCH_CORE_HPP

// Preference instances in the roommates setting, matchings, and the vote
// arithmetic used to compare two matchings.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "popmatch/error.hpp"

namespace popmatch {

/// Vertex ids are 1-based and contiguous.
using Vertex = std::uint32_t;

/// Undirected edge, stored with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  constexpr Edge() = default;
  constexpr Edge(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {}

  constexpr bool has(Vertex x) const { return x == u || x == v; }
  constexpr Vertex other(Vertex x) const { return x == u ? v : u; }

  friend constexpr auto operator<=>(const Edge&, const Edge&) = default;
};

inline std::string to_string(const Edge& e) {
  return "{" + std::to_string(e.u) + "," + std::to_string(e.v) + "}";
}

/// Undirected simple graph where every vertex ranks its neighbors strictly.
/// Immutable once validated.
class PreferenceInstance {
 public:
  PreferenceInstance() = default;

  /// `adjacency[v - 1]` is the preference list of vertex v, most preferred
  /// first. Throws on the first violated invariant.
  static PreferenceInstance validate(std::vector<std::vector<Vertex>> adjacency) {
    const auto n = static_cast<Vertex>(adjacency.size());
    std::vector<std::vector<Vertex>> sorted(adjacency.size());
    for (Vertex v = 1; v <= n; ++v) {
      const auto& list = adjacency[v - 1];
      for (Vertex u : list) {
        if (u < 1 || u > n) {
          throw Error(Errc::vertex_out_of_range,
                      "vertex " + std::to_string(v) + " lists " + std::to_string(u));
        }
        if (u == v) {
          throw Error(Errc::self_loop, "vertex " + std::to_string(v));
        }
      }
      sorted[v - 1] = list;
      std::sort(sorted[v - 1].begin(), sorted[v - 1].end());
      auto dup = std::adjacent_find(sorted[v - 1].begin(), sorted[v - 1].end());
      if (dup != sorted[v - 1].end()) {
        throw Error(Errc::duplicate_neighbor,
                    "vertex " + std::to_string(v) + " lists " + std::to_string(*dup) + " twice");
      }
    }
    PreferenceInstance inst;
    for (Vertex v = 1; v <= n; ++v) {
      for (Vertex u : adjacency[v - 1]) {
        if (!std::binary_search(sorted[u - 1].begin(), sorted[u - 1].end(), v)) {
          throw Error(Errc::asymmetric_adjacency,
                      std::to_string(v) + " lists " + std::to_string(u) + " but not vice versa");
        }
        if (v < u) inst.edges_.emplace_back(v, u);
      }
    }
    std::sort(inst.edges_.begin(), inst.edges_.end());
    inst.adjacency_ = std::move(adjacency);
    return inst;
  }

  std::size_t size() const { return adjacency_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  /// Edges sorted lexicographically.
  const std::vector<Edge>& edges() const { return edges_; }

  std::span<const Vertex> preferences(Vertex v) const {
    check_vertex(v);
    return adjacency_[v - 1];
  }

  std::size_t degree(Vertex v) const { return preferences(v).size(); }

  bool has_edge(Vertex a, Vertex b) const {
    return std::binary_search(edges_.begin(), edges_.end(), Edge(a, b));
  }
  bool has_edge(const Edge& e) const { return has_edge(e.u, e.v); }

  /// Rank of u in v's list (1 = most preferred); rank(v, v) = deg(v) + 1,
  /// which is the rank of being unmatched.
  std::uint32_t rank(Vertex v, Vertex u) const {
    const auto list = preferences(v);
    if (u == v) return static_cast<std::uint32_t>(list.size() + 1);
    auto it = std::find(list.begin(), list.end(), u);
    if (it == list.end()) {
      throw Error(Errc::not_a_neighbor,
                  std::to_string(u) + " is not a neighbor of " + std::to_string(v));
    }
    return static_cast<std::uint32_t>(it - list.begin() + 1);
  }

  friend bool operator==(const PreferenceInstance&, const PreferenceInstance&) = default;

 private:
  void check_vertex(Vertex v) const {
    if (v < 1 || v > adjacency_.size()) {
      throw Error(Errc::vertex_out_of_range, "vertex " + std::to_string(v));
    }
  }

  std::vector<std::vector<Vertex>> adjacency_;
  std::vector<Edge> edges_;
};

/// Set of pairwise disjoint edges over vertices 1..n. An unmatched vertex is
/// its own partner.
class Matching {
 public:
  Matching() = default;
  explicit Matching(std::size_t n) : mate_(n + 1) {
    for (std::size_t v = 0; v <= n; ++v) mate_[v] = static_cast<Vertex>(v);
  }

  /// Builds a matching whose edges must all belong to `inst`.
  static Matching from_edges(const PreferenceInstance& inst, std::span<const Edge> edges) {
    Matching m(inst.size());
    for (const Edge& e : edges) {
      if (!inst.has_edge(e)) {
        throw Error(Errc::invalid_matching, to_string(e) + " is not an edge of the instance");
      }
      m.insert(e);
    }
    return m;
  }
  static Matching from_edges(const PreferenceInstance& inst, std::initializer_list<Edge> edges) {
    return from_edges(inst, std::span<const Edge>(edges.begin(), edges.size()));
  }

  std::size_t vertex_count() const { return mate_.empty() ? 0 : mate_.size() - 1; }

  Vertex partner(Vertex v) const { return mate_.at(v); }
  bool is_matched(Vertex v) const { return mate_.at(v) != v; }
  bool contains(const Edge& e) const {
    return e.u != e.v && e.v < mate_.size() && mate_[e.u] == e.v;
  }

  void insert(const Edge& e) {
    if (e.u == e.v || e.u < 1 || e.v >= mate_.size()) {
      throw Error(Errc::invalid_matching, "bad edge " + to_string(e));
    }
    if (is_matched(e.u) || is_matched(e.v)) {
      throw Error(Errc::invalid_matching, to_string(e) + " shares an endpoint with the matching");
    }
    mate_[e.u] = e.v;
    mate_[e.v] = e.u;
  }

  void erase(const Edge& e) {
    if (!contains(e)) {
      throw Error(Errc::invalid_matching, to_string(e) + " is not in the matching");
    }
    mate_[e.u] = e.u;
    mate_[e.v] = e.v;
  }

  std::size_t size() const {
    std::size_t count = 0;
    for (std::size_t v = 1; v < mate_.size(); ++v) count += mate_[v] > v;
    return count;
  }

  /// Edges sorted lexicographically.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (std::size_t v = 1; v < mate_.size(); ++v) {
      if (mate_[v] > v) out.emplace_back(static_cast<Vertex>(v), mate_[v]);
    }
    return out;
  }

  friend bool operator==(const Matching&, const Matching&) = default;

 private:
  std::vector<Vertex> mate_;
};

/// Checks that `m` is a matching of `inst` (right vertex count, edges exist).
inline void check_matching(const PreferenceInstance& inst, const Matching& m) {
  if (m.vertex_count() != inst.size()) {
    throw Error(Errc::invalid_matching,
                "matching is over " + std::to_string(m.vertex_count()) + " vertices, instance has " +
                    std::to_string(inst.size()));
  }
  for (const Edge& e : m.edges()) {
    if (!inst.has_edge(e)) {
      throw Error(Errc::invalid_matching, to_string(e) + " is not an edge of the instance");
    }
  }
}

struct VoteTally {
  std::size_t for_first = 0;
  std::size_t for_second = 0;
  std::size_t indifferent = 0;

  friend bool operator==(const VoteTally&, const VoteTally&) = default;
};

/// Each vertex compares its partner rank in `first` against `second`.
inline VoteTally vote(const PreferenceInstance& inst, const Matching& first, const Matching& second) {
  check_matching(inst, first);
  check_matching(inst, second);
  VoteTally tally;
  for (Vertex v = 1; v <= inst.size(); ++v) {
    const auto r1 = inst.rank(v, first.partner(v));
    const auto r2 = inst.rank(v, second.partner(v));
    if (r1 < r2) {
      ++tally.for_first;
    } else if (r2 < r1) {
      ++tally.for_second;
    } else {
      ++tally.indifferent;
    }
  }
  return tally;
}

/// Popularity margin of `challenger` over `incumbent`: votes for the
/// challenger minus votes for the incumbent.
inline int delta(const PreferenceInstance& inst, const Matching& challenger, const Matching& incumbent) {
  const VoteTally t = vote(inst, challenger, incumbent);
  return static_cast<int>(t.for_first) - static_cast<int>(t.for_second);
}

/// True iff no edge has both endpoints unmatched.
inline bool is_maximal(const PreferenceInstance& inst, const Matching& m) {
  for (const Edge& e : inst.edges()) {
    if (!m.is_matched(e.u) && !m.is_matched(e.v)) return false;
  }
  return true;
}

/// First edge (in lexicographic order) with both endpoints free.
inline std::optional<Edge> first_free_edge(const PreferenceInstance& inst, const Matching& m) {
  for (const Edge& e : inst.edges()) {
    if (!m.is_matched(e.u) && !m.is_matched(e.v)) return e;
  }
  return std::nullopt;
}

enum class EnumerationMode { all, maximal };

namespace detail {

template <typename Visitor>
class MatchingEnumerator {
 public:
  MatchingEnumerator(const PreferenceInstance& inst, EnumerationMode mode, Visitor& visit,
                     std::optional<std::uint64_t> budget)
      : inst_(inst), mode_(mode), visit_(visit), budget_(budget), current_(inst.size()) {}

  void run() { recurse(0); }

 private:
  // Returns false once the visitor asked to stop.
  bool recurse(std::size_t k) {
    if (budget_ && ++nodes_ > *budget_) {
      throw Error(Errc::budget_exceeded,
                  "matching enumeration exceeded " + std::to_string(*budget_) + " nodes");
    }
    const auto& edges = inst_.edges();
    if (k == edges.size()) {
      if (mode_ == EnumerationMode::maximal && !is_maximal(inst_, current_)) return true;
      if constexpr (std::is_same_v<std::invoke_result_t<Visitor&, const Matching&>, bool>) {
        return visit_(std::as_const(current_));
      } else {
        visit_(std::as_const(current_));
        return true;
      }
    }
    const Edge& e = edges[k];
    if (!current_.is_matched(e.u) && !current_.is_matched(e.v)) {
      current_.insert(e);
      const bool go_on = recurse(k + 1);
      current_.erase(e);
      if (!go_on) return false;
    }
    return recurse(k + 1);
  }

  const PreferenceInstance& inst_;
  EnumerationMode mode_;
  Visitor& visit_;
  std::optional<std::uint64_t> budget_;
  std::uint64_t nodes_ = 0;
  Matching current_;
};

}  // namespace detail

/// Calls `visit` once per matching, branching include-then-exclude over the
/// lexicographically sorted edge list. A visitor returning `bool` can stop
/// the stream early by returning false.
template <typename Visitor>
void for_each_matching(const PreferenceInstance& inst, EnumerationMode mode, Visitor&& visit,
                       std::optional<std::uint64_t> node_budget = std::nullopt) {
  detail::MatchingEnumerator<std::remove_reference_t<Visitor>> walker(inst, mode, visit, node_budget);
  walker.run();
}

inline std::vector<Matching> all_matchings(const PreferenceInstance& inst,
                                           EnumerationMode mode = EnumerationMode::all,
                                           std::optional<std::uint64_t> node_budget = std::nullopt) {
  std::vector<Matching> out;
  for_each_matching(
      inst, mode, [&](const Matching& m) { out.push_back(m); }, node_budget);
  return out;
}

}  // namespace popmatch

#endif  // POPMATCH_CORE_HPP
