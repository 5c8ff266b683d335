#ifndef POPMATCH_PVC_HPP
#define POPMATCH_PVC_HPP

// Partitioned Vertex Cover: a vertex cover problem where V is split into
// pairs (edges) and triples (triangles), and a solution takes exactly one
// vertex of every pair and two of every triple. Also the classic 3-SAT
// reduction whose output already has this partitioned shape.

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "popmatch/core.hpp"

namespace popmatch {

/// Undirected simple graph on vertices 1..n.
class SimpleGraph {
 public:
  SimpleGraph() = default;

  static SimpleGraph validate(std::size_t n, std::vector<Edge> edges) {
    for (const Edge& e : edges) {
      if (e.u == e.v) throw Error(Errc::self_loop, "edge " + to_string(e));
      if (e.u < 1 || e.v > n) throw Error(Errc::vertex_out_of_range, "edge " + to_string(e));
    }
    std::sort(edges.begin(), edges.end());
    auto dup = std::adjacent_find(edges.begin(), edges.end());
    if (dup != edges.end()) throw Error(Errc::duplicate_neighbor, "edge " + to_string(*dup) + " listed twice");
    SimpleGraph g;
    g.n_ = n;
    g.edges_ = std::move(edges);
    return g;
  }

  std::size_t size() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  bool has_edge(Vertex a, Vertex b) const {
    return a != b && std::binary_search(edges_.begin(), edges_.end(), Edge(a, b));
  }

  /// Neighbors of v in ascending order.
  std::vector<Vertex> neighbors(Vertex v) const {
    std::vector<Vertex> out;
    for (const Edge& e : edges_) {
      if (e.has(v)) out.push_back(e.other(v));
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  friend bool operator==(const SimpleGraph&, const SimpleGraph&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
};

using VertexPair = std::array<Vertex, 2>;
using VertexTriple = std::array<Vertex, 3>;

/// Set of selected vertices of G.
using CoverSet = std::set<Vertex>;

class PvcInstance {
 public:
  PvcInstance() = default;

  /// Pairs and triples are stored sorted internally and in list order.
  static PvcInstance validate(SimpleGraph graph, std::vector<VertexPair> pairs,
                              std::vector<VertexTriple> triples) {
    for (auto& p : pairs) std::sort(p.begin(), p.end());
    for (auto& t : triples) std::sort(t.begin(), t.end());
    std::sort(pairs.begin(), pairs.end());
    std::sort(triples.begin(), triples.end());

    const std::size_t n = graph.size();
    std::vector<int> owner(n + 1, 0);
    auto claim = [&](Vertex v) {
      if (v < 1 || v > n) throw Error(Errc::vertex_out_of_range, "vertex " + std::to_string(v));
      if (owner[v]++) throw Error(Errc::overlap, "vertex " + std::to_string(v) + " is in two sets");
    };
    for (const auto& p : pairs) {
      for (Vertex v : p) claim(v);
      if (!graph.has_edge(p[0], p[1])) {
        throw Error(Errc::pair_not_edge, to_string(Edge(p[0], p[1])));
      }
    }
    for (const auto& t : triples) {
      for (Vertex v : t) claim(v);
      if (!graph.has_edge(t[0], t[1]) || !graph.has_edge(t[1], t[2]) || !graph.has_edge(t[0], t[2])) {
        throw Error(Errc::triple_not_triangle, "{" + std::to_string(t[0]) + "," + std::to_string(t[1]) +
                                                   "," + std::to_string(t[2]) + "}");
      }
    }
    for (Vertex v = 1; v <= n; ++v) {
      if (!owner[v]) throw Error(Errc::not_partition, "vertex " + std::to_string(v) + " is in no pair or triple");
    }
    PvcInstance inst;
    inst.graph_ = std::move(graph);
    inst.pairs_ = std::move(pairs);
    inst.triples_ = std::move(triples);
    return inst;
  }

  const SimpleGraph& graph() const { return graph_; }
  const std::vector<VertexPair>& pairs() const { return pairs_; }
  const std::vector<VertexTriple>& triples() const { return triples_; }

  /// Every solution has exactly this many vertices.
  std::size_t solution_size() const { return pairs_.size() + 2 * triples_.size(); }

  friend bool operator==(const PvcInstance&, const PvcInstance&) = default;

 private:
  SimpleGraph graph_;
  std::vector<VertexPair> pairs_;
  std::vector<VertexTriple> triples_;
};

inline bool is_vertex_cover(const SimpleGraph& g, const CoverSet& u) {
  return std::all_of(g.edges().begin(), g.edges().end(),
                     [&](const Edge& e) { return u.count(e.u) || u.count(e.v); });
}

inline bool is_solution(const PvcInstance& pvc, const CoverSet& u) {
  for (Vertex v : u) {
    if (v < 1 || v > pvc.graph().size()) return false;
  }
  for (const auto& p : pvc.pairs()) {
    if (u.count(p[0]) + u.count(p[1]) != 1) return false;
  }
  for (const auto& t : pvc.triples()) {
    if (u.count(t[0]) + u.count(t[1]) + u.count(t[2]) != 2) return false;
  }
  return is_vertex_cover(pvc.graph(), u);
}

namespace detail {

// Selection order: pairs then triples, each in stored order; a pair tries
// its smaller vertex first, a triple tries {i,j}, {i,k}, {j,k}.
template <typename Visitor>
class PvcSelector {
 public:
  PvcSelector(const PvcInstance& pvc, Visitor& visit)
      : pvc_(pvc), visit_(visit), chosen_(pvc.graph().size() + 1, 0),
        neighbors_(pvc.graph().size() + 1) {
    for (const Edge& e : pvc.graph().edges()) {
      neighbors_[e.u].push_back(e.v);
      neighbors_[e.v].push_back(e.u);
    }
  }

  void run() { recurse(0); }

 private:
  bool edge_settled_uncovered(const Edge& e) const {
    return decided(e.u) && decided(e.v) && !chosen_[e.u] && !chosen_[e.v];
  }
  bool decided(Vertex v) const { return decided_.count(v) > 0; }

  bool consistent(std::span<const Vertex> just_decided) const {
    for (Vertex v : just_decided) {
      for (Vertex w : neighbors_[v]) {
        if (edge_settled_uncovered(Edge(v, w))) return false;
      }
    }
    return true;
  }

  // Returns false when the visitor asked to stop.
  bool recurse(std::size_t k) {
    const auto& pairs = pvc_.pairs();
    const auto& triples = pvc_.triples();
    if (k == pairs.size() + triples.size()) {
      CoverSet u;
      for (Vertex v = 1; v < chosen_.size(); ++v) {
        if (chosen_[v]) u.insert(v);
      }
      return visit_(std::as_const(u));
    }
    std::vector<std::vector<Vertex>> options;
    std::vector<Vertex> members;
    if (k < pairs.size()) {
      const auto& p = pairs[k];
      members = {p[0], p[1]};
      options = {{p[0]}, {p[1]}};
    } else {
      const auto& t = triples[k - pairs.size()];
      members = {t[0], t[1], t[2]};
      options = {{t[0], t[1]}, {t[0], t[2]}, {t[1], t[2]}};
    }
    for (const auto& option : options) {
      for (Vertex v : option) chosen_[v] = 1;
      for (Vertex v : members) decided_.insert(v);
      bool go_on = true;
      if (consistent(members)) go_on = recurse(k + 1);
      for (Vertex v : members) decided_.erase(v);
      for (Vertex v : option) chosen_[v] = 0;
      if (!go_on) return false;
    }
    return true;
  }

  const PvcInstance& pvc_;
  Visitor& visit_;
  std::vector<char> chosen_;
  std::vector<std::vector<Vertex>> neighbors_;
  std::set<Vertex> decided_;
};

}  // namespace detail

/// Visits every solution in deterministic selection order; the visitor
/// returns false to stop.
template <typename Visitor>
void for_each_pvc_solution(const PvcInstance& pvc, Visitor&& visit) {
  detail::PvcSelector<std::remove_reference_t<Visitor>> selector(pvc, visit);
  selector.run();
}

inline std::optional<CoverSet> solve_pvc_bruteforce(const PvcInstance& pvc) {
  std::optional<CoverSet> found;
  for_each_pvc_solution(pvc, [&](const CoverSet& u) {
    found = u;
    return false;
  });
  return found;
}

inline std::vector<CoverSet> all_pvc_solutions(const PvcInstance& pvc) {
  std::vector<CoverSet> out;
  for_each_pvc_solution(pvc, [&](const CoverSet& u) {
    out.push_back(u);
    return true;
  });
  return out;
}

// ---------------------------------------------------------------------------
// 3-SAT

struct Literal {
  std::uint32_t var = 1;  // 1-based
  bool positive = true;

  friend auto operator<=>(const Literal&, const Literal&) = default;
};

/// Clause as three literal occurrences; repeated literals are allowed.
using Clause = std::array<Literal, 3>;

struct CnfFormula {
  std::uint32_t num_vars = 0;
  std::vector<Clause> clauses;

  friend bool operator==(const CnfFormula&, const CnfFormula&) = default;
};

inline void check_formula(const CnfFormula& cnf) {
  for (std::size_t c = 0; c < cnf.clauses.size(); ++c) {
    for (const Literal& l : cnf.clauses[c]) {
      if (l.var < 1 || l.var > cnf.num_vars) {
        throw Error(Errc::vertex_out_of_range,
                    "clause " + std::to_string(c + 1) + " uses variable " + std::to_string(l.var));
      }
    }
  }
}

/// Total truth assignment; `values[x - 1]` is the value of variable x.
struct Assignment {
  std::vector<bool> values;

  bool operator()(std::uint32_t var) const { return values.at(var - 1); }
  bool satisfies(const Literal& l) const { return (*this)(l.var) == l.positive; }

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

inline bool satisfies(const Assignment& a, const Clause& c) {
  return a.satisfies(c[0]) || a.satisfies(c[1]) || a.satisfies(c[2]);
}

inline bool satisfies(const Assignment& a, const CnfFormula& cnf) {
  if (a.values.size() != cnf.num_vars) return false;
  return std::all_of(cnf.clauses.begin(), cnf.clauses.end(), [&](const Clause& c) { return satisfies(a, c); });
}

/// Vertex numbering of the 3-SAT gadget graph: v_x1, v_~x1, v_x2, ... then
/// the occurrence vertices clause by clause, position by position.
struct LiteralMap {
  std::uint32_t num_vars = 0;
  std::size_t num_clauses = 0;

  Vertex literal_vertex(const Literal& l) const { return 2 * (l.var - 1) + (l.positive ? 1 : 2); }
  Vertex occurrence_vertex(std::size_t clause, std::size_t position) const {
    return static_cast<Vertex>(2 * num_vars + 3 * clause + position + 1);
  }
  std::size_t vertex_count() const { return 2 * num_vars + 3 * num_clauses; }
};

struct SatReduction {
  PvcInstance pvc;
  LiteralMap map;
};

inline SatReduction sat_to_pvc(const CnfFormula& cnf) {
  check_formula(cnf);
  LiteralMap map{cnf.num_vars, cnf.clauses.size()};
  std::vector<Edge> edges;
  std::vector<VertexPair> pairs;
  std::vector<VertexTriple> triples;
  for (std::uint32_t x = 1; x <= cnf.num_vars; ++x) {
    const Vertex pos = map.literal_vertex({x, true});
    const Vertex neg = map.literal_vertex({x, false});
    edges.emplace_back(pos, neg);
    pairs.push_back({pos, neg});
  }
  for (std::size_t c = 0; c < cnf.clauses.size(); ++c) {
    VertexTriple t{map.occurrence_vertex(c, 0), map.occurrence_vertex(c, 1), map.occurrence_vertex(c, 2)};
    edges.emplace_back(t[0], t[1]);
    edges.emplace_back(t[1], t[2]);
    edges.emplace_back(t[0], t[2]);
    triples.push_back(t);
    for (std::size_t p = 0; p < 3; ++p) {
      edges.emplace_back(t[p], map.literal_vertex(cnf.clauses[c][p]));
    }
  }
  auto graph = SimpleGraph::validate(map.vertex_count(), std::move(edges));
  return {PvcInstance::validate(std::move(graph), std::move(pairs), std::move(triples)), map};
}

/// True literals, plus for each clause the two occurrences other than its
/// lowest-position satisfied one.
inline CoverSet assignment_to_solution(const CnfFormula& cnf, const Assignment& alpha) {
  check_formula(cnf);
  if (alpha.values.size() != cnf.num_vars) {
    throw Error(Errc::unsatisfied, "assignment covers " + std::to_string(alpha.values.size()) +
                                       " variables, formula has " + std::to_string(cnf.num_vars));
  }
  const LiteralMap map{cnf.num_vars, cnf.clauses.size()};
  CoverSet u;
  for (std::uint32_t x = 1; x <= cnf.num_vars; ++x) {
    u.insert(map.literal_vertex({x, alpha(x)}));
  }
  for (std::size_t c = 0; c < cnf.clauses.size(); ++c) {
    const Clause& clause = cnf.clauses[c];
    std::size_t chosen = 3;
    for (std::size_t p = 0; p < 3 && chosen == 3; ++p) {
      if (alpha.satisfies(clause[p])) chosen = p;
    }
    if (chosen == 3) throw Error(Errc::unsatisfied, "clause " + std::to_string(c + 1) + " is false");
    for (std::size_t p = 0; p < 3; ++p) {
      if (p != chosen) u.insert(map.occurrence_vertex(c, p));
    }
  }
  return u;
}

inline Assignment solution_to_assignment(const CnfFormula& cnf, const CoverSet& u) {
  const SatReduction red = sat_to_pvc(cnf);
  if (!is_solution(red.pvc, u)) throw Error(Errc::not_a_solution, "cover is not a solution of the reduction");
  Assignment alpha;
  alpha.values.resize(cnf.num_vars);
  for (std::uint32_t x = 1; x <= cnf.num_vars; ++x) {
    alpha.values[x - 1] = u.count(red.map.literal_vertex({x, true})) > 0;
  }
  return alpha;
}

/// Exhaustive search over all 2^n assignments, in binary counting order
/// with variable 1 as the least significant bit.
inline std::optional<Assignment> solve_sat_bruteforce(const CnfFormula& cnf) {
  const std::uint64_t total = std::uint64_t{1} << cnf.num_vars;
  for (std::uint64_t bits = 0; bits < total; ++bits) {
    Assignment a;
    for (std::uint32_t x = 0; x < cnf.num_vars; ++x) a.values.push_back((bits >> x) & 1U);
    if (satisfies(a, cnf)) return a;
  }
  return std::nullopt;
}

}  // namespace popmatch

#endif  // POPMATCH_PVC_HPP
