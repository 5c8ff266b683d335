#ifndef POPMATCH_GADGETS_HPP
#define POPMATCH_GADGETS_HPP

// Reduction from Partitioned Vertex Cover to Popular Matching.
//
// Every vertex i of G gets an Edge Coverage block a_i, b_i, c_i, d_i; every
// edge e = {i,j} of G gets u^e_i, u^e_j; every pair {i,j} gets f_ij, f_ji.
// Pair and triple selectors only append entries to the c/d preference lists.
//
// Besides the builder this header holds the forward matching built from a
// solution, cover extraction, and `improve`, which replays the exchange
// arguments of the reverse direction as concrete, vote-checked swaps.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "popmatch/core.hpp"
#include "popmatch/pvc.hpp"

namespace popmatch {

enum class GadgetRole : std::uint8_t { a, b, c, d, u, f };

/// Symbolic name of a vertex of H.
///   a/b/c/d: `i` is the G-vertex, `j` unused.
///   u:       u^e_i for e = {i, j}; `i` is the endpoint this vertex hangs off.
///   f:       f_ij.
struct GadgetName {
  GadgetRole role = GadgetRole::a;
  Vertex i = 0;
  Vertex j = 0;

  friend auto operator<=>(const GadgetName&, const GadgetName&) = default;
};

inline std::string to_string(const GadgetName& name) {
  const std::string i = std::to_string(name.i);
  const std::string j = std::to_string(name.j);
  switch (name.role) {
    case GadgetRole::a: return "a_" + i;
    case GadgetRole::b: return "b_" + i;
    case GadgetRole::c: return "c_" + i;
    case GadgetRole::d: return "d_" + i;
    case GadgetRole::u: {
      const auto lo = std::min(name.i, name.j), hi = std::max(name.i, name.j);
      return "u_" + std::to_string(lo) + "_" + std::to_string(hi) + "@" + i;
    }
    case GadgetRole::f: return "f_" + i + "_" + j;
  }
  return "?";
}

/// Bijection between symbolic names and vertex ids of H.
class GadgetMap {
 public:
  GadgetMap() = default;

  /// `names[id - 1]` names vertex id. Throws if a name repeats.
  static GadgetMap validate(std::vector<GadgetName> names) {
    GadgetMap map;
    for (std::size_t k = 0; k < names.size(); ++k) {
      const auto [it, fresh] = map.ids_.emplace(names[k], static_cast<Vertex>(k + 1));
      if (!fresh) throw Error(Errc::inconsistent_map, to_string(names[k]) + " names two vertices");
    }
    map.names_ = std::move(names);
    return map;
  }

  std::size_t size() const { return names_.size(); }
  const GadgetName& name(Vertex id) const { return names_.at(id - 1); }
  const std::vector<GadgetName>& names() const { return names_; }

  std::optional<Vertex> find(const GadgetName& n) const {
    auto it = ids_.find(n);
    if (it == ids_.end()) return std::nullopt;
    return it->second;
  }

  Vertex id(const GadgetName& n) const {
    auto found = find(n);
    if (!found) throw Error(Errc::inconsistent_map, "no vertex named " + to_string(n));
    return *found;
  }

  Vertex a(Vertex i) const { return id({GadgetRole::a, i, 0}); }
  Vertex b(Vertex i) const { return id({GadgetRole::b, i, 0}); }
  Vertex c(Vertex i) const { return id({GadgetRole::c, i, 0}); }
  Vertex d(Vertex i) const { return id({GadgetRole::d, i, 0}); }
  /// u^e_i for the G-edge e = {i, j}.
  Vertex u(Vertex i, Vertex j) const { return id({GadgetRole::u, i, j}); }
  Vertex f(Vertex i, Vertex j) const { return id({GadgetRole::f, i, j}); }

  friend bool operator==(const GadgetMap& x, const GadgetMap& y) { return x.names_ == y.names_; }

 private:
  std::vector<GadgetName> names_;
  std::map<GadgetName, Vertex> ids_;
};

struct HInstance {
  PreferenceInstance instance;
  GadgetMap map;
  PvcInstance source;
};

/// Builds H. Numbering: blocks (a_i, b_i, c_i, d_i) for i ascending, then
/// (u^e_i, u^e_j) per G-edge in lexicographic order, then (f_ij, f_ji) per
/// pair. b_i ranks its u-vertices by the other endpoint of the edge.
inline HInstance reduce_pvc_to_pm(const PvcInstance& pvc) {
  const SimpleGraph& g = pvc.graph();
  const auto n = static_cast<Vertex>(g.size());

  std::vector<GadgetName> names;
  for (Vertex i = 1; i <= n; ++i) {
    for (GadgetRole r : {GadgetRole::a, GadgetRole::b, GadgetRole::c, GadgetRole::d}) names.push_back({r, i, 0});
  }
  for (const Edge& e : g.edges()) {
    names.push_back({GadgetRole::u, e.u, e.v});
    names.push_back({GadgetRole::u, e.v, e.u});
  }
  for (const auto& p : pvc.pairs()) {
    names.push_back({GadgetRole::f, p[0], p[1]});
    names.push_back({GadgetRole::f, p[1], p[0]});
  }
  GadgetMap map = GadgetMap::validate(std::move(names));

  std::vector<std::vector<Vertex>> lists(map.size());
  auto list = [&](Vertex id) -> std::vector<Vertex>& { return lists[id - 1]; };

  // Edge Coverage.
  for (Vertex i = 1; i <= n; ++i) {
    list(map.a(i)) = {map.b(i), map.c(i), map.d(i)};
    auto& b = list(map.b(i));
    b.push_back(map.a(i));
    for (Vertex j : g.neighbors(i)) b.push_back(map.u(i, j));
    b.push_back(map.c(i));
    list(map.c(i)) = {map.a(i), map.b(i)};
    list(map.d(i)) = {map.a(i)};
  }
  for (const Edge& e : g.edges()) {
    list(map.u(e.u, e.v)) = {map.u(e.v, e.u), map.b(e.u)};
    list(map.u(e.v, e.u)) = {map.u(e.u, e.v), map.b(e.v)};
  }

  // Pair Selector, symmetric in i and j.
  for (const auto& p : pvc.pairs()) {
    for (auto [i, j] : {std::pair{p[0], p[1]}, std::pair{p[1], p[0]}}) {
      auto& c = list(map.c(i));
      c.push_back(map.f(j, i));
      c.push_back(map.d(j));
      auto& d = list(map.d(i));
      d.push_back(map.c(j));
      d.push_back(map.f(i, j));
      list(map.f(i, j)) = {map.d(i), map.c(j)};
    }
  }

  // Triple Selector: along the cyclic order i -> j -> k -> i, each d prefers
  // its successor and each c prefers its predecessor.
  for (const auto& t : pvc.triples()) {
    for (std::size_t s = 0; s < 3; ++s) {
      const Vertex self = t[s], next = t[(s + 1) % 3], prev = t[(s + 2) % 3];
      auto& c = list(map.c(self));
      c.push_back(map.c(prev));
      c.push_back(map.c(next));
      auto& d = list(map.d(self));
      d.push_back(map.d(next));
      d.push_back(map.d(prev));
    }
  }

  return HInstance{PreferenceInstance::validate(std::move(lists)), std::move(map), pvc};
}

struct SizeReport {
  std::size_t vertices = 0;
  std::size_t edges = 0;
  std::size_t expected_vertices = 0;  // 4|V(G)| + 2|E(G)| + 2|P|
  std::size_t expected_edges = 0;     // 4|V(G)| + 3|E(G)| + 6|P| + 6|T|

  bool consistent() const { return vertices == expected_vertices && edges == expected_edges; }
};

inline SizeReport size_formulas(const HInstance& h) {
  const auto& g = h.source.graph();
  const std::size_t pairs = h.source.pairs().size();
  const std::size_t triples = h.source.triples().size();
  return SizeReport{h.instance.size(), h.instance.edge_count(),
                    4 * g.size() + 2 * g.edges().size() + 2 * pairs,
                    4 * g.size() + 3 * g.edges().size() + 6 * pairs + 6 * triples};
}

/// Rebuilds the source PVC instance from H and its gadget map, then checks
/// that reducing it reproduces H exactly.
inline HInstance attach_gadget_map(const PreferenceInstance& instance, const GadgetMap& map) {
  if (map.size() != instance.size()) {
    throw Error(Errc::inconsistent_map, "map names " + std::to_string(map.size()) + " vertices, instance has " +
                                            std::to_string(instance.size()));
  }
  Vertex n = 0;
  std::vector<Edge> edges;
  std::vector<VertexPair> pairs;
  for (const GadgetName& name : map.names()) {
    if (name.role == GadgetRole::a) n = std::max(n, name.i);
    if (name.role == GadgetRole::u && name.i < name.j) edges.emplace_back(name.i, name.j);
    if (name.role == GadgetRole::f && name.i < name.j) pairs.push_back({name.i, name.j});
  }
  std::vector<char> paired(n + 1, 0);
  for (const auto& p : pairs) {
    if (p[1] > n) throw Error(Errc::inconsistent_map, "pair names a missing vertex");
    paired[p[0]] = paired[p[1]] = 1;
  }
  std::vector<VertexTriple> triples;
  try {
    for (Vertex i = 1; i <= n; ++i) {
      if (paired[i]) continue;
      VertexTriple t{i, 0, 0};
      std::size_t found = 1;
      for (Vertex w : instance.preferences(map.d(i))) {
        const GadgetName& other = map.name(w);
        if (other.role != GadgetRole::d) continue;
        if (found == 3) throw Error(Errc::inconsistent_map, "d_" + std::to_string(i) + " has too many d-neighbors");
        t[found++] = other.i;
      }
      if (found != 3) throw Error(Errc::inconsistent_map, "d_" + std::to_string(i) + " is in no triple");
      std::sort(t.begin(), t.end());
      if (t[0] == i) triples.push_back(t);
    }
    auto graph = SimpleGraph::validate(n, std::move(edges));
    auto pvc = PvcInstance::validate(std::move(graph), std::move(pairs), std::move(triples));
    HInstance rebuilt = reduce_pvc_to_pm(pvc);
    if (!(rebuilt.map == map) || !(rebuilt.instance == instance)) {
      throw Error(Errc::inconsistent_map, "instance is not the reduction of the PVC instance the map describes");
    }
    return rebuilt;
  } catch (const Error& e) {
    if (e.code() == Errc::inconsistent_map) throw;
    throw Error(Errc::inconsistent_map, e.what());
  }
}

/// Perfect matching of H built from a solution U.
inline Matching forward_matching(const HInstance& h, const CoverSet& cover) {
  if (!is_solution(h.source, cover)) throw Error(Errc::not_a_solution, "cover is not a solution");
  const GadgetMap& map = h.map;
  Matching m(h.instance.size());
  for (const Edge& e : h.source.graph().edges()) m.insert({map.u(e.u, e.v), map.u(e.v, e.u)});
  auto unselected = [&](Vertex x) {
    m.insert({map.a(x), map.d(x)});
    m.insert({map.b(x), map.c(x)});
  };
  for (const auto& p : h.source.pairs()) {
    const Vertex x = cover.count(p[0]) ? p[1] : p[0];
    const Vertex y = cover.count(p[0]) ? p[0] : p[1];
    unselected(x);
    m.insert({map.a(y), map.b(y)});
    m.insert({map.f(x, y), map.c(y)});
    m.insert({map.f(y, x), map.d(y)});
  }
  for (const auto& t : h.source.triples()) {
    std::size_t s = 0;
    while (cover.count(t[s])) ++s;
    const Vertex x = t[s];
    const Vertex y = t[(s + 1) % 3];  // d_x ranks d_y (its successor) above d_z
    const Vertex z = t[(s + 2) % 3];
    unselected(x);
    m.insert({map.a(y), map.b(y)});
    m.insert({map.a(z), map.b(z)});
    m.insert({map.c(y), map.c(z)});
    m.insert({map.d(y), map.d(z)});
  }
  return m;
}

inline CoverSet extract_cover(const HInstance& h, const Matching& m) {
  check_matching(h.instance, m);
  CoverSet out;
  for (Vertex i = 1; i <= h.source.graph().size(); ++i) {
    if (m.contains({h.map.a(i), h.map.b(i)})) out.insert(i);
  }
  return out;
}

enum class ImproveTag {
  add_free_edge,
  claim_a_unmatched,
  claim_a_matched_to_c,
  claim_a_matched_to_d,
  cover_violation_swap,
  pair_triangle_swap,
  triple_triangle_swap,
};

inline std::string_view to_string(ImproveTag tag) {
  switch (tag) {
    case ImproveTag::add_free_edge: return "AddFreeEdge";
    case ImproveTag::claim_a_unmatched: return "ClaimA_Unmatched";
    case ImproveTag::claim_a_matched_to_c: return "ClaimA_MatchedToC";
    case ImproveTag::claim_a_matched_to_d: return "ClaimA_MatchedToD";
    case ImproveTag::cover_violation_swap: return "CoverViolationSwap";
    case ImproveTag::pair_triangle_swap: return "PairTriangleSwap";
    case ImproveTag::triple_triangle_swap: return "TripleTriangleSwap";
  }
  return "Unknown";
}

struct ImproveRule {
  ImproveTag tag = ImproveTag::add_free_edge;
  std::vector<Edge> removed;
  std::vector<Edge> added;
};

struct Improvement {
  Matching matching;
  ImproveRule rule;
  int delta = 0;
};

namespace detail {

class Improver {
 public:
  Improver(const HInstance& h, const Matching& m) : h_(h), map_(h.map), m_(m) {}

  std::optional<ImproveRule> find() const {
    if (auto r = add_free_edge()) return r;
    if (auto r = claim_a_unmatched()) return r;
    if (auto r = claim_a_matched_to_c()) return r;
    if (auto r = claim_a_matched_to_d()) return r;
    if (auto r = cover_violation_swap()) return r;
    if (auto r = pair_triangle_swap()) return r;
    if (auto r = triple_triangle_swap()) return r;
    return std::nullopt;
  }

 private:
  Vertex g_size() const { return static_cast<Vertex>(h_.source.graph().size()); }
  bool has(Vertex x, Vertex y) const { return m_.contains({x, y}); }

  std::optional<ImproveRule> add_free_edge() const {
    auto e = first_free_edge(h_.instance, m_);
    if (!e) return std::nullopt;
    return ImproveRule{ImproveTag::add_free_edge, {}, {*e}};
  }

  // a_i is everyone's first choice: matching it to b_i wins a_i and b_i and
  // costs at most b_i's old partner.
  std::optional<ImproveRule> claim_a_unmatched() const {
    for (Vertex i = 1; i <= g_size(); ++i) {
      const Vertex a = map_.a(i), b = map_.b(i);
      if (m_.is_matched(a)) continue;
      ImproveRule r{ImproveTag::claim_a_unmatched, {}, {{a, b}}};
      if (m_.is_matched(b)) r.removed.push_back({b, m_.partner(b)});
      return r;
    }
    return std::nullopt;
  }

  // a_i is matched to `other` (c_i or d_i) while b_i is not matched to c_i:
  // give a_i to b_i, and if b_i sat on u^e_i, rematch u^e_i with u^e_j.
  std::optional<ImproveRule> reclaim_b(Vertex i, Vertex other, ImproveTag tag) const {
    const Vertex a = map_.a(i), b = map_.b(i);
    ImproveRule r{tag, {{a, other}}, {{a, b}}};
    if (!m_.is_matched(b)) return r;
    const Vertex ub = m_.partner(b);
    const GadgetName& name = map_.name(ub);
    if (name.role != GadgetRole::u) return std::nullopt;
    const Vertex uj = map_.u(name.j, name.i);
    r.removed.push_back({b, ub});
    if (m_.is_matched(uj)) r.removed.push_back({uj, m_.partner(uj)});
    r.added.push_back({ub, uj});
    return r;
  }

  std::optional<ImproveRule> claim_a_matched_to_c() const {
    for (Vertex i = 1; i <= g_size(); ++i) {
      if (!has(map_.a(i), map_.c(i))) continue;
      if (auto r = reclaim_b(i, map_.c(i), ImproveTag::claim_a_matched_to_c)) return r;
    }
    return std::nullopt;
  }

  std::optional<ImproveRule> claim_a_matched_to_d() const {
    for (Vertex i = 1; i <= g_size(); ++i) {
      if (!has(map_.a(i), map_.d(i)) || has(map_.b(i), map_.c(i))) continue;
      if (auto r = reclaim_b(i, map_.d(i), ImproveTag::claim_a_matched_to_d)) return r;
    }
    return std::nullopt;
  }

  bool unselected_config(Vertex i) const { return has(map_.a(i), map_.d(i)) && has(map_.b(i), map_.c(i)); }
  bool selected(Vertex i) const { return has(map_.a(i), map_.b(i)); }

  std::optional<ImproveRule> cover_violation_swap() const {
    for (const Edge& e : h_.source.graph().edges()) {
      const Vertex i = e.u, j = e.v;
      const Vertex ui = map_.u(i, j), uj = map_.u(j, i);
      if (!unselected_config(i) || !unselected_config(j) || !has(ui, uj)) continue;
      return ImproveRule{ImproveTag::cover_violation_swap,
                         {{map_.a(i), map_.d(i)},
                          {map_.b(i), map_.c(i)},
                          {ui, uj},
                          {map_.a(j), map_.d(j)},
                          {map_.b(j), map_.c(j)}},
                         {{map_.a(i), map_.c(i)}, {map_.b(i), ui}, {map_.a(j), map_.c(j)}, {map_.b(j), uj}}};
    }
    return std::nullopt;
  }

  // Rotates the matched edge of triangle (p, q, r) where p prefers r to q,
  // q prefers p to r, r prefers q to p: {p,q} -> {r,p} -> {q,r} -> {p,q}.
  std::optional<ImproveRule> rotate(Vertex p, Vertex q, Vertex r, ImproveTag tag) const {
    const auto free = [&](Vertex v) { return !m_.is_matched(v); };
    if (has(p, q) && free(r)) return ImproveRule{tag, {{p, q}}, {{r, p}}};
    if (has(q, r) && free(p)) return ImproveRule{tag, {{q, r}}, {{p, q}}};
    if (has(r, p) && free(q)) return ImproveRule{tag, {{r, p}}, {{q, r}}};
    return std::nullopt;
  }

  std::optional<ImproveRule> pair_triangle_swap() const {
    for (const auto& p : h_.source.pairs()) {
      if (!selected(p[0]) || !selected(p[1])) continue;
      for (auto [i, j] : {std::pair{p[0], p[1]}, std::pair{p[1], p[0]}}) {
        // {c_i,d_j} -> {f_ji,c_i}, {d_j,f_ji} -> {c_i,d_j}, {f_ji,c_i} -> {d_j,f_ji}
        if (auto r = rotate(map_.c(i), map_.d(j), map_.f(j, i), ImproveTag::pair_triangle_swap)) return r;
      }
    }
    return std::nullopt;
  }

  std::optional<ImproveRule> triple_triangle_swap() const {
    for (const auto& t : h_.source.triples()) {
      if (!selected(t[0]) || !selected(t[1]) || !selected(t[2])) continue;
      // d_i prefers d_j, d_j prefers d_k, d_k prefers d_i, so the rotation
      // {d_i,d_j} -> {d_j,d_k} -> {d_k,d_i} -> {d_i,d_j} always wins 2 to 1.
      if (auto r = rotate(map_.d(t[1]), map_.d(t[0]), map_.d(t[2]), ImproveTag::triple_triangle_swap)) return r;
    }
    return std::nullopt;
  }

  const HInstance& h_;
  const GadgetMap& map_;
  const Matching& m_;
};

}  // namespace detail

inline Matching apply_rule(const Matching& m, const ImproveRule& rule) {
  Matching out = m;
  for (const Edge& e : rule.removed) out.erase(e);
  for (const Edge& e : rule.added) out.insert(e);
  return out;
}

/// Applies the first applicable exchange in the fixed rule order, lowest
/// site first. Every returned matching beats `m` by at least one vote; a
/// rule that fires without winning is a bug and throws.
inline std::optional<Improvement> improve(const HInstance& h, const Matching& m) {
  check_matching(h.instance, m);
  auto rule = detail::Improver(h, m).find();
  if (!rule) return std::nullopt;
  Matching next = apply_rule(m, *rule);
  check_matching(h.instance, next);
  const int d = delta(h.instance, next, m);
  if (d < 1) {
    throw Error(Errc::internal_non_improvement,
                std::string(to_string(rule->tag)) + " produced margin " + std::to_string(d));
  }
  return Improvement{std::move(next), std::move(*rule), d};
}

}  // namespace popmatch

#endif  // POPMATCH_GADGETS_HPP
