#ifndef POPMATCH_TESTS_FIXTURES_HPP
#define POPMATCH_TESTS_FIXTURES_HPP

#include <algorithm>
#include <map>
#include <vector>

#include "popmatch/popmatch.hpp"

namespace popmatch::testing {

inline PreferenceInstance p2() { return PreferenceInstance::validate({{2}, {1}}); }

inline PreferenceInstance t3() { return PreferenceInstance::validate({{2, 3}, {3, 1}, {1, 2}}); }

inline PvcInstance pair1() {
  return PvcInstance::validate(SimpleGraph::validate(2, {{1, 2}}), {{1, 2}}, {});
}

inline PvcInstance pvcno() {
  return PvcInstance::validate(
      SimpleGraph::validate(4, {{1, 2}, {3, 4}, {1, 3}, {1, 4}, {2, 3}, {2, 4}}), {{1, 2}, {3, 4}}, {});
}

inline PvcInstance triple1() {
  return PvcInstance::validate(SimpleGraph::validate(3, {{1, 2}, {1, 3}, {2, 3}}), {}, {{1, 2, 3}});
}

inline CnfFormula cnf1() {
  return CnfFormula{3, {Clause{Literal{1, true}, Literal{2, false}, Literal{3, true}}}};
}

// Preference of v between two options, written straight from the definition:
// the position in v's list, with "unmatched" ranked after every neighbor.
inline std::size_t oracle_position(const PreferenceInstance& inst, Vertex v, Vertex partner) {
  auto prefs = inst.preferences(v);
  if (partner == v) return prefs.size() + 1;
  return static_cast<std::size_t>(std::find(prefs.begin(), prefs.end(), partner) - prefs.begin()) + 1;
}

inline Vertex oracle_partner(const std::vector<Edge>& edges, Vertex v) {
  for (const Edge& e : edges) {
    if (e.has(v)) return e.other(v);
  }
  return v;
}

// Independent vote count: returns (#prefer first) - (#prefer second).
inline int oracle_margin(const PreferenceInstance& inst, const std::vector<Edge>& first,
                         const std::vector<Edge>& second) {
  int margin = 0;
  for (Vertex v = 1; v <= inst.size(); ++v) {
    const auto p = oracle_position(inst, v, oracle_partner(first, v));
    const auto q = oracle_position(inst, v, oracle_partner(second, v));
    margin += (p < q) - (q < p);
  }
  return margin;
}

// Maps every vertex of H to the vertex with the image name in H', given a
// relabeling of the underlying G vertices.
template <typename Relabel>
std::map<Vertex, Vertex> gadget_isomorphism(const HInstance& h, const HInstance& h2, Relabel sigma) {
  std::map<Vertex, Vertex> out;
  for (Vertex id = 1; id <= h.map.size(); ++id) {
    GadgetName n = h.map.name(id);
    n.i = sigma(n.i);
    if (n.role == GadgetRole::u || n.role == GadgetRole::f) n.j = sigma(n.j);
    out[id] = h2.map.id(n);
  }
  return out;
}

}  // namespace popmatch::testing

#endif  // POPMATCH_TESTS_FIXTURES_HPP
