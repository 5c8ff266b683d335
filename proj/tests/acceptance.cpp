// Acceptance suite: prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>

#include "popmatch/popmatch.hpp"

namespace {

using namespace popmatch;

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Check {
 public:
  void require(bool ok, const std::string& what) {
    if (!ok && pass_) {
      pass_ = false;
      first_failure_ = what;
    }
  }
  bool pass() const { return pass_; }
  Outcome outcome(const std::string& summary) const {
    return pass_ ? Outcome{true, summary} : Outcome{false, first_failure_ + " (" + summary + ")"};
  }

 private:
  bool pass_ = true;
  std::string first_failure_;
};

// Witness application counters shared by AC1, AC3 and AC7.
struct WitnessLog {
  std::size_t applied = 0;
  std::size_t failures = 0;

  void record(const PreferenceInstance& inst, const Matching& m, const Witness& w) {
    ++applied;
    try {
      validate_witness(inst, m, w);
      if (delta(inst, apply_witness(inst, m, w), m) < 1) ++failures;
    } catch (const Error&) {
      ++failures;
    }
  }
};

WitnessLog witness_log;

Outcome ac1() {
  Check check;
  Rng rng(20240601);
  std::uniform_int_distribution<std::size_t> size(4, 8);
  std::size_t matchings = 0, popular = 0;
  for (int k = 0; k < 500; ++k) {
    const auto inst = random_instance(rng, size(rng));
    const auto all = all_matchings(inst);
    for (const Matching& m : all) {
      ++matchings;
      const auto verdict = is_popular(inst, m);
      const bool oracle = is_popular_bruteforce(inst, m, all).popular;
      check.require(verdict.popular == oracle, "disagreement on instance " + std::to_string(k));
      popular += oracle;
      if (verdict.witness) witness_log.record(inst, m, *verdict.witness);
    }
  }
  return check.outcome("500 instances, " + std::to_string(matchings) + " matchings, " + std::to_string(popular) +
                       " popular");
}

std::set<Edge> plus_edges(const HInstance& h, const Matching& m) {
  std::set<Edge> out;
  for (const Edge& e : h.instance.edges()) {
    if (!m.contains(e) && label_edge(h.instance, m, e) == EdgeLabel::plus_two) out.insert(e);
  }
  return out;
}

std::set<Edge> expected_plus_set(const HInstance& h, const CoverSet& u) {
  std::set<Edge> out;
  for (Vertex i = 1; i <= h.source.graph().size(); ++i) {
    if (u.count(i)) continue;
    out.insert({h.map.a(i), h.map.b(i)});
    out.insert({h.map.a(i), h.map.c(i)});
  }
  return out;
}

std::size_t size_law_checks = 0;
std::size_t size_law_failures = 0;

void check_size_law(const HInstance& h) {
  ++size_law_checks;
  const SizeReport r = size_formulas(h);
  if (r.vertices != r.expected_vertices || r.edges != r.expected_edges) ++size_law_failures;
}

Outcome ac2() {
  Check check;
  std::vector<CnfFormula> formulas{CnfFormula{3, {Clause{Literal{1, true}, Literal{2, false}, Literal{3, true}}}}};
  Rng rng(777);
  std::set<std::string> seen;
  while (formulas.size() < 11) {
    const auto vars = static_cast<std::uint32_t>(1 + rng() % 3);
    const std::size_t clauses = 1 + rng() % 3;
    if (12 * vars + 24 * clauses > 84) continue;  // keeps |V(H)| at desk scale
    const auto cnf = random_formula(rng, vars, clauses);
    std::ostringstream key;
    write_dimacs(key, cnf);
    if (!solve_sat_bruteforce(cnf) || !seen.insert(key.str()).second) continue;
    formulas.push_back(cnf);
  }
  std::size_t certified = 0, max_vertices = 0;
  for (const auto& cnf : formulas) {
    const auto red = sat_to_pvc(cnf);
    const auto h = reduce_pvc_to_pm(red.pvc);
    check_size_law(h);
    max_vertices = std::max(max_vertices, h.instance.size());
    std::set<CoverSet> covers{assignment_to_solution(cnf, *solve_sat_bruteforce(cnf))};
    if (auto u = solve_pvc_bruteforce(red.pvc)) covers.insert(*u);
    for (const CoverSet& u : covers) {
      const Matching m = forward_matching(h, u);
      check.require(2 * m.size() == h.instance.size(), "forward matching not perfect");
      const auto verdict = is_popular(h.instance, m);
      check.require(verdict.popular, "forward matching not certified popular");
      check.require(plus_edges(h, m) == expected_plus_set(h, u), "+2 edge set is not {a_i b_i, a_i c_i : i not in U}");
      certified += verdict.popular;
    }
  }
  return check.outcome(std::to_string(formulas.size()) + " formulas, " + std::to_string(certified) +
                       " forward matchings certified, max |V(H)| = " + std::to_string(max_vertices));
}

PvcInstance pvcno() {
  return PvcInstance::validate(
      SimpleGraph::validate(4, {{1, 2}, {3, 4}, {1, 3}, {1, 4}, {2, 3}, {2, 4}}), {{1, 2}, {3, 4}}, {});
}

Outcome ac3() {
  Check check;
  const auto t3 = PreferenceInstance::validate({{2, 3}, {3, 1}, {1, 2}});
  check.require(!solve_bruteforce(t3).has_value(), "T3 has a popular matching");
  const auto h = reduce_pvc_to_pm(pvcno());
  check_size_law(h);
  Rng rng(31337);
  std::size_t improved = 0, refuted = 0;
  for (int k = 0; k < 200; ++k) {
    const Matching m = random_maximal_matching(rng, h.instance);
    const auto step = improve(h, m);
    check.require(step.has_value(), "no improvement on matching " + std::to_string(k));
    if (step) {
      const int d = delta(h.instance, step->matching, m);
      check.require(d >= 1 && d == step->delta, "improvement delta not verified");
      improved += d >= 1;
    }
    if (k % 10 == 0) {
      const auto verdict = is_popular(h.instance, m);
      check.require(!verdict.popular, "detector calls an H(PVCNO) matching popular");
      if (verdict.witness) witness_log.record(h.instance, m, *verdict.witness);
      refuted += !verdict.popular;
    }
  }
  return check.outcome("T3 none; " + std::to_string(improved) + "/200 improved; " + std::to_string(refuted) +
                       "/20 refuted by detector");
}

Outcome ac4() {
  Check check;
  Rng rng(4242);
  std::size_t solutions = 0;
  for (int k = 0; k < 50; ++k) {
    const auto pvc = random_solvable_pvc(rng, 1 + k % 3, k % 3, 0.35);
    const auto h = reduce_pvc_to_pm(pvc);
    check_size_law(h);
    for (const CoverSet& u : all_pvc_solutions(pvc)) {
      ++solutions;
      check.require(extract_cover(h, forward_matching(h, u)) == u, "round trip failed on instance " + std::to_string(k));
    }
  }
  check.require(size_law_failures == 0, "size law violated");
  return check.outcome("50 instances, " + std::to_string(solutions) + " solutions round-tripped; size law on " +
                       std::to_string(size_law_checks) + " instances");
}

Matching named(const HInstance& h, std::initializer_list<std::pair<GadgetName, GadgetName>> edges) {
  Matching m(h.instance.size());
  for (const auto& [x, y] : edges) m.insert({h.map.id(x), h.map.id(y)});
  return m;
}

Outcome ac5() {
  Check check;
  const GadgetRole a = GadgetRole::a, b = GadgetRole::b, c = GadgetRole::c, d = GadgetRole::d, u = GadgetRole::u,
                   f = GadgetRole::f;
  const auto pair = reduce_pvc_to_pm(
      PvcInstance::validate(SimpleGraph::validate(2, {{1, 2}}), {{1, 2}}, {}));
  const auto triple = reduce_pvc_to_pm(
      PvcInstance::validate(SimpleGraph::validate(3, {{1, 2}, {1, 3}, {2, 3}}), {}, {{1, 2, 3}}));

  auto measure = [&](const HInstance& h, const Matching& m, ImproveTag tag) {
    const auto step = improve(h, m);
    if (!step || step->rule.tag != tag) return -100;
    return delta(h.instance, step->matching, m);
  };

  const int cover = measure(pair,
                            named(pair, {{{a, 1, 0}, {d, 1, 0}},
                                         {{b, 1, 0}, {c, 1, 0}},
                                         {{a, 2, 0}, {d, 2, 0}},
                                         {{b, 2, 0}, {c, 2, 0}},
                                         {{u, 1, 2}, {u, 2, 1}}}),
                            ImproveTag::cover_violation_swap);
  check.require(cover == 2, "cover-violation swap delta " + std::to_string(cover));

  const int pair_swap = measure(pair,
                                named(pair, {{{a, 1, 0}, {b, 1, 0}},
                                             {{a, 2, 0}, {b, 2, 0}},
                                             {{u, 1, 2}, {u, 2, 1}},
                                             {{c, 1, 0}, {d, 2, 0}},
                                             {{d, 1, 0}, {f, 1, 2}}}),
                                ImproveTag::pair_triangle_swap);
  check.require(pair_swap == 1, "pair triangle swap delta " + std::to_string(pair_swap));

  const int triple_swap = measure(triple,
                                  named(triple, {{{a, 1, 0}, {b, 1, 0}},
                                                 {{a, 2, 0}, {b, 2, 0}},
                                                 {{a, 3, 0}, {b, 3, 0}},
                                                 {{u, 1, 2}, {u, 2, 1}},
                                                 {{u, 1, 3}, {u, 3, 1}},
                                                 {{u, 2, 3}, {u, 3, 2}},
                                                 {{c, 1, 0}, {c, 2, 0}},
                                                 {{d, 1, 0}, {d, 2, 0}}}),
                                  ImproveTag::triple_triangle_swap);
  check.require(triple_swap == 1, "triple triangle swap delta " + std::to_string(triple_swap));

  // a_1 on c_1 while b_1 sits on u^e_1, and u^e_2 sits on b_2.
  const int claim = measure(pair,
                            named(pair, {{{a, 1, 0}, {c, 1, 0}},
                                         {{b, 1, 0}, {u, 1, 2}},
                                         {{b, 2, 0}, {u, 2, 1}},
                                         {{a, 2, 0}, {c, 2, 0}},
                                         {{d, 1, 0}, {f, 1, 2}},
                                         {{d, 2, 0}, {f, 2, 1}}}),
                            ImproveTag::claim_a_matched_to_c);
  check.require(claim >= 2, "claim case 3 delta " + std::to_string(claim));

  return check.outcome("cover violation " + std::to_string(cover) + ", pair " + std::to_string(pair_swap) +
                       ", triple " + std::to_string(triple_swap) + ", claim case 3 " + std::to_string(claim));
}

// Checks satisfiability against PVC solvability and both round trips.
void check_equivalence(Check& check, const CnfFormula& cnf, const std::string& label, std::size_t& satisfiable,
                       std::size_t& round_trips) {
  const auto red = sat_to_pvc(cnf);
  const bool sat = solve_sat_bruteforce(cnf).has_value();
  check.require(sat == solve_pvc_bruteforce(red.pvc).has_value(), "equivalence fails on " + label);
  satisfiable += sat;
  for (std::uint32_t mask = 0; mask < (1u << cnf.num_vars); ++mask) {
    Assignment alpha;
    for (std::uint32_t x = 0; x < cnf.num_vars; ++x) alpha.values.push_back((mask >> x & 1u) != 0);
    if (!satisfies(alpha, cnf)) continue;
    const CoverSet u = assignment_to_solution(cnf, alpha);
    check.require(is_solution(red.pvc, u), "assignment image is not a solution on " + label);
    check.require(solution_to_assignment(cnf, u).values == alpha.values, "assignment round trip on " + label);
    ++round_trips;
  }
  for (const CoverSet& u : all_pvc_solutions(red.pvc)) {
    check.require(satisfies(solution_to_assignment(cnf, u), cnf), "solution image does not satisfy on " + label);
  }
}

Outcome ac6() {
  Check check;
  Rng rng(606);
  std::size_t satisfiable = 0, round_trips = 0, total = 0;
  for (int k = 0; k < 100; ++k, ++total) {
    const auto vars = static_cast<std::uint32_t>(1 + rng() % 3);
    check_equivalence(check, random_formula(rng, vars, rng() % 3), "sample " + std::to_string(k), satisfiable,
                      round_trips);
  }
  // Every one-variable formula with at most two clauses; the only
  // unsatisfiable ones at this size live here.
  std::vector<Clause> one_var;
  for (int mask = 0; mask < 8; ++mask) {
    one_var.push_back(Clause{Literal{1, (mask & 1) != 0}, Literal{1, (mask & 2) != 0}, Literal{1, (mask & 4) != 0}});
  }
  std::vector<CnfFormula> small{CnfFormula{1, {}}};
  for (const Clause& x : one_var) {
    small.push_back(CnfFormula{1, {x}});
    for (const Clause& y : one_var) small.push_back(CnfFormula{1, {x, y}});
  }
  for (std::size_t k = 0; k < small.size(); ++k, ++total) {
    check_equivalence(check, small[k], "one-variable formula " + std::to_string(k), satisfiable, round_trips);
  }
  return check.outcome(std::to_string(total) + " formulas, " + std::to_string(total - satisfiable) +
                       " unsatisfiable, " + std::to_string(round_trips) + " assignments round-tripped");
}

Outcome ac7() {
  Check check;
  check.require(witness_log.applied > 0, "no witnesses recorded");
  check.require(witness_log.failures == 0, std::to_string(witness_log.failures) + " witnesses did not improve");
  return check.outcome(std::to_string(witness_log.applied) + " witnesses applied, each with delta >= 1");
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"AC1", ac1}, {"AC2", ac2}, {"AC3", ac3}, {"AC4", ac4}, {"AC5", ac5}, {"AC6", ac6}, {"AC7", ac7}};
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = run();
    } catch (const std::exception& e) {
      out = Outcome{false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %s: %s [%.2fs]\n", name, out.pass ? "PASS" : "FAIL", out.detail.c_str(), secs);
    failed += !out.pass;
  }
  return failed == 0 ? 0 : 1;
}
