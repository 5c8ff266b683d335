#include <gtest/gtest.h>

#include <sstream>

#include "fixtures.hpp"

namespace popmatch {
namespace {

template <typename Write>
std::string render(Write write) {
  std::ostringstream out;
  write(out);
  return out.str();
}

Errc parse_code(const std::string& text, const std::function<void(std::istream&)>& read) {
  std::istringstream in(text);
  try {
    read(in);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "accepted: " << text;
  return Errc::budget_exceeded;
}

TEST(InstanceFormat, ReadsCommentsAndRoundTrips) {
  std::istringstream in("# triangle\n3 3\n1: 2 3\n2: 3 1  # cyclic\n3: 1 2\n");
  const auto inst = read_instance(in);
  EXPECT_EQ(inst, testing::t3());
  const std::string text = render([&](std::ostream& o) { write_instance(o, inst); });
  EXPECT_EQ(text, "3 3\n1: 2 3\n2: 3 1\n3: 1 2\n");
  std::istringstream again(text);
  EXPECT_EQ(read_instance(again), inst);
  std::istringstream reordered("3 3\n3: 1 2\n1: 2 3\n2: 3 1\n");
  EXPECT_EQ(read_instance(reordered), inst);
  std::istringstream isolated("2 0\n1:\n2:\n");
  EXPECT_EQ(read_instance(isolated).size(), 2u);
}

TEST(InstanceFormat, Errors) {
  auto read = [](std::istream& in) { read_instance(in); };
  EXPECT_EQ(parse_code("3 3\n1: 2 3\n2: 3 1\n", read), Errc::parse_error);
  EXPECT_EQ(parse_code("2 2\n1: 2\n2: 1\n", read), Errc::parse_error);
  EXPECT_EQ(parse_code("2 1\n1: x\n2: 1\n", read), Errc::parse_error);
  EXPECT_EQ(parse_code("2 1\n1: 2\n1: 2\n", read), Errc::parse_error);
  EXPECT_EQ(parse_code("2 1\n1: 2\n3: 1\n", read), Errc::parse_error);
  EXPECT_EQ(parse_code("2 1\n1: 2\n2:\n", read), Errc::asymmetric_adjacency);
  EXPECT_EQ(parse_code("", read), Errc::parse_error);
}

TEST(MatchingFormat, RoundTripAndErrors) {
  const auto inst = testing::t3();
  std::istringstream in("2 1\n");
  const auto m = read_matching(in, inst);
  EXPECT_EQ(m, Matching::from_edges(inst, {{1, 2}}));
  EXPECT_EQ(render([&](std::ostream& o) { write_matching(o, m); }), "1 2\n");
  auto read = [&](std::istream& s) { read_matching(s, inst); };
  EXPECT_EQ(parse_code("1 2 3\n", read), Errc::parse_error);
  EXPECT_EQ(parse_code("1 2\n1 3\n", read), Errc::invalid_matching);
}

TEST(PvcFormat, RoundTripAndErrors) {
  const auto pvc = sat_to_pvc(testing::cnf1()).pvc;
  const std::string text = render([&](std::ostream& o) { write_pvc(o, pvc); });
  std::istringstream in(text);
  const auto back = read_pvc(in);
  EXPECT_EQ(render([&](std::ostream& o) { write_pvc(o, back); }), text);
  EXPECT_EQ(back.graph().edges(), pvc.graph().edges());
  EXPECT_EQ(back.triples(), pvc.triples());
  auto read = [](std::istream& s) { read_pvc(s); };
  EXPECT_EQ(parse_code("3 3\ne 1 2\ne 1 3\ne 2 3\nT 1 2\n", read), Errc::parse_error);
  EXPECT_EQ(parse_code("2 1\ne 1 2\nQ 1 2\n", read), Errc::parse_error);
  EXPECT_EQ(parse_code("2 2\ne 1 2\nP 1 2\n", read), Errc::parse_error);
  EXPECT_EQ(parse_code("2 0\nP 1 2\n", read), Errc::pair_not_edge);
}

TEST(CoverFormat, RoundTrip) {
  const CoverSet u{1, 3, 5, 8, 9};
  const std::string text = render([&](std::ostream& o) { write_cover(o, u); });
  EXPECT_EQ(text, "1 3 5 8 9\n");
  std::istringstream in(text);
  EXPECT_EQ(read_cover(in), u);
  std::istringstream empty("");
  EXPECT_EQ(read_cover(empty), CoverSet{});
}

TEST(DimacsFormat, RoundTripAndErrors) {
  std::istringstream in("c comment\np cnf 3 1\n1 -2\n 3 0\n");
  const auto cnf = read_dimacs(in);
  EXPECT_EQ(cnf, testing::cnf1());
  const std::string text = render([&](std::ostream& o) { write_dimacs(o, cnf); });
  std::istringstream again(text);
  EXPECT_EQ(read_dimacs(again), cnf);
  auto read = [](std::istream& s) { read_dimacs(s); };
  EXPECT_EQ(parse_code("p cnf 2 1\n1 -2 0\n", read), Errc::clause_arity);
  EXPECT_EQ(parse_code("p cnf 2 1\n1 -3 2 0\n", read), Errc::parse_error);
  EXPECT_EQ(parse_code("1 2 3 0\n", read), Errc::parse_error);
  EXPECT_EQ(parse_code("p cnf 2 2\n1 2 2 0\n", read), Errc::parse_error);
  EXPECT_EQ(parse_code("p cnf 2 1\n1 2 2\n", read), Errc::parse_error);
}

TEST(LiteralMapFormat, RoundTrip) {
  const auto cnf = testing::cnf1();
  const auto red = sat_to_pvc(cnf);
  const std::string text = render([&](std::ostream& o) { write_literal_map(o, cnf, red.map); });
  EXPECT_NE(text.find("lit -2 4\n"), std::string::npos);
  EXPECT_NE(text.find("occ 1 2 -2 8\n"), std::string::npos);
  std::istringstream in(text);
  EXPECT_EQ(read_literal_map(in), cnf);
  auto read = [](std::istream& s) { read_literal_map(s); };
  EXPECT_EQ(parse_code("lit 1 2\nlit -1 1\n", read), Errc::parse_error);
}

TEST(GadgetMapFormat, RoundTrip) {
  Rng rng(6);
  for (int trial = 0; trial < 10; ++trial) {
    const auto h = reduce_pvc_to_pm(random_solvable_pvc(rng, 1 + trial % 2, trial % 2));
    const std::string text = render([&](std::ostream& o) { write_gadget_map(o, h.map); });
    std::istringstream in(text);
    const auto back = read_gadget_map(in);
    EXPECT_EQ(back, h.map);
    EXPECT_EQ(render([&](std::ostream& o) { write_gadget_map(o, back); }), text);
  }
  const auto h = reduce_pvc_to_pm(testing::pair1());
  const std::string text = render([&](std::ostream& o) { write_gadget_map(o, h.map); });
  EXPECT_EQ(text.substr(0, 4), "a_1 ");
  EXPECT_NE(text.find("u e_1_2 1 9\n"), std::string::npos);
  EXPECT_NE(text.find("f_1_2 11\n"), std::string::npos);
  auto read = [](std::istream& s) { read_gadget_map(s); };
  EXPECT_EQ(parse_code("a_1 1\nz_1 2\n", read), Errc::parse_error);
  EXPECT_EQ(parse_code("a_1 1\nb_1 1\n", read), Errc::parse_error);
  EXPECT_EQ(parse_code("a_1 1\nb_1 3\n", read), Errc::inconsistent_map);
  EXPECT_EQ(parse_code("u e_1_2 3 1\n", read), Errc::parse_error);
}

}  // namespace
}  // namespace popmatch
