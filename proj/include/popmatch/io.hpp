#ifndef POPMATCH_IO_HPP
#define POPMATCH_IO_HPP

// Text formats. All writers emit a canonical form that the matching reader
// accepts unchanged; `#` starts a comment everywhere except DIMACS, which
// uses `c` lines.
//
//   instance   `n m` then n lines `v: u1 u2 ...` (most preferred first)
//   matching   one `u v` per line, u < v, sorted
//   pvc        `n m`, then `e u v`, `P u v`, `T u v w` lines
//   gadget map `a_i <id>` (also b/c/d), `u e_i_j i <id>`, `f_i_j <id>`
//   literal map `lit <+-var> <id>`, `occ <clause> <position> <+-var> <id>`
//   cover      whitespace separated vertex ids

#include <charconv>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "popmatch/core.hpp"
#include "popmatch/gadgets.hpp"
#include "popmatch/pvc.hpp"

namespace popmatch {

namespace detail {

struct Line {
  std::size_t number = 0;
  std::vector<std::string> tokens;
};

[[noreturn]] inline void parse_fail(std::size_t line, const std::string& why) {
  throw Error(Errc::parse_error, "line " + std::to_string(line) + ": " + why);
}

/// Splits every non-blank line into tokens after dropping text from
/// `comment` onward.
inline std::vector<Line> tokenize(std::istream& in, char comment = '#') {
  std::vector<Line> out;
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (auto pos = raw.find(comment); pos != std::string::npos) raw.erase(pos);
    std::istringstream ss(raw);
    Line line{number, {}};
    for (std::string tok; ss >> tok;) line.tokens.push_back(tok);
    if (!line.tokens.empty()) out.push_back(std::move(line));
  }
  return out;
}

template <typename T>
T parse_number(std::string_view tok, std::size_t line) {
  T value{};
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    parse_fail(line, "expected a number, got '" + std::string(tok) + "'");
  }
  return value;
}

inline Vertex parse_vertex(std::string_view tok, std::size_t line) {
  const auto v = parse_number<std::int64_t>(tok, line);
  if (v < 1 || v > std::int64_t{UINT32_MAX}) parse_fail(line, "vertex id out of range: " + std::string(tok));
  return static_cast<Vertex>(v);
}

inline void expect_arity(const Line& line, std::size_t count, std::string_view what) {
  if (line.tokens.size() != count) {
    parse_fail(line.number, "malformed " + std::string(what) + " line (expected " + std::to_string(count) +
                                " fields, got " + std::to_string(line.tokens.size()) + ")");
  }
}

inline std::pair<std::size_t, std::size_t> parse_header(const std::vector<Line>& lines, std::string_view what) {
  if (lines.empty()) parse_fail(0, "missing `n m` header in " + std::string(what));
  expect_arity(lines.front(), 2, "header");
  return {parse_number<std::size_t>(lines.front().tokens[0], lines.front().number),
          parse_number<std::size_t>(lines.front().tokens[1], lines.front().number)};
}

inline std::string literal_token(const Literal& l) {
  return (l.positive ? "" : "-") + std::to_string(l.var);
}

inline Literal parse_literal(std::string_view tok, std::size_t line) {
  const auto v = parse_number<std::int64_t>(tok, line);
  if (v == 0 || v > std::int64_t{UINT32_MAX} || v < -std::int64_t{UINT32_MAX}) {
    parse_fail(line, "bad literal " + std::string(tok));
  }
  return Literal{static_cast<std::uint32_t>(v < 0 ? -v : v), v > 0};
}

}  // namespace detail

// --- roommates instance ------------------------------------------------------

inline PreferenceInstance read_instance(std::istream& in) {
  const auto lines = detail::tokenize(in);
  const auto [n, m] = detail::parse_header(lines, "instance");
  if (lines.size() != n + 1) {
    detail::parse_fail(lines.back().number, "expected " + std::to_string(n) + " preference lines, got " +
                                                std::to_string(lines.size() - 1));
  }
  std::vector<std::vector<Vertex>> adjacency(n);
  std::vector<char> seen(n + 1, 0);
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto& line = lines[k];
    std::string head = line.tokens[0];
    if (head.size() < 2 || head.back() != ':') detail::parse_fail(line.number, "expected `v:` at line start");
    head.pop_back();
    const Vertex v = detail::parse_vertex(head, line.number);
    if (v > n) detail::parse_fail(line.number, "vertex " + head + " exceeds n");
    if (seen[v]++) detail::parse_fail(line.number, "vertex " + head + " listed twice");
    for (std::size_t t = 1; t < line.tokens.size(); ++t) {
      adjacency[v - 1].push_back(detail::parse_vertex(line.tokens[t], line.number));
    }
  }
  auto inst = PreferenceInstance::validate(std::move(adjacency));
  if (inst.edge_count() != m) {
    detail::parse_fail(lines.front().number, "header says " + std::to_string(m) + " edges, lists give " +
                                                 std::to_string(inst.edge_count()));
  }
  return inst;
}

inline void write_instance(std::ostream& out, const PreferenceInstance& inst) {
  out << inst.size() << ' ' << inst.edge_count() << '\n';
  for (Vertex v = 1; v <= inst.size(); ++v) {
    out << v << ':';
    for (Vertex u : inst.preferences(v)) out << ' ' << u;
    out << '\n';
  }
}

// --- matching ----------------------------------------------------------------

inline std::vector<Edge> read_matching_edges(std::istream& in) {
  std::vector<Edge> edges;
  for (const auto& line : detail::tokenize(in)) {
    detail::expect_arity(line, 2, "matching");
    const Vertex u = detail::parse_vertex(line.tokens[0], line.number);
    const Vertex v = detail::parse_vertex(line.tokens[1], line.number);
    if (u == v) detail::parse_fail(line.number, "matching edge is a loop");
    edges.emplace_back(u, v);
  }
  return edges;
}

inline Matching read_matching(std::istream& in, const PreferenceInstance& inst) {
  const auto edges = read_matching_edges(in);
  return Matching::from_edges(inst, edges);
}

inline void write_matching(std::ostream& out, const Matching& m) {
  for (const Edge& e : m.edges()) out << e.u << ' ' << e.v << '\n';
}

// --- partitioned vertex cover ------------------------------------------------

inline PvcInstance read_pvc(std::istream& in) {
  const auto lines = detail::tokenize(in);
  const auto [n, m] = detail::parse_header(lines, "pvc file");
  std::vector<Edge> edges;
  std::vector<VertexPair> pairs;
  std::vector<VertexTriple> triples;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto& line = lines[k];
    const std::string& kind = line.tokens[0];
    auto vertex = [&](std::size_t t) { return detail::parse_vertex(line.tokens[t], line.number); };
    if (kind == "e") {
      detail::expect_arity(line, 3, "edge");
      edges.emplace_back(vertex(1), vertex(2));
    } else if (kind == "P") {
      detail::expect_arity(line, 3, "pair");
      pairs.push_back({vertex(1), vertex(2)});
    } else if (kind == "T") {
      detail::expect_arity(line, 4, "triple");
      triples.push_back({vertex(1), vertex(2), vertex(3)});
    } else {
      detail::parse_fail(line.number, "unknown record '" + kind + "'");
    }
  }
  if (edges.size() != m) {
    detail::parse_fail(lines.front().number,
                       "header says " + std::to_string(m) + " edges, file has " + std::to_string(edges.size()));
  }
  auto graph = SimpleGraph::validate(n, std::move(edges));
  return PvcInstance::validate(std::move(graph), std::move(pairs), std::move(triples));
}

inline void write_pvc(std::ostream& out, const PvcInstance& pvc) {
  out << pvc.graph().size() << ' ' << pvc.graph().edges().size() << '\n';
  for (const Edge& e : pvc.graph().edges()) out << "e " << e.u << ' ' << e.v << '\n';
  for (const auto& p : pvc.pairs()) out << "P " << p[0] << ' ' << p[1] << '\n';
  for (const auto& t : pvc.triples()) out << "T " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
}

// --- cover -------------------------------------------------------------------

inline CoverSet read_cover(std::istream& in) {
  CoverSet out;
  for (const auto& line : detail::tokenize(in)) {
    for (const auto& tok : line.tokens) out.insert(detail::parse_vertex(tok, line.number));
  }
  return out;
}

inline void write_cover(std::ostream& out, const CoverSet& cover) {
  bool first = true;
  for (Vertex v : cover) {
    out << (first ? "" : " ") << v;
    first = false;
  }
  out << '\n';
}

// --- DIMACS CNF --------------------------------------------------------------

/// Reads `p cnf <vars> <clauses>` followed by zero-terminated clauses; every
/// clause must hold exactly three literal occurrences.
inline CnfFormula read_dimacs(std::istream& in) {
  CnfFormula cnf;
  std::optional<std::size_t> declared_clauses;
  std::vector<Literal> pending;
  std::size_t pending_line = 0;
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    std::istringstream ss(raw);
    std::string tok;
    if (!(ss >> tok)) continue;
    if (tok == "c") continue;
    if (tok == "%") break;
    if (tok == "p") {
      std::string format;
      std::int64_t vars = -1, clauses = -1;
      if (declared_clauses || !(ss >> format >> vars >> clauses) || format != "cnf" || vars < 0 || clauses < 0) {
        detail::parse_fail(number, "bad problem line");
      }
      cnf.num_vars = static_cast<std::uint32_t>(vars);
      declared_clauses = static_cast<std::size_t>(clauses);
      continue;
    }
    if (!declared_clauses) detail::parse_fail(number, "clause before `p cnf` header");
    do {
      const auto value = detail::parse_number<std::int64_t>(tok, number);
      if (value == 0) {
        if (pending.size() != 3) {
          throw Error(Errc::clause_arity, "line " + std::to_string(number) + ": clause has " +
                                              std::to_string(pending.size()) + " literals, expected 3");
        }
        cnf.clauses.push_back({pending[0], pending[1], pending[2]});
        pending.clear();
        continue;
      }
      const Literal l = detail::parse_literal(tok, number);
      if (l.var > cnf.num_vars) detail::parse_fail(number, "variable " + std::to_string(l.var) + " exceeds header");
      if (pending.empty()) pending_line = number;
      pending.push_back(l);
    } while (ss >> tok);
  }
  if (!declared_clauses) detail::parse_fail(number, "missing `p cnf` header");
  if (!pending.empty()) detail::parse_fail(pending_line, "unterminated clause");
  if (cnf.clauses.size() != *declared_clauses) {
    detail::parse_fail(number, "header declares " + std::to_string(*declared_clauses) + " clauses, found " +
                                   std::to_string(cnf.clauses.size()));
  }
  return cnf;
}

inline void write_dimacs(std::ostream& out, const CnfFormula& cnf) {
  out << "p cnf " << cnf.num_vars << ' ' << cnf.clauses.size() << '\n';
  for (const Clause& c : cnf.clauses) {
    for (const Literal& l : c) out << detail::literal_token(l) << ' ';
    out << "0\n";
  }
}

// --- literal / occurrence map --------------------------------------------------

inline void write_literal_map(std::ostream& out, const CnfFormula& cnf, const LiteralMap& map) {
  for (std::uint32_t x = 1; x <= cnf.num_vars; ++x) {
    for (bool positive : {true, false}) {
      const Literal l{x, positive};
      out << "lit " << detail::literal_token(l) << ' ' << map.literal_vertex(l) << '\n';
    }
  }
  for (std::size_t c = 0; c < cnf.clauses.size(); ++c) {
    for (std::size_t p = 0; p < 3; ++p) {
      out << "occ " << c + 1 << ' ' << p + 1 << ' ' << detail::literal_token(cnf.clauses[c][p]) << ' '
          << map.occurrence_vertex(c, p) << '\n';
    }
  }
}

/// Recovers the formula a literal map was written for. Ids must follow the
/// standard numbering.
inline CnfFormula read_literal_map(std::istream& in) {
  CnfFormula cnf;
  std::map<std::pair<std::size_t, std::size_t>, std::pair<Literal, Vertex>> occurrences;
  std::vector<std::pair<Literal, Vertex>> literals;
  for (const auto& line : detail::tokenize(in)) {
    const std::string& kind = line.tokens[0];
    if (kind == "lit") {
      detail::expect_arity(line, 3, "lit");
      const Literal l = detail::parse_literal(line.tokens[1], line.number);
      literals.emplace_back(l, detail::parse_vertex(line.tokens[2], line.number));
      cnf.num_vars = std::max(cnf.num_vars, l.var);
    } else if (kind == "occ") {
      detail::expect_arity(line, 5, "occ");
      const auto c = detail::parse_number<std::size_t>(line.tokens[1], line.number);
      const auto p = detail::parse_number<std::size_t>(line.tokens[2], line.number);
      if (c < 1 || p < 1 || p > 3) detail::parse_fail(line.number, "bad occurrence position");
      const Literal l = detail::parse_literal(line.tokens[3], line.number);
      if (!occurrences.emplace(std::pair{c, p}, std::pair{l, detail::parse_vertex(line.tokens[4], line.number)})
               .second) {
        detail::parse_fail(line.number, "occurrence listed twice");
      }
    } else {
      detail::parse_fail(line.number, "unknown record '" + kind + "'");
    }
  }
  if (occurrences.size() % 3 != 0) detail::parse_fail(0, "clauses must have three occurrences");
  const std::size_t clauses = occurrences.size() / 3;
  cnf.clauses.resize(clauses);
  const LiteralMap map{cnf.num_vars, clauses};
  for (const auto& [key, value] : occurrences) {
    const auto [c, p] = key;
    if (c > clauses) detail::parse_fail(0, "clause numbers are not contiguous");
    if (value.second != map.occurrence_vertex(c - 1, p - 1)) detail::parse_fail(0, "non-standard occurrence id");
    cnf.clauses[c - 1][p - 1] = value.first;
  }
  if (literals.size() != 2 * cnf.num_vars) detail::parse_fail(0, "every literal needs exactly one line");
  for (const auto& [l, id] : literals) {
    if (id != map.literal_vertex(l)) detail::parse_fail(0, "non-standard literal id");
  }
  check_formula(cnf);
  return cnf;
}

// --- gadget map --------------------------------------------------------------

inline void write_gadget_map(std::ostream& out, const GadgetMap& map) {
  for (Vertex id = 1; id <= map.size(); ++id) {
    const GadgetName& n = map.name(id);
    switch (n.role) {
      case GadgetRole::a:
      case GadgetRole::b:
      case GadgetRole::c:
      case GadgetRole::d:
        out << to_string(n) << ' ' << id << '\n';
        break;
      case GadgetRole::u:
        out << "u e_" << std::min(n.i, n.j) << '_' << std::max(n.i, n.j) << ' ' << n.i << ' ' << id << '\n';
        break;
      case GadgetRole::f:
        out << "f_" << n.i << '_' << n.j << ' ' << id << '\n';
        break;
    }
  }
}

inline GadgetMap read_gadget_map(std::istream& in) {
  std::map<Vertex, GadgetName> by_id;
  auto split_ids = [](std::string_view rest, std::size_t line) {
    std::vector<Vertex> ids;
    std::size_t start = 0;
    while (start <= rest.size()) {
      const std::size_t end = std::min(rest.find('_', start), rest.size());
      ids.push_back(detail::parse_vertex(rest.substr(start, end - start), line));
      start = end + 1;
    }
    return ids;
  };
  for (const auto& line : detail::tokenize(in)) {
    const std::string& head = line.tokens[0];
    GadgetName name;
    Vertex id = 0;
    if (head == "u") {
      detail::expect_arity(line, 4, "u");
      const std::string& edge = line.tokens[1];
      if (edge.rfind("e_", 0) != 0) detail::parse_fail(line.number, "expected e_i_j");
      const auto ends = split_ids(std::string_view(edge).substr(2), line.number);
      if (ends.size() != 2) detail::parse_fail(line.number, "expected e_i_j");
      const Vertex at = detail::parse_vertex(line.tokens[2], line.number);
      if (at != ends[0] && at != ends[1]) detail::parse_fail(line.number, "endpoint not on the edge");
      name = {GadgetRole::u, at, at == ends[0] ? ends[1] : ends[0]};
      id = detail::parse_vertex(line.tokens[3], line.number);
    } else {
      detail::expect_arity(line, 2, "gadget");
      if (head.size() < 3 || head[1] != '_') detail::parse_fail(line.number, "unknown name '" + head + "'");
      const auto ids = split_ids(std::string_view(head).substr(2), line.number);
      switch (head[0]) {
        case 'a': name.role = GadgetRole::a; break;
        case 'b': name.role = GadgetRole::b; break;
        case 'c': name.role = GadgetRole::c; break;
        case 'd': name.role = GadgetRole::d; break;
        case 'f': name.role = GadgetRole::f; break;
        default: detail::parse_fail(line.number, "unknown name '" + head + "'");
      }
      if (ids.size() != (name.role == GadgetRole::f ? 2U : 1U)) {
        detail::parse_fail(line.number, "wrong index count in '" + head + "'");
      }
      name.i = ids[0];
      name.j = ids.size() > 1 ? ids[1] : 0;
      id = detail::parse_vertex(line.tokens[1], line.number);
    }
    if (!by_id.emplace(id, name).second) detail::parse_fail(line.number, "id " + std::to_string(id) + " named twice");
  }
  std::vector<GadgetName> names;
  for (const auto& [id, name] : by_id) {
    if (id != names.size() + 1) throw Error(Errc::inconsistent_map, "ids are not contiguous from 1");
    names.push_back(name);
  }
  return GadgetMap::validate(std::move(names));
}

}  // namespace popmatch

#endif  // POPMATCH_IO_HPP
