#ifndef POPMATCH_ERROR_HPP
#define POPMATCH_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace popmatch {

enum class Errc {
  // instance / matching validation
  asymmetric_adjacency,
  self_loop,
  duplicate_neighbor,
  vertex_out_of_range,
  not_a_neighbor,
  invalid_matching,
  // search
  budget_exceeded,
  edge_in_matching,
  invalid_witness,
  // partitioned vertex cover
  not_partition,
  pair_not_edge,
  triple_not_triangle,
  overlap,
  unsatisfied,
  not_a_solution,
  // reduction
  internal_non_improvement,
  inconsistent_map,
  // files
  parse_error,
  clause_arity,
  divergence_found,
};

inline std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::asymmetric_adjacency: return "AsymmetricAdjacency";
    case Errc::self_loop: return "SelfLoop";
    case Errc::duplicate_neighbor: return "DuplicateNeighbor";
    case Errc::vertex_out_of_range: return "VertexOutOfRange";
    case Errc::not_a_neighbor: return "NotANeighbor";
    case Errc::invalid_matching: return "InvalidMatching";
    case Errc::budget_exceeded: return "BudgetExceeded";
    case Errc::edge_in_matching: return "EdgeInMatching";
    case Errc::invalid_witness: return "InvalidWitness";
    case Errc::not_partition: return "NotPartition";
    case Errc::pair_not_edge: return "PairNotEdge";
    case Errc::triple_not_triangle: return "TripleNotTriangle";
    case Errc::overlap: return "Overlap";
    case Errc::unsatisfied: return "Unsatisfied";
    case Errc::not_a_solution: return "NotASolution";
    case Errc::internal_non_improvement: return "InternalNonImprovement";
    case Errc::inconsistent_map: return "InconsistentMap";
    case Errc::parse_error: return "ParseError";
    case Errc::clause_arity: return "ClauseArity";
    case Errc::divergence_found: return "DivergenceFound";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so the
/// CLI can map it onto an exit status without string matching.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace popmatch

#endif  // POPMATCH_ERROR_HPP
