#pragma once

// Finite exact sequences with partially known dimensions and ranks.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ellcoh/exactq.hpp"

namespace ellcoh {

/// Rank of a degree-indexed family of maps, e.g. cup with the Euler class
/// H^k -> H^{k+2}.  Missing degrees have rank 0.
using DegreeRanks = std::map<int, Dim>;

struct SequenceTerm {
  std::optional<Dim> dim;  // nullopt: unknown
  std::string label;

  static SequenceTerm known(Dim d, std::string label = {}) { return {d, std::move(label)}; }
  static SequenceTerm unknown(std::string label) { return {std::nullopt, std::move(label)}; }
};

/**
 * 0 = T_0 -> T_1 -> ... -> T_{N-1} = 0, exact at every term.
 * map_ranks[j] is the rank of T_j -> T_{j+1}.
 */
struct SequenceSpec {
  std::vector<SequenceTerm> terms;
  std::vector<std::optional<Dim>> map_ranks;

  /// Appends a term; the arrow into it (if any) gets `incoming_rank`.
  SequenceSpec& then(SequenceTerm term, std::optional<Dim> incoming_rank = std::nullopt);
};

struct SequenceSolution {
  std::vector<std::optional<Dim>> dims;
  std::vector<std::optional<Dim>> ranks;
  /// Labels of the unknowns that exactness does not force.
  std::vector<std::string> free_unknowns;

  bool complete() const { return free_unknowns.empty(); }
};

/**
 * Propagates dim T_j = rank(T_{j-1} -> T_j) + rank(T_j -> T_{j+1}) and
 * 0 <= rank <= dims to a fixed point over integer intervals.  A value is
 * reported only when its interval collapses, so every reported value is
 * forced by the input.  Throws INCONSISTENT when the constraints have no
 * solution and DIMENSION_MISMATCH for a malformed spec.
 */
SequenceSolution solve_exact(const SequenceSpec& spec);

/// As solve_exact, but throws UNDERDETERMINED unless every unknown is forced.
SequenceSolution solve_exact_complete(const SequenceSpec& spec);

/// Thom-Gysin sequence of a circle bundle P -> B as a SequenceSpec.
SequenceSpec gysin_sequence(const BettiVector& base, const DegreeRanks& cup_e_ranks);

/// Betti numbers of the total space of a circle bundle over a base with the
/// given ranks of cup with the Euler class.  Throws RANK_OUT_OF_RANGE.
BettiVector gysin_circle(const BettiVector& base, const DegreeRanks& cup_e_ranks);

/// H(M), H(D) for a closed codimension-2 locus D, plus the ranks of the
/// pushforwards H^{k-2}(D) -> H^k(M) keyed by k.
struct ComplementRecipe {
  BettiVector ambient_betti;
  BettiVector locus_betti;
  DegreeRanks pushforward_ranks;
};

SequenceSpec complement_sequence(const ComplementRecipe& recipe);

/// Betti numbers of M \ D.  Throws RANK_OUT_OF_RANGE.
BettiVector complement_betti(const ComplementRecipe& recipe);

/// Checks a rank family keyed by k, each map going from source degree
/// k + source_offset to target degree k + target_offset.  Returns a message
/// for the first violation, or an empty string.
std::string check_degree_ranks(const DegreeRanks& ranks, const BettiVector& source, int source_offset,
                               const BettiVector& target, int target_offset, const std::string& what);

}  // namespace ellcoh
