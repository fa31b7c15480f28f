#pragma once

// Assembly of the algebroid cohomology from resolved Betti data:
//   H^k(A) = H^k(M \ D) + sum_{i=1..n} H^{k-i}_res(stratum i).

#include <string>
#include <vector>

#include "ellcoh/divisor.hpp"

namespace ellcoh {

enum class CheckStatus { Pass, Fail, Warn };

constexpr const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Warn: return "warn";
  }
  return "?";
}

struct Check {
  std::string name;
  CheckStatus status = CheckStatus::Pass;
  std::string detail;
};

struct ResidueTerm {
  int stratum = 0;
  BettiVector betti;    // H_res of the stratum, unshifted
  BettiVector shifted;  // shifted up by the stratum index
};

struct CohomologyReport {
  std::string divisor_name;
  int ambient_dim = 0;
  BettiVector algebroid_betti;
  BettiVector complement_betti;
  std::vector<ResidueTerm> residues;
  std::vector<Check> checks;

  /// complement + every shifted residue term, recomputed from the breakdown.
  BettiVector recombined() const;
};

/// General assembly.  Throws VALIDATION_FAILED when validate() reports an
/// error; sub-solver errors propagate.
CohomologyReport assemble(const DivisorSpec& spec);

/// Four-manifold route: H(M\D) + H^{k-1}(S^1 N D[1]) + H^{k-2}(T^2)^{#D[2]}.
/// Throws WRONG_DIMENSION unless ambient_dim = 4, and VALIDATION_FAILED when
/// D[1] is not co-orientable or D[2] is not given as POINTS.
CohomologyReport assemble_dim4(const DivisorSpec& spec);

/// Complex log tangent bundle: cohomology of the complement, tagged COMPLEX.
BettiVector complex_log_cohomology(const BettiVector& complement_betti);

/// Euler characteristic, degree support, top-degree symmetry, validation
/// warnings, breakdown additivity and the alternate-pipeline diff.
std::vector<Check> consistency_checks(const CohomologyReport& report, const DivisorSpec& spec);

}  // namespace ellcoh
