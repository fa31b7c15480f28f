#pragma once

// Stratified elliptic-divisor input: ambient manifold, complement, and one
// residue space per stratum D[i].  Everything is carried as Betti data.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ellcoh/exactq.hpp"
#include "ellcoh/sequences.hpp"

namespace ellcoh {

namespace residue {

/// H_res supplied directly (required for twisted residue coefficients).
struct Direct {
  BettiVector betti;
};

/// Residue space T^i x D[i]; base_betti is H(D[i]).
struct TrivialTorus {
  BettiVector base_betti;
};

/// Residue space is a circle bundle over D[1] (stratum 1 only).
struct CircleGysin {
  BettiVector base_betti;
  DegreeRanks cup_e_ranks;
};

/// D[i] is `count` points; the residue space is count copies of T^i.
struct Points {
  Dim count = 0;
};

}  // namespace residue

using ResidueMode = std::variant<residue::Direct, residue::TrivialTorus, residue::CircleGysin, residue::Points>;

const char* mode_name(const ResidueMode& mode);

struct ResidueSpaceInput {
  int stratum = 1;
  ResidueMode mode;
  /// The residue space is a torus bundle, so its Euler characteristic must
  /// vanish.  Implied by every mode except Direct.
  bool torus_type = false;
  /// Dimension of the residue space when it is known to be a closed
  /// orientable manifold.
  std::optional<int> closed_orientable_dim;

  bool is_torus_type() const { return torus_type || !std::holds_alternative<residue::Direct>(mode); }
};

using ComplementInput = std::variant<BettiVector, ComplementRecipe>;

struct DivisorFlags {
  bool global_normal_crossing = true;
  bool d1_coorientable = true;
};

/// A second set of intermediates for the same divisor, assembled alongside
/// the primary one and diffed against it.
struct AlternatePipeline {
  std::string label;
  ComplementInput complement;
  std::vector<ResidueSpaceInput> residues;
};

struct DivisorSpec {
  std::string name;
  std::string description;
  int ambient_dim = 0;
  int intersection_number = 0;
  FieldTag field = FieldTag::Rational;
  ComplementInput complement = BettiVector{};
  std::vector<ResidueSpaceInput> residues;  // stratum 1..n
  DivisorFlags flags;
  std::optional<AlternatePipeline> alternate;
};

enum class Severity { Error, Warning };

struct Diagnostic {
  Severity severity = Severity::Error;
  std::string invariant;
  std::string message;
};

/// All violated invariants (errors) plus non-fatal warnings.
std::vector<Diagnostic> validate(const DivisorSpec& spec);

bool has_errors(const std::vector<Diagnostic>& diagnostics);

/// Betti numbers of the residue space of stratum `stratum`.
BettiVector resolve_residue(const ResidueSpaceInput& input, FieldTag field = FieldTag::Rational);

BettiVector resolve_complement(const ComplementInput& input, FieldTag field = FieldTag::Rational);

}  // namespace ellcoh
