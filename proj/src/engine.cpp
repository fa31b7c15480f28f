#include "ellcoh/engine.hpp"

namespace ellcoh {

namespace {

void require_valid(const DivisorSpec& spec) {
  const auto diagnostics = validate(spec);
  if (!has_errors(diagnostics)) return;
  std::string msg;
  for (const auto& d : diagnostics)
    if (d.severity == Severity::Error) msg += (msg.empty() ? "" : "; ") + d.message;
  throw Error(ErrorCode::ValidationFailed, msg);
}

CohomologyReport assemble_terms(const DivisorSpec& spec, const ComplementInput& complement,
                                const std::vector<ResidueSpaceInput>& residues) {
  CohomologyReport report;
  report.divisor_name = spec.name;
  report.ambient_dim = spec.ambient_dim;
  report.complement_betti = resolve_complement(complement, spec.field);
  report.algebroid_betti = report.complement_betti;
  for (const auto& r : residues) {
    ResidueTerm term;
    term.stratum = r.stratum;
    term.betti = resolve_residue(r, spec.field);
    term.shifted = shift(term.betti, r.stratum);
    report.algebroid_betti = direct_sum(report.algebroid_betti, term.shifted);
    report.residues.push_back(std::move(term));
  }
  return report;
}

std::string table_line(const BettiVector& b, int length) {
  std::string s;
  for (Dim d : b.padded(length)) s += (s.empty() ? "" : ", ") + std::to_string(d);
  return "(" + s + ")";
}

}  // namespace

BettiVector CohomologyReport::recombined() const {
  BettiVector total({}, complement_betti.field);
  total = direct_sum(total, complement_betti);
  for (const auto& r : residues) total = direct_sum(total, shift(r.betti, r.stratum));
  return total;
}

CohomologyReport assemble(const DivisorSpec& spec) {
  require_valid(spec);
  auto report = assemble_terms(spec, spec.complement, spec.residues);
  report.checks = consistency_checks(report, spec);
  return report;
}

CohomologyReport assemble_dim4(const DivisorSpec& spec) {
  if (spec.ambient_dim != 4)
    throw Error(ErrorCode::WrongDimension, "four-manifold route needs ambient_dim = 4, got " +
                                               std::to_string(spec.ambient_dim));
  if (!spec.flags.d1_coorientable)
    throw Error(ErrorCode::ValidationFailed, "four-manifold route needs D[1] co-orientable");
  require_valid(spec);

  CohomologyReport report;
  report.divisor_name = spec.name;
  report.ambient_dim = spec.ambient_dim;
  report.complement_betti = resolve_complement(spec.complement, spec.field);
  report.algebroid_betti = report.complement_betti;

  if (spec.intersection_number >= 1) {
    // H^{k-1}(S^1 N D[1])
    ResidueTerm circle;
    circle.stratum = 1;
    circle.betti = resolve_residue(spec.residues.at(0), spec.field);
    circle.shifted = shift(circle.betti, 1);
    report.algebroid_betti = direct_sum(report.algebroid_betti, circle.shifted);
    report.residues.push_back(std::move(circle));
  }
  if (spec.intersection_number == 2) {
    const auto* points = std::get_if<residue::Points>(&spec.residues.at(1).mode);
    if (points == nullptr)
      throw Error(ErrorCode::ValidationFailed, "four-manifold route needs D[2] given as points");
    // H^{k-2}(T^2)^{#D[2]}
    BettiVector copies({}, spec.field);
    for (Dim p = 0; p < points->count; ++p) copies = direct_sum(copies, torus_betti(2, spec.field));
    ResidueTerm corners;
    corners.stratum = 2;
    corners.betti = copies;
    corners.shifted = shift(copies, 2);
    report.algebroid_betti = direct_sum(report.algebroid_betti, corners.shifted);
    report.residues.push_back(std::move(corners));
  }
  report.checks = consistency_checks(report, spec);
  return report;
}

BettiVector complex_log_cohomology(const BettiVector& complement_betti) {
  BettiVector out = complement_betti.trimmed();
  out.field = FieldTag::Complex;
  return out;
}

std::vector<Check> consistency_checks(const CohomologyReport& report, const DivisorSpec& spec) {
  std::vector<Check> checks;

  for (const auto& d : validate(spec))
    if (d.severity == Severity::Warning) checks.push_back({"input:" + d.invariant, CheckStatus::Warn, d.message});

  const bool all_torus = std::all_of(spec.residues.begin(), spec.residues.end(),
                                     [](const ResidueSpaceInput& r) { return r.is_torus_type(); });
  if (all_torus) {
    const Dim chi_a = euler_char(report.algebroid_betti);
    const Dim chi_c = euler_char(report.complement_betti);
    checks.push_back({"euler_characteristic", chi_a == chi_c ? CheckStatus::Pass : CheckStatus::Fail,
                      "chi(A) = " + std::to_string(chi_a) + ", chi(M\\D) = " + std::to_string(chi_c)});
  }

  const int top = report.algebroid_betti.top_degree();
  checks.push_back({"degree_support", top <= spec.ambient_dim ? CheckStatus::Pass : CheckStatus::Fail,
                    "top nonzero degree " + std::to_string(top) + ", ambient dimension " +
                        std::to_string(spec.ambient_dim)});

  for (std::size_t k = 0; k < spec.residues.size() && k < report.residues.size(); ++k) {
    const auto& dim = spec.residues[k].closed_orientable_dim;
    if (!dim) continue;
    const auto& b = report.residues[k].betti;
    const std::string name = "top_degree_symmetry:residue_" + std::to_string(spec.residues[k].stratum);
    if (b[0] == b[*dim] && b.top_degree() <= *dim) {
      checks.push_back({name, CheckStatus::Pass, "b_0 = b_" + std::to_string(*dim) + " = " + std::to_string(b[0])});
    } else {
      checks.push_back({name, CheckStatus::Warn,
                        "b₀ ≠ b_top for closed orientable " + std::to_string(*dim) + "-dimensional residue space " +
                            to_string(b) + ": b_0 = " + std::to_string(b[0]) + ", b_" + std::to_string(*dim) +
                            " = " + std::to_string(b[*dim])});
    }
  }

  const bool additive = report.recombined() == report.algebroid_betti;
  checks.push_back({"additivity", additive ? CheckStatus::Pass : CheckStatus::Fail,
                    "complement plus shifted residues " + to_string(report.recombined())});

  if (spec.alternate) {
    const auto& alt = *spec.alternate;
    const std::string name = "alternate_pipeline:" + alt.label;
    try {
      const auto other = assemble_terms(spec, alt.complement, alt.residues);
      const int length = std::max({spec.ambient_dim + 1, other.algebroid_betti.support_end(),
                                   report.algebroid_betti.support_end()});
      const std::string tables = "this pipeline " + table_line(report.algebroid_betti, length) + " vs '" + alt.label +
                                 "' " + table_line(other.algebroid_betti, length) + "; complement " +
                                 table_line(report.complement_betti, length) + " vs " +
                                 table_line(other.complement_betti, length);
      if (other.algebroid_betti == report.algebroid_betti)
        checks.push_back({name, CheckStatus::Pass, tables});
      else
        checks.push_back({name, CheckStatus::Warn, "pipelines diverge: " + tables});
    } catch (const Error& e) {
      checks.push_back({name, CheckStatus::Warn, std::string("alternate pipeline failed: ") + e.what()});
    }
  }
  return checks;
}

}  // namespace ellcoh
