#include <charconv>

#include "ellcoh/io.hpp"

namespace ellcoh::io {

namespace {

ResidueSpaceInput stratum(int i, ResidueMode mode) {
  ResidueSpaceInput r;
  r.stratum = i;
  r.mode = std::move(mode);
  return r;
}

// CP^2 minus three lines in general position: (C^*)^2, homotopic to T^2.
// D[1] is three cylinders with trivial normal circle bundles, D[2] three points.
DivisorSpec cp2_three_lines() {
  DivisorSpec s;
  s.name = "cp2-three-lines";
  s.description = "CP^2 with the normal crossing divisor {z0 z1 z2 = 0}";
  s.ambient_dim = 4;
  s.intersection_number = 2;
  s.complement = BettiVector{1, 2, 1};
  s.residues = {
      stratum(1, residue::TrivialTorus{{3, 3}}),
      stratum(2, residue::Points{3}),
  };
  return s;
}

ComplementInput cubic_complement_printed() { return BettiVector{1, 2, 0, 0, 0}; }

ComplementInput cubic_complement_recipe() {
  // H(CP^2), H(T^2); both pushforwards H^0(D) -> H^2(M) and H^2(D) -> H^4(M) are isomorphisms
  return ComplementRecipe{{1, 0, 1, 0, 1}, {1, 2, 1}, {{2, 1}, {4, 1}}};
}

ResidueSpaceInput cubic_circle_bundle_printed() {
  auto r = stratum(1, residue::Direct{{1, 2, 2, 0}});
  r.torus_type = true;
  r.closed_orientable_dim = 3;
  return r;
}

ResidueSpaceInput cubic_circle_bundle_gysin() {
  // nontrivial Euler class on the torus: cup e is an isomorphism H^0 -> H^2
  auto r = stratum(1, residue::CircleGysin{{1, 2, 1}, {{0, 1}}});
  r.closed_orientable_dim = 3;
  return r;
}

DivisorSpec cp2_cubic_base() {
  DivisorSpec s;
  s.ambient_dim = 4;
  s.intersection_number = 1;
  return s;
}

DivisorSpec cp2_cubic_paper() {
  auto s = cp2_cubic_base();
  s.name = "cp2-cubic-paper";
  s.description =
      "CP^2 with a smooth cubic curve; complement and circle bundle Betti numbers as read off the printed sequences";
  s.complement = cubic_complement_printed();
  s.residues = {cubic_circle_bundle_printed()};
  s.alternate = AlternatePipeline{"solver-derived", cubic_complement_recipe(), {cubic_circle_bundle_gysin()}};
  return s;
}

DivisorSpec cp2_cubic_derived() {
  auto s = cp2_cubic_base();
  s.name = "cp2-cubic-derived";
  s.description =
      "CP^2 with a smooth cubic curve; complement from the codimension-2 sequence, circle bundle from Thom-Gysin";
  s.complement = cubic_complement_recipe();
  s.residues = {cubic_circle_bundle_gysin()};
  s.alternate = AlternatePipeline{"paper-reading", cubic_complement_printed(), {cubic_circle_bundle_printed()}};
  return s;
}

DivisorSpec lefschetz(Dim critical_points) {
  DivisorSpec s;
  s.name = "lefschetz-n" + std::to_string(critical_points);
  s.description = "Singular fibre of a Lefschetz fibration with " + std::to_string(critical_points) +
                  " critical points. The complement Betti vector is a placeholder: replace it with H(M\\F).";
  s.ambient_dim = 4;
  s.intersection_number = 2;
  s.complement = BettiVector{1};
  s.residues = {
      stratum(1, residue::TrivialTorus{{critical_points, critical_points}}),
      stratum(2, residue::Points{critical_points}),
  };
  s.flags.global_normal_crossing = false;
  return s;
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"cp2-three-lines", "cp2-cubic-paper", "cp2-cubic-derived", "lefschetz-n<k>"};
}

DivisorSpec preset(std::string_view name) {
  if (name == "cp2-three-lines") return cp2_three_lines();
  if (name == "cp2-cubic-paper") return cp2_cubic_paper();
  if (name == "cp2-cubic-derived") return cp2_cubic_derived();

  constexpr std::string_view prefix = "lefschetz-n";
  if (name.starts_with(prefix)) {
    const auto digits = name.substr(prefix.size());
    Dim n = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
    if (ec == std::errc{} && ptr == digits.data() + digits.size() && n >= 1 && !digits.empty()) return lefschetz(n);
  }
  throw Error(ErrorCode::UnknownPreset, "no preset named '" + std::string(name) + "'");
}

}  // namespace ellcoh::io
