#include "ellcoh/divisor.hpp"

namespace ellcoh {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

BettiVector retagged(BettiVector b, FieldTag field) {
  b.field = field;
  return b;
}

bool nonnegative(const BettiVector& b) {
  return std::all_of(b.dims.begin(), b.dims.end(), [](Dim d) { return d >= 0; });
}

class Collector {
 public:
  void error(std::string invariant, std::string message) {
    out_.push_back({Severity::Error, std::move(invariant), std::move(message)});
  }
  void warn(std::string invariant, std::string message) {
    out_.push_back({Severity::Warning, std::move(invariant), std::move(message)});
  }
  // Support of b must lie in degrees 0..max_degree.
  void support(const BettiVector& b, int max_degree, const std::string& what) {
    if (!nonnegative(b)) error("nonnegative_betti", what + " has a negative entry");
    if (b.top_degree() > max_degree)
      error("betti_support", what + " " + to_string(b) + " has support beyond degree " + std::to_string(max_degree));
  }
  std::vector<Diagnostic> take() { return std::move(out_); }

 private:
  std::vector<Diagnostic> out_;
};

void validate_complement(const ComplementInput& complement, int m, const std::string& prefix, Collector& c) {
  std::visit(overloaded{
                 [&](const BettiVector& b) { c.support(b, m, prefix + "complement Betti vector"); },
                 [&](const ComplementRecipe& r) {
                   c.support(r.ambient_betti, m, prefix + "ambient Betti vector");
                   c.support(r.locus_betti, m - 2, prefix + "locus Betti vector");
                   if (auto msg = check_degree_ranks(r.pushforward_ranks, r.locus_betti, -2, r.ambient_betti, 0,
                                                     prefix + "pushforward");
                       !msg.empty())
                     c.error("rank_bounds", msg);
                 },
             },
             complement);
}

void validate_residues(const DivisorSpec& spec, const std::vector<ResidueSpaceInput>& residues,
                       const std::string& prefix, Collector& c) {
  const int m = spec.ambient_dim;
  const int n = spec.intersection_number;
  if (static_cast<int>(residues.size()) != n)
    c.error("residue_count", prefix + "expected " + std::to_string(n) + " residue inputs, got " +
                                 std::to_string(residues.size()));

  for (std::size_t k = 0; k < residues.size(); ++k) {
    const auto& r = residues[k];
    const int i = r.stratum;
    const std::string where = prefix + "residue " + std::to_string(i) + " (" + mode_name(r.mode) + ")";
    if (i != static_cast<int>(k) + 1) {
      c.error("stratum_order", where + " listed at position " + std::to_string(k + 1) +
                                   "; residues must cover strata 1..n in order");
      continue;
    }
    bool structural_ok = true;

    std::visit(overloaded{
                   [&](const residue::Direct& d) { c.support(d.betti, m - i, where + " Betti vector"); },
                   [&](const residue::TrivialTorus& t) { c.support(t.base_betti, m - 2 * i, where + " base"); },
                   [&](const residue::CircleGysin& g) {
                     if (i != 1) {
                       c.error("circle_gysin_stratum", where + ": CIRCLE_GYSIN only applies to stratum 1");
                       structural_ok = false;
                     }
                     c.support(g.base_betti, m - 2 * i, where + " base");
                     if (auto msg = check_degree_ranks(g.cup_e_ranks, g.base_betti, 0, g.base_betti, 2, where + " cup e");
                         !msg.empty()) {
                       c.error("rank_bounds", msg);
                       structural_ok = false;
                     }
                   },
                   [&](const residue::Points& p) {
                     if (m != 2 * i) {
                       c.error("points_dimension", where + ": POINTS requires ambient_dim = 2·i");
                       structural_ok = false;
                     }
                     if (p.count < 0) {
                       c.error("nonnegative_betti", where + ": negative point count");
                       structural_ok = false;
                     }
                   },
               },
               r.mode);

    const bool direct = std::holds_alternative<residue::Direct>(r.mode);
    const bool points = std::holds_alternative<residue::Points>(r.mode);
    if (!direct && !points) {
      if (!spec.flags.d1_coorientable)
        c.error("twisted_residue", where + ": D[1] is not co-orientable, residue must be supplied directly");
      else if (i >= 2 && !spec.flags.global_normal_crossing)
        c.error("twisted_residue", where + ": divisor is not global normal crossing, residue must be supplied directly");
    }

    if (!structural_ok) continue;
    try {
      const auto resolved = resolve_residue(r, spec.field);
      if (!direct) c.support(resolved, m - i, where + " resolved Betti vector");
      if (r.is_torus_type() && euler_char(resolved) != 0)
        c.warn("torus_euler", where + ": torus-type residue space " + to_string(resolved) +
                                  " has Euler characteristic " + std::to_string(euler_char(resolved)));
    } catch (const Error& e) {
      c.error("residue_resolution", where + ": " + e.what());
    }
  }
}

}  // namespace

const char* mode_name(const ResidueMode& mode) {
  return std::visit(overloaded{
                        [](const residue::Direct&) { return "direct"; },
                        [](const residue::TrivialTorus&) { return "trivial_torus"; },
                        [](const residue::CircleGysin&) { return "circle_gysin"; },
                        [](const residue::Points&) { return "points"; },
                    },
                    mode);
}

std::vector<Diagnostic> validate(const DivisorSpec& spec) {
  Collector c;
  const int m = spec.ambient_dim;
  const int n = spec.intersection_number;
  if (m < 0) c.error("ambient_dim", "ambient dimension must be >= 0");
  if (n < 0) c.error("intersection_number", "intersection number must be >= 0");
  if (n > m / 2)
    c.error("intersection_bound", "intersection number exceeds ⌊m/2⌋ (n = " + std::to_string(n) +
                                      ", m = " + std::to_string(m) + ")");

  validate_complement(spec.complement, m, "", c);
  validate_residues(spec, spec.residues, "", c);
  if (spec.alternate) {
    const std::string prefix = "alternate '" + spec.alternate->label + "': ";
    validate_complement(spec.alternate->complement, m, prefix, c);
    validate_residues(spec, spec.alternate->residues, prefix, c);
  }
  return c.take();
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

BettiVector resolve_residue(const ResidueSpaceInput& input, FieldTag field) {
  const int i = input.stratum;
  return std::visit(overloaded{
                        [&](const residue::Direct& d) { return retagged(d.betti, field).trimmed(); },
                        [&](const residue::TrivialTorus& t) {
                          return tensor(torus_betti(i, field), retagged(t.base_betti, field));
                        },
                        [&](const residue::CircleGysin& g) {
                          return gysin_circle(retagged(g.base_betti, field), g.cup_e_ranks);
                        },
                        [&](const residue::Points& p) { return scale(torus_betti(i, field), p.count); },
                    },
                    input.mode);
}

BettiVector resolve_complement(const ComplementInput& input, FieldTag field) {
  return std::visit(overloaded{
                        [&](const BettiVector& b) { return retagged(b, field).trimmed(); },
                        [&](const ComplementRecipe& r) {
                          return complement_betti({retagged(r.ambient_betti, field), retagged(r.locus_betti, field),
                                                   r.pushforward_ranks});
                        },
                    },
                    input);
}

}  // namespace ellcoh
