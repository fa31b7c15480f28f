#include "ellcoh/sequences.hpp"

#include <limits>

namespace ellcoh {

namespace {

constexpr Dim kUnbounded = std::numeric_limits<Dim>::max() / 4;

Dim add_sat(Dim a, Dim b) { return (a >= kUnbounded || b >= kUnbounded) ? kUnbounded : a + b; }
Dim sub_lo(Dim a, Dim b) {  // a - b where b may be unbounded: result only used as a lower bound
  if (a >= kUnbounded) return b >= kUnbounded ? 0 : kUnbounded;
  if (b >= kUnbounded) return std::numeric_limits<Dim>::min() / 4;
  return a - b;
}

struct Interval {
  Dim lo = 0;
  Dim hi = kUnbounded;
  bool fixed() const { return lo == hi; }
};

class Propagator {
 public:
  explicit Propagator(std::size_t n) : vars_(n) {}

  Interval& operator[](std::size_t i) { return vars_[i]; }

  bool raise_lo(std::size_t i, Dim v) {
    if (v <= vars_[i].lo) return false;
    vars_[i].lo = v;
    return true;
  }
  bool lower_hi(std::size_t i, Dim v) {
    if (v >= vars_[i].hi) return false;
    vars_[i].hi = v;
    return true;
  }

  // t = a + b
  bool sum(std::size_t t, std::size_t a, std::size_t b) {
    bool changed = false;
    changed |= raise_lo(t, add_sat(vars_[a].lo, vars_[b].lo));
    changed |= lower_hi(t, add_sat(vars_[a].hi, vars_[b].hi));
    changed |= raise_lo(a, sub_lo(vars_[t].lo, vars_[b].hi));
    changed |= raise_lo(b, sub_lo(vars_[t].lo, vars_[a].hi));
    if (vars_[t].hi < kUnbounded) {
      changed |= lower_hi(a, vars_[t].hi - vars_[b].lo);
      changed |= lower_hi(b, vars_[t].hi - vars_[a].lo);
    }
    return changed;
  }

  // r <= t
  bool bounded_by(std::size_t r, std::size_t t) {
    bool changed = lower_hi(r, vars_[t].hi);
    changed |= raise_lo(t, vars_[r].lo);
    return changed;
  }

  void check(const std::vector<std::string>& names) const {
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (vars_[i].lo > vars_[i].hi)
        throw Error(ErrorCode::Inconsistent, "no dimension assignment makes the sequence exact (at " +
                                                 names[i] + ")");
    }
  }

 private:
  std::vector<Interval> vars_;
};

std::string term_name(const SequenceSpec& spec, std::size_t j) {
  const auto& label = spec.terms[j].label;
  return label.empty() ? "T" + std::to_string(j) : label;
}

std::string rank_name(const SequenceSpec& spec, std::size_t j) {
  return "rank(" + term_name(spec, j) + " -> " + term_name(spec, j + 1) + ")";
}

}  // namespace

SequenceSpec& SequenceSpec::then(SequenceTerm term, std::optional<Dim> incoming_rank) {
  if (!terms.empty()) map_ranks.push_back(incoming_rank);
  terms.push_back(std::move(term));
  return *this;
}

SequenceSolution solve_exact(const SequenceSpec& spec) {
  const std::size_t n = spec.terms.size();
  if (n < 2) throw Error(ErrorCode::DimensionMismatch, "an exact sequence needs at least the two zero ends");
  if (spec.map_ranks.size() != n - 1)
    throw Error(ErrorCode::DimensionMismatch, "need exactly one rank slot per arrow");
  if (spec.terms.front().dim != Dim{0} || spec.terms.back().dim != Dim{0})
    throw Error(ErrorCode::DimensionMismatch, "sequence must begin and end with the zero space");

  std::vector<std::string> names;
  for (std::size_t j = 0; j < n; ++j) names.push_back(term_name(spec, j));
  for (std::size_t j = 0; j + 1 < n; ++j) names.push_back(rank_name(spec, j));

  const auto rank_var = [n](std::size_t j) { return n + j; };
  Propagator p(2 * n - 1);
  for (std::size_t j = 0; j < n; ++j) {
    if (auto d = spec.terms[j].dim) {
      if (*d < 0) throw Error(ErrorCode::DimensionMismatch, "negative dimension at " + names[j]);
      p[j] = {*d, *d};
    }
  }
  for (std::size_t j = 0; j + 1 < n; ++j) {
    if (auto r = spec.map_ranks[j]) {
      if (*r < 0) throw Error(ErrorCode::DimensionMismatch, "negative rank at " + names[rank_var(j)]);
      p[rank_var(j)] = {*r, *r};
    }
  }

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t j = 0; j + 1 < n; ++j) {
      changed |= p.bounded_by(rank_var(j), j);
      changed |= p.bounded_by(rank_var(j), j + 1);
    }
    for (std::size_t j = 1; j + 1 < n; ++j) changed |= p.sum(j, rank_var(j - 1), rank_var(j));
    p.check(names);
  }

  SequenceSolution sol;
  sol.dims.resize(n);
  sol.ranks.resize(n - 1);
  for (std::size_t j = 0; j < n; ++j) {
    if (p[j].fixed()) sol.dims[j] = p[j].lo;
    else sol.free_unknowns.push_back(names[j]);
  }
  for (std::size_t j = 0; j + 1 < n; ++j) {
    if (p[rank_var(j)].fixed()) sol.ranks[j] = p[rank_var(j)].lo;
    else sol.free_unknowns.push_back(names[rank_var(j)]);
  }
  return sol;
}

SequenceSolution solve_exact_complete(const SequenceSpec& spec) {
  auto sol = solve_exact(spec);
  if (!sol.complete()) {
    std::string list;
    for (const auto& u : sol.free_unknowns) list += (list.empty() ? "" : ", ") + u;
    throw Error(ErrorCode::Underdetermined, "not forced by exactness: " + list);
  }
  return sol;
}

std::string check_degree_ranks(const DegreeRanks& ranks, const BettiVector& source, int source_offset,
                               const BettiVector& target, int target_offset, const std::string& what) {
  for (const auto& [k, r] : ranks) {
    const Dim bound = std::min(source[k + source_offset], target[k + target_offset]);
    if (r < 0 || r > bound)
      return what + " rank " + std::to_string(r) + " at degree " + std::to_string(k) + " outside [0, " +
             std::to_string(bound) + "]";
  }
  return {};
}

SequenceSpec gysin_sequence(const BettiVector& base, const DegreeRanks& cup_e_ranks) {
  const auto rank_at = [&](int k) -> Dim {
    auto it = cup_e_ranks.find(k);
    return it == cup_e_ranks.end() ? 0 : it->second;
  };
  const auto B = [&](int k) { return "H^" + std::to_string(k) + "(B)"; };
  const int top = base.top_degree();

  // ... -> H^k(B) -> H^k(P) -> H^{k-1}(B) --cup e--> H^{k+1}(B) -> ...
  SequenceSpec seq;
  seq.then(SequenceTerm::known(0, "0"));
  for (int k = 0; k <= top + 1; ++k) {
    seq.then(SequenceTerm::known(base[k], B(k)), k == 0 ? std::optional<Dim>{0} : std::optional<Dim>{rank_at(k - 2)});
    seq.then(SequenceTerm::unknown("H^" + std::to_string(k) + "(P)"));
    seq.then(SequenceTerm::known(base[k - 1], k == 0 ? "0" : B(k - 1)));
  }
  seq.then(SequenceTerm::known(0, "0"), Dim{0});
  return seq;
}

BettiVector gysin_circle(const BettiVector& base, const DegreeRanks& cup_e_ranks) {
  if (auto msg = check_degree_ranks(cup_e_ranks, base, 0, base, 2, "cup e"); !msg.empty())
    throw Error(ErrorCode::RankOutOfRange, msg);
  if (base.is_zero()) return {{}, base.field};

  const auto sol = solve_exact_complete(gysin_sequence(base, cup_e_ranks));
  std::vector<Dim> out;
  for (int k = 0; k <= base.top_degree() + 1; ++k) out.push_back(*sol.dims[static_cast<std::size_t>(3 * k + 2)]);
  return BettiVector(std::move(out), base.field).trimmed();
}

SequenceSpec complement_sequence(const ComplementRecipe& recipe) {
  const auto& M = recipe.ambient_betti;
  const auto& D = recipe.locus_betti;
  const auto rank_at = [&](int k) -> Dim {
    auto it = recipe.pushforward_ranks.find(k);
    return it == recipe.pushforward_ranks.end() ? 0 : it->second;
  };
  const int last = std::max(M.top_degree(), D.top_degree() + 1);

  // ... -> H^{k-2}(D) -> H^k(M) -> H^k(M\D) -> H^{k-1}(D) -> H^{k+1}(M) -> ...
  SequenceSpec seq;
  seq.then(SequenceTerm::known(0, "0"));
  for (int k = 0; k <= last; ++k) {
    seq.then(SequenceTerm::known(M[k], "H^" + std::to_string(k) + "(M)"),
             k == 0 ? std::optional<Dim>{0} : std::optional<Dim>{rank_at(k)});
    seq.then(SequenceTerm::unknown("H^" + std::to_string(k) + "(M\\D)"));
    seq.then(SequenceTerm::known(D[k - 1], k == 0 ? "0" : "H^" + std::to_string(k - 1) + "(D)"));
  }
  seq.then(SequenceTerm::known(0, "0"), Dim{0});
  return seq;
}

BettiVector complement_betti(const ComplementRecipe& recipe) {
  if (recipe.ambient_betti.field != recipe.locus_betti.field)
    throw Error(ErrorCode::FieldMismatch, "ambient and locus Betti numbers over different fields");
  if (auto msg = check_degree_ranks(recipe.pushforward_ranks, recipe.locus_betti, -2, recipe.ambient_betti, 0,
                                    "pushforward");
      !msg.empty())
    throw Error(ErrorCode::RankOutOfRange, msg);
  if (recipe.ambient_betti.is_zero() && recipe.locus_betti.is_zero()) return {{}, recipe.ambient_betti.field};

  const auto seq = complement_sequence(recipe);
  const auto sol = solve_exact_complete(seq);
  const int last = std::max(recipe.ambient_betti.top_degree(), recipe.locus_betti.top_degree() + 1);
  std::vector<Dim> out;
  for (int k = 0; k <= last; ++k) out.push_back(*sol.dims[static_cast<std::size_t>(3 * k + 2)]);
  return BettiVector(std::move(out), recipe.ambient_betti.field).trimmed();
}

}  // namespace ellcoh
