#pragma once

// Test-only helpers: random generators, brute-force oracles, and a
// subprocess runner for the CLI.  Nothing here calls into the code paths it
// is used to check.

#include <array>
#include <cstdio>
#include <random>
#include <string>
#include <sys/wait.h>
#include <utility>
#include <variant>
#include <vector>

#include "ellcoh/divisor.hpp"
#include "ellcoh/exactq.hpp"
#include "ellcoh/local_model.hpp"
#include "ellcoh/sequences.hpp"

namespace ellcoh::testing {

using Rng = std::mt19937_64;

inline long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

inline BettiVector random_betti(Rng& rng, int max_len, long max_dim) {
  std::vector<Dim> dims(static_cast<std::size_t>(uniform(rng, 0, max_len)));
  for (auto& d : dims) d = uniform(rng, 0, max_dim);
  return {dims};
}

/// Number of k-element subsets of an n-element set, by enumeration.
inline Dim count_subsets(int n, int k) {
  Dim count = 0;
  for (unsigned m = 0; m < (1u << n); ++m)
    if (__builtin_popcount(m) == k) ++count;
  return count;
}

// Closed-form oracles.  These restate the kernel/cokernel bookkeeping by hand
// and never call the solvers.

inline Dim at(const BettiVector& b, int k) { return k < 0 ? 0 : b[k]; }
inline Dim at(const DegreeRanks& r, int k) {
  auto it = r.find(k);
  return it == r.end() ? 0 : it->second;
}

/// H^k(P) = coker(e: H^{k-2} -> H^k) + ker(e: H^{k-1} -> H^{k+1}).
inline std::vector<Dim> gysin_oracle(const BettiVector& base, const DegreeRanks& r) {
  std::vector<Dim> out;
  for (int k = 0; k <= static_cast<int>(base.dims.size()); ++k)
    out.push_back((at(base, k) - at(r, k - 2)) + (at(base, k - 1) - at(r, k - 1)));
  return out;
}

/// H^k(M \ D) = coker(H^{k-2}(D) -> H^k(M)) + ker(H^{k-1}(D) -> H^{k+1}(M)), ranks keyed by target degree.
inline std::vector<Dim> complement_oracle(const ComplementRecipe& c) {
  std::vector<Dim> out;
  const int top = static_cast<int>(std::max(c.ambient_betti.dims.size(), c.locus_betti.dims.size() + 2));
  for (int k = 0; k < top; ++k)
    out.push_back((at(c.ambient_betti, k) - at(c.pushforward_ranks, k)) +
                  (at(c.locus_betti, k - 1) - at(c.pushforward_ranks, k + 1)));
  return out;
}

/// Kunneth with T^i by convolution against subset counts.
inline std::vector<Dim> torus_product_oracle(int i, const BettiVector& base) {
  std::vector<Dim> out(base.dims.size() + static_cast<std::size_t>(i), 0);
  for (std::size_t k = 0; k < out.size(); ++k)
    for (int j = 0; j <= i; ++j)
      if (k >= static_cast<std::size_t>(j) && k - j < base.dims.size())
        out[k] += count_subsets(i, j) * base.dims[k - j];
  return out;
}

inline std::vector<Dim> residue_oracle(const ResidueSpaceInput& r) {
  const int i = r.stratum;
  if (const auto* d = std::get_if<residue::Direct>(&r.mode)) return d->betti.dims;
  if (const auto* t = std::get_if<residue::TrivialTorus>(&r.mode)) return torus_product_oracle(i, t->base_betti);
  if (const auto* g = std::get_if<residue::CircleGysin>(&r.mode)) return gysin_oracle(g->base_betti, g->cup_e_ranks);
  std::vector<Dim> out;
  const Dim count = std::get<residue::Points>(r.mode).count;
  for (int k = 0; k <= i; ++k) out.push_back(count * count_subsets(i, k));
  return out;
}

inline std::vector<Dim> complement_input_oracle(const ComplementInput& c) {
  if (const auto* b = std::get_if<BettiVector>(&c)) return b->dims;
  return complement_oracle(std::get<ComplementRecipe>(c));
}

/// H^k(A) = H^k(M \ D) + sum_i H^{k-i}_res, added up entry by entry.
inline std::vector<Dim> algebroid_oracle(const DivisorSpec& s) {
  std::vector<Dim> out = complement_input_oracle(s.complement);
  for (const auto& r : s.residues) {
    const auto res = residue_oracle(r);
    for (std::size_t k = 0; k < res.size(); ++k) {
      const std::size_t target = k + static_cast<std::size_t>(r.stratum);
      if (out.size() <= target) out.resize(target + 1, 0);
      out[target] += res[k];
    }
  }
  return out;
}

/// Elementary row operation: row `target` += factor * row `source`.
struct ElementaryOp {
  Eigen::Index target;
  Eigen::Index source;
  Rational factor;
};

inline std::vector<ElementaryOp> random_ops(Rng& rng, Eigen::Index n, int count) {
  std::vector<ElementaryOp> ops;
  if (n < 2) return ops;
  for (int i = 0; i < count; ++i) {
    const auto a = static_cast<Eigen::Index>(uniform(rng, 0, n - 1));
    auto b = static_cast<Eigen::Index>(uniform(rng, 0, n - 2));
    if (b >= a) ++b;
    ops.push_back({a, b, Rational(uniform(rng, -3, 3), uniform(rng, 1, 3))});
  }
  return ops;
}

/// P * m where P = E_last ... E_first.
inline RationalMatrix apply_rows(RationalMatrix m, const std::vector<ElementaryOp>& ops) {
  for (const auto& op : ops) m.row(op.target) += op.factor * m.row(op.source);
  return m;
}

/// m * P^{-1} for the same P: right multiplication by each E^{-1} in order.
inline RationalMatrix apply_inverse_cols(RationalMatrix m, const std::vector<ElementaryOp>& ops) {
  for (const auto& op : ops) m.col(op.source) -= op.factor * m.col(op.target);
  return m;
}

/// Cochain complex with prescribed cohomology h and boundary ranks b (b[0] = 0):
/// V_k = H_k + B_k + C_k with C_k mapped isomorphically onto B_{k+1}, then
/// scrambled by a random change of basis in every degree.
struct PlantedComplex {
  RationalComplex complex;
  std::vector<Dim> cohomology;
};

inline PlantedComplex planted_complex(Rng& rng, int length, long max_dim) {
  std::vector<Dim> h(static_cast<std::size_t>(length)), b(static_cast<std::size_t>(length) + 1, 0);
  for (int k = 0; k < length; ++k) h[static_cast<std::size_t>(k)] = uniform(rng, 0, max_dim);
  for (int k = 1; k < length; ++k) b[static_cast<std::size_t>(k)] = uniform(rng, 0, max_dim);
  std::vector<Dim> dims(static_cast<std::size_t>(length));
  for (int k = 0; k < length; ++k) {
    const auto K = static_cast<std::size_t>(k);
    dims[K] = h[K] + b[K] + b[K + 1];
  }
  std::vector<std::vector<ElementaryOp>> ops;
  for (int k = 0; k < length; ++k) ops.push_back(random_ops(rng, dims[static_cast<std::size_t>(k)], 12));

  std::vector<RationalMatrix> ds;
  for (int k = 0; k + 1 < length; ++k) {
    const auto K = static_cast<std::size_t>(k);
    RationalMatrix d = RationalMatrix::Zero(dims[K + 1], dims[K]);
    // C_k sits after H_k and B_k; B_{k+1} sits after H_{k+1}
    for (Dim j = 0; j < b[K + 1]; ++j) d(h[K + 1] + j, h[K] + b[K] + j) = 1;
    ds.push_back(apply_inverse_cols(apply_rows(d, ops[K + 1]), ops[K]));
  }
  return {RationalComplex(0, dims, ds), h};
}

/// Random exact sequence 0 -> T_1 -> ... -> T_{n-2} -> 0 from random ranks:
/// returns dims (with the zero ends) and map ranks.
struct PlantedSequence {
  std::vector<Dim> dims;
  std::vector<Dim> ranks;
};

inline PlantedSequence planted_sequence(Rng& rng, int interior, long max_rank) {
  PlantedSequence s;
  const int n = interior + 2;
  s.ranks.assign(static_cast<std::size_t>(n - 1), 0);
  for (int j = 1; j + 1 < n - 1; ++j) s.ranks[static_cast<std::size_t>(j)] = uniform(rng, 0, max_rank);
  s.dims.assign(static_cast<std::size_t>(n), 0);
  for (int j = 1; j + 1 < n; ++j) {
    const auto J = static_cast<std::size_t>(j);
    s.dims[J] = s.ranks[J - 1] + s.ranks[J];
  }
  return s;
}

/// Realizes a planted sequence as actual matrices (an acyclic complex).
inline RationalComplex realize_sequence(Rng& rng, const PlantedSequence& s) {
  const std::size_t n = s.dims.size();
  std::vector<std::vector<ElementaryOp>> ops;
  for (std::size_t j = 0; j < n; ++j) ops.push_back(random_ops(rng, s.dims[j], 8));
  std::vector<RationalMatrix> ds;
  for (std::size_t j = 0; j + 1 < n; ++j) {
    // T_j = K_j + C_j with dim K_j = r_{j-1}; C_j -> K_{j+1} is the identity
    RationalMatrix d = RationalMatrix::Zero(s.dims[j + 1], s.dims[j]);
    const Dim kernel = j == 0 ? 0 : s.ranks[j - 1];
    for (Dim i = 0; i < s.ranks[j]; ++i) d(i, kernel + i) = 1;
    ds.push_back(apply_inverse_cols(apply_rows(d, ops[j + 1]), ops[j]));
  }
  return RationalComplex(0, s.dims, ds);
}

/// Random form on a chart: `terms` random monomials of the given degree with
/// small rational coefficients.
inline local::MultiVectorForm random_form(Rng& rng, int l, int degree, int terms) {
  local::MultiVectorForm f(l);
  const auto basis = local::degree_basis(l, degree);
  if (basis.empty()) return f;
  for (int t = 0; t < terms; ++t) {
    const auto m = basis[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(basis.size()) - 1))];
    f.add_term(m, Rational(uniform(rng, -5, 5), uniform(rng, 1, 4)));
  }
  return f;
}

inline BettiVector random_supported(Rng& rng, int max_degree, long max_dim) {
  if (max_degree < 0) return {};
  return random_betti(rng, max_degree + 1, max_dim);
}

/// Random cup-with-Euler-class ranks that fit the base.
inline DegreeRanks random_cup_ranks(Rng& rng, const BettiVector& base) {
  DegreeRanks r;
  for (int k = 0; k + 2 < static_cast<int>(base.dims.size()); ++k)
    if (uniform(rng, 0, 1)) r[k] = uniform(rng, 0, std::min(base[k], base[k + 2]));
  return r;
}

/// Random residue of torus type for stratum i of an m-manifold.
inline ResidueSpaceInput random_torus_residue(Rng& rng, int m, int i) {
  ResidueSpaceInput r;
  r.stratum = i;
  const long choice = uniform(rng, 0, 2);
  if (m == 2 * i && choice == 0) {
    r.mode = residue::Points{uniform(rng, 0, 5)};
  } else if (i == 1 && choice == 1) {
    const auto base = random_supported(rng, m - 2, 3);
    r.mode = residue::CircleGysin{base, random_cup_ranks(rng, base)};
  } else {
    r.mode = residue::TrivialTorus{random_supported(rng, m - 2 * i, 3)};
  }
  return r;
}

/// Valid spec whose residues are all torus-type spaces.
inline DivisorSpec random_torus_spec(Rng& rng, int max_m) {
  DivisorSpec s;
  s.name = "random";
  s.ambient_dim = static_cast<int>(uniform(rng, 0, max_m));
  s.intersection_number = static_cast<int>(uniform(rng, 0, s.ambient_dim / 2));
  s.complement = random_supported(rng, s.ambient_dim, 4);
  for (int i = 1; i <= s.intersection_number; ++i) s.residues.push_back(random_torus_residue(rng, s.ambient_dim, i));
  return s;
}

/// Valid four-manifold spec accepted by both assembly routes.
inline DivisorSpec random_dim4_spec(Rng& rng) {
  DivisorSpec s;
  s.name = "random-dim4";
  s.ambient_dim = 4;
  s.intersection_number = static_cast<int>(uniform(rng, 0, 2));
  s.flags.global_normal_crossing = uniform(rng, 0, 1) == 1;
  if (uniform(rng, 0, 3) == 0) {
    ComplementRecipe recipe;
    recipe.ambient_betti = random_supported(rng, 4, 3);
    recipe.locus_betti = random_supported(rng, 2, 3);
    for (int k = 2; k < static_cast<int>(recipe.ambient_betti.dims.size()); ++k)
      recipe.pushforward_ranks[k] = uniform(rng, 0, std::min(recipe.locus_betti[k - 2], recipe.ambient_betti[k]));
    s.complement = recipe;
  } else {
    s.complement = random_supported(rng, 4, 4);
  }
  if (s.intersection_number >= 1) {
    ResidueSpaceInput r;
    r.stratum = 1;
    switch (uniform(rng, 0, 2)) {
      case 0: r.mode = residue::Direct{random_supported(rng, 3, 3)}; break;
      case 1: r.mode = residue::TrivialTorus{random_supported(rng, 2, 3)}; break;
      default: {
        const auto base = random_supported(rng, 2, 3);
        r.mode = residue::CircleGysin{base, random_cup_ranks(rng, base)};
      }
    }
    s.residues.push_back(r);
  }
  if (s.intersection_number == 2) {
    ResidueSpaceInput r;
    r.stratum = 2;
    r.mode = residue::Points{uniform(rng, 0, 6)};
    s.residues.push_back(r);
  }
  return s;
}

struct CommandResult {
  int exit_code = -1;
  std::string output;
};

inline CommandResult run(const std::string& command) {
  CommandResult result;
  FILE* pipe = popen((command + " 2>&1").c_str(), "r");
  if (pipe == nullptr) return result;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) result.output.append(buf.data(), n);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

}  // namespace ellcoh::testing
