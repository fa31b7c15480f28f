#include "catch_amalgamated.hpp"

#include "ellcoh/local_model.hpp"
#include "support.hpp"

using namespace ellcoh;
using namespace ellcoh::local;
using ellcoh::testing::Rng;

namespace {

MultiVectorForm l_(int l, int i) { return MultiVectorForm::log_r(l, i); }
MultiVectorForm t_(int l, int i) { return MultiVectorForm::theta(l, i); }

// dlog r_J as a form, built by repeated wedging in increasing order
MultiVectorForm log_r_product(int l, const MultiIndex& J) {
  auto f = MultiVectorForm::one(l);
  for (int j : J) f = wedge(f, l_(l, j));
  return f;
}

MultiIndex indices_of(Monomial mask) {
  MultiIndex J;
  for (int j = 0; j < 32; ++j)
    if (mask & (1u << j)) J.push_back(j + 1);
  return J;
}

// Oracle for the right-hand side: sum over i of C(l, i) * C(l, k - i) by enumeration.
Dim vandermonde(int l, int k) {
  Dim total = 0;
  for (int i = 0; i <= l; ++i)
    if (k - i >= 0) total += testing::count_subsets(l, i) * testing::count_subsets(l, k - i);
  return total;
}

MultiVectorForm drop_log_r(const MultiVectorForm& f, Monomial J) {
  MultiVectorForm out(f.chart_number());
  for (const auto& [m, c] : f.terms())
    if ((m & J) == 0) out.add_term(m, c);
  return out;
}

}  // namespace

TEST_CASE("chart complex has binomial dimensions", "[local]") {
  CHECK(cohomology(build_local_complex(0)) == BettiVector{1});
  CHECK(build_local_complex(1).dims() == std::vector<Dim>{1, 2, 1});
  CHECK(cohomology(build_local_complex(1)) == BettiVector{1, 2, 1});
  CHECK(cohomology(build_local_complex(2)) == BettiVector{1, 4, 6, 4, 1});
  for (int l = 0; l <= 5; ++l) {
    const auto h = cohomology(build_local_complex(l));
    for (int k = 0; k <= 2 * l; ++k) CHECK(h[k] == testing::count_subsets(2 * l, k));
  }
}

TEST_CASE("wedge follows the canonical order", "[local]") {
  const int l = 2;
  const auto l1t1 = MultiVectorForm::monomial(l, bit({GeneratorKind::LogR, 1}, l) | bit({GeneratorKind::Theta, 1}, l));
  const auto l1t2 = MultiVectorForm::monomial(l, bit({GeneratorKind::LogR, 1}, l) | bit({GeneratorKind::Theta, 2}, l));
  CHECK(wedge(l_(l, 1), t_(l, 1)) == l1t1);
  CHECK(wedge(t_(l, 1), l_(l, 1)) == -l1t1);
  CHECK(wedge(l_(l, 1), l_(l, 1)).is_zero());
  CHECK(wedge(l_(l, 1) + t_(l, 2), l_(l, 1)) == -l1t2);
  CHECK(wedge(MultiVectorForm::one(l), t_(l, 2)) == t_(l, 2));
  CHECK_THROWS_AS(wedge(l_(1, 1), l_(2, 1)), Error);
}

TEST_CASE("radial residue", "[local]") {
  CHECK(radial_residue(wedge(l_(1, 1), t_(1, 1)), {1}) == t_(1, 1));
  CHECK(radial_residue(wedge(t_(2, 1), t_(2, 2)), {1}).is_zero());
  CHECK(radial_residue(wedge(wedge(l_(2, 1), l_(2, 2)), t_(2, 1)), {1, 2}) == t_(2, 1));
  // with l2 in front the reordering costs a sign
  CHECK(radial_residue(wedge(wedge(l_(2, 2), l_(2, 1)), t_(2, 1)), {1, 2}) == -t_(2, 1));
  // contraction by r_2 d/dr_2 on l1 ^ l2: move l2 to the front first
  CHECK(radial_residue(wedge(l_(2, 1), l_(2, 2)), {2}) == -l_(2, 1));

  for (const MultiIndex& bad : {MultiIndex{}, MultiIndex{2, 1}, MultiIndex{1, 1}, MultiIndex{3}, MultiIndex{0}}) {
    try {
      (void)radial_residue(l_(2, 1), bad);
      FAIL("expected BAD_MULTI_INDEX");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::BadMultiIndex);
    }
  }
}

TEST_CASE("decomposition map on generators", "[local]") {
  SECTION("constants land in piece 0") {
    const auto img = decomposition_map(MultiVectorForm::one(2));
    CHECK(img.piece(0) == MultiVectorForm::one(2));
    for (Monomial J : {1u, 2u, 3u}) CHECK(img.piece(J).is_zero());
  }
  SECTION("l1 ^ t2 lands in piece (1)") {
    const auto img = decomposition_map(wedge(l_(2, 1), t_(2, 2)));
    CHECK(img.piece(log_r_mask(MultiIndex{1})) == t_(2, 2));
    CHECK(img.piece(0).is_zero());
    CHECK(img.piece(log_r_mask(MultiIndex{2})).is_zero());
    CHECK(img.piece(log_r_mask(MultiIndex{1, 2})).is_zero());
  }
  SECTION("t1 on a one-chart is its own restriction") {
    const auto img = decomposition_map(t_(1, 1));
    CHECK(img.piece(0) == t_(1, 1));
    CHECK(img.piece(1).is_zero());
  }
}

TEST_CASE("local isomorphism verdicts", "[local]") {
  SECTION("l = 0") {
    const auto r = verify_local_isomorphism(0);
    CHECK(r.bijective());
    CHECK(r.lhs_betti() == BettiVector{1});
    CHECK(r.rhs_betti() == BettiVector{1});
  }
  SECTION("l = 1") {
    const auto r = verify_local_isomorphism(1);
    CHECK(r.injective);
    CHECK(r.surjective);
    CHECK(r.lhs_betti() == BettiVector{1, 2, 1});
    CHECK(r.rhs_betti() == BettiVector{1, 2, 1});
  }
  SECTION("l = 2") {
    const auto r = verify_local_isomorphism(2);
    CHECK(r.bijective());
    for (const auto& d : r.degrees) {
      CHECK(d.lhs_dim == testing::count_subsets(4, d.degree));
      CHECK(d.rhs_dim == vandermonde(2, d.degree));
      CHECK(d.injective);
      CHECK(d.surjective);
    }
  }
  SECTION("bound") {
    try {
      (void)verify_local_isomorphism(7);
      FAIL("expected BOUND_EXCEEDED");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::BoundExceeded);
    }
    CHECK(verify_local_isomorphism(7, 7).bijective());
    CHECK_THROWS_AS(verify_local_isomorphism(kMaxChartNumber + 1, 100), Error);
  }
}

TEST_CASE("Vandermonde: chart dimensions equal target dimensions", "[local]") {
  for (int l = 0; l <= 6; ++l) {
    const auto lhs = cohomology(build_local_complex(l));
    const auto rhs = decomposition_target(l).total_betti();
    CHECK(lhs == rhs);
    for (int k = 0; k <= 2 * l; ++k) {
      CHECK(lhs[k] == testing::count_subsets(2 * l, k));
      CHECK(rhs[k] == vandermonde(l, k));
    }
  }
}

TEST_CASE("decomposition map sends the monomial basis to signed unit vectors", "[local]") {
  // Rank-free bijectivity: each l_J ^ t_B hits exactly t_B in piece J with
  // coefficient 1, and distinct (J, B) hit distinct targets.
  for (int l = 0; l <= 4; ++l) {
    const Monomial full_theta = theta_mask(l);
    std::set<std::pair<Monomial, Monomial>> hit;
    for (Monomial J = 0; J < (1u << l); ++J) {
      for (Monomial B = 0; B <= full_theta; B += (1u << l)) {
        if ((B & ~full_theta) != 0) continue;
        const auto form = wedge(log_r_product(l, indices_of(J)), MultiVectorForm::monomial(l, B));
        const auto img = decomposition_map(form);
        for (const auto& [key, piece] : img.pieces) {
          if (key == J) {
            CHECK(piece == MultiVectorForm::monomial(l, B));
          } else {
            CHECK(piece.is_zero());
          }
        }
        hit.insert({J, B});
      }
    }
    CHECK(hit.size() == (std::size_t{1} << (2 * l)));
  }
}

TEST_CASE("wedge is graded-commutative and associative", "[local][property]") {
  Rng rng(7);
  for (int trial = 0; trial < 2000; ++trial) {
    const int l = static_cast<int>(testing::uniform(rng, 1, 4));
    const int p = static_cast<int>(testing::uniform(rng, 0, 2 * l));
    const int q = static_cast<int>(testing::uniform(rng, 0, 2 * l));
    const auto a = testing::random_form(rng, l, p, 3);
    const auto b = testing::random_form(rng, l, q, 3);
    const auto c = testing::random_form(rng, l, static_cast<int>(testing::uniform(rng, 0, 2)), 2);
    const Rational sign = (p * q) % 2 == 0 ? 1 : -1;
    CHECK(wedge(a, b) == sign * wedge(b, a));
    CHECK(wedge(wedge(a, b), c) == wedge(a, wedge(b, c)));
    const auto ab = wedge(a, b);
    if (!ab.is_zero()) CHECK(ab.degree() == p + q);
  }
}

TEST_CASE("radial residue is a left inverse of wedging with l_J", "[local][property]") {
  Rng rng(8);
  for (int trial = 0; trial < 2000; ++trial) {
    const int l = static_cast<int>(testing::uniform(rng, 1, 5));
    const auto mask = static_cast<Monomial>(testing::uniform(rng, 1, (1L << l) - 1));
    const auto J = indices_of(mask);
    const int degree = static_cast<int>(testing::uniform(rng, 0, 2 * l - static_cast<int>(J.size())));
    const auto beta = drop_log_r(testing::random_form(rng, l, degree, 4), mask);
    CHECK(radial_residue(wedge(log_r_product(l, J), beta), J) == beta);
  }
}

TEST_CASE("radial residue is linear and lowers degree by |J|", "[local][property]") {
  Rng rng(9);
  for (int trial = 0; trial < 1000; ++trial) {
    const int l = static_cast<int>(testing::uniform(rng, 1, 4));
    const auto mask = static_cast<Monomial>(testing::uniform(rng, 1, (1L << l) - 1));
    const auto J = indices_of(mask);
    const int degree = static_cast<int>(testing::uniform(rng, 0, 2 * l));
    const auto a = testing::random_form(rng, l, degree, 4);
    const auto b = testing::random_form(rng, l, degree, 4);
    const Rational s(testing::uniform(rng, -4, 4), testing::uniform(rng, 1, 3));
    CHECK(radial_residue(a + s * b, J) == radial_residue(a, J) + s * radial_residue(b, J));
    const auto r = radial_residue(a, J);
    if (!r.is_zero()) CHECK(r.degree() == degree - static_cast<int>(J.size()));
  }
}
