#include <gtest/gtest.h>

#include <random>

#include "reflexlab/catalog.hpp"
#include "reflexlab/group_algebra.hpp"

using namespace reflexlab;

namespace {

AlgebraElement random_element(std::shared_ptr<const Group> g, std::mt19937_64& rng, std::size_t terms) {
  AlgebraElement a(g);
  for (std::size_t k = 0; k < terms; ++k) a.add_term(rng() % g->order(), random_small_rational(rng));
  return a;
}

// N_{Phi_f(I)*}(a) at tau, straight from the defining sum.
Rational star_half_norm_literal(const CMGroup& cm, CMType f, Bits subset, const RationalFunction& a, std::size_t tau) {
  const Group& g = cm.group();
  Rational sum = 0;
  for (std::size_t psi : left_cosets(g, reflex_subgroup(cm, f)).reps) {
    const Rational v = a.values[g.multiply(tau, psi)];
    sum += parity(cocycle(cm, f, g.element(psi)) & subset) ? -v : v;
  }
  return sum / 2;
}

}  // namespace

TEST(AlgebraElement, RingAxioms) {
  auto cm = build_hyperoctahedral(3);
  auto g = cm.shared_group();
  std::mt19937_64 rng(2);
  for (int k = 0; k < 20; ++k) {
    auto a = random_element(g, rng, 5), b = random_element(g, rng, 5), c = random_element(g, rng, 5);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(AlgebraElement::identity(g) * a, a);
    EXPECT_TRUE((a - a).is_zero());
  }
}

TEST(AlgebraElement, IdempotentsAndNorms) {
  auto cm = build_dihedral(4);
  auto g = cm.shared_group();
  for (const auto& s : {cm.h(), cm.h0(), reflex_subgroup(cm, {0}), g->all()}) {
    auto e = idempotent(g, s);
    EXPECT_EQ(e * e, e);
    EXPECT_EQ(norm_element(g, s) * e, Rational(static_cast<long>(g->order() / s.size())) * idempotent(g, g->all()));
  }
}

TEST(SignedQuotient, IotaActsAsMinusOne) {
  auto cm = build_hyperoctahedral(2);
  auto g = cm.shared_group();
  auto iota = in_quotient(cm, AlgebraElement::basis(g, cm.iota()));
  auto minus_one = in_quotient(cm, AlgebraElement::basis(g, g->identity(), -1));
  EXPECT_EQ(iota, minus_one);
  EXPECT_TRUE(in_quotient(cm, AlgebraElement::identity(g) + AlgebraElement::basis(g, cm.iota())).is_zero());
}

TEST(HalfNorm, ElementHasNTermsAndSplitsTheNorm) {
  for (const auto& entry : standard_catalog()) {
    auto rep = verify_prop_2N1(entry.cm);
    EXPECT_TRUE(rep.passed) << entry.name << ": " << (rep.failures.empty() ? "" : rep.failures.front());
  }
}

TEST(HalfNorm, TwistedFormsReduceToHalfSums) {
  // Modulo iota = -1 the iota-twisted sums equal the half-sum forms on M^S.
  for (const auto& entry : standard_catalog()) {
    const auto& cm = entry.cm;
    auto g = cm.shared_group();
    for (CMType f : lambda_representatives(cm))
      for (Bits subset : jodd_representatives(cm)) {
        auto e_h = idempotent(g, h_of_subset(cm, subset));
        EXPECT_EQ(in_quotient(cm, half_norm_I_twisted(cm, f, subset) * e_h), in_quotient(cm, half_norm_I(cm, f, subset) * e_h))
            << entry.name;
        auto e_star = idempotent(g, reflex_subgroup(cm, f));
        EXPECT_EQ(in_quotient(cm, half_norm_I_star_twisted(cm, f, subset) * e_star), in_quotient(cm, half_norm_I_star(cm, f, subset) * e_star))
            << entry.name;
      }
  }
}

TEST(Lemmas, Eq1AndEq2OnSmallGroups) {
  for (const auto& cm : {build_hyperoctahedral(2), build_hyperoctahedral(3), build_iota_times_g0(3, {cycle_perm(3)}), build_dihedral(4)}) {
    for (Bits a : jodd_representatives(cm))
      for (Bits b : jodd_representatives(cm)) {
        auto rep = verify_lemma_eq1(cm, a, b);
        EXPECT_TRUE(rep.passed) << (rep.failures.empty() ? "" : rep.failures.front());
      }
    for (CMType a : lambda_representatives(cm))
      for (CMType b : lambda_representatives(cm)) {
        auto rep = verify_lemma_eq2(cm, a, b);
        EXPECT_TRUE(rep.passed) << (rep.failures.empty() ? "" : rep.failures.front());
      }
  }
}

TEST(Lemmas, OffDiagonalBlocksVanishOnlyModuloIota) {
  auto cm = build_hyperoctahedral(3);
  const auto jodd = jodd_representatives(cm);
  ASSERT_EQ(jodd.size(), 2u);
  auto lhs = lemma_eq1_lhs(cm, jodd[0], jodd[1]);
  EXPECT_FALSE(lhs.is_zero());
  EXPECT_TRUE(in_quotient(cm, lhs).is_zero());
}

TEST(Proposition, GeneralFormOnCatalog) {
  for (const auto& entry : standard_catalog()) {
    if (entry.cm.degree() > 6) continue;
    auto rep = verify_prop_2N1_general(entry.cm);
    EXPECT_TRUE(rep.passed) << entry.name << ": " << (rep.failures.empty() ? "" : rep.failures.front());
  }
}

TEST(Eq3, TransformMatchesLiteralHalfNorms) {
  std::mt19937_64 rng(4);
  for (const auto& cm : {build_hyperoctahedral(3), build_dihedral(4)}) {
    const Group& g = cm.group();
    for (CMType f : lambda_representatives(cm)) {
      auto a = random_invariant_function(g, left_cosets(g, reflex_subgroup(cm, f)), rng);
      auto all = star_half_norms_all_subsets(cm, f, a);
      for (std::size_t subset = 0; subset < all.size(); ++subset) {
        EXPECT_EQ(all[subset], apply_element(half_norm_I_star(cm, f, static_cast<Bits>(subset)), a));
        for (std::size_t tau = 0; tau < g.order(); tau += 5)
          EXPECT_EQ(all[subset].values[tau], star_half_norm_literal(cm, f, static_cast<Bits>(subset), a, tau));
      }
    }
  }
}

TEST(Eq3, CorrelationMatchesLiteralSum) {
  std::mt19937_64 rng(8);
  auto cm = build_hyperoctahedral(3);
  const Group& g = cm.group();
  const std::size_t count = 8;
  for (const auto& [f, fp] : lemma_eq3_pairs(cm)) {
    auto a = random_invariant_function(g, left_cosets(g, reflex_subgroup(cm, f)), rng);
    auto b = random_invariant_function(g, left_cosets(g, reflex_subgroup(cm, fp)), rng);
    auto na = star_half_norms_all_subsets(cm, f, a);
    auto nb = star_half_norms_all_subsets(cm, fp, b);
    auto fast = lemma_eq3_lhs(cm, f, fp, na, nb);
    for (std::size_t ip = 0; ip < count; ++ip) {
      RationalFunction literal(g.order());
      for (std::size_t i = 0; i < count; ++i) {
        const std::size_t j = i ^ ip;
        auto term = na[i] * nb[j];
        if (parity(f.bits & static_cast<Bits>(i)) ^ parity(fp.bits & static_cast<Bits>(j))) term.scale(Rational(-1));
        literal += term;
      }
      EXPECT_EQ(fast[ip], literal);
    }
  }
}

TEST(Eq3, LemmaHoldsOnSmallGroups) {
  for (const auto& cm : {build_hyperoctahedral(2), build_hyperoctahedral(3), build_iota_times_g0(3, {cycle_perm(3), transposition(3, 0, 1)}),
                         build_dihedral(4)}) {
    auto rep = verify_lemma_eq3(cm, 20, 99);
    EXPECT_TRUE(rep.passed) << (rep.failures.empty() ? "" : rep.failures.front());
    EXPECT_GE(rep.details["draws"].get<std::size_t>(), 20u);
    EXPECT_GT(rep.details["same_orbit_draws"].get<std::size_t>(), 0u);
  }
}

TEST(Eq3, IsomorphismRank) {
  for (const auto& entry : standard_catalog()) {
    auto rep = verify_eq3_isomorphism(entry.cm);
    EXPECT_TRUE(rep.passed) << entry.name;
    EXPECT_EQ(rep.details["rank"].get<std::size_t>(), std::size_t{1} << (entry.cm.degree() - 1));
  }
}
