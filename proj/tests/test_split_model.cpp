#include <gtest/gtest.h>

#include <random>

#include "reflexlab/catalog.hpp"
#include "reflexlab/split_model.hpp"

using namespace reflexlab;

namespace {

SplitParams params_of(std::initializer_list<long> e) {
  SplitParams p;
  for (long v : e) p.e.push_back(Rational(v));
  return p;
}

// phi_Lambda coefficient of v_I at tau from the defining double sum.
Gaussian phi_literal(const CMGroup& cm, const SplitParams& p, const std::vector<LambdaComponent>& a, Bits subset, std::size_t tau) {
  const Group& g = cm.group();
  Gaussian sum;
  for (const auto& comp : a)
    for (std::size_t psi : left_cosets(g, reflex_subgroup(cm, comp.type)).reps) {
      Gaussian v = comp.value.values[g.multiply(tau, psi)];
      if (parity(cocycle(cm, comp.type, g.element(psi)) & subset) ^ parity(comp.type.bits & subset)) v = -v;
      sum += v;
    }
  Gaussian denom(1);
  for (std::size_t i = 0; i < cm.degree(); ++i)
    if (test_bit(subset, i)) denom *= s_element(cm, p, i).values[tau];
  return sum * Gaussian(pow2(-static_cast<int>(cm.degree()))) / denom;
}

}  // namespace

TEST(SElement, SquaresAndConjugation) {
  for (const auto& cm : {build_hyperoctahedral(3), build_dihedral(4)}) {
    auto p = params_of({1, 2, 3, 5});
    p.e.resize(cm.degree());
    auto iota_shift = [&](const GaussianFunction& x) { return act(cm.group(), cm.iota(), x); };
    for (std::size_t i = 0; i < cm.degree(); ++i) {
      auto s = s_element(cm, p, i);
      auto d = d_element(cm, p, i);
      for (std::size_t tau = 0; tau < cm.order(); ++tau) EXPECT_EQ(s[tau] * s[tau], Gaussian(-d[cm.g0_index(tau)]));
      EXPECT_EQ(iota_shift(s), GaussianFunction(std::vector<Gaussian>(cm.order())) - s);
      EXPECT_EQ(conjugate(s), iota_shift(s));
    }
  }
}

TEST(SElement, GaloisPermutesPositions) {
  // (sigma . s_i)_tau = s_i(tau sigma) and D_i(sigma) = d_{sigma(i)}.
  auto cm = build_hyperoctahedral(3);
  auto p = params_of({2, 3, 7});
  for (std::size_t k = 0; k < cm.g0().size(); ++k) {
    const auto& sigma = cm.g0()[k];
    for (std::size_t i = 0; i < 3; ++i) {
      const Rational e = p.e[sigma.image(i)];
      EXPECT_EQ(d_element(cm, p, i)[k], e * e);
    }
  }
  EXPECT_THROW(s_element(cm, params_of({1, 2}), 0), InputError);
  EXPECT_THROW(s_element(cm, params_of({1, 0, 2}), 0), InputError);
}

TEST(FixedSubalgebra, Dimensions) {
  auto cm = build_hyperoctahedral(2);
  const Group& g = cm.group();
  EXPECT_EQ(fixed_subalgebra_basis(cm, g.all()).size(), 1u);
  EXPECT_EQ(fixed_subalgebra_basis(cm, {g.identity()}).size(), g.order());
  EXPECT_EQ(fixed_subalgebra_basis(cm, reflex_subgroup(cm, {0})).size(), 4u);
  for (const auto& v : fixed_subalgebra_basis(cm, cm.h())) {
    EXPECT_TRUE(is_invariant(g, cm.h(), v));
    EXPECT_EQ(act(g, cm.iota(), v), conjugate(v));
  }
}

TEST(FixedSubalgebra, CoordinatesRoundTrip) {
  auto cm = build_dihedral(4);
  const auto h = reflex_subgroup(cm, {0});
  const auto basis = fixed_subalgebra_basis(cm, h);
  std::mt19937_64 rng(6);
  GaussianFunction x(cm.order());
  std::vector<Rational> coords;
  for (const auto& b : basis) {
    coords.push_back(random_small_rational(rng));
    auto term = b;
    term.scale(Gaussian(coords.back()));
    x += term;
  }
  EXPECT_EQ(fixed_subalgebra_coordinates(cm, h, x), coords);
}

TEST(TraceToQ, ExamplesAndErrors) {
  auto cm = build_hyperoctahedral(2);
  const Group& g = cm.group();
  auto one = GaussianFunction::constant(g.order(), Gaussian(1));
  EXPECT_EQ(trace_to_Q(cm, one, cm.h()), Gaussian(static_cast<long>(g.order() / cm.h().size())));
  EXPECT_EQ(trace_to_Q(cm, one, g.all()), Gaussian(1));
  GaussianFunction spike(g.order());
  spike[1] = 1;
  EXPECT_THROW(trace_to_Q(cm, spike, cm.h()), InputError);
  // Independent of the coset representatives: compare with 1/|S| sum over G.
  for (const auto& v : fixed_subalgebra_basis(cm, cm.h())) {
    Gaussian total;
    for (const auto& x : v.values) total += x;
    EXPECT_EQ(trace_to_Q(cm, v, cm.h()), total * Gaussian(make_rational(1, static_cast<long>(cm.h().size()))));
  }
}

TEST(PfisterSpace, MultiplicationRule) {
  auto cm = build_hyperoctahedral(3);
  auto p = params_of({1, 2, 3});
  PfisterSpace space(cm, p);
  std::vector<RElement> d;
  for (std::size_t i = 0; i < 3; ++i) d.push_back(d_element(cm, p, i));
  for (Bits a = 0; a < 8; ++a)
    for (Bits b = 0; b < 8; ++b) {
      auto prod = space.multiply(space.basis(a), space.basis(b));
      for (std::size_t s = 0; s < cm.g0().size(); ++s) {
        Rational expected = 1;
        for (std::size_t i = 0; i < 3; ++i)
          if (test_bit(a & b, i)) expected *= -d[i][s];
        for (Bits c = 0; c < 8; ++c) EXPECT_EQ(prod.coeffs[c][s], c == (a ^ b) ? expected : Rational(0));
      }
      if (a == b) {
        auto q = space.q(space.basis(a));
        for (std::size_t s = 0; s < cm.g0().size(); ++s) EXPECT_EQ(q[s], space.norm_of_basis(a)[s]);
      }
    }
  EXPECT_EQ(space.q(space.basis(0)), RElement(cm.g0().size(), Rational(1)));
}

TEST(PhiLambda, Examples) {
  auto cm = build_hyperoctahedral(1);
  auto p = params_of({1});
  const auto f = cm_orbits(cm).front().representative;
  auto zero = phi_lambda(cm, p, std::vector<LambdaComponent>{{f, GaussianFunction(cm.order())}});
  EXPECT_TRUE(zero.is_zero());
  auto one = phi_lambda(cm, p, std::vector<LambdaComponent>{{f, GaussianFunction::constant(cm.order(), Gaussian(1))}});
  EXPECT_EQ(one.coeffs[0], RElement{1});
  EXPECT_EQ(one.coeffs[1], RElement{0});
  auto b2 = build_hyperoctahedral(2);
  GaussianFunction spike(b2.order());
  spike[3] = 1;
  EXPECT_THROW(phi_lambda(b2, params_of({1, 1}), std::vector<LambdaComponent>{{cm_orbits(b2).front().representative, spike}}), InputError);
}

TEST(PhiLambda, MatchesLiteralSum) {
  std::mt19937_64 rng(12);
  for (const auto& cm : {build_hyperoctahedral(2), build_iota_times_g0(3, {cycle_perm(3)})}) {
    auto p = random_split_params(cm.degree(), rng);
    const auto basis = block_basis(cm, BasisKind::lambda);
    std::vector<LambdaComponent> a;
    for (std::size_t b = 0; b < basis.types.size(); ++b) {
      GaussianFunction x(cm.order());
      for (std::size_t k = 0; k < basis.size(); ++k) {
        if (basis.block[k] != b) continue;
        auto term = basis.vectors[k];
        term.scale(Gaussian(random_small_rational(rng)));
        x += term;
      }
      a.push_back({basis.types[b], x});
    }
    auto v = phi_lambda(cm, p, a);
    for (Bits subset = 0; subset < (Bits{1} << cm.degree()); ++subset)
      for (std::size_t tau = 0; tau < cm.order(); ++tau) {
        auto lit = phi_literal(cm, p, a, subset, tau);
        ASSERT_TRUE(lit.is_real());
        EXPECT_EQ(v.coeffs[subset][cm.g0_index(tau)], lit.re());
      }
  }
}

TEST(TraceGram, PositiveDefinite) {
  for (const auto& entry : standard_catalog()) {
    if (entry.cm.degree() > 4) continue;
    EXPECT_TRUE(is_positive_definite(trace_gram(entry.cm, BasisKind::lambda))) << entry.name;
    EXPECT_TRUE(is_positive_definite(trace_gram(entry.cm, BasisKind::jodd))) << entry.name;
    EXPECT_EQ(block_basis(entry.cm, BasisKind::lambda).size(), std::size_t{1} << entry.cm.degree());
  }
}

TEST(Pfister, ImaginaryQuadratic) {
  auto cm = build_hyperoctahedral(1);
  auto rep = verify_pfister(cm, {params_of({1}), params_of({3})});
  EXPECT_TRUE(rep.passed) << (rep.failures.empty() ? "" : rep.failures.front());
  EXPECT_EQ(rep.details["scale"].get<std::string>(), "1/2");
}

TEST(Pfister, SmallGroups) {
  for (const auto& cm : {build_hyperoctahedral(2), build_hyperoctahedral(3), build_iota_times_g0(3, {cycle_perm(3)}), build_dihedral(4)}) {
    auto rep = verify_pfister(cm, 3, 21);
    EXPECT_TRUE(rep.passed) << (rep.failures.empty() ? "" : rep.failures.front());
    EXPECT_EQ(rep.details["runs"].size(), 3u);
  }
}

TEST(Pfister, DegreeCap) {
  EXPECT_THROW(verify_pfister(build_dihedral(8), 1, 1), ResourceError);
  EXPECT_THROW(verify_pfister(build_hyperoctahedral(2), 0, 1), InputError);
}
