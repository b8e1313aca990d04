#include <gtest/gtest.h>

#include "reflexlab/catalog.hpp"

using namespace reflexlab;

namespace {

int moebius(std::size_t n) {
  int sign = 1;
  for (std::size_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return 0;
    sign = -sign;
  }
  return n > 1 ? -sign : sign;
}

// Subsets with least rotation period 2^k0 j' for j' = j: Moebius inversion over
// the 2^(2^k0 d) subsets fixed by rotation by 2^k0 d.
long s_oracle(std::size_t n, std::size_t j) {
  const std::size_t base = std::size_t{1} << two_adic_valuation(n);
  long total = 0;
  for (std::size_t d = 1; d <= j; ++d)
    if (j % d == 0) total += moebius(j / d) * (1L << (base * d));
  return total;
}

}  // namespace

TEST(Catalog, StandardEntries) {
  const auto catalog = standard_catalog();
  ASSERT_EQ(catalog.size(), 9u);
  const std::size_t orders[] = {2, 8, 48, 384, 6, 12, 16, 24, 32};
  for (std::size_t k = 0; k < catalog.size(); ++k) EXPECT_EQ(catalog[k].cm.order(), orders[k]) << catalog[k].name;
}

TEST(Catalog, HyperoctahedralLimits) {
  EXPECT_THROW(build_hyperoctahedral(0), ResourceError);
  EXPECT_THROW(build_hyperoctahedral(21), ResourceError);
  EXPECT_THROW(build_hyperoctahedral(6, 1000), ResourceError);
}

TEST(Catalog, ParsePermutationList) {
  auto gens = parse_permutation_list(3, "2 3 1; 2 1 3");
  ASSERT_EQ(gens.size(), 2u);
  EXPECT_EQ(gens[0], cycle_perm(3));
  EXPECT_EQ(gens[1], transposition(3, 0, 1));
  EXPECT_TRUE(parse_permutation_list(3, " ; ").empty());
  EXPECT_THROW(parse_permutation_list(3, "1 2"), InputError);
  EXPECT_THROW(parse_permutation_list(3, "1 2 x"), InputError);
  EXPECT_THROW(parse_permutation_list(3, "1 1 2"), InputError);
}

TEST(Dihedral, FormulasMatchReflectionOracle) {
  for (std::size_t n = 2; n <= 12; ++n)
    for (std::size_t i = 0; i < n; ++i) {
      const auto rot = dihedral_alpha_perm(n, i);
      const auto refl = dihedral_alpha_beta_perm(n, i);
      for (std::size_t k = 1; k <= n; ++k) {
        EXPECT_EQ(rot[k - 1], static_cast<int>((k - 1 + i) % n) + 1);
        // k -> i + 2 - k modulo n, in 1..n.
        const long image = ((static_cast<long>(i) + 2 - static_cast<long>(k) - 1) % static_cast<long>(n) + static_cast<long>(n)) % static_cast<long>(n) + 1;
        EXPECT_EQ(refl[k - 1], image) << "n=" << n << " i=" << i << " k=" << k;
      }
    }
}

TEST(Dihedral, ModelRelationsAndCocycles) {
  for (std::size_t n = 2; n <= 10; ++n) {
    auto model = build_dihedral_model(n);
    EXPECT_EQ(model.cm.order(), 4 * n);
    EXPECT_EQ(power(model.alpha, n), SignedPerm::iota(n));
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_EQ(cocycle(model.cm, {0}, dihedral_alpha_power(n, i)), dihedral_alpha_signs(n, i));
      EXPECT_EQ(cocycle(model.cm, {0}, dihedral_alpha_power_beta(n, i)), dihedral_alpha_beta_signs(n, i));
    }
  }
  EXPECT_THROW(build_dihedral_model(1), ResourceError);
  EXPECT_THROW(build_dihedral_model(17), ResourceError);
}

TEST(Dihedral, StructureAndClassification) {
  for (std::size_t n = 2; n <= 10; ++n) {
    auto rep = verify_dihedral_structure(build_dihedral_model(n));
    EXPECT_TRUE(rep.passed) << "n=" << n << ": " << (rep.failures.empty() ? "" : rep.failures.front());
  }
}

TEST(Dihedral, ShimuraIdentity) {
  for (std::size_t n : {4, 6, 8}) {
    auto rep = dihedral_shimura_check(n);
    EXPECT_TRUE(rep.passed) << "n=" << n;
    EXPECT_FALSE(rep.details["conjugate"].get<bool>());
  }
  EXPECT_THROW(dihedral_shimura_check(5), InputError);
}

TEST(Dihedral, CountsMatchMoebiusOracle) {
  for (std::size_t n = 2; n <= 12; n += 2) {
    auto rep = dihedral_counts(n);
    ASSERT_TRUE(rep.passed) << "n=" << n << ": " << (rep.failures.empty() ? "" : rep.failures.front());
    for (const auto& row : rep.details["counts"]) {
      const std::size_t j = row["j"].get<std::size_t>();
      EXPECT_EQ(row["s"].get<long>(), s_oracle(n, j)) << "n=" << n << " j=" << j;
      EXPECT_EQ(row["t"].get<long>(), s_oracle(n, j) / 2);
    }
  }
  EXPECT_THROW(dihedral_counts(7), InputError);
}

TEST(Dihedral, TwoAdicValuation) {
  EXPECT_EQ(two_adic_valuation(1), 0u);
  EXPECT_EQ(two_adic_valuation(12), 2u);
  EXPECT_EQ(two_adic_valuation(16), 4u);
  EXPECT_EQ(rotate_subset(0b0001, 4, 1), 0b0010u);
  EXPECT_EQ(rotate_subset(0b1000, 4, 1), 0b0001u);
}
