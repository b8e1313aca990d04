#include <gtest/gtest.h>

#include <random>

#include "reflexlab/catalog.hpp"
#include "reflexlab/characters.hpp"

using namespace reflexlab;

namespace {

// Ind_S^G chi(g) = |S|^-1 sum_{x in G} chi(x g x^-1), chi extended by zero.
std::vector<Rational> induce_by_conjugation(const Group& g, const SubgroupFunction& chi) {
  std::vector<char> in_s(g.order(), 0);
  for (std::size_t x : chi.domain) in_s[x] = 1;
  std::vector<Rational> out(g.order());
  for (std::size_t y = 0; y < g.order(); ++y) {
    Rational sum = 0;
    for (std::size_t x = 0; x < g.order(); ++x) {
      const std::size_t c = g.conjugate(x, y);
      if (in_s[c]) sum += chi.values[c];
    }
    out[y] = sum / static_cast<long>(chi.domain.size());
  }
  return out;
}

}  // namespace

TEST(ClassTable, ClassCounts) {
  auto b3 = build_hyperoctahedral(3);
  auto t = make_class_table(b3.shared_group());
  EXPECT_EQ(t->size(), 10u);
  for (std::size_t c = 0; c < t->size(); ++c) EXPECT_EQ(t->class_of(t->representative(c)), c);
}

TEST(ClassFunction, TrivialCharacterHasNormOne) {
  for (const auto& entry : standard_catalog()) {
    auto t = make_class_table(entry.cm.shared_group());
    auto one = trivial_character(t);
    EXPECT_EQ(inner_product(one, one), 1);
    EXPECT_EQ(one.degree(), 1);
  }
}

TEST(ClassFunction, DifferentTablesDoNotMix) {
  auto cm = build_hyperoctahedral(2);
  auto a = make_class_table(cm.shared_group());
  auto b = make_class_table(cm.shared_group());
  EXPECT_THROW(trivial_character(a) + trivial_character(b), InputError);
}

TEST(IndexTwoCharacter, RejectsBadSpecs) {
  auto cm = build_hyperoctahedral(2);
  const Group& g = cm.group();
  EXPECT_THROW(index_two_character(g, {g.all(), cm.h()}), InputError);
  EXPECT_THROW(index_two_character(g, {cm.h(), cm.h0()}), InputError);
  EXPECT_NO_THROW(index_two_character(g, {cm.h0(), cm.h()}));
}

TEST(Induce, MatchesConjugationSum) {
  for (const auto& entry : standard_catalog()) {
    const auto& cm = entry.cm;
    auto t = make_class_table(cm.shared_group());
    for (const auto& o : cm_orbits(cm)) {
      auto chi = index_two_character(cm.group(), {reflex_overgroup(cm, o.representative), o.stabilizer});
      auto ind = induce(t, chi);
      auto oracle = induce_by_conjugation(cm.group(), chi);
      for (std::size_t x = 0; x < cm.order(); ++x) ASSERT_EQ(ind(x), oracle[x]) << entry.name;
      EXPECT_EQ(ind.degree(), Rational(static_cast<long>(cm.order() / chi.domain.size())));
    }
  }
}

TEST(Induce, FrobeniusReciprocity) {
  auto cm = build_dihedral(6);
  auto t = make_class_table(cm.shared_group());
  auto psi = induce(t, index_two_character(cm.group(), {cm.h0(), cm.h()}));
  for (Bits subset : jodd_representatives(cm)) {
    auto chi = index_two_character(cm.group(), {subset_stabilizer(cm, subset), h_of_subset(cm, subset)});
    EXPECT_TRUE(frobenius_reciprocity_holds(t, chi, psi));
    EXPECT_TRUE(frobenius_reciprocity_holds(t, chi, trivial_character(t)));
  }
}

TEST(Restrict, MackeyAgreesWithDirectRestriction) {
  auto cm = build_iota_times_g0(3, {cycle_perm(3), transposition(3, 0, 1)});
  auto ambient = std::make_shared<const Group>(ambient_group(cm));
  auto at = make_class_table(ambient);
  auto gt = make_class_table(cm.shared_group());
  const auto embedding = embed_elements(cm.group(), *ambient);
  // Sign character of the stabiliser of position 1 with kernel "sign at 1 is 0".
  SubgroupFunction chi{ambient->select([](const SignedPerm& x) { return x.image(0) == 0; }), std::vector<Rational>(ambient->order(), 0)};
  for (std::size_t x : chi.domain) chi.values[x] = test_bit(ambient->element(x).signs(), 0) ? -1 : 1;
  auto full = induce(at, chi);
  EXPECT_EQ(mackey_restriction(at, gt, embedding, chi), restrict(full, gt, embedding));
}

TEST(CharacterIdentity, HoldsOnCatalog) {
  for (const auto& entry : standard_catalog()) {
    auto id = character_identity(entry.cm);
    EXPECT_TRUE(id.report.passed) << entry.name << ": " << (id.report.failures.empty() ? "" : id.report.failures.front());
    EXPECT_EQ(id.lhs, id.rhs) << entry.name;
    EXPECT_EQ(id.lhs.degree(), pow2(static_cast<int>(entry.cm.degree()) - 1)) << entry.name;
    EXPECT_TRUE(id.lhs.has_integer_values());
  }
}

TEST(CharacterIdentity, IotaTimesG0TermsMatchOneToOne) {
  // With G = <iota> x G_0 and N odd the sides agree term by term.
  auto cm = build_iota_times_g0(5, {cycle_perm(5)});
  auto t = make_class_table(cm.shared_group());
  for (Bits subset : jodd_representatives(cm)) {
    auto lhs = induce(t, index_two_character(cm.group(), {reflex_overgroup(cm, {subset}), reflex_subgroup(cm, {subset})}));
    auto rhs = induce(t, index_two_character(cm.group(), {subset_stabilizer(cm, subset), h_of_subset(cm, subset)}));
    EXPECT_EQ(lhs, rhs);
  }
  EXPECT_TRUE(verify_character_identity(cm).passed);
}

TEST(DecompositionLemma, HoldsOnCatalog) {
  for (const auto& entry : standard_catalog()) {
    auto rep = verify_decomposition_lemma(entry.cm);
    EXPECT_TRUE(rep.passed) << entry.name << ": " << (rep.failures.empty() ? "" : rep.failures.front());
  }
}

TEST(DecompositionLemma, AmbientCapIsEnforced) {
  EXPECT_THROW(verify_decomposition_lemma(build_hyperoctahedral(4), 100), ResourceError);
}
