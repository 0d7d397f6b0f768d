#include <gtest/gtest.h>

#include "support.hpp"

using namespace f2r;
using namespace f2r::testing;

namespace {

const BilinForm& form4() {
  static const BilinForm f = standard_form(2);
  return f;
}

Fingerprint fp(bool fz, bool par, std::optional<bool> p0, std::optional<bool> nabla, Order order) {
  return Fingerprint{fz, par, p0, nabla, order};
}

}  // namespace

TEST(Classify, Fingerprints) {
  EXPECT_EQ(fingerprint(gl_gens(4), form4()), fp(true, true, false, false, 20160));
  EXPECT_EQ(fingerprint(delta_gens(form4()), form4()), fp(false, true, std::nullopt, true, 11520));
  EXPECT_EQ(fingerprint(sp_gens(form4()), form4()), fp(true, true, true, true, 720));
  EXPECT_EQ(fingerprint(agl_gens(4), form4()), fp(false, true, std::nullopt, false, 322560));
  EXPECT_EQ(fingerprint(sym0_gens(4), form4()), fp(true, false, false, false, 1307674368000ULL));
  EXPECT_EQ(fingerprint(sym_gens(3), std::nullopt), fp(false, false, std::nullopt, std::nullopt, 40320));
  EXPECT_THROW(fingerprint(gl_gens(3), form4()), DimensionMismatch);
}

TEST(Classify, DecisionTree) {
  EXPECT_EQ(decision_tree(fp(true, true, true, true, 1)), GroupName::Sp);
  EXPECT_EQ(decision_tree(fp(true, true, false, false, 1)), GroupName::GL);
  EXPECT_EQ(decision_tree(fp(true, false, false, false, 1)), GroupName::Sym0);
  EXPECT_EQ(decision_tree(fp(false, true, std::nullopt, true, 1)), GroupName::Delta);
  EXPECT_EQ(decision_tree(fp(false, true, std::nullopt, false, 1)), GroupName::AGL);
  EXPECT_EQ(decision_tree(fp(false, false, std::nullopt, std::nullopt, 1)), GroupName::Sym);
}

TEST(Classify, NamedGroupsRoundTrip) {
  for (GroupName g : {GroupName::Sp, GroupName::Delta, GroupName::GL, GroupName::AGL, GroupName::Sym0, GroupName::Sym}) {
    const Classification c = classify(named_gens(g, 4, form4()), form4());
    EXPECT_EQ(c.label, g) << name_of(g);
  }
  for (GroupName g : {GroupName::GL, GroupName::AGL, GroupName::Sym0, GroupName::Sym}) {
    const Classification c = classify(named_gens(g, 3, std::nullopt), std::nullopt);
    EXPECT_EQ(c.label, g) << name_of(g);
  }
}

TEST(Classify, SymplecticWithTranslationIsDelta) {
  for (Point a = 1; a < 16; ++a) {
    const Classification c = classify(join(sp_gens(form4()), translation(Vec2(4, a))), form4());
    EXPECT_EQ(c.label, GroupName::Delta) << a;
  }
}

TEST(Classify, LinearWithTranspositionIsSym0) {
  const Classification c = classify(join(gl_gens(4), Perm::transposition(4, 1, 2)), form4());
  EXPECT_EQ(c.label_name(), "Sym0");
}

TEST(Classify, TranslationNeverGivesZeroFixingLabel) {
  for (GroupName g : {GroupName::Sp, GroupName::GL, GroupName::Sym0}) {
    const Classification c = classify(join(named_gens(g, 4, form4()), translation(Vec2(4, 1))), form4());
    EXPECT_FALSE(c.fingerprint.fixes_zero);
    ASSERT_TRUE(c.label);
    EXPECT_NE(*c.label, GroupName::Sp);
    EXPECT_NE(*c.label, GroupName::GL);
    EXPECT_NE(*c.label, GroupName::Sym0);
  }
}

// Linear maps act as even permutations on the nonzero points, so adding an even
// p can only reach the alternating group, which has no label.
TEST(Classify, LinearPlusRandomZeroFixing) {
  for (int n : {3, 4}) {
    const GenSet gl = gl_gens(n);
    const StabChain gl_chain(gl);
    const Order full = *named_order(GroupName::Sym0, n);
    for (const Perm& p : gl.gens) EXPECT_FALSE(is_odd(p));
    int found = 0;
    while (found < 20) {
      const Perm p = random_perm_fixing_zero(n);
      if (gl_chain.contains(p)) continue;
      ++found;
      const Classification c = classify(join(gl, p), std::nullopt);
      ASSERT_TRUE(c.fingerprint.order);
      const Order order = *c.fingerprint.order;
      EXPECT_TRUE(order == full || order == full / 2);
      EXPECT_EQ(order == full, is_odd(p));
      EXPECT_EQ(c.label == GroupName::Sym0, order == full);
      EXPECT_EQ(c.candidate, GroupName::Sym0);
    }
  }
}

TEST(Classify, Other) {
  const Classification t = classify(t_gens(4), form4());
  EXPECT_FALSE(t.label);
  EXPECT_EQ(t.label_name(), "Other");
  EXPECT_EQ(t.candidate, GroupName::Delta);
  EXPECT_THROW(classify(gl_gens(1), std::nullopt), InvalidArgument);
}
