#include <gtest/gtest.h>

#include "support.hpp"

using namespace f2r;
using namespace f2r::testing;

namespace {

// |GL(n,2)| from the count of ordered bases.
Order count_bases(int n) {
  Order r = 1;
  for (int i = 0; i < n; ++i) r *= (Order{1} << n) - (Order{1} << i);
  return r;
}

}  // namespace

TEST(Groups, GeneralLinear) {
  EXPECT_EQ(group_order(gl_gens(2)), Order{6});
  EXPECT_EQ(enumerate_elements(gl_gens(2)).size(), 6U);
  EXPECT_EQ(group_order(gl_gens(3)), Order{168});
  EXPECT_EQ(enumerate_elements(gl_gens(3)).size(), 168U);
  for (int n = 2; n <= 6; ++n) EXPECT_EQ(group_order(gl_gens(n)), count_bases(n)) << n;
  for (const Perm& p : gl_gens(4).gens) EXPECT_EQ(p(0), 0U);
  EXPECT_EQ(gl_gens(4).gens.size(), 12U);
  EXPECT_THROW(gl_gens(1), InvalidArgument);
  EXPECT_THROW(gl_gens(25), InvalidArgument);
}

TEST(Groups, Translations) {
  EXPECT_TRUE(translation(Vec2::zero(3)).is_identity());
  for (Word a = 0; a < 16; ++a) {
    const Perm t = translation(Vec2(4, a));
    EXPECT_TRUE(compose(t, t).is_identity());
  }
  EXPECT_EQ(enumerate_elements(t_gens(4)).size(), 16U);
  EXPECT_EQ(group_order(t_gens(4)), Order{16});
}

TEST(Groups, NamedOrdersMatchEnumeration) {
  const BilinForm f = standard_form(2);
  EXPECT_EQ(group_order(sp_gens(f)), Order{720});
  EXPECT_EQ(enumerate_elements(sp_gens(f)).size(), 720U);
  EXPECT_EQ(group_order(delta_gens(f)), Order{11520});
  EXPECT_EQ(enumerate_elements(delta_gens(f)).size(), 11520U);
  EXPECT_EQ(group_order(sym0_gens(3)), Order{5040});
  EXPECT_EQ(enumerate_elements(sym0_gens(3)).size(), 5040U);
  EXPECT_EQ(group_order(agl_gens(3)), Order{8 * 168});
  for (int n = 2; n <= 4; ++n)
    for (GroupName g : {GroupName::GL, GroupName::AGL, GroupName::Sym0, GroupName::Sym}) {
      const auto expected = named_order(g, n);
      ASSERT_TRUE(expected);
      EXPECT_EQ(group_order(named_gens(g, n, std::nullopt)), *expected) << name_of(g) << " " << n;
    }
  for (int m = 1; m <= 3; ++m) {
    const BilinForm fm = standard_form(m);
    if (2 * m >= 2) {
      EXPECT_EQ(group_order(sp_gens(fm)), *named_order(GroupName::Sp, 2 * m));
      EXPECT_EQ(group_order(delta_gens(fm)), *named_order(GroupName::Delta, 2 * m));
    }
  }
  EXPECT_FALSE(named_order(GroupName::Sp, 3));
  EXPECT_EQ(named_order(GroupName::Sym, 3), factorial(8));
}

TEST(Groups, SymplecticGeneratorsPreserveTheForm) {
  for (int m = 1; m <= 3; ++m) {
    const BilinForm f = standard_form(m);
    const GenSet sp = sp_gens(f);
    EXPECT_EQ(sp.gens.size(), (std::size_t{1} << (2 * m)) - 1);
    for (const Perm& g : sp.gens)
      for (Word x = 0; x < g.degree(); ++x)
        for (Word y = 0; y < g.degree(); ++y) ASSERT_EQ(f.dot_bits(g(x), g(y)), f.dot_bits(x, y));
  }
  EXPECT_THROW(sp_gens(BilinForm::zero(4)), InvalidArgument);
}

TEST(Groups, Containments) {
  const BilinForm f = standard_form(2);
  const StabChain gl(gl_gens(4)), agl(agl_gens(4));
  for (const Perm& p : gl_gens(4).gens) EXPECT_TRUE(agl.contains(p));
  for (const Perm& p : sp_gens(f).gens) EXPECT_TRUE(gl.contains(p));
  for (const Perm& p : t_gens(4).gens) EXPECT_TRUE(agl.contains(p));
  for (const Perm& p : delta_gens(f).gens) EXPECT_TRUE(agl.contains(p));
}

TEST(Groups, GeneratorsPreserveParallelogram) {
  const BilinForm f = standard_form(2);
  const RelSpec par = RelSpec::parallelogram(4);
  for (const GenSet& g : {gl_gens(4), agl_gens(4), sp_gens(f), delta_gens(f)})
    EXPECT_TRUE(group_preserves(g, par).preserved);
}

TEST(Groups, Sym0CycleOrder) {
  // The long generator of sym0 cycles the nonzero points in increasing order.
  const Perm c = sym0_gens(3).gens[1];
  EXPECT_EQ(c(0), 0U);
  for (Point x = 1; x < 7; ++x) EXPECT_EQ(c(x), x + 1);
  EXPECT_EQ(c(7), 1U);
}
