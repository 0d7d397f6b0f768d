#include <gtest/gtest.h>

#include <functional>

#include "support.hpp"

using namespace f2r;
using namespace f2r::testing;

namespace {

BitMatrix zero_matrix(int d) { return BitMatrix{d, std::vector<Word>(static_cast<std::size_t>(d), 0)}; }

FinSymplSpace zero_space(int d) { return FinSymplSpace{BilinForm(zero_matrix(d))}; }

FinSymplSpace random_space(int d) {
  BitMatrix g = zero_matrix(d);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      if (rng()() & 1) {
        g.rows[static_cast<std::size_t>(i)] |= Word{1} << j;
        g.rows[static_cast<std::size_t>(j)] |= Word{1} << i;
      }
  return FinSymplSpace{BilinForm(g)};
}

std::vector<Word> random_independent(int dim, int k) {
  std::vector<Word> out;
  while (static_cast<int>(out.size()) < k) {
    out.push_back(random_word(dim));
    if (!independent(out)) out.pop_back();
  }
  return out;
}

// Form compatibility checked over all pairs of source vectors.
bool isometric(const Embedding& e) {
  const int n = e.source.dim();
  std::set<Word> images;
  for (Word x = 0; x < (Word{1} << n); ++x) {
    images.insert(e.map.apply(x));
    for (Word y = 0; y < (Word{1} << n); ++y)
      if (e.source.form.dot_bits(x, y) != e.target.form.dot_bits(e.map.apply(x), e.map.apply(y))) return false;
  }
  return images.size() == (std::size_t{1} << n);
}

std::vector<Vec2> units(int dim, std::initializer_list<int> idx) {
  std::vector<Vec2> out;
  for (int i : idx) out.push_back(Vec2::unit(dim, i));
  return out;
}

}  // namespace

TEST(Fraisse, Axioms) {
  EXPECT_TRUE(check_axioms(standard_form(2)).ok);
  BitMatrix diag = zero_matrix(3);
  diag.rows[1] = 0b010;
  const AxiomCheck d = check_axioms(diag);
  EXPECT_FALSE(d.ok);
  ASSERT_TRUE(d.witness);
  EXPECT_EQ(d.witness->first, Vec2::unit(3, 2));
  EXPECT_EQ(d.witness->second, Vec2::unit(3, 2));

  BitMatrix asym = zero_matrix(3);
  asym.rows[0] = 0b100;
  const AxiomCheck a = check_axioms(asym);
  EXPECT_FALSE(a.ok);
  ASSERT_TRUE(a.witness);
  EXPECT_NE(a.witness->first, a.witness->second);
}

TEST(Fraisse, FindEmbedding) {
  const FinSymplSpace line = zero_space(1), plane{standard_form(1)};
  const auto e = find_embedding(line, plane);
  ASSERT_TRUE(e);
  EXPECT_TRUE(isometric(*e));

  const FinSymplSpace s{standard_form(2)};
  const auto self = find_embedding(s, s);
  ASSERT_TRUE(self);
  EXPECT_TRUE(isometric(*self));

  EXPECT_FALSE(find_embedding(plane, zero_space(3)));
  EXPECT_FALSE(find_embedding(zero_space(3), plane));
  // A 3-dimensional totally isotropic subspace does not exist in a 4-dimensional nondegenerate space.
  EXPECT_FALSE(find_embedding(zero_space(3), s));
  EXPECT_TRUE(find_embedding(zero_space(2), s));
}

TEST(Fraisse, FindEmbeddingRandom) {
  for (int trial = 0; trial < 30; ++trial) {
    const FinSymplSpace b = random_space(2 + trial % 5);
    const int k = 1 + static_cast<int>(rng()() % static_cast<std::uint64_t>(b.dim()));
    const Embedding sub = restrict_space(b, random_independent(b.dim(), k));
    const auto e = find_embedding(sub.source, b);
    ASSERT_TRUE(e);
    EXPECT_TRUE(isometric(*e));
  }
}

TEST(Fraisse, EmbeddingValidation) {
  const FinSymplSpace plane{standard_form(1)};
  EXPECT_THROW(make_embedding(plane, zero_space(2), LinearMap{2, 2, {1, 2}}), Error);
  EXPECT_THROW(make_embedding(zero_space(2), zero_space(2), LinearMap{2, 2, {1, 1}}), Error);
  EXPECT_THROW(restrict_space(plane, std::vector<Word>{1, 1}), DependentInput);
}

TEST(Fraisse, JointEmbed) {
  const JointEmbedding z = joint_embed(zero_space(1), zero_space(1));
  EXPECT_EQ(z.space.form.gram(), zero_matrix(2));
  const FinSymplSpace p{standard_form(1)};
  const JointEmbedding b = joint_embed(p, p);
  EXPECT_EQ(b.space.form.gram(), standard_form(2).gram());
  EXPECT_TRUE(isometric(b.left));
  EXPECT_TRUE(isometric(b.right));
}

TEST(Fraisse, AmalgamExamples) {
  const FinSymplSpace s1 = random_space(3), s2 = random_space(2);
  const FinSymplSpace none = zero_space(0);
  const Amalgam trivial = amalgamate(*find_embedding(none, s1), *find_embedding(none, s2));
  EXPECT_EQ(trivial.space.form.gram(), joint_embed(s1, s2).space.form.gram());

  const FinSymplSpace s{standard_form(2)};
  const LinearMap id{4, 4, {1, 2, 4, 8}};
  const Amalgam same = amalgamate(make_embedding(s, s, id), make_embedding(s, s, id));
  EXPECT_EQ(same.space.dim(), 4);
  EXPECT_TRUE(isometric(same.psi1));
  EXPECT_TRUE(find_embedding(s, same.space));
}

TEST(Fraisse, AmalgamRandom) {
  for (int trial = 0; trial < 50; ++trial) {
    const FinSymplSpace s1 = random_space(1 + trial % 6);
    const int d3 = static_cast<int>(rng()() % static_cast<std::uint64_t>(s1.dim() + 1));
    const Embedding phi1 = restrict_space(s1, random_independent(s1.dim(), d3));
    const FinSymplSpace s2 = joint_embed(phi1.source, random_space(static_cast<int>(rng()() % 3))).space;
    const auto phi2 = find_embedding(phi1.source, s2);
    ASSERT_TRUE(phi2);
    const Amalgam am = amalgamate(phi1, *phi2);
    EXPECT_EQ(am.space.dim(), s1.dim() + s2.dim() - d3);
    EXPECT_TRUE(check_axioms(am.space.form).ok);
    EXPECT_TRUE(phi1.map.then(am.psi1.map) == phi2->map.then(am.psi2.map));
    EXPECT_TRUE(isometric(am.psi1));
    EXPECT_TRUE(isometric(am.psi2));
  }
}

TEST(Fraisse, AmalgamRejectsMismatchedSources) {
  const FinSymplSpace s{standard_form(1)};
  const Embedding a = restrict_space(s, std::vector<Word>{1});
  const Embedding b = restrict_space(s, std::vector<Word>{1, 2});
  EXPECT_THROW(amalgamate(a, b), InvalidArgument);
}

TEST(Fraisse, ExtensionWitnessExamples) {
  const auto w6 = extension_witness(standard_form(3), units(6, {1, 2, 3}), {false, false, false});
  ASSERT_TRUE(w6);
  EXPECT_EQ(*w6, Vec2::unit(6, 5));
  EXPECT_FALSE(extension_witness(standard_form(2), units(4, {1, 2, 3}), {false, false, false}));
  const auto w2 = extension_witness(standard_form(1), units(2, {1}), {true});
  ASSERT_TRUE(w2);
  EXPECT_EQ(*w2, Vec2::unit(2, 2));
  EXPECT_THROW(extension_witness(standard_form(2), std::vector<Vec2>{Vec2(4, 3), Vec2(4, 3)}, {false, false}),
               DependentInput);
  EXPECT_THROW(extension_witness(BilinForm(zero_matrix(2)), units(2, {1}), {true}), InvalidArgument);
}

// Smallest valid solution, checked by scanning every vector.
TEST(Fraisse, ExtensionWitnessIsLeast) {
  const BilinForm f = standard_form(3);
  for (int trial = 0; trial < 200; ++trial) {
    const int k = 1 + trial % 5;
    std::vector<Vec2> a;
    for (Word b : random_independent(6, k)) a.emplace_back(6, b);
    std::vector<bool> targets;
    for (int j = 0; j < k; ++j) targets.push_back(rng()() & 1);
    std::optional<Word> expect;
    std::vector<Word> bits;
    for (const Vec2& v : a) bits.push_back(v.bits);
    const std::set<Word> sp = naive_span(bits);
    for (Word w = 0; w < 64 && !expect; ++w) {
      bool ok = !sp.count(w);
      for (int j = 0; j < k; ++j) ok = ok && naive_dot(f.gram(), bits[static_cast<std::size_t>(j)], w) == targets[static_cast<std::size_t>(j)];
      if (ok) expect = w;
    }
    const auto got = extension_witness(f, a, targets);
    ASSERT_EQ(got.has_value(), expect.has_value());
    if (got) {
      EXPECT_EQ(got->bits, *expect);
    }
  }
}

// Enough room always yields a witness. Sp is transitive on nonzero vectors and
// keeps spans and products, so sets containing e1 cover every case.
TEST(Fraisse, ExtensionWitnessNeverFailsWithRoom) {
  for (int m = 2; m <= 4; ++m) {
    const int dim = 2 * m;
    const BilinForm f = standard_form(m);
    const Word top = Word{1} << dim;
    for (int k = 1; 2 * k + 2 <= dim && k <= 3; ++k) {
      std::vector<Word> t(static_cast<std::size_t>(k));
      std::function<void(int, Word)> rec = [&](int i, Word from) {
        if (i == k) {
          if (!independent(t)) return;
          std::vector<Vec2> a;
          for (Word b : t) a.emplace_back(dim, b);
          for (Word mask = 0; mask < (Word{1} << k); ++mask) {
            std::vector<bool> targets;
            for (int j = 0; j < k; ++j) targets.push_back((mask >> j) & 1);
            ASSERT_TRUE(extension_witness(f, a, targets)) << "dim " << dim;
          }
          return;
        }
        for (Word x = from; x < top; ++x) {
          t[static_cast<std::size_t>(i)] = x;
          rec(i + 1, x + 1);
        }
      };
      t[0] = 1;
      rec(1, 2);
    }
  }
}

TEST(Fraisse, RealizeGraphExamples) {
  BitMatrix k3 = zero_matrix(3);
  k3.rows = {0b110, 0b101, 0b011};
  const auto tri = realize_graph(k3, standard_form(3));
  ASSERT_TRUE(tri);
  EXPECT_EQ(*tri, (std::vector<Vec2>{Vec2(6, 0b1), Vec2(6, 0b10), Vec2(6, 0b111)}));

  const auto empty = realize_graph(zero_matrix(2), standard_form(2));
  ASSERT_TRUE(empty);
  EXPECT_EQ(*empty, units(4, {1, 3}));

  const auto single = realize_graph(zero_matrix(1), standard_form(2));
  ASSERT_TRUE(single);
  EXPECT_EQ(*single, units(4, {1}));

  EXPECT_THROW(realize_graph(zero_matrix(5), standard_form(2)), InvalidArgument);
  BitMatrix loop = zero_matrix(2);
  loop.rows[0] = 1;
  EXPECT_THROW(realize_graph(loop, standard_form(2)), InvalidArgument);
}

TEST(Fraisse, RealizeAllFourVertexGraphs) {
  const BilinForm f = standard_form(5);
  const int edges[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  for (Word mask = 0; mask < 64; ++mask) {
    BitMatrix adj = zero_matrix(4);
    for (int e = 0; e < 6; ++e)
      if ((mask >> e) & 1) {
        adj.rows[static_cast<std::size_t>(edges[e][0])] |= Word{1} << edges[e][1];
        adj.rows[static_cast<std::size_t>(edges[e][1])] |= Word{1} << edges[e][0];
      }
    const auto r = realize_graph(adj, f);
    ASSERT_TRUE(r) << mask;
    std::vector<Word> bits;
    for (const Vec2& v : *r) bits.push_back(v.bits);
    EXPECT_TRUE(independent(bits));
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        EXPECT_EQ(naive_dot(f.gram(), bits[static_cast<std::size_t>(i)], bits[static_cast<std::size_t>(j)]), adj.at(i, j));
  }
}
