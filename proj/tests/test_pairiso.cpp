#include <random>

#include <gtest/gtest.h>

#include "printers.hpp"
#include "flatfiber/catalog.hpp"
#include "flatfiber/pairiso.hpp"

using namespace flatfiber;

namespace {

const Catalog& catalog() {
  static const Catalog c = Catalog::load(FLATFIBER_TEST_CATALOG);
  return c;
}

FibrationSplit pair(const std::string& name, const QVec& direction) {
  const SpaceGroup& g = catalog().group(name);
  return FibrationSplit::analyze(g, SubgroupHandle(g, {AffineMap::translation(direction)}));
}

// The torus fixture with the standard Gram form, so that V^⊥ of the x-axis is the y-axis.
FibrationSplit torus_pair(const QVec& direction) {
  static const SpaceGroup g = SpaceGroup::from_generators(
      "p1", QMat::identity(2), {AffineMap::translation({1, 0}), AffineMap::translation({0, 1})});
  return FibrationSplit::analyze(g, SubgroupHandle(g, {AffineMap::translation(direction)}));
}

const AffineMap shear = AffineMap::linear_map(QMat{{1, 0}, {1, 1}});

}  // namespace

TEST(Blocks, Examples) {
  auto s = torus_pair({1, 0});
  auto id = blocks_of(AffineMap::identity(2), s.span(), s.span());
  EXPECT_EQ(id.fiber_linear, QMat::identity(1));
  EXPECT_EQ(id.base_linear, QMat::identity(1));
  EXPECT_EQ(id.mixed, QMat(1, 1));

  auto b = blocks_of(AffineMap::linear_map(QMat{{1, 1}, {0, 1}}), s.span(), s.span());
  EXPECT_EQ(b.fiber_linear, QMat{{1}});
  EXPECT_EQ(b.mixed, QMat{{1}});
  auto inv = blocks_of(AffineMap::linear_map(QMat{{1, -1}, {0, 1}}), s.span(), s.span());
  EXPECT_EQ(inv.mixed, QMat{{-1}});

  auto c = blocks_of(AffineMap::linear_map(QMat{{2, 3}, {0, 1}}), s.span(), s.span());
  EXPECT_EQ(c.fiber_linear, QMat{{2}});
  EXPECT_EQ(c.mixed, QMat{{3}});
  auto cinv = blocks_of(invert(AffineMap::linear_map(QMat{{2, 3}, {0, 1}})), s.span(), s.span());
  EXPECT_EQ(cinv.mixed, QMat{{Rational(-3, 2)}});

  EXPECT_THROW(blocks_of(AffineMap::linear_map(QMat{{0, 1}, {1, 0}}), s.span(), s.span()), Error);
}

TEST(Blocks, AssembleRoundTrip) {
  auto s = pair("p1", {1, 0});
  AffineMap phi{QMat{{2, 3}, {0, -1}}, {Rational(1, 2), Rational(1, 3)}};
  EXPECT_EQ(assemble(blocks_of(phi, s.span(), s.span()), s.span(), s.span()), phi);
  PairMorphismData data{AffineMap::translation({Rational(1, 2)}), AffineMap::identity(1), QMat(1, 1)};
  EXPECT_EQ(data_of(assemble_phi(data, s, s), s, s), data);
  EXPECT_EQ(assemble_phi(data, s, s), AffineMap::translation({Rational(1, 2), 0}));
}

TEST(PairCriterion, IdentityData) {
  for (auto s : {pair("p1", {1, 0}), pair("pm", {1, 0}), pair("pg", {1, 0})}) {
    PairMorphismData id{AffineMap::identity(1), AffineMap::identity(1), QMat(1, 1)};
    EXPECT_TRUE(is_admissible(id, s, s));
    EXPECT_TRUE(theorem3_condition(id, s, s));
    EXPECT_TRUE(theorem3_condition_conjugated(id, s, s));
    EXPECT_TRUE(conjugation_test(AffineMap::identity(2), s, s));
  }
}

TEST(PairCriterion, ShearBetweenTorusPairs) {
  for (auto [from, to] : {std::pair{pair("p1", {1, 0}), pair("p1", {1, 1})},
                          std::pair{torus_pair({1, 0}), torus_pair({1, 1})}}) {
  EXPECT_TRUE(conjugation_test(shear, from, to));
  auto data = data_of(shear, from, to);
  EXPECT_TRUE(theorem3_condition(data, from, to));
  EXPECT_TRUE(theorem3_condition_conjugated(data, from, to));
  EXPECT_EQ(assemble_phi(data, from, to), shear);
  EXPECT_TRUE(block_inverse_identities(shear, from, to).all());
  }
}

TEST(PairCriterion, ScalingIsRejected) {
  auto s = pair("p1", {1, 0});
  EXPECT_FALSE(conjugation_test(AffineMap::linear_map(QMat{{2, 0}, {0, 2}}), s, s));
}

TEST(PairCriterion, MirrorAndGlidePairsNeverMatch) {
  auto pm = pair("pm", {1, 0});
  auto pg = pair("pg", {1, 0});
  for (const auto& data : candidate_space(pm, pg, 1, 2, {0})) {
    EXPECT_FALSE(theorem3_condition(data, pm, pg));
    EXPECT_FALSE(conjugation_test(assemble_phi(data, pm, pg), pm, pg));
  }
  EXPECT_FALSE(pair_isomorphism_search(pm, pg, {2, 1024}).has_value());
}

TEST(PairCriterion, ConditionsAgreeOnCandidateSpace) {
  std::vector<std::pair<FibrationSplit, FibrationSplit>> cases{
      {torus_pair({1, 0}), torus_pair({1, 1})},
      {pair("pm", {1, 0}), pair("pm", {1, 0})},
      {pair("pg", {1, 0}), pair("pg", {1, 0})}};
  for (const auto& [from, to] : cases) {
    auto space = candidate_space(from, to, 1, 2, {-1, Rational(-1, 2), 0, Rational(1, 2), 1});
    ASSERT_FALSE(space.empty());
    std::size_t passing = 0;
    for (const auto& data : space) {
      bool two = theorem3_condition(data, from, to);
      EXPECT_EQ(two, theorem3_condition_conjugated(data, from, to));
      EXPECT_EQ(two, conjugation_test(assemble_phi(data, from, to), from, to));
      passing += two;
    }
    EXPECT_GT(passing, 0u);
  }
}

TEST(Search, Examples) {
  auto x = pair("p1", {1, 0});
  auto self = pair_isomorphism_search(x, x);
  ASSERT_TRUE(self);
  EXPECT_EQ(self->phi, AffineMap::identity(2));

  auto diag = pair_isomorphism_search(x, pair("p1", {1, 1}));
  ASSERT_TRUE(diag);
  EXPECT_EQ(diag->bound_used, 1);
  EXPECT_TRUE(conjugation_test(diag->phi, x, pair("p1", {1, 1})));

  auto pm1 = pair("pm", {1, 0});
  const SpaceGroup& g = catalog().group("pm");
  auto pm2 = FibrationSplit::analyze(g, complete_closure(g, SubgroupHandle(g, {AffineMap::translation({2, 0})})));
  auto same = pair_isomorphism_search(pm1, pm2);
  ASSERT_TRUE(same);
  EXPECT_TRUE(same->phi.linear.is_identity());
}

TEST(BlockIdentities, RandomConjugatedPairs) {
  std::mt19937 rng(17);
  const auto& mats = unimodular_matrices(2, 1);
  std::uniform_int_distribution<std::size_t> pick(0, mats.size() - 1);
  std::uniform_int_distribution<int> shift(0, 3);
  for (const std::string name : {"p1", "pm", "pg"}) {
    auto from = pair(name, {1, 0});
    const SpaceGroup& g = from.ambient();
    for (int trial = 0; trial < 10; ++trial) {
      QMat c = mats[pick(rng)] * mats[pick(rng)];
      AffineMap phi{c, {Rational(shift(rng), 4), Rational(shift(rng), 4)}};
      for (auto& x : phi.shift) x.canonicalize();
      std::vector<AffineMap> images;
      for (const auto& x : g.generators()) images.push_back(conjugate(phi, x));
      QMat c_inv = *inverse(c);
      SpaceGroup h = SpaceGroup::from_generators("image", c_inv.transpose() * g.gram() * c_inv, images);
      std::vector<AffineMap> normal_images;
      for (const auto& x : from.normal().generators()) normal_images.push_back(conjugate(phi, x));
      auto to = FibrationSplit::analyze(h, SubgroupHandle(h, normal_images));
      ASSERT_TRUE(conjugation_test(phi, from, to));
      EXPECT_TRUE(block_inverse_identities(phi, from, to).all()) << name;
    }
  }
}

TEST(Unimodular, MatchesBruteForce) {
  for (int bound : {1, 2}) {
    std::size_t count = 0;
    for (int a = -bound; a <= bound; ++a)
      for (int b = -bound; b <= bound; ++b)
        for (int c = -bound; c <= bound; ++c)
          for (int d = -bound; d <= bound; ++d) count += (a * d - b * c == 1 || a * d - b * c == -1);
    const auto& mats = unimodular_matrices(2, bound);
    EXPECT_EQ(mats.size(), count);
    EXPECT_EQ(mats.front(), QMat::identity(2));
  }
}

TEST(AffineConjugacies, OneDimensional) {
  const SpaceGroup& z = catalog().group("p1_1d");
  const SpaceGroup& dinf = catalog().group("pm_1d");
  EXPECT_FALSE(affine_conjugacies(z, z, 1).empty());
  EXPECT_TRUE(affine_conjugacies(z, dinf, 2).empty());
  auto autos = affine_conjugacies(dinf, dinf, 1, 16);
  ASSERT_FALSE(autos.empty());
  for (const auto& a : autos) EXPECT_TRUE(conjugates_onto(a, dinf, dinf));
}
