#include <gtest/gtest.h>

#include "printers.hpp"
#include "flatfiber/catalog.hpp"
#include "flatfiber/classify.hpp"
#include "flatfiber/extension.hpp"
#include "flatfiber/pairiso.hpp"

using namespace flatfiber;

namespace {

const Catalog& catalog() {
  static const Catalog c = Catalog::load(FLATFIBER_TEST_CATALOG);
  return c;
}

ThetaSpec circle_over_circle(const AffineMap& lift) {
  return {catalog().group("p1_1d"), catalog().group("p1_1d"), {lift}};
}

const AffineMap flip{QMat{{-1}}, {0}};

FibrationSplit split_of(const ExtensionResult& r) { return FibrationSplit::analyze(r.group, r.normal); }

}  // namespace

TEST(Theta, ValidSpecs) {
  EXPECT_TRUE(validate_theta(circle_over_circle(AffineMap::identity(1))).valid());
  EXPECT_TRUE(validate_theta(circle_over_circle(flip)).valid());
}

TEST(Theta, InconsistentSpecNamesRelator) {
  const AffineMap third = AffineMap::translation({Rational(1, 3)});
  ThetaSpec spec{catalog().group("p1_1d"), catalog().group("pm_1d"), {AffineMap::identity(1), third}};
  auto report = validate_theta(spec);
  EXPECT_FALSE(report.valid());
  EXPECT_FALSE(report.homomorphism);
  ASSERT_FALSE(report.failures.empty());
  EXPECT_NE(report.failures.front().find("g1"), std::string::npos) << report.failures.front();
}

TEST(Theta, NonNormalizingLift) {
  auto report = validate_theta(circle_over_circle(AffineMap::linear_map(QMat{{2}})));
  EXPECT_FALSE(report.normalizes);
  EXPECT_THROW(build_extension(circle_over_circle(AffineMap::linear_map(QMat{{2}}))), Error);
}

TEST(Extension, TrivialActionGivesTorus) {
  auto r = build_extension(circle_over_circle(AffineMap::identity(1)));
  EXPECT_EQ(r.group.point_group_order(), 1u);
  EXPECT_EQ(r.group.lattice(), ZLattice::standard(2));
  EXPECT_TRUE(is_complete(r.group, r.normal));
}

TEST(Extension, FlipGivesKleinBottle) {
  auto r = build_extension(circle_over_circle(flip));
  const AffineMap glide{QMat{{-1, 0}, {0, 1}}, {0, 1}};
  const AffineMap nu = AffineMap::translation({1, 0});
  ASSERT_EQ(r.hat_lifts.size(), 1u);
  EXPECT_EQ(r.hat_lifts[0], glide);
  EXPECT_EQ(r.hat_lifts[0] * nu * invert(r.hat_lifts[0]), invert(nu));
  EXPECT_EQ(r.hat_lifts[0] * r.hat_lifts[0], AffineMap::translation({0, 2}));
  EXPECT_EQ(r.group.point_group_order(), 2u);
  EXPECT_TRUE(r.group.contains(glide));
}

TEST(Extension, HalfTurnGivesSkewTorus) {
  auto r = build_extension(circle_over_circle(AffineMap::translation({Rational(1, 2)})));
  EXPECT_EQ(r.group.point_group_order(), 1u);
  EXPECT_EQ(r.group.lattice(), ZLattice::generated_by(2, {{1, 0}, {Rational(1, 2), 1}}));
  const SpaceGroup& p1 = catalog().group("p1");
  auto target = FibrationSplit::analyze(p1, SubgroupHandle(p1, {AffineMap::translation({1, 0})}));
  EXPECT_TRUE(pair_isomorphism_search(split_of(r), target).has_value());
}

TEST(Extension, BaseIsReproduced) {
  for (const auto& lift : {AffineMap::identity(1), flip}) {
    auto spec = circle_over_circle(lift);
    auto r = build_extension(spec);
    auto s = split_of(r);
    EXPECT_TRUE(conjugates_onto(AffineMap::identity(1), s.base(), spec.base));
    EXPECT_TRUE(conjugates_onto(AffineMap::identity(1), s.fiber(), spec.fiber));
  }
}

TEST(Uniqueness, MembersAreFound) {
  auto spec = circle_over_circle(flip);
  auto r = build_extension(spec);
  const AffineMap nu = AffineMap::translation({1, 0});
  EXPECT_TRUE(verify_uniqueness(r, spec, nu * r.hat_lifts[0]));
  EXPECT_TRUE(verify_uniqueness(r, spec, r.hat_lifts[0] * nu * r.hat_lifts[0]));
  EXPECT_TRUE(verify_uniqueness(r, spec, invert(r.hat_lifts[0])));
}

TEST(Uniqueness, PreconditionReportedDistinctly) {
  auto spec = circle_over_circle(flip);
  auto r = build_extension(spec);
  AffineMap off_fiber = AffineMap::translation({Rational(1, 3), 0}) * r.hat_lifts[0];
  EXPECT_THROW(verify_uniqueness(r, spec, off_fiber), PreconditionError);
  AffineMap rotation{QMat{{0, -1}, {1, 0}}, {0, 0}};
  EXPECT_THROW(verify_uniqueness(r, spec, rotation), PreconditionError);
}

TEST(Uniqueness, PerturbedLiftsGiveSameGroup) {
  auto a = build_extension(circle_over_circle(flip));
  auto b = build_extension(circle_over_circle(AffineMap::translation({3}) * flip));
  EXPECT_EQ(a.group, b.group);
}

TEST(RoundTrip, WallpaperPairsRebuild) {
  for (const std::string name : {"p1", "pm", "pg", "cm", "p2", "pmm", "pmg", "pgg", "cmm"}) {
    const SpaceGroup& g = catalog().group(name);
    for (const auto& n : enumerate_complete_normals(g, 1, 1)) {
      auto original = FibrationSplit::analyze(g, n);
      ThetaSpec spec = theta_of_split(original);
      ASSERT_TRUE(validate_theta(spec).valid()) << name;
      auto rebuilt = split_of(build_extension(spec));
      for (std::size_t i = 0; i < spec.lifts.size(); ++i) {
        auto hat = rebuilt.base_generator_lifts()[i];
        EXPECT_TRUE(rebuilt.fiber().contains(rebuilt.xi(hat) * invert(spec.lifts[i]))) << name;
      }
      auto cert = pair_isomorphism_search(rebuilt, original);
      ASSERT_TRUE(cert.has_value()) << name;
      EXPECT_TRUE(conjugation_test(cert->phi, rebuilt, original));
    }
  }
}
