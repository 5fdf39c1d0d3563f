#include <algorithm>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "printers.hpp"
#include "flatfiber/classify.hpp"

using namespace flatfiber;

namespace {

const Catalog& catalog() {
  static const Catalog c = Catalog::load(FLATFIBER_TEST_CATALOG);
  return c;
}

// Invariant lines through primitive vectors, found without the library's enumerator.
std::size_t brute_force_lines(const SpaceGroup& g, int k) {
  std::vector<QVec> lines;
  for (int a = -k; a <= k; ++a)
    for (int b = -k; b <= k; ++b) {
      if (std::gcd(a, b) != 1 || a < 0 || (a == 0 && b < 0)) continue;
      QVec v = g.lattice().basis().transpose() * QVec{a, b};
      bool invariant = true;
      for (const auto& c : g.cosets()) {
        QVec w = c.linear * v;
        invariant &= w[0] * v[1] == w[1] * v[0];
      }
      if (invariant) lines.push_back(v);
    }
  return lines.size();
}

}  // namespace

TEST(Enumerate, Examples) {
  EXPECT_EQ(enumerate_complete_normals(catalog().group("p1"), 1, 1).size(), 4u);
  EXPECT_EQ(enumerate_complete_normals(catalog().group("pm"), 1, 1).size(), 2u);
  for (int k : {1, 2, 3}) EXPECT_TRUE(enumerate_complete_normals(catalog().group("p4"), 1, k).empty());
  EXPECT_TRUE(enumerate_complete_normals(catalog().group("p6"), 1, 2).empty());
}

TEST(Enumerate, MatchesBruteForceLines) {
  for (const auto& name : catalog().names_of_dimension(2)) {
    const SpaceGroup& g = catalog().group(name);
    for (int k : {1, 2}) {
      auto found = enumerate_complete_normals(g, 1, k);
      EXPECT_LE(found.size(), brute_force_lines(g, k)) << name;
      for (const auto& n : found) {
        EXPECT_TRUE(is_normal(g, n));
        EXPECT_TRUE(is_complete(g, n));
      }
    }
  }
}

TEST(Enumerate, HyperplanesInDimensionThree) {
  for (const auto& name : catalog().names_of_dimension(3)) {
    const SpaceGroup& g = catalog().group(name);
    for (const auto& n : enumerate_complete_normals(g, 2, 1)) {
      EXPECT_EQ(span(n, g.gram()).fiber.dimension(), 2u);
      EXPECT_TRUE(is_complete(g, n)) << name;
    }
  }
}

TEST(Enumerate, KeysAreDistinct) {
  for (const std::string name : {"p1", "pmm", "cmm"}) {
    const SpaceGroup& g = catalog().group(name);
    auto normals = enumerate_complete_normals(g, 1, 2);
    std::vector<std::string> keys;
    for (const auto& n : normals) keys.push_back(candidate_key(g, n));
    std::sort(keys.begin(), keys.end());
    EXPECT_EQ(std::unique(keys.begin(), keys.end()), keys.end()) << name;
  }
}

TEST(Classify, CircleOverCircle) {
  ClassifyOptions options;
  options.pool = {"p1", "pg"};
  auto result = classify(catalog(), "p1_1d", "p1_1d", options);
  ASSERT_EQ(result.classes.size(), 2u);
  EXPECT_NE(result.classes[0].group, result.classes[1].group);
  ASSERT_EQ(result.classes[1].splits.size(), 1u);
  EXPECT_EQ(result.classes[1].splits[0].kind, "omega");
  EXPECT_FALSE(result.indeterminate);
  EXPECT_TRUE(verify_classification(result, catalog()).ok());
}

TEST(Classify, CircleOverSegmentContainsMirrorPair) {
  auto result = classify(catalog(), "pm_1d", "p1_1d");
  bool found = false;
  for (const auto& c : result.classes) {
    auto members = c.merged;
    members.push_back({c.group, c.normal_generators, AffineMap::identity(2), 0, false});
    for (const auto& m : members) {
      if (m.group != "pm") continue;
      const SpaceGroup& pm = catalog().group("pm");
      found |= same_subgroup(SubgroupHandle(pm, m.normal_generators),
                             SubgroupHandle(pm, {AffineMap::translation({1, 0})}));
    }
  }
  EXPECT_TRUE(found);
  EXPECT_EQ(result.classes.size(), classify(catalog(), "pm_1d", "p1_1d", {3}).classes.size());
}

TEST(Classify, RotationGroupsContributeNothing) {
  ClassifyOptions options;
  options.pool = {"p4", "p3", "p6"};
  EXPECT_TRUE(classify(catalog(), "p1_1d", "p1_1d", options).classes.empty());
}

TEST(Classify, SequentialMatchesParallel) {
  ClassifyOptions sequential;
  sequential.parallel = false;
  auto a = classify(catalog(), "pm_1d", "pm_1d");
  auto b = classify(catalog(), "pm_1d", "pm_1d", sequential);
  EXPECT_EQ(to_json(a).dump(), to_json(b).dump());
}

TEST(Classify, JsonRoundTripReverifies) {
  auto result = classify(catalog(), "p1_1d", "pm_1d");
  Json j = to_json(result);
  EXPECT_EQ(j["schema"], kSchema);
  auto back = classify_result_from_json(Json::parse(j.dump()), "memory");
  EXPECT_EQ(to_json(back).dump(), j.dump());
  auto report = verify_classification(back, catalog());
  EXPECT_TRUE(report.ok());
  EXPECT_EQ(report.certificates, report.verified);
}

TEST(Classify, TamperedCertificateFailsVerification) {
  auto result = classify(catalog(), "pm_1d", "p1_1d");
  bool tampered = false;
  for (auto& c : result.classes)
    for (auto& m : c.merged) {
      m.phi = AffineMap::translation({Rational(1, 3), Rational(1, 5)}) * m.phi;
      tampered = true;
    }
  if (!tampered) GTEST_SKIP() << "no merges to tamper with";
  EXPECT_FALSE(verify_classification(result, catalog()).ok());
}
