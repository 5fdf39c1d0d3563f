#include <cstdlib>
#include <fstream>
#include <functional>

#include <gtest/gtest.h>

#include "printers.hpp"
#include "flatfiber/catalog.hpp"

using namespace flatfiber;

namespace {

const Catalog& catalog() {
  static const Catalog c = Catalog::load(FLATFIBER_TEST_CATALOG);
  return c;
}

std::string message_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const std::exception& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Catalog, Contents) {
  EXPECT_EQ(catalog().names_of_dimension(1).size(), 2u);
  EXPECT_EQ(catalog().names_of_dimension(2).size(), 17u);
  EXPECT_GE(catalog().names_of_dimension(3).size(), 5u);
  for (const std::string name : {"p1", "p2", "pm", "pg", "cm", "pmm", "pmg", "pgg", "cmm", "p4", "p4m",
                                 "p4g", "p3", "p3m1", "p31m", "p6", "p6m"})
    EXPECT_TRUE(catalog().contains(name)) << name;
  EXPECT_THROW(catalog().entry("p7"), Error);
}

TEST(Catalog, PointGroupOrders) {
  std::map<std::string, std::size_t> orders{{"p1", 1}, {"p2", 2},   {"pm", 2},   {"pg", 2},  {"cm", 2},
                                            {"pmm", 4}, {"pmg", 4}, {"pgg", 4},  {"cmm", 4}, {"p4", 4},
                                            {"p4m", 8}, {"p4g", 8}, {"p3", 3},   {"p3m1", 6}, {"p31m", 6},
                                            {"p6", 6},  {"p6m", 12}};
  for (const auto& [name, order] : orders) EXPECT_EQ(catalog().group(name).point_group_order(), order) << name;
}

TEST(Catalog, GroupRoundTrip) {
  for (const auto& e : catalog().entries()) {
    Json j = to_json(e.group);
    EXPECT_EQ(j["schema"], kSchema);
    SpaceGroup back = space_group_from_json(j, "test");
    EXPECT_EQ(back, e.group);
    EXPECT_EQ(back.name(), e.group.name());
    EXPECT_EQ(to_json(back).dump(), j.dump());
  }
}

TEST(Catalog, FileRoundTrip) {
  Json file = catalog_file_json(catalog().entries());
  auto entries = catalog_file_from_json(file, "memory");
  ASSERT_EQ(entries.size(), catalog().entries().size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    EXPECT_EQ(entries[i].group, catalog().entries()[i].group);
    EXPECT_EQ(entries[i].out_reps, catalog().entries()[i].out_reps);
  }
  auto dir = std::filesystem::temp_directory_path() / "flatfiber_catalog_test";
  std::filesystem::create_directories(dir);
  write_json_file(dir / "all.json", file);
  Catalog reloaded = Catalog::load(dir);
  EXPECT_EQ(reloaded.names(), catalog().names());
  std::filesystem::remove_all(dir);
}

TEST(Catalog, FrobeniusViolationNamesPair) {
  std::string what = message_of([] { Catalog::load(std::string(FLATFIBER_TEST_FIXTURES) + "/broken"); });
  EXPECT_NE(what.find("Frobenius"), std::string::npos) << what;
  EXPECT_NE(what.find("(1, 1)"), std::string::npos) << what;
  EXPECT_NE(what.find("pg_bad"), std::string::npos) << what;
}

TEST(Catalog, ParseErrorsCarryLocation) {
  std::string what = message_of([] {
    Catalog c;
    c.add_file(std::string(FLATFIBER_TEST_FIXTURES) + "/malformed.json");
  });
  EXPECT_NE(what.find("malformed.json"), std::string::npos) << what;
  EXPECT_NE(what.find("shift"), std::string::npos) << what;
  EXPECT_NE(what.find("1/0x"), std::string::npos) << what;

  auto path = std::filesystem::temp_directory_path() / "flatfiber_truncated.json";
  std::ofstream(path) << "{\"schema\": \"flatfiber/1\", \"groups\": [";
  std::string truncated = message_of([&] { read_json_file(path); });
  EXPECT_NE(truncated.find("byte"), std::string::npos) << truncated;
  std::filesystem::remove(path);

  EXPECT_THROW(rational_from_json(Json("3/0"), "x"), ParseError);
  EXPECT_EQ(rational_from_json(Json(2), "x"), Rational(2));
  EXPECT_THROW(rational_from_json(Json(true), "x"), ParseError);
  EXPECT_EQ(rational_from_json(Json("-6/4"), "x"), Rational(-3, 2));
  EXPECT_THROW(require_schema(Json{{"schema", "other/2"}}, "x"), ParseError);
}

TEST(Catalog, OuterDataAvailability) {
  EXPECT_TRUE(catalog().outer("p1_1d").complete);
  EXPECT_FALSE(catalog().outer("p1").complete);
  std::string what = message_of([] { catalog().outer(catalog().names_of_dimension(3).front()); });
  EXPECT_NE(what.find("Out(M) data unavailable"), std::string::npos) << what;
}

TEST(Catalog, Identify) {
  const SpaceGroup& pg = catalog().group("pg");
  AffineMap phi{QMat{{1, 1}, {0, 1}}, {Rational(1, 3), 0}};
  std::vector<AffineMap> images;
  for (const auto& x : pg.generators()) images.push_back(conjugate(phi, x));
  QMat inv = *inverse(phi.linear);
  SpaceGroup moved = SpaceGroup::from_generators("moved", inv.transpose() * pg.gram() * inv, images);
  EXPECT_EQ(catalog().identify(moved), std::optional<std::string>("pg"));
  EXPECT_EQ(catalog().identify(catalog().group("p6m")), std::optional<std::string>("p6m"));
}

TEST(Catalog, DefaultDirectoryFollowsEnvironment) {
  ::setenv("FLATFIBER_CATALOG_DIR", "/nonexistent/catalog", 1);
  EXPECT_EQ(Catalog::default_directory(), std::filesystem::path("/nonexistent/catalog"));
  ::unsetenv("FLATFIBER_CATALOG_DIR");
  EXPECT_NE(Catalog::default_directory(), std::filesystem::path("/nonexistent/catalog"));
}
