#include <random>

#include <gtest/gtest.h>

#include "printers.hpp"
#include "flatfiber/catalog.hpp"
#include "flatfiber/classify.hpp"
#include "flatfiber/fibration.hpp"

using namespace flatfiber;

namespace {

const AffineMap t1 = AffineMap::translation({1, 0});
const AffineMap t2 = AffineMap::translation({0, 1});
const AffineMap mirror{QMat{{1, 0}, {0, -1}}, {0, 0}};
const AffineMap glide{QMat{{-1, 0}, {0, 1}}, {0, Rational(1, 2)}};

SpaceGroup p1() { return SpaceGroup::from_generators("p1", QMat::identity(2), {t1, t2}); }
SpaceGroup pm() { return SpaceGroup::from_generators("pm", QMat::identity(2), {t1, t2, mirror}); }
SpaceGroup pg() { return SpaceGroup::from_generators("pg", QMat::identity(2), {t1, t2, glide}); }

QSubspace x_axis() { return QSubspace::spanned_by(2, {{1, 0}}); }
QSubspace y_axis() { return QSubspace::spanned_by(2, {{0, 1}}); }

}  // namespace

TEST(Span, Examples) {
  EXPECT_EQ(span(SubgroupHandle(p1(), {t1}), QMat::identity(2)).fiber, x_axis());
  EXPECT_EQ(span(SubgroupHandle(pg(), {t2}), QMat::identity(2)).fiber, y_axis());
  EXPECT_EQ(span(SubgroupHandle(p1(), {AffineMap::identity(2)}), QMat::identity(2)).fiber.dimension(), 0u);
}

TEST(Span, ProjectorsAreComplementary) {
  SpanData s = span(SubgroupHandle(pm(), {t1}), QMat::identity(2));
  EXPECT_EQ(s.projector_fiber + s.projector_base, QMat::identity(2));
  EXPECT_EQ(s.projector_fiber * s.projector_fiber, s.projector_fiber);
}

TEST(InvariantSpan, ChecksPass) {
  EXPECT_TRUE(theorem1_check(p1(), SubgroupHandle(p1(), {t1})).passed());
  EXPECT_TRUE(theorem1_check(pg(), SubgroupHandle(pg(), {t2})).passed());
  EXPECT_TRUE(theorem1_check(pm(), SubgroupHandle(pm(), {t2, mirror})).passed());
  EXPECT_THROW(theorem1_check(pg(), SubgroupHandle(pg(), {glide})), Error);
}

TEST(Completeness, Examples) {
  EXPECT_TRUE(is_complete(p1(), SubgroupHandle(p1(), {t1})));
  EXPECT_FALSE(is_complete(p1(), SubgroupHandle(p1(), {AffineMap::translation({2, 0})})));
  EXPECT_TRUE(is_complete(pm(), SubgroupHandle(pm(), {t2, mirror})));
  EXPECT_FALSE(is_complete(pm(), SubgroupHandle(pm(), {t2})));
}

TEST(Completeness, Closure) {
  auto c = complete_closure(p1(), SubgroupHandle(p1(), {AffineMap::translation({2, 0})}));
  EXPECT_TRUE(same_subgroup(c, SubgroupHandle(p1(), {t1})));
  auto full = SubgroupHandle(pm(), {t2, mirror});
  EXPECT_TRUE(same_subgroup(complete_closure(pm(), full), full));
  EXPECT_TRUE(same_subgroup(complete_closure(pm(), SubgroupHandle(pm(), {t2})), full));
}

TEST(Decompose, Examples) {
  SpanData s = canonical_span(p1(), SubgroupHandle(p1(), {t1}));
  auto parts = decompose(AffineMap::translation({1, 1}), s);
  EXPECT_EQ(parts.fiber, AffineMap::translation({1}));
  EXPECT_EQ(parts.base, AffineMap::translation({1}));
  auto id = decompose(AffineMap::identity(2), s);
  EXPECT_EQ(id.fiber, AffineMap::identity(1));
  EXPECT_EQ(id.base, AffineMap::identity(1));

  SpanData y = canonical_span(pg(), SubgroupHandle(pg(), {t2}));
  auto g = decompose(glide, y);
  EXPECT_EQ(g.fiber, (AffineMap{QMat{{1}}, {Rational(1, 2)}}));
  EXPECT_EQ(g.base.linear, QMat{{-1}});
  AffineMap rotation{QMat{{0, -1}, {1, 0}}, {0, 0}};
  EXPECT_THROW(decompose(rotation, s), Error);
}

TEST(Decompose, Multiplicative) {
  std::mt19937 rng(5);
  auto g = pg();
  SpanData s = canonical_span(g, SubgroupHandle(g, {t2}));
  auto gens = g.generators();
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  for (int trial = 0; trial < 200; ++trial) {
    AffineMap a = gens[pick(rng)] * gens[pick(rng)], b = invert(gens[pick(rng)]) * gens[pick(rng)];
    auto pa = decompose(a, s), pb = decompose(b, s), pab = decompose(a * b, s);
    EXPECT_EQ(pab.fiber, pa.fiber * pb.fiber);
    EXPECT_EQ(pab.base, pa.base * pb.base);
    EXPECT_EQ(reassemble(pab, s), a * b);
  }
}

TEST(ActionKernel, Examples) {
  auto k1 = action_kernel(p1(), span(SubgroupHandle(p1(), {t1}), QMat::identity(2)));
  EXPECT_TRUE(same_subgroup(k1, SubgroupHandle(p1(), {t2})));
  auto k2 = action_kernel(pm(), span(SubgroupHandle(pm(), {t2, mirror}), QMat::identity(2)));
  EXPECT_TRUE(same_subgroup(k2, SubgroupHandle(pm(), {t1})));
  auto k3 = action_kernel(pg(), span(SubgroupHandle(pg(), {t2}), QMat::identity(2)));
  EXPECT_TRUE(same_subgroup(k3, SubgroupHandle(pg(), {t1})));
}

TEST(Discreteness, Examples) {
  for (auto [g, n] : {std::pair{p1(), SubgroupHandle(p1(), {t1})},
                      std::pair{pm(), SubgroupHandle(pm(), {t2, mirror})},
                      std::pair{pm(), SubgroupHandle(pm(), {t1})}}) {
    auto s = span(n, g.gram());
    auto report = base_discreteness_check(g, n, action_kernel(g, s));
    EXPECT_TRUE(report.discrete);
    ASSERT_TRUE(report.index);
  }
}

TEST(FiberBase, Examples) {
  auto a = FibrationSplit::analyze(p1(), SubgroupHandle(p1(), {t1}));
  EXPECT_EQ(a.fiber().point_group_order(), 1u);
  EXPECT_EQ(a.base().point_group_order(), 1u);
  auto b = FibrationSplit::analyze(pm(), SubgroupHandle(pm(), {t2, mirror}));
  EXPECT_EQ(b.fiber().point_group_order(), 2u);
  EXPECT_EQ(b.base().point_group_order(), 1u);
  auto c = FibrationSplit::analyze(pm(), SubgroupHandle(pm(), {t1}));
  EXPECT_EQ(c.fiber().point_group_order(), 1u);
  EXPECT_EQ(c.base().point_group_order(), 2u);
  auto d = FibrationSplit::analyze(pg(), SubgroupHandle(pg(), {t2}));
  EXPECT_EQ(d.fiber().lattice(), ZLattice::standard(1));
  EXPECT_EQ(d.base().point_group_order(), 2u);
  EXPECT_THROW(base_group(pm(), SubgroupHandle(pm(), {t2}), span(SubgroupHandle(pm(), {t2}), QMat::identity(2))),
               Error);
}

TEST(FiberBase, CatalogWideInvariants) {
  Catalog catalog = Catalog::load(FLATFIBER_TEST_CATALOG);
  for (const auto& name : catalog.names()) {
    const SpaceGroup& g = catalog.group(name);
    if (g.dim() < 2) continue;
    for (std::size_t m = 1; m < g.dim(); ++m)
      for (const auto& n : enumerate_complete_normals(g, m, 1)) {
        EXPECT_TRUE(theorem1_check(g, n).passed()) << name;
        auto s = FibrationSplit::analyze(g, n);
        EXPECT_EQ(s.fiber_dim() + s.base_dim(), g.dim());
        EXPECT_TRUE(same_subgroup(complete_closure(g, n), n)) << name;
        for (const auto& lift : s.base_generator_lifts()) {
          EXPECT_TRUE(g.contains(lift));
          auto parts = s.split(lift);
          EXPECT_TRUE(conjugates_onto(parts.fiber, s.fiber(), s.fiber())) << name;
        }
      }
  }
}
