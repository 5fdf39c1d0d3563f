#include <random>

#include <gtest/gtest.h>

#include "printers.hpp"
#include "flatfiber/catalog.hpp"
#include "flatfiber/classify.hpp"
#include "flatfiber/cohomology.hpp"
#include "oracles.hpp"

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

GModule sign_module(const FiniteGroup& g, ModuleKind kind) {
  return {kind, 1, {ZMat{{1}}, ZMat{{-1}}}};
}

oracle::IntMat to_ints(const ZMat& m) {
  oracle::IntMat out(m.rows(), std::vector<long>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j).get_si();
  return out;
}

std::vector<oracle::IntMat> to_ints(const std::vector<ZMat>& ms) {
  std::vector<oracle::IntMat> out;
  for (const auto& m : ms) out.push_back(to_ints(m));
  return out;
}

// The point group acting on the translation lattice, in lattice coordinates.
GModule lattice_module(const SpaceGroup& g, const FiniteGroup& quotient) {
  QMat b = g.lattice().basis().transpose();
  QMat b_inv = *inverse(b);
  GModule m{ModuleKind::lattice, g.dim(), {}};
  for (const auto& rep : quotient.representatives()) {
    QMat a = b_inv * rep.linear * b;
    ZMat z(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) z(i, j) = a(i, j).get_num();
    m.action.push_back(z);
  }
  return m;
}

std::vector<FibrationSplit> wallpaper_pairs() {
  std::vector<FibrationSplit> out;
  for (const auto& name : catalog().names_of_dimension(2)) {
    const SpaceGroup& g = catalog().group(name);
    for (const auto& n : enumerate_complete_normals(g, 1, 1)) out.push_back(FibrationSplit::analyze(g, n));
  }
  return out;
}

CrossedHom difference(const CrossedHom& a, const CrossedHom& b) {
  CrossedHom out{a.kind, {}};
  for (std::size_t i = 0; i < a.values.size(); ++i) out.values.push_back(a.values[i] - b.values[i]);
  return out;
}

}  // namespace

TEST(FiniteCohomology, Examples) {
  FiniteGroup c2 = FiniteGroup::cyclic(2);
  auto h2 = h_finite(c2, GModule::trivial(ModuleKind::lattice, c2, 1), 2);
  EXPECT_EQ(h2.torsion, std::vector<Integer>{2});
  auto h1 = h_finite(c2, sign_module(c2, ModuleKind::lattice), 1);
  EXPECT_EQ(h1.torsion, std::vector<Integer>{2});
  EXPECT_TRUE(h_finite(c2, sign_module(c2, ModuleKind::rational), 1).trivial());
  EXPECT_TRUE(h_finite(c2, GModule::trivial(ModuleKind::rational, c2, 2), 2).trivial());
  EXPECT_TRUE(h_finite(c2, GModule::trivial(ModuleKind::lattice, c2, 1), 1).trivial());
  EXPECT_TRUE(h_finite(FiniteGroup::cyclic(1), GModule::trivial(ModuleKind::lattice, FiniteGroup::cyclic(1), 3), 2)
                  .trivial());
  auto h3 = h_finite(FiniteGroup::cyclic(3), GModule::trivial(ModuleKind::lattice, FiniteGroup::cyclic(3), 2), 2);
  EXPECT_EQ(h3.order(), 9);
}

TEST(FiniteCohomology, Bounds) {
  FiniteGroup big = FiniteGroup::cyclic(60);
  EXPECT_THROW(h_finite(big, GModule::trivial(ModuleKind::lattice, big, 1), 2), Error);
  EXPECT_THROW(h_finite(FiniteGroup::cyclic(2), GModule::trivial(ModuleKind::torus, FiniteGroup::cyclic(2), 1), 2),
               Error);
  GModule bad{ModuleKind::lattice, 1, {ZMat{{1}}, ZMat{{2}}}};
  EXPECT_THROW(validate_module(FiniteGroup::cyclic(2), bad), Error);
}

TEST(FiniteCohomology, BarDifferentialSquaresToZero) {
  FiniteGroup c4 = FiniteGroup::cyclic(4);
  GModule m{ModuleKind::lattice, 2, {}};
  ZMat rot{{0, -1}, {1, 0}};
  ZMat power = ZMat::identity(2);
  for (int i = 0; i < 4; ++i, power = rot * power) m.action.push_back(power);
  for (std::size_t k = 0; k < 2; ++k) {
    ZMat d0 = bar_differential(c4, m, k), d1 = bar_differential(c4, m, k + 1);
    ZMat product = d1 * d0;
    for (std::size_t i = 0; i < product.rows(); ++i)
      for (std::size_t j = 0; j < product.cols(); ++j) EXPECT_EQ(product(i, j), 0);
  }
}

TEST(FiniteCohomology, PointGroupsMatchOracle) {
  for (const auto& name : catalog().names_of_dimension(2)) {
    const SpaceGroup& g = catalog().group(name);
    FiniteGroup q = FiniteGroup::quotient(g, SubgroupHandle(g, g.lattice_translations()));
    GModule m = lattice_module(g, q);
    auto action = to_ints(m.action);
    for (std::size_t degree : {1u, 2u})
      EXPECT_EQ(h_finite(q, m, degree).order(), oracle::h_order(q.table(), action, 2, degree)) << name;
    EXPECT_EQ(oracle::h1_rational_dimension(q.table(), action, 2), 0u) << name;
    GModule rational = m;
    rational.kind = ModuleKind::rational;
    EXPECT_TRUE(h_finite(q, rational, 1).trivial());
    EXPECT_TRUE(h_finite(q, rational, 2).trivial());
  }
}

TEST(FiniteCohomology, PairQuotientsMatchOracleAndTorusShift) {
  for (const auto& s : wallpaper_pairs()) {
    FiniteGroup q = finite_quotient(s);
    GModule z = center_module(s, q, ModuleKind::lattice);
    auto action = to_ints(z.action);
    auto h2 = h_finite(q, z, 2);
    EXPECT_EQ(h2.order(), oracle::h_order(q.table(), action, z.rank, 2)) << s.ambient().name();
    GModule torus = z;
    torus.kind = ModuleKind::torus;
    EXPECT_EQ(h_finite(q, torus, 1).order(), h2.order()) << s.ambient().name();
  }
}

TEST(Modules, Examples) {
  auto p1 = module_triple(pair("p1", {1, 0}));
  EXPECT_EQ(p1.rank, 1u);
  for (const auto& a : p1.generator_action) EXPECT_EQ(a, ZMat::identity(1));
  auto pg = module_triple(pair("pg", {0, 1}));
  EXPECT_EQ(pg.rank, 1u);
  for (const auto& a : pg.generator_action) EXPECT_EQ(a, ZMat::identity(1));
  auto pm = module_triple(pair("pm", {1, 0}));
  for (const auto& a : pm.generator_action) EXPECT_EQ(a, ZMat::identity(1));
  auto pg_x = module_triple(pair("pg", {1, 0}));
  bool flips = false;
  for (const auto& a : pg_x.generator_action) flips |= a == ZMat{{-1}};
  EXPECT_TRUE(flips);
}

TEST(QuotientCohomology, Examples) {
  auto p1 = h1_gamma_mod_n(pair("p1", {1, 0}));
  EXPECT_EQ(p1.c_dimension, 1u);
  EXPECT_EQ(p1.hom_dimension, 1u);
  EXPECT_TRUE(p1.k_group.torsion.empty());
  EXPECT_EQ(p1.k_group.divisible_rank, 1u);
  // Hom(D∞, S¹) = (Z/2)², one sign per reflection.
  auto pm = h1_gamma_mod_n(pair("pm", {1, 0}));
  EXPECT_EQ(pm.c_dimension, 0u);
  EXPECT_EQ(pm.k_group.torsion, (std::vector<Integer>{2, 2}));
  EXPECT_EQ(pm.k_group.divisible_rank, 0u);
  for (const auto& s : wallpaper_pairs()) {
    auto h = h1_gamma_mod_n(s);
    EXPECT_EQ(h.c_dimension, h.hom_dimension) << s.ambient().name();
  }
}

TEST(KappaCokernel, Examples) {
  EXPECT_EQ(kappa_star_cokernel(pair("p1", {1, 0})).order(), 1);
  auto pm = kappa_star_cokernel(pair("pm", {1, 0}));
  EXPECT_EQ(pm.order(), 4);
  EXPECT_EQ(pm.inflation_part, std::vector<Integer>{2});
  for (const auto& s : wallpaper_pairs()) {
    auto k = kappa_star_cokernel(s);
    EXPECT_EQ(k.bound() % k.order(), 0) << s.ambient().name();
  }
}

TEST(CrossedHoms, BasisAndPrincipalWitness) {
  std::mt19937 rng(23);
  std::uniform_int_distribution<int> coin(-3, 3);
  for (const auto& s : wallpaper_pairs()) {
    auto basis = c_cocycle_basis(s);
    for (const auto& f : basis) {
      ASSERT_TRUE(satisfies_relators(f, s));
      QVec v(s.center_rank());
      for (auto& x : v) {
        x = Rational(coin(rng), 2);
        x.canonicalize();
      }
      CrossedHom p = principal_crossed(s, v);
      EXPECT_TRUE(satisfies_relators(p, s));
      CrossedHom g{ModuleKind::rational, {}};
      for (std::size_t i = 0; i < f.values.size(); ++i) g.values.push_back(f.values[i] + p.values[i]);
      EXPECT_EQ(restriction_to_translations(f, s), restriction_to_translations(g, s));
      auto w = principal_witness(difference(g, f), s);
      ASSERT_TRUE(w) << s.ambient().name();
      EXPECT_EQ(principal_crossed(s, *w).values, p.values);
    }
  }
}

TEST(FiberAutomorphisms, Lifts) {
  const SpaceGroup& z = catalog().group("p1_1d");
  const SpaceGroup& dinf = catalog().group("pm_1d");
  EXPECT_EQ(lift_fiber_automorphism(z, z, z.presentation().generators), AffineMap::identity(1));
  AffineMap t = AffineMap::translation({1});
  AffineMap inv = lift_fiber_automorphism(z, z, {invert(t)});
  EXPECT_EQ(inv.linear, QMat{{-1}});
  const auto& gens = dinf.presentation().generators;
  std::vector<AffineMap> swapped{gens[0], gens[0] * gens[1]};
  AffineMap half = lift_fiber_automorphism(dinf, dinf, swapped);
  for (std::size_t i = 0; i < gens.size(); ++i) EXPECT_EQ(conjugate(half, gens[i]), swapped[i]);
  EXPECT_EQ(half.linear, QMat{{1}});
  EXPECT_THROW(lift_fiber_automorphism(z, z, {AffineMap::translation({2})}), Error);
}

TEST(FiberClass, SelfComparisonIsZero) {
  for (auto s : {pair("p1", {1, 0}), pair("pm", {1, 0}), pair("pg", {1, 0})}) {
    auto c = build_fiber_class(s, s, AffineMap::identity(1), AffineMap::identity(1));
    auto w = class_in_kappa_image(c, s, s);
    ASSERT_TRUE(w);
    EXPECT_TRUE(w->verified);
    EXPECT_EQ(w->d, QMat(1, 1));
  }
}

TEST(FiberClass, ShearIsInKappaImage) {
  auto from = pair("p1", {1, 0});
  auto to = pair("p1", {1, 1});
  auto data = data_of(AffineMap::linear_map(QMat{{1, 0}, {1, 1}}), from, to);
  auto c = build_fiber_class(from, to, data.alpha, data.beta);
  auto w = class_in_kappa_image(c, from, to);
  ASSERT_TRUE(w);
  EXPECT_TRUE(w->verified);
  EXPECT_TRUE(conjugation_test(w->phi, from, to));
}

TEST(FiberClass, MirrorAgainstCenteredHasNoWitness) {
  auto pm = pair("pm", {1, 0});
  auto cm = pair("cm", {1, 0});
  auto betas = affine_conjugacies(pm.base(), cm.base(), 2, 8);
  ASSERT_FALSE(betas.empty());
  for (const auto& alpha : {AffineMap::identity(1), AffineMap::linear_map(QMat{{-1}})})
    for (const auto& beta : betas) {
      auto c = build_fiber_class(pm, cm, alpha, beta);
      EXPECT_FALSE(class_in_kappa_image(c, pm, cm).has_value());
    }
}

TEST(FiberClass, IncompatibleOmegaIsRejected) {
  auto p1 = pair("p1", {1, 0});
  auto pg = pair("pg", {1, 0});
  try {
    build_fiber_class(p1, pg, AffineMap::identity(1), AffineMap::identity(1));
    FAIL() << "expected an ω-compatibility error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("compatibility"), std::string::npos) << e.what();
  }
}

TEST(CocycleLaw, RandomWords) {
  std::mt19937 rng(29);
  auto from = pair("p1", {1, 0});
  auto to = pair("p1", {1, 1});
  auto data = data_of(AffineMap::linear_map(QMat{{1, 0}, {1, 1}}), from, to);
  auto pm = pair("pm", {1, 0});
  auto cm = pair("cm", {1, 0});
  auto beta = affine_conjugacies(pm.base(), cm.base(), 2).front();
  std::vector<std::pair<const FibrationSplit*, ElementCocycle>> laws{
      {&from, dp1_cocycle(data, from)},
      {&from, conjugated_dp1_cocycle(data, from)},
      {&from, principal_cocycle(from, QVec{Rational(1, 3)})},
      {&pm, fiber_class_cocycle(pm, cm, AffineMap::identity(1), beta)},
      {&pm, principal_cocycle(pm, QVec{Rational(1, 2)})}};
  for (const auto& y : c_cocycle_basis(from)) laws.push_back({&from, lifted_cocycle(y, from)});
  for (const auto& [s, f] : laws) {
    auto gens = s->ambient().generators();
    std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
    std::uniform_int_distribution<int> length(1, 6), coin(0, 1);
    auto word = [&] {
      AffineMap x = AffineMap::identity(2);
      for (int i = length(rng); i > 0; --i) x = x * (coin(rng) ? gens[pick(rng)] : invert(gens[pick(rng)]));
      return x;
    };
    for (int trial = 0; trial < 100; ++trial) EXPECT_TRUE(cocycle_law_holds(f, word(), word()));
  }
}
