#include "flatfiber/fibration.hpp"

namespace flatfiber {

namespace {

std::vector<QVec> columns(const QMat& m) {
  std::vector<QVec> out;
  for (std::size_t j = 0; j < m.cols(); ++j) out.push_back(m.col(j));
  return out;
}

}  // namespace

SpanData SpanData::with_frames(QMat fiber_frame, QMat base_frame) {
  SpanData s;
  std::size_t n = fiber_frame.rows();
  s.fiber = QSubspace::spanned_by(n, columns(fiber_frame));
  s.base = QSubspace::spanned_by(n, columns(base_frame));
  s.fiber_frame = std::move(fiber_frame);
  s.base_frame = std::move(base_frame);
  s.frame = hstack(s.fiber_frame, s.base_frame);
  auto inv = inverse(s.frame);
  if (!inv) throw Error("fiber and base frames do not span the ambient space");
  s.frame_inverse = *inv;
  std::size_t m = s.fiber_frame.cols();
  QMat keep_fiber(n, n), keep_base(n, n);
  for (std::size_t i = 0; i < n; ++i) (i < m ? keep_fiber : keep_base)(i, i) = 1;
  s.projector_fiber = s.frame * keep_fiber * s.frame_inverse;
  s.projector_base = s.frame * keep_base * s.frame_inverse;
  return s;
}

QMat SpanData::fiber_gram(const QMat& gram) const {
  return fiber_frame.transpose() * gram * fiber_frame;
}

QMat SpanData::base_gram(const QMat& gram) const {
  return base_frame.transpose() * gram * base_frame;
}

AffineMap SpanData::to_frame(const AffineMap& g) const {
  return {frame_inverse * g.linear * frame, frame_inverse * g.shift};
}

AffineMap SpanData::from_frame(const AffineMap& g) const {
  return {frame * g.linear * frame_inverse, frame * g.shift};
}

SpanData span(const SubgroupHandle& n, const QMat& gram) {
  std::size_t dim = n.dim();
  QSubspace v = QSubspace::spanned_by(dim, translation_subgroup(n).basis_vectors());
  QSubspace w = g_orthogonal_complement(v, gram);
  return SpanData::with_frames(v.basis().transpose(), w.basis().transpose());
}

SplitIsometry decompose(const AffineMap& g, const SpanData& s) {
  AffineMap f = s.to_frame(g);
  std::size_t m = s.fiber_dim();
  std::size_t d = s.base_dim();
  if (!f.linear.block(m, 0, d, m).is_zero()) throw Error("subspace not invariant");
  if (!f.linear.block(0, m, m, d).is_zero()) throw Error("complement not invariant");
  return {{f.linear.block(0, 0, m, m), slice(f.shift, 0, m)},
          {f.linear.block(m, m, d, d), slice(f.shift, m, d)}};
}

AffineMap reassemble(const SplitIsometry& parts, const SpanData& s) {
  AffineMap f{direct_sum(parts.fiber.linear, parts.base.linear),
              concat(parts.fiber.shift, parts.base.shift)};
  return s.from_frame(f);
}

Theorem1Report theorem1_check(const SpaceGroup& g, const SubgroupHandle& n) {
  if (!is_normal(g, n)) throw Error("subgroup is not normal");
  Theorem1Report report;
  SpanData s = span(n, g.gram());
  for (const auto& x : g.generators()) {
    if (s.fiber.image(x.linear) != s.fiber) {
      report.invariant_span = false;
      report.failures.push_back("B V != V for " + to_string(x));
    }
  }
  for (const auto& y : n.generators()) {
    bool ok = s.fiber.contains(y.shift);
    for (const auto& w : s.base.basis_vectors())
      if (y.linear * w != w) ok = false;
    if (!ok) {
      report.normal_elements_fiberwise = false;
      report.failures.push_back("normal generator not fiberwise: " + to_string(y));
    }
  }
  return report;
}

SubgroupHandle fiberwise_subgroup(const SpaceGroup& g, const QSubspace& along,
                                  const QSubspace& across) {
  std::size_t n = g.dim();
  std::vector<AffineMap> gens;
  for (const auto& v : intersection(g.lattice(), along).basis_vectors())
    gens.push_back(AffineMap::translation(v));
  QMat ann = along.annihilator();
  std::optional<IntegerSolver> solver;
  if (ann.rows() > 0) solver.emplace(ann * g.lattice().basis().transpose());
  const auto across_basis = across.basis_vectors();
  for (std::size_t i = 1; i < g.cosets().size(); ++i) {
    const auto& c = g.cosets()[i];
    bool fixes = true;
    for (const auto& w : across_basis)
      if (c.linear * w != w) fixes = false;
    if (!fixes) continue;
    if (!solver) {
      gens.push_back(c);
      continue;
    }
    auto z = solver->solve(-(ann * c.shift));
    if (!z) continue;
    QVec t = g.lattice().basis().transpose() * to_rational(*z);
    gens.push_back({c.linear, c.shift + t});
  }
  if (gens.empty()) gens.push_back(AffineMap::identity(n));
  return SubgroupHandle(g, std::move(gens));
}

bool is_complete(const SpaceGroup& g, const SubgroupHandle& n) {
  if (!is_normal(g, n)) return false;
  SpanData s = span(n, g.gram());
  SubgroupHandle full = fiberwise_subgroup(g, s.fiber, s.base);
  return same_subgroup(full, n);
}

SubgroupHandle complete_closure(const SpaceGroup& g, const SubgroupHandle& n) {
  SubgroupHandle current = n;
  for (;;) {
    SpanData s = span(current, g.gram());
    SubgroupHandle next = fiberwise_subgroup(g, s.fiber, s.base);
    if (span(next, g.gram()).fiber == s.fiber) return next;
    current = next;
  }
}

SubgroupHandle action_kernel(const SpaceGroup& g, const SpanData& s) {
  return fiberwise_subgroup(g, s.base, s.fiber);
}

DiscretenessReport base_discreteness_check(const SpaceGroup& g, const SubgroupHandle& n,
                                           const SubgroupHandle& k) {
  std::vector<AffineMap> gens = n.generators();
  gens.insert(gens.end(), k.generators().begin(), k.generators().end());
  SubgroupHandle nk(g, gens);
  DiscretenessReport report;
  const auto& lattice = nk.closure().lattice;
  report.discrete = lattice.full_rank();
  if (report.discrete) {
    Integer points(static_cast<unsigned long>(g.point_group_order() / nk.closure().order()));
    report.index = points * lattice_index(g.lattice(), lattice);
  }
  return report;
}

SpaceGroup fiber_group(const SpaceGroup& g, const SubgroupHandle& n, const SpanData& s) {
  std::vector<AffineMap> parts;
  for (const auto& y : n.generators()) parts.push_back(decompose(y, s).fiber);
  return SpaceGroup::from_generators(g.name() + "/fiber", s.fiber_gram(g.gram()), parts,
                                     g.point_group_order() + 1);
}

SpaceGroup base_group(const SpaceGroup& g, const SubgroupHandle& n, const SpanData& s) {
  std::vector<AffineMap> parts;
  for (const auto& x : g.generators()) parts.push_back(decompose(x, s).base);
  SpaceGroup base;
  try {
    base = SpaceGroup::from_generators(g.name() + "/base", s.base_gram(g.gram()), parts,
                                       g.point_group_order() + 1);
  } catch (const Error&) {
    throw Error("quotient not a space group");
  }
  // P is injective iff the translations of N are all of L ∩ V and the finite
  // quotients G/TN and G'/proj(L) have the same order.
  ZLattice fiber_lattice = intersection(g.lattice(), s.fiber);
  if (translation_subgroup(n) != fiber_lattice) throw Error("quotient not a space group");
  std::vector<QVec> projected;
  for (const auto& v : g.lattice().basis_vectors())
    projected.push_back(slice(s.frame_inverse * v, s.fiber_dim(), s.base_dim()));
  ZLattice proj = ZLattice::generated_by(s.base_dim(), projected);
  Integer quotient_order(static_cast<unsigned long>(g.point_group_order()));
  Integer base_order = Integer(static_cast<unsigned long>(base.point_group_order())) *
                       lattice_index(base.lattice(), proj);
  if (quotient_order != base_order * Integer(static_cast<unsigned long>(n.closure().order())))
    throw Error("quotient not a space group");
  return base;
}

SpanData canonical_span(const SpaceGroup& g, const SubgroupHandle& n) {
  SpanData rough = span(n, g.gram());
  ZLattice fiber_lattice = intersection(g.lattice(), rough.fiber);
  QMat fiber_frame = fiber_lattice.basis().transpose();
  SpanData staged = SpanData::with_frames(fiber_frame, rough.base_frame);
  SpaceGroup base = base_group(g, n, staged);
  QMat base_frame = rough.base_frame * base.lattice().basis().transpose();
  return SpanData::with_frames(fiber_frame, base_frame);
}

FibrationSplit FibrationSplit::analyze(const SpaceGroup& g, const SubgroupHandle& n,
                                       const std::optional<SpanData>& frames) {
  if (!is_normal(g, n)) throw Error("subgroup is not normal");
  if (!is_complete(g, n)) throw Error("subgroup is not complete");
  FibrationSplit f;
  f.ambient_ = g;
  f.normal_ = n;
  f.span_ = frames ? *frames : canonical_span(g, n);
  if (f.span_.fiber_dim() == 0 || f.span_.base_dim() == 0) throw Error("degenerate fibration");
  f.fiber_ = fiber_group(g, n, f.span_);
  f.base_ = base_group(g, n, f.span_);
  f.kernel_ = action_kernel(g, f.span_);
  for (const auto& c : g.cosets()) f.coset_splits_.push_back(decompose(c, f.span_));
  QMat base_rows = f.span_.frame_inverse.block(f.span_.fiber_dim(), 0, f.span_.base_dim(),
                                               g.dim());
  f.lift_solver_.emplace(base_rows * g.lattice().basis().transpose());
  for (const auto& gen : f.base_.presentation().generators) f.base_lifts_.push_back(f.lift(gen));

  f.center_ = center_lattice(f.fiber_);
  f.center_frame_ = f.center_.basis().transpose();

  std::vector<QVec> projected;
  for (const auto& v : g.lattice().basis_vectors())
    projected.push_back(slice(f.span_.frame_inverse * v, f.fiber_dim(), f.base_dim()));
  f.projected_ = ZLattice::generated_by(f.base_dim(), projected);
  return f;
}

AffineMap FibrationSplit::lift(const AffineMap& base_element) const {
  for (std::size_t i = 0; i < coset_splits_.size(); ++i) {
    const auto& part = coset_splits_[i].base;
    if (part.linear != base_element.linear) continue;
    auto z = lift_solver_->solve(base_element.shift - part.shift);
    if (!z) continue;
    const auto& c = ambient_.cosets()[i];
    return {c.linear, c.shift + ambient_.lattice().basis().transpose() * to_rational(*z)};
  }
  throw Error("element is not in the base group");
}

ZMat FibrationSplit::center_action(const AffineMap& g) const {
  QMat bar = split(g).fiber.linear;
  std::size_t r = center_rank();
  ZMat rho(r, r);
  for (std::size_t j = 0; j < r; ++j) {
    auto c = center_.coordinates(bar * center_frame_.col(j));
    if (!c) throw Error("action does not preserve Z(N)");
    for (std::size_t i = 0; i < r; ++i) rho(i, j) = (*c)[i];
  }
  return rho;
}

std::optional<QVec> FibrationSplit::center_coordinates(const QVec& fiber_vector) const {
  return center_.rational_coordinates(fiber_vector);
}

ZMat FibrationSplit::projected_action(const AffineMap& g) const {
  QMat prime = split(g).base.linear;
  std::size_t d = projected_.rank();
  ZMat sigma(d, d);
  for (std::size_t j = 0; j < d; ++j) {
    auto c = projected_.coordinates(prime * projected_.basis().row(j));
    if (!c) throw Error("action does not preserve the projected lattice");
    for (std::size_t i = 0; i < d; ++i) sigma(i, j) = (*c)[i];
  }
  return sigma;
}

}  // namespace flatfiber
