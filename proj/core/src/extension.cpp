#include "flatfiber/extension.hpp"

namespace flatfiber {

namespace {

AffineMap embed_fiber(const AffineMap& nu, std::size_t base_dim) {
  return {direct_sum(nu.linear, QMat::identity(base_dim)), concat(nu.shift, QVec(base_dim))};
}

SpanData product_span(std::size_t m, std::size_t d) {
  QMat fiber_frame(m + d, m), base_frame(m + d, d);
  for (std::size_t i = 0; i < m; ++i) fiber_frame(i, i) = 1;
  for (std::size_t i = 0; i < d; ++i) base_frame(m + i, i) = 1;
  return SpanData::with_frames(fiber_frame, base_frame);
}

}  // namespace

ThetaReport validate_theta(const ThetaSpec& spec) {
  ThetaReport report;
  const auto& pres = spec.base.presentation();
  if (spec.lifts.size() != pres.size()) {
    report.homomorphism = false;
    report.failures.push_back("expected " + std::to_string(pres.size()) + " lifts, got " +
                              std::to_string(spec.lifts.size()));
    return report;
  }
  for (std::size_t i = 0; i < spec.lifts.size(); ++i) {
    const auto& lift = spec.lifts[i];
    if (lift.dim() != spec.fiber.dim() || !preserves_gram(lift, spec.fiber.gram()) ||
        !conjugates_onto(lift, spec.fiber, spec.fiber)) {
      report.normalizes = false;
      report.failures.push_back("lift of " + pres.names[i] + " does not normalize the fiber group");
    }
  }
  if (!report.normalizes) return report;
  for (const auto& relator : pres.relators) {
    if (!spec.fiber.contains(evaluate(relator, spec.lifts))) {
      report.homomorphism = false;
      std::string spelled;
      for (const auto& s : pres.spell(relator)) spelled += (spelled.empty() ? "" : " ") + s;
      report.failures.push_back("relator [" + spelled + "] does not map into the fiber group");
    }
  }
  return report;
}

ExtensionResult build_extension(const ThetaSpec& spec, std::string name) {
  ThetaReport report = validate_theta(spec);
  if (!report.valid()) throw Error("invalid action: " + report.failures.front());
  std::size_t m = spec.fiber.dim();
  std::size_t d = spec.base.dim();
  const auto& base_gens = spec.base.presentation().generators;

  ExtensionResult result;
  std::vector<AffineMap> normal_gens;
  for (const auto& nu : spec.fiber.generators()) normal_gens.push_back(embed_fiber(nu, d));
  std::vector<AffineMap> gens = normal_gens;
  for (std::size_t i = 0; i < base_gens.size(); ++i) {
    const auto& lift = spec.lifts[i];
    const auto& delta = base_gens[i];
    AffineMap hat{direct_sum(lift.linear, delta.linear), concat(lift.shift, delta.shift)};
    result.hat_lifts.push_back(hat);
    gens.push_back(hat);
  }
  QMat gram = direct_sum(spec.fiber.gram(), spec.base.gram());
  try {
    result.group = SpaceGroup::from_generators(std::move(name), gram, gens);
  } catch (const Error& e) {
    throw Error(std::string("internal error: extension closure failed: ") + e.what());
  }
  result.normal = SubgroupHandle(result.group, normal_gens);
  result.product_span = product_span(m, d);

  if (!is_complete(result.group, result.normal))
    throw Error("internal error: embedded fiber group is not complete");
  FibrationSplit split = FibrationSplit::analyze(result.group, result.normal, result.product_span);
  if (split.base().lattice() != spec.base.lattice() ||
      split.base().cosets() != spec.base.cosets())
    throw Error("internal error: base group not reproduced");
  for (std::size_t i = 0; i < base_gens.size(); ++i) {
    AffineMap fiber_part = split.xi(split.lift(base_gens[i]));
    if (!spec.fiber.contains(fiber_part * invert(spec.lifts[i])))
      throw Error("internal error: fiber action does not match the lifts");
  }
  return result;
}

bool verify_uniqueness(const ExtensionResult& result, const ThetaSpec& spec,
                       const AffineMap& candidate) {
  if (candidate.dim() != result.group.dim()) throw PreconditionError("dimension mismatch");
  AffineMap inv;
  try {
    inv = invert(candidate);
  } catch (const Error&) {
    throw PreconditionError("candidate is not invertible");
  }
  for (const auto& y : result.normal.generators()) {
    if (!result.normal.contains(candidate * y * inv) || !result.normal.contains(inv * y * candidate))
      throw PreconditionError("candidate does not normalize N");
  }
  SplitIsometry parts;
  try {
    parts = decompose(candidate, result.product_span);
  } catch (const Error&) {
    throw PreconditionError("candidate does not preserve the fibration");
  }
  if (!spec.base.contains(parts.base)) throw PreconditionError("base part not in the base group");
  AffineMap expected = evaluate(normal_form_word(spec.base, parts.base), spec.lifts);
  if (!spec.fiber.contains(parts.fiber * invert(expected)))
    throw PreconditionError("fiber part does not match the action");
  return result.group.contains(candidate);
}

ThetaSpec theta_of_split(const FibrationSplit& split) {
  ThetaSpec spec{split.fiber(), split.base(), {}};
  for (const auto& lift : split.base_generator_lifts()) spec.lifts.push_back(split.xi(lift));
  return spec;
}

}  // namespace flatfiber
