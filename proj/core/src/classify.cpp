#include "flatfiber/classify.hpp"

#include <algorithm>
#include <future>
#include <memory>
#include <numeric>

#include "flatfiber/json_io.hpp"

namespace flatfiber {

namespace {

struct Candidate {
  std::string key;
  std::string group;
  SubgroupHandle normal;
  std::shared_ptr<const FibrationSplit> split;
  OmegaInvariant omega;
};

std::vector<ZVec> primitive_vectors(std::size_t n, int k) {
  std::vector<ZVec> out;
  ZVec v(n, Integer(-k));
  for (;;) {
    std::size_t lead = 0;
    while (lead < n && v[lead] == 0) ++lead;
    if (lead < n && v[lead] > 0) {
      Integer g = 0;
      for (const auto& x : v) g = gcd_of(g, x);
      if (g == 1) out.push_back(v);
    }
    std::size_t i = n;
    while (i > 0 && v[i - 1] == k) v[--i] = -k;
    if (i == 0) break;
    ++v[i - 1];
  }
  return out;
}

bool invariant(const SpaceGroup& g, const QSubspace& v) {
  for (const auto& a : g.point_group())
    if (v.image(a) != v) return false;
  return true;
}

std::vector<Candidate> analyze_group(const Catalog& catalog, const std::string& name,
                                     const OuterData& out, const SpaceGroup& base_model,
                                     const ClassifyOptions& options) {
  const SpaceGroup& g = catalog.group(name);
  std::vector<Candidate> found;
  for (const auto& n : enumerate_complete_normals(g, out.group.dim(), options.bound)) {
    auto split = std::make_shared<const FibrationSplit>(FibrationSplit::analyze(g, n));
    auto alphas = affine_conjugacies(split->fiber(), out.group, options.model_bound, 1);
    if (alphas.empty()) continue;
    auto betas = affine_conjugacies(base_model, split->base(), options.model_bound, 1);
    if (betas.empty()) continue;
    OmegaInvariant w = omega(*split, out, base_model, alphas.front(), betas.front());
    found.push_back({candidate_key(g, n), name, n, split, std::move(w)});
  }
  return found;
}

enum class Verdict { merged, split, indeterminate };

struct CohomologyOutcome {
  Verdict verdict = Verdict::indeterminate;
  std::optional<AffineMap> phi;
  std::size_t compatible = 0;
};

// Runs the κ∗-image test over the bounded ω-compatible (α, β).
CohomologyOutcome cohomology_test(const FibrationSplit& from, const FibrationSplit& to,
                                  const SearchBounds& bounds) {
  CohomologyOutcome outcome;
  auto alphas = affine_conjugacies(from.fiber(), to.fiber(), bounds.entry_bound,
                                   bounds.translation_class_limit);
  auto betas = affine_conjugacies(from.base(), to.base(), bounds.entry_bound,
                                  bounds.translation_class_limit);
  bool unverified = false;
  for (const auto& alpha : alphas)
    for (const auto& beta : betas) {
      FiberClass c;
      try {
        c = build_fiber_class(from, to, alpha, beta);
      } catch (const Error&) {
        continue;
      }
      ++outcome.compatible;
      auto w = class_in_kappa_image(c, from, to);
      if (!w) continue;
      if (w->verified) {
        outcome.verdict = Verdict::merged;
        outcome.phi = w->phi;
        return outcome;
      }
      unverified = true;
    }
  outcome.verdict = outcome.compatible > 0 && !unverified ? Verdict::split : Verdict::indeterminate;
  return outcome;
}

std::string point_string(const std::vector<QMat>& points) {
  std::vector<QMat> sorted = points;
  std::sort(sorted.begin(), sorted.end());
  std::string out;
  for (const auto& p : sorted) out += to_string(p);
  return out;
}

Json to_json(const std::vector<AffineMap>& maps) {
  Json out = Json::array();
  for (const auto& m : maps) out.push_back(to_json(m));
  return out;
}

Json to_json(const std::vector<Integer>& xs) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(to_string(x));
  return out;
}

std::vector<Integer> integers_from_json(const Json& j, const std::string& where) {
  std::vector<Integer> out;
  if (!j.is_array()) throw ParseError(where, "expected an array");
  for (std::size_t i = 0; i < j.size(); ++i) {
    Rational q = rational_from_json(j[i], where + "[" + std::to_string(i) + "]");
    if (q.get_den() != 1) throw ParseError(where + "[" + std::to_string(i) + "]", "expected an integer");
    out.push_back(q.get_num());
  }
  return out;
}

const Json& need(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key))
    throw ParseError(where, std::string("missing field \"") + key + "\"");
  return j[key];
}

}  // namespace

std::optional<SubgroupHandle> complete_normal_along(const SpaceGroup& g, const QSubspace& v) {
  if (!invariant(g, v)) return std::nullopt;
  SubgroupHandle candidate = fiberwise_subgroup(g, v, g_orthogonal_complement(v, g.gram()));
  if (span(candidate, g.gram()).fiber != v || !is_complete(g, candidate)) return std::nullopt;
  return candidate;
}

std::vector<SubgroupHandle> enumerate_complete_normals(const SpaceGroup& g, std::size_t m, int k) {
  std::size_t n = g.dim();
  std::vector<SubgroupHandle> out;
  if (m == 0 || m >= n) return out;
  if (m != 1 && m + 1 != n) throw Error("fiber dimension not supported");
  QMat basis_cols = g.lattice().basis().transpose();
  for (const auto& z : primitive_vectors(n, k)) {
    QVec v = basis_cols * to_rational(z);
    QSubspace line = QSubspace::spanned_by(n, {v});
    QSubspace along = m == 1 ? line : g_orthogonal_complement(line, g.gram());
    auto candidate = complete_normal_along(g, along);
    if (!candidate) continue;
    bool seen = std::any_of(out.begin(), out.end(),
                            [&](const SubgroupHandle& h) { return same_subgroup(h, *candidate); });
    if (!seen) out.push_back(std::move(*candidate));
  }
  return out;
}

std::string candidate_key(const SpaceGroup& g, const SubgroupHandle& n) {
  return g.name() + "|" + to_string(n.closure().lattice.basis()) + "|" + point_string(n.closure().points);
}

ClassifyResult classify(const Catalog& catalog, const std::string& base_name,
                        const std::string& fiber_name, const ClassifyOptions& options) {
  const SpaceGroup& base_model = catalog.group(base_name);
  OuterData out = catalog.outer(fiber_name, options.model_bound);
  auto base_autos = base_automorphisms(base_model, options.model_bound);
  std::size_t dim = base_model.dim() + out.group.dim();
  bool exhaustive = dim == 2;

  ClassifyResult result{base_name, fiber_name, options.bound, 0, {}, false, {}};
  if (!out.complete) {
    result.indeterminate = true;
    result.notes.push_back("Out(" + fiber_name + ") known within bounds only");
  }
  std::vector<std::string> pool = options.pool.empty() ? catalog.names_of_dimension(dim) : options.pool;

  std::vector<Candidate> candidates;
  if (options.parallel) {
    std::vector<std::future<std::vector<Candidate>>> tasks;
    for (const auto& name : pool)
      tasks.push_back(std::async(std::launch::async, analyze_group, std::cref(catalog), name,
                                 std::cref(out), std::cref(base_model), std::cref(options)));
    for (auto& t : tasks)
      for (auto& c : t.get()) candidates.push_back(std::move(c));
  } else {
    for (const auto& name : pool)
      for (auto& c : analyze_group(catalog, name, out, base_model, options))
        candidates.push_back(std::move(c));
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate& a, const Candidate& b) { return a.key < b.key; });
  result.candidates = candidates.size();

  std::vector<const Candidate*> reps;
  for (const auto& c : candidates) {
    std::vector<SplitRecord> splits;
    bool merged = false;
    for (std::size_t i = 0; i < reps.size() && !merged; ++i) {
      const Candidate& rep = *reps[i];
      if (!omega_equal(rep.omega, c.omega, out, base_autos)) {
        splits.push_back({i, "omega", !out.complete});
        continue;
      }
      MergeRecord record{c.group, c.normal.generators(), {}, 0, false};
      if (auto cert = pair_isomorphism_search(*rep.split, *c.split, options.search)) {
        record.phi = cert->phi;
        record.bound_used = cert->bound_used;
        auto fc = build_fiber_class(*rep.split, *c.split, cert->data.alpha, cert->data.beta);
        auto w = class_in_kappa_image(fc, *rep.split, *c.split);
        record.kappa_witness = w && w->verified;
        if (!record.kappa_witness)
          result.notes.push_back("merge of " + c.key + " lacks a κ∗-image witness");
        result.classes[i].merged.push_back(std::move(record));
        merged = true;
        continue;
      }
      CohomologyOutcome outcome = cohomology_test(*rep.split, *c.split, options.search);
      if (outcome.verdict == Verdict::merged) {
        record.phi = *outcome.phi;
        record.kappa_witness = true;
        result.classes[i].merged.push_back(std::move(record));
        merged = true;
      } else if (outcome.verdict == Verdict::split) {
        splits.push_back({i, "cohomology", !exhaustive});
        if (!exhaustive) result.indeterminate = true;
      } else {
        splits.push_back({i, "indeterminate", true});
        result.indeterminate = true;
        result.notes.push_back("no verdict between " + rep.key + " and " + c.key);
      }
    }
    if (merged) continue;
    reps.push_back(&c);
    const FibrationSplit& s = *c.split;
    KappaCokernel kappa = kappa_star_cokernel(s);
    PairClassRecord rec;
    rec.group = c.group;
    rec.normal_generators = c.normal.generators();
    rec.fiber_name = fiber_name;
    rec.base_name = base_name;
    rec.omega = c.omega.describe();
    rec.omega_image = c.omega.image;
    rec.omega_generator_images = c.omega.generator_images;
    rec.center_rank = s.center_rank();
    rec.kappa_cokernel = kappa.invariants;
    rec.kappa_bound = kappa.bound();
    rec.h1_k = h1_gamma_mod_n(s).k_group.to_string();
    rec.splits = std::move(splits);
    result.classes.push_back(std::move(rec));
  }
  return result;
}

VerifyReport verify_classification(const ClassifyResult& result, const Catalog& catalog) {
  VerifyReport report;
  for (std::size_t i = 0; i < result.classes.size(); ++i) {
    const auto& rec = result.classes[i];
    std::string label = "class " + std::to_string(i);
    try {
      const SpaceGroup& g = catalog.group(rec.group);
      SubgroupHandle n(g, rec.normal_generators);
      if (!is_complete(g, n)) report.failures.push_back(label + ": representative not complete");
      for (const auto& m : rec.merged) {
        ++report.certificates;
        const SpaceGroup& g2 = catalog.group(m.group);
        SubgroupHandle n2(g2, m.normal_generators);
        if (conjugation_test(m.phi, g, n, g2, n2))
          ++report.verified;
        else
          report.failures.push_back(label + ": certificate for " + m.group + " fails");
      }
    } catch (const Error& e) {
      report.failures.push_back(label + ": " + e.what());
    }
  }
  return report;
}

Json to_json(const ClassifyResult& result) {
  Json classes = Json::array();
  for (const auto& rec : result.classes) {
    Json merged = Json::array();
    for (const auto& m : rec.merged)
      merged.push_back({{"group", m.group},
                        {"normal", to_json(m.normal_generators)},
                        {"phi", to_json(m.phi)},
                        {"bound_used", m.bound_used},
                        {"kappa_witness", m.kappa_witness}});
    Json splits = Json::array();
    for (const auto& s : rec.splits)
      splits.push_back({{"against", s.against}, {"kind", s.kind}, {"within_bounds", s.within_bounds}});
    classes.push_back({{"group", rec.group},
                       {"normal", to_json(rec.normal_generators)},
                       {"fiber", rec.fiber_name},
                       {"base", rec.base_name},
                       {"omega", {{"description", rec.omega},
                                  {"image", rec.omega_image},
                                  {"generator_images", to_json(rec.omega_generator_images)}}},
                       {"cohomology", {{"center_rank", rec.center_rank},
                                       {"kappa_cokernel", to_json(rec.kappa_cokernel)},
                                       {"kappa_bound", to_string(rec.kappa_bound)},
                                       {"h1_k", rec.h1_k}}},
                       {"merged", merged},
                       {"splits", splits}});
  }
  return {{"schema", kSchema},
          {"base", result.base_name},
          {"fiber", result.fiber_name},
          {"bound", result.bound},
          {"candidates", result.candidates},
          {"indeterminate", result.indeterminate},
          {"notes", result.notes},
          {"classes", classes}};
}

ClassifyResult classify_result_from_json(const Json& j, const std::string& where) {
  require_schema(j, where);
  ClassifyResult r;
  try {
    r.base_name = need(j, "base", where).get<std::string>();
    r.fiber_name = need(j, "fiber", where).get<std::string>();
    r.bound = need(j, "bound", where).get<int>();
    r.candidates = need(j, "candidates", where).get<std::size_t>();
    r.indeterminate = need(j, "indeterminate", where).get<bool>();
    r.notes = need(j, "notes", where).get<std::vector<std::string>>();
  } catch (const Json::type_error& e) {
    throw ParseError(where, e.what());
  }
  const Json& classes = need(j, "classes", where);
  for (std::size_t i = 0; i < classes.size(); ++i) {
    std::string here = where + ".classes[" + std::to_string(i) + "]";
    const Json& c = classes[i];
    PairClassRecord rec;
    try {
      rec.group = need(c, "group", here).get<std::string>();
      rec.fiber_name = need(c, "fiber", here).get<std::string>();
      rec.base_name = need(c, "base", here).get<std::string>();
      const Json& w = need(c, "omega", here);
      rec.omega = need(w, "description", here + ".omega").get<std::string>();
      rec.omega_image = need(w, "image", here + ".omega").get<std::vector<std::size_t>>();
      rec.omega_generator_images =
          affine_list_from_json(need(w, "generator_images", here + ".omega"), here + ".omega.generator_images");
      const Json& h = need(c, "cohomology", here);
      rec.center_rank = need(h, "center_rank", here + ".cohomology").get<std::size_t>();
      rec.kappa_cokernel =
          integers_from_json(need(h, "kappa_cokernel", here + ".cohomology"), here + ".cohomology.kappa_cokernel");
      rec.kappa_bound = rational_from_json(need(h, "kappa_bound", here + ".cohomology"),
                                           here + ".cohomology.kappa_bound").get_num();
      rec.h1_k = need(h, "h1_k", here + ".cohomology").get<std::string>();
      for (const auto& s : need(c, "splits", here))
        rec.splits.push_back({s.at("against").get<std::size_t>(), s.at("kind").get<std::string>(),
                              s.at("within_bounds").get<bool>()});
    } catch (const Json::exception& e) {
      throw ParseError(here, e.what());
    }
    rec.normal_generators = affine_list_from_json(need(c, "normal", here), here + ".normal");
    const Json& merged = need(c, "merged", here);
    for (std::size_t k = 0; k < merged.size(); ++k) {
      std::string mh = here + ".merged[" + std::to_string(k) + "]";
      const Json& m = merged[k];
      MergeRecord mr;
      try {
        mr.group = need(m, "group", mh).get<std::string>();
        mr.bound_used = need(m, "bound_used", mh).get<int>();
        mr.kappa_witness = need(m, "kappa_witness", mh).get<bool>();
      } catch (const Json::exception& e) {
        throw ParseError(mh, e.what());
      }
      mr.normal_generators = affine_list_from_json(need(m, "normal", mh), mh + ".normal");
      mr.phi = affine_from_json(need(m, "phi", mh), mh + ".phi");
      rec.merged.push_back(std::move(mr));
    }
    r.classes.push_back(std::move(rec));
  }
  return r;
}

}  // namespace flatfiber
