#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "flatfiber/classify.hpp"
#include "flatfiber/extension.hpp"

using namespace flatfiber;

namespace {

constexpr int kIndeterminate = 2;

struct PairArg {
  std::string group;
  SubgroupHandle normal;
};

QVec parse_vector(const std::string& text) {
  QVec v;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) v.push_back(parse_rational(item));
  return v;
}

// "pm:line=1,0", "P2:plane=0,0,1" or "pm:1,0"; vectors in lattice coordinates.
PairArg parse_pair(const Catalog& catalog, const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) throw Error("pair must look like <group>:line=<vector>");
  PairArg p{text.substr(0, colon), {}};
  const SpaceGroup& g = catalog.group(p.group);
  std::string rest = text.substr(colon + 1);
  bool plane = false;
  if (rest.rfind("line=", 0) == 0) {
    rest = rest.substr(5);
  } else if (rest.rfind("plane=", 0) == 0) {
    rest = rest.substr(6);
    plane = true;
  }
  QVec z = parse_vector(rest);
  if (z.size() != g.dim()) throw Error("vector dimension does not match " + p.group);
  QSubspace line = QSubspace::spanned_by(g.dim(), {g.lattice().basis().transpose() * z});
  QSubspace v = plane ? g_orthogonal_complement(line, g.gram()) : line;
  auto n = complete_normal_along(g, v);
  if (!n) throw Error("no complete normal subgroup along the given span in " + p.group);
  p.normal = std::move(*n);
  return p;
}

Json pair_json(const PairArg& p) {
  Json gens = Json::array();
  for (const auto& g : p.normal.generators()) gens.push_back(to_json(g));
  return {{"group", p.group}, {"normal", gens}};
}

AffineMap affine_arg(const std::string& text, const std::string& what) {
  return affine_from_json(Json::parse(text), what);
}

void print(const Json& j) { std::cout << j.dump(2) << "\n"; }

Json identify_json(const Catalog& catalog, const SpaceGroup& g) {
  auto name = catalog.identify(g);
  return name ? Json(*name) : Json(nullptr);
}

int cmd_catalog_list(const Catalog& catalog, int dim) {
  for (const auto& e : catalog.entries()) {
    if (dim > 0 && e.group.dim() != static_cast<std::size_t>(dim)) continue;
    std::cout << e.group.name() << "\tdim " << e.group.dim() << "\tpoint group order "
              << e.group.point_group_order() << (e.out_reps.empty() ? "" : "\tOut data") << "\t"
              << e.source << "\n";
  }
  return 0;
}

int cmd_analyze(const Catalog& catalog, const std::string& pair_text) {
  PairArg p = parse_pair(catalog, pair_text);
  const SpaceGroup& g = catalog.group(p.group);
  Theorem1Report t1 = theorem1_check(g, p.normal);
  FibrationSplit s = FibrationSplit::analyze(g, p.normal);
  DiscretenessReport disc = base_discreteness_check(g, p.normal, s.kernel());
  print({{"schema", kSchema},
         {"pair", pair_json(p)},
         {"theorem1", {{"passed", t1.passed()}, {"failures", t1.failures}}},
         {"complete", is_complete(g, p.normal)},
         {"fiber", to_json(s.fiber())},
         {"fiber_catalog_name", identify_json(catalog, s.fiber())},
         {"base", to_json(s.base())},
         {"base_catalog_name", identify_json(catalog, s.base())},
         {"center_rank", s.center_rank()},
         {"base_discrete", disc.discrete},
         {"nk_index", disc.index ? Json(to_string(*disc.index)) : Json(nullptr)}});
  return 0;
}

int cmd_extend(const Catalog& catalog, const std::string& fiber, const std::string& base,
               const std::string& theta_file, const std::string& name) {
  Json j = read_json_file(theta_file);
  require_schema(j, theta_file);
  if (!j.contains("lifts")) throw ParseError(theta_file, "missing field \"lifts\"");
  ThetaSpec spec{catalog.group(fiber), catalog.group(base), affine_list_from_json(j["lifts"], theta_file + ".lifts")};
  ExtensionResult r = build_extension(spec, name);
  Json normal = Json::array();
  for (const auto& g : r.normal.generators()) normal.push_back(to_json(g));
  print({{"schema", kSchema},
         {"group", to_json(r.group)},
         {"catalog_name", identify_json(catalog, r.group)},
         {"normal", normal}});
  return 0;
}

int cmd_pair_iso(const Catalog& catalog, const std::string& a, const std::string& b, int bound) {
  PairArg p = parse_pair(catalog, a);
  PairArg q = parse_pair(catalog, b);
  auto from = FibrationSplit::analyze(catalog.group(p.group), p.normal);
  auto to = FibrationSplit::analyze(catalog.group(q.group), q.normal);
  SearchBounds bounds;
  bounds.entry_bound = bound;
  auto cert = pair_isomorphism_search(from, to, bounds);
  Json out{{"schema", kSchema}, {"from", pair_json(p)}, {"to", pair_json(q)}, {"bound", bound}};
  if (!cert) {
    out["result"] = "not found within bounds";
    print(out);
    return kIndeterminate;
  }
  out["result"] = "isomorphic";
  out["phi"] = to_json(cert->phi);
  out["bound_used"] = cert->bound_used;
  out["verified"] = conjugation_test(cert->phi, from, to);
  print(out);
  return 0;
}

Json omega_json(const Catalog& catalog, const FibrationSplit& s) {
  auto fiber = catalog.identify(s.fiber());
  auto base = catalog.identify(s.base());
  if (!fiber || !base) return nullptr;
  OuterData out = catalog.outer(*fiber);
  OmegaInvariant w = omega(s, out, catalog.group(*base));
  Json images = Json::array();
  for (const auto& h : w.generator_images) images.push_back(to_json(h));
  return {{"fiber_model", *fiber},
          {"base_model", *base},
          {"description", w.describe()},
          {"image", w.image},
          {"complete", w.complete},
          {"generator_images", images}};
}

int cmd_cohomology(const Catalog& catalog, const std::string& pair_text, const std::string& against,
                   const std::string& alpha_text, const std::string& beta_text) {
  PairArg p = parse_pair(catalog, pair_text);
  auto s = FibrationSplit::analyze(catalog.group(p.group), p.normal);
  ModuleTriple t = module_triple(s);
  QuotientCohomology q = h1_gamma_mod_n(s);
  KappaCokernel k = kappa_star_cokernel(s);
  FiniteGroup g = finite_quotient(s);
  AbelianGroup h2 = h_finite(g, center_module(s, g, ModuleKind::lattice), 2);
  auto integers = [](const std::vector<Integer>& xs) {
    Json a = Json::array();
    for (const auto& x : xs) a.push_back(to_string(x));
    return a;
  };
  Json actions = Json::array();
  for (const auto& a : t.generator_action) actions.push_back(to_json(to_rational(a)));
  Json out{{"schema", kSchema},
           {"pair", pair_json(p)},
           {"modules", {{"center_rank", t.rank},
                        {"center_frame", to_json(t.center_frame)},
                        {"generator_action", actions},
                        {"exact", t.exact}}},
           {"h1C", q.c_dimension},
           {"hom_TN_C", q.hom_dimension},
           {"h1K", q.k_group.to_string()},
           {"h1K_finite_part", integers(q.k_group.torsion)},
           {"h2_ZN", h2.to_string()},
           {"kappa_cokernel", {{"invariants", integers(k.invariants)},
                               {"inflation_part", integers(k.inflation_part)},
                               {"hom_part", integers(k.hom_part)},
                               {"order", to_string(k.order())},
                               {"bound", to_string(k.bound())}}},
           {"omega", omega_json(catalog, s)}};
  int code = 0;
  if (!against.empty()) {
    PairArg r = parse_pair(catalog, against);
    auto to = FibrationSplit::analyze(catalog.group(r.group), r.normal);
    AffineMap alpha, beta;
    if (!alpha_text.empty()) {
      alpha = affine_arg(alpha_text, "--alpha");
    } else {
      auto found = affine_conjugacies(s.fiber(), to.fiber(), 3, 1);
      if (found.empty()) throw Error("fibers not isomorphic within bounds");
      alpha = found.front();
    }
    if (!beta_text.empty()) {
      beta = affine_arg(beta_text, "--beta");
    } else {
      auto found = affine_conjugacies(s.base(), to.base(), 3, 1);
      if (found.empty()) throw Error("bases not isomorphic within bounds");
      beta = found.front();
    }
    FiberClass c = build_fiber_class(s, to, alpha, beta);
    Json values = Json::array();
    for (const auto& v : c.cocycle.values) values.push_back(to_json(v));
    Json fc{{"against", pair_json(r)}, {"alpha", to_json(alpha)}, {"beta", to_json(beta)}, {"values", values}};
    auto w = class_in_kappa_image(c, s, to);
    fc["in_kappa_image"] = w.has_value();
    if (w) {
      fc["phi"] = to_json(w->phi);
      fc["verified"] = w->verified;
    } else {
      code = kIndeterminate;
    }
    out["fiber_class"] = fc;
  }
  print(out);
  return code;
}

int cmd_classify(const Catalog& catalog, const std::string& base, const std::string& fiber, int bound,
                 const std::string& out_file, bool stability, bool sequential) {
  ClassifyOptions options;
  options.bound = bound;
  options.parallel = !sequential;
  ClassifyResult r = classify(catalog, base, fiber, options);
  Json j = to_json(r);
  bool stable = true;
  if (stability) {
    options.bound = bound + 1;
    ClassifyResult next = classify(catalog, base, fiber, options);
    stable = next.classes.size() == r.classes.size();
    j["stability"] = {{"bound", bound + 1}, {"classes", next.classes.size()}, {"stable", stable}};
  }
  VerifyReport v = verify_classification(r, catalog);
  j["verification"] = {{"certificates", v.certificates}, {"verified", v.verified}, {"failures", v.failures}};
  if (out_file.empty())
    print(j);
  else
    write_json_file(out_file, j);
  std::cerr << r.classes.size() << " classes from " << r.candidates << " candidates\n";
  if (!v.ok()) return 1;
  return r.indeterminate || !stable ? kIndeterminate : 0;
}

int cmd_verify(const Catalog& catalog, const std::string& file) {
  ClassifyResult r = classify_result_from_json(read_json_file(file), file);
  VerifyReport v = verify_classification(r, catalog);
  std::cout << v.verified << "/" << v.certificates << " certificates verified\n";
  for (const auto& f : v.failures) std::cout << "failure: " << f << "\n";
  return v.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact tools for crystallographic group extensions and pairs (Γ, N)"};
  app.require_subcommand(1);
  std::string catalog_dir;
  app.add_option("--catalog", catalog_dir, "Catalog directory");

  auto* catalog_cmd = app.add_subcommand("catalog", "Catalog operations");
  auto* list = catalog_cmd->add_subcommand("list", "List catalog groups");
  catalog_cmd->require_subcommand(1);
  int dim = 0;
  list->add_option("--dim", dim, "Only groups of this dimension");

  std::string pair, against, alpha, beta;
  auto* analyze = app.add_subcommand("analyze", "Fiber/base analysis of a pair");
  analyze->add_option("--pair", pair, "group:line=v or group:plane=v")->required();

  std::string fiber, base, theta, name = "extension";
  auto* extend = app.add_subcommand("extend", "Build the extension of a base by a fiber");
  extend->add_option("--fiber", fiber)->required();
  extend->add_option("--base", base)->required();
  extend->add_option("--theta", theta, "JSON file with the lifts")->required();
  extend->add_option("--name", name);

  int bound = 3;
  auto* pair_iso = app.add_subcommand("pair-iso", "Search for an isomorphism of pairs");
  pair_iso->add_option("--pair", pair)->required();
  pair_iso->add_option("--against", against)->required();
  pair_iso->add_option("--bound", bound);

  auto* coh = app.add_subcommand("cohomology", "Cohomology data of a pair");
  coh->add_option("--pair", pair)->required();
  coh->add_option("--against", against);
  coh->add_option("--alpha", alpha, "fiber affinity as JSON");
  coh->add_option("--beta", beta, "base affinity as JSON");

  std::string out_file;
  bool stability = false, sequential = false;
  int classify_bound = 3;
  auto* cls = app.add_subcommand("classify", "Classify pairs over the catalog");
  cls->add_option("--base", base)->required();
  cls->add_option("--fiber", fiber)->required();
  cls->add_option("--bound", classify_bound);
  cls->add_option("--out", out_file);
  cls->add_flag("--check-stability", stability, "Re-run at bound + 1");
  cls->add_flag("--sequential", sequential);

  std::string classes_file;
  auto* verify = app.add_subcommand("verify", "Re-verify a saved classification");
  verify->add_option("--classes", classes_file)->required();

  CLI11_PARSE(app, argc, argv);
  try {
    Catalog catalog = catalog_dir.empty() ? Catalog::load_default() : Catalog::load(catalog_dir);
    if (list->parsed()) return cmd_catalog_list(catalog, dim);
    if (analyze->parsed()) return cmd_analyze(catalog, pair);
    if (extend->parsed()) return cmd_extend(catalog, fiber, base, theta, name);
    if (pair_iso->parsed()) return cmd_pair_iso(catalog, pair, against, bound);
    if (coh->parsed()) return cmd_cohomology(catalog, pair, against, alpha, beta);
    if (cls->parsed()) return cmd_classify(catalog, base, fiber, classify_bound, out_file, stability, sequential);
    if (verify->parsed()) return cmd_verify(catalog, classes_file);
  } catch (const std::exception& e) {
    std::cerr << "flatfiber: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
