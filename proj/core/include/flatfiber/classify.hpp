#pragma once

#include <optional>
#include <string>
#include <vector>

#include "flatfiber/catalog.hpp"
#include "flatfiber/cohomology.hpp"
#include "flatfiber/omega.hpp"
#include "flatfiber/pairiso.hpp"

namespace flatfiber {

// {a + A : a ∈ V, V^⊥ ⊆ Fix(A)} when V is point-group invariant and this
// subgroup is complete with span V.
std::optional<SubgroupHandle> complete_normal_along(const SpaceGroup& g, const QSubspace& v);

// Complete normal subgroups whose span is a point-group-invariant rational
// m-subspace. Lines come from primitive lattice vectors with coordinates in
// [-k, k] (m = 1); hyperplanes from the G-orthogonal complements of such
// vectors (m = n - 1). Exactly equal subgroups are reported once.
std::vector<SubgroupHandle> enumerate_complete_normals(const SpaceGroup& g, std::size_t m, int k);

// Sort key: group name, lattice of N, point parts of N.
std::string candidate_key(const SpaceGroup& g, const SubgroupHandle& n);

struct ClassifyOptions {
  int bound = 2;        // candidate span bound k
  int model_bound = 2;  // entry bound when matching N̄ and Γ' to the models
  SearchBounds search;
  std::vector<std::string> pool;  // empty: every catalog group of dimension m + d
  bool parallel = true;
};

struct MergeRecord {
  std::string group;
  std::vector<AffineMap> normal_generators;
  AffineMap phi;  // ambient coordinates, representative -> member
  int bound_used = 0;
  bool kappa_witness = false;  // the fiber class of φ's (α, β) lies in the κ∗-image
};

struct SplitRecord {
  std::size_t against = 0;  // index of an earlier class
  std::string kind;         // "omega" or "cohomology"
  bool within_bounds = false;
};

struct PairClassRecord {
  std::string group;
  std::vector<AffineMap> normal_generators;
  std::string fiber_name;
  std::string base_name;
  std::string omega;
  std::vector<std::size_t> omega_image;
  std::vector<AffineMap> omega_generator_images;
  std::size_t center_rank = 0;
  std::vector<Integer> kappa_cokernel;
  Integer kappa_bound = 1;
  std::string h1_k;
  std::vector<MergeRecord> merged;
  std::vector<SplitRecord> splits;
};

struct ClassifyResult {
  std::string base_name;
  std::string fiber_name;
  int bound = 0;
  std::size_t candidates = 0;
  std::vector<PairClassRecord> classes;
  bool indeterminate = false;  // some verdict only holds within search bounds
  std::vector<std::string> notes;
};

ClassifyResult classify(const Catalog& catalog, const std::string& base_name,
                        const std::string& fiber_name, const ClassifyOptions& options = {});

struct VerifyReport {
  std::size_t certificates = 0;
  std::size_t verified = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty() && verified == certificates; }
};
// Rebuilds every pair from the catalog and re-runs conjugation_test on each
// merge certificate.
VerifyReport verify_classification(const ClassifyResult& result, const Catalog& catalog);

Json to_json(const ClassifyResult& result);
ClassifyResult classify_result_from_json(const Json& j, const std::string& where);

}  // namespace flatfiber
