#pragma once

#include <optional>
#include <string>
#include <vector>

#include "flatfiber/fibration.hpp"

namespace flatfiber {

// h ∈ M·𝒞, i.e. conjugation by the affinity h is an inner automorphism of M.
bool inner_affinity(const SpaceGroup& m, const AffineMap& h);
bool outer_equivalent(const SpaceGroup& m, const AffineMap& h1, const AffineMap& h2);

// Out(M) as affinities normalizing M, one per class modulo M·𝒞; the
// identity comes first. `complete` is false when the list came from a bounded
// search that cannot be exhaustive.
struct OuterData {
  SpaceGroup group;
  std::vector<AffineMap> reps;
  std::vector<std::vector<std::size_t>> table;  // only when complete
  bool complete = false;

  std::optional<std::size_t> class_of(const AffineMap& h) const;
  std::size_t order() const { return reps.size(); }
};

// Validates shipped representatives: each normalizes M, no two are
// equivalent, and products close up. Throws "Out(M) data invalid".
OuterData outer_data_from(const SpaceGroup& m, const std::vector<AffineMap>& reps);
OuterData outer_data_search(const SpaceGroup& m, int bound);

// Automorphisms of Δ realized by affinities within the bound.
std::vector<AffineMap> base_automorphisms(const SpaceGroup& delta, int bound);

// [α_# 𝒪 β]: for each generator δ of Δ's presentation, the affinity of M
// α·Ξ(P^{-1}(β δ β^{-1}))·α^{-1}, with its Out(M) class when known.
struct OmegaInvariant {
  SpaceGroup fiber_model;
  SpaceGroup base_model;
  std::vector<AffineMap> generator_images;
  std::vector<std::optional<std::size_t>> generator_classes;
  std::vector<std::size_t> image;  // Out(M) classes hit, sorted; empty unless classes known
  bool trivial = false;
  bool complete = false;

  // The outer automorphism of M attached to an element of Δ.
  AffineMap evaluate(const AffineMap& delta) const;
  std::string describe() const;
};

// α conjugates N̄ onto M; β conjugates Δ onto Γ'.
OmegaInvariant omega(const FibrationSplit& s, const OuterData& out, const SpaceGroup& base_model,
                     const AffineMap& alpha, const AffineMap& beta);
// First (α, β) found within the bound. Throws "fiber not isomorphic to model"
// or "base not isomorphic to model".
OmegaInvariant omega(const FibrationSplit& s, const OuterData& out, const SpaceGroup& base_model,
                     int bound = 2);

// Equality in Out(M)\Hom_f(Δ, Out(M))/Out(Δ), searching the Out(M)
// representatives and the given automorphisms of Δ.
bool omega_equal(const OmegaInvariant& a, const OmegaInvariant& b, const OuterData& out,
                 const std::vector<AffineMap>& base_autos);

}  // namespace flatfiber
