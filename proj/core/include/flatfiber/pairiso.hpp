#pragma once

#include <optional>
#include <vector>

#include "flatfiber/fibration.hpp"

namespace flatfiber {

// Blocks of an affinity c + C in the fiber/base frames of two spans:
// C = [[fiber_linear, mixed], [0, base_linear]], c = (fiber_shift, base_shift).
struct AffinityBlocks {
  QMat fiber_linear;
  QMat base_linear;
  QMat mixed;
  QVec fiber_shift;
  QVec base_shift;
  friend bool operator==(const AffinityBlocks&, const AffinityBlocks&) = default;
};

// Throws "affinity does not respect spans" unless C V1 ⊆ V2.
AffinityBlocks blocks_of(const AffineMap& phi, const SpanData& from, const SpanData& to);
AffineMap assemble(const AffinityBlocks& blocks, const SpanData& from, const SpanData& to);

struct BlockIdentityReport {
  bool fiber_inverse = false;   // fiber block of C^{-1} is C̄^{-1}
  bool base_inverse = false;    // base block of C^{-1} is C'^{-1}
  bool mixed_inverse = false;   // mixed block of C^{-1} is -C̄^{-1} C̄' C'^{-1}
  bool mixed_in_center = false; // C̄' V1^⊥ ⊆ Span(Z(N2))
  bool mixed_equivariant = false;  // C̄' B' = C̄ B̄ C̄^{-1} C̄' on generators
  bool all() const {
    return fiber_inverse && base_inverse && mixed_inverse && mixed_in_center && mixed_equivariant;
  }
};
BlockIdentityReport block_inverse_identities(const AffineMap& phi, const FibrationSplit& from,
                               const FibrationSplit& to);

// α: fiber frame 1 -> fiber frame 2; β: base frame 1 -> base frame 2;
// d: base frame 1 -> Span(Z(N2)) in fiber frame 2.
struct PairMorphismData {
  AffineMap alpha;
  AffineMap beta;
  QMat d;
  friend bool operator==(const PairMorphismData&, const PairMorphismData&) = default;
};

AffineMap assemble_phi(const PairMorphismData& data, const FibrationSplit& from,
                       const FibrationSplit& to);
PairMorphismData data_of(const AffineMap& phi, const FibrationSplit& from, const FibrationSplit& to);
// α N̄1 α^{-1} = N̄2, β Γ1' β^{-1} = Γ2', D equivariant with image in Span(Z(N2)).
bool is_admissible(const PairMorphismData& data, const FibrationSplit& from,
                   const FibrationSplit& to);
// Ξ2 P2^{-1} β∗ P1 = (D p1)⋆ α♯ Ξ1 on generators.
bool theorem3_condition(const PairMorphismData& data, const FibrationSplit& from,
                        const FibrationSplit& to);
// α♯^{-1} Ξ2 P2^{-1} β∗ P1 = (C̄^{-1} D p1)⋆ Ξ1 on generators.
bool theorem3_condition_conjugated(const PairMorphismData& data, const FibrationSplit& from,
                                   const FibrationSplit& to);
bool conjugation_test(const AffineMap& phi, const SpaceGroup& g1, const SubgroupHandle& n1,
                      const SpaceGroup& g2, const SubgroupHandle& n2);
bool conjugation_test(const AffineMap& phi, const FibrationSplit& from, const FibrationSplit& to);

struct SearchBounds {
  int entry_bound = 3;
  std::size_t translation_class_limit = 4096;
};

struct PairCertificate {
  AffineMap phi;
  PairMorphismData data;
  int bound_used = 0;
};
// Bounded search; nullopt means "not found within bounds", never "not isomorphic".
std::optional<PairCertificate> pair_isomorphism_search(const FibrationSplit& from,
                                                       const FibrationSplit& to,
                                                       const SearchBounds& bounds = {});

// Basis of the equivariant maps D (m x d) with image in Span(Z(N2)) for a given C̄.
std::vector<QMat> equivariant_d_basis(const QMat& fiber_linear, const FibrationSplit& from,
                                      const FibrationSplit& to);

// Admissible data on a grid: unimodular blocks up to `bound`, translations
// with denominator `denominator` in the unit cell, D coefficients in d_grid.
std::vector<PairMorphismData> candidate_space(const FibrationSplit& from, const FibrationSplit& to,
                                              int bound, int denominator,
                                              const std::vector<Rational>& d_grid);

// GL(n, Z) matrices with entries in [-bound, bound], identity-nearest first.
const std::vector<QMat>& unimodular_matrices(std::size_t n, int bound);
int entry_bound_of(const QMat& m);

// Affinities conjugating g1 onto g2 whose linear part, in lattice
// coordinates, has entries in [-bound, bound]; at most `limit` results, one
// per translation class.
std::vector<AffineMap> affine_conjugacies(const SpaceGroup& g1, const SpaceGroup& g2, int bound,
                                          std::size_t limit = 1);

}  // namespace flatfiber
