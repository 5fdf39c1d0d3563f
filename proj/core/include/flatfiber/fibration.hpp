#pragma once

#include <optional>
#include <string>
#include <vector>

#include "flatfiber/congruence.hpp"
#include "flatfiber/space_group.hpp"

namespace flatfiber {

// V = Span(N), its G-orthogonal complement, and the frames (basis columns)
// in which fiber and base coordinates are expressed.
struct SpanData {
  QSubspace fiber;
  QSubspace base;
  QMat fiber_frame;
  QMat base_frame;
  QMat frame;  // [fiber_frame | base_frame]
  QMat frame_inverse;
  QMat projector_fiber;
  QMat projector_base;

  static SpanData with_frames(QMat fiber_frame, QMat base_frame);
  std::size_t fiber_dim() const { return fiber_frame.cols(); }
  std::size_t base_dim() const { return base_frame.cols(); }
  std::size_t ambient_dim() const { return frame.rows(); }
  QMat fiber_gram(const QMat& gram) const;
  QMat base_gram(const QMat& gram) const;
  AffineMap to_frame(const AffineMap& g) const;
  AffineMap from_frame(const AffineMap& g) const;
};

SpanData span(const SubgroupHandle& n, const QMat& gram);

struct SplitIsometry {
  AffineMap fiber;
  AffineMap base;
};

// Throws "subspace not invariant" when B V != V.
SplitIsometry decompose(const AffineMap& g, const SpanData& s);
AffineMap reassemble(const SplitIsometry& parts, const SpanData& s);

struct Theorem1Report {
  bool invariant_span = true;
  bool normal_elements_fiberwise = true;
  std::vector<std::string> failures;
  bool passed() const { return invariant_span && normal_elements_fiberwise; }
};
// Throws "subgroup is not normal".
Theorem1Report theorem1_check(const SpaceGroup& g, const SubgroupHandle& n);

// {a + A in G : a in along, across ⊆ Fix(A)}.
SubgroupHandle fiberwise_subgroup(const SpaceGroup& g, const QSubspace& along,
                                  const QSubspace& across);
bool is_complete(const SpaceGroup& g, const SubgroupHandle& n);
SubgroupHandle complete_closure(const SpaceGroup& g, const SubgroupHandle& n);
SubgroupHandle action_kernel(const SpaceGroup& g, const SpanData& s);

struct DiscretenessReport {
  bool discrete = false;
  std::optional<Integer> index;  // [G : NK] when finite
};
DiscretenessReport base_discreteness_check(const SpaceGroup& g, const SubgroupHandle& n,
                                           const SubgroupHandle& k);

SpaceGroup fiber_group(const SpaceGroup& g, const SubgroupHandle& n, const SpanData& s);
// Throws "quotient not a space group" unless P: G/N -> G' is injective.
SpaceGroup base_group(const SpaceGroup& g, const SubgroupHandle& n, const SpanData& s);
// Fiber frame: basis of L ∩ V. Base frame: basis of the base group's lattice.
SpanData canonical_span(const SpaceGroup& g, const SubgroupHandle& n);

// The analysis of a complete normal subgroup: fiber and base groups in
// their own lattice coordinates, the action kernel, the lift P^{-1}, Z(N)
// and the projected translation lattice TN/N.
class FibrationSplit {
 public:
  // Throws unless n is a complete normal subgroup with 0 < dim V < dim G.
  // Frames default to canonical_span.
  static FibrationSplit analyze(const SpaceGroup& g, const SubgroupHandle& n,
                                const std::optional<SpanData>& frames = std::nullopt);

  const SpaceGroup& ambient() const { return ambient_; }
  const SubgroupHandle& normal() const { return normal_; }
  const SpanData& span() const { return span_; }
  const SpaceGroup& fiber() const { return fiber_; }
  const SpaceGroup& base() const { return base_; }
  const SubgroupHandle& kernel() const { return kernel_; }
  std::size_t fiber_dim() const { return span_.fiber_dim(); }
  std::size_t base_dim() const { return span_.base_dim(); }

  SplitIsometry split(const AffineMap& g) const { return decompose(g, span_); }
  AffineMap xi(const AffineMap& g) const { return split(g).fiber; }
  QVec p1(const AffineMap& g) const { return split(g).base.shift; }
  // Some element of G (ambient coordinates) whose base part is the given element.
  AffineMap lift(const AffineMap& base_element) const;
  // Lifts of the base presentation generators.
  const std::vector<AffineMap>& base_generator_lifts() const { return base_lifts_; }

  // Z(N) in fiber coordinates; basis columns (m x r).
  const ZLattice& center() const { return center_; }
  const QMat& center_frame() const { return center_frame_; }
  std::size_t center_rank() const { return center_.rank(); }
  // Action of g on Z(N), in the center basis.
  ZMat center_action(const AffineMap& g) const;
  // Coordinates of a fiber vector in Span(Z(N)), if it lies there.
  std::optional<QVec> center_coordinates(const QVec& fiber_vector) const;

  // proj(L) in base coordinates (the translations of TN/N).
  const ZLattice& projected_lattice() const { return projected_; }
  ZMat projected_action(const AffineMap& g) const;

 private:
  SpaceGroup ambient_;
  SubgroupHandle normal_;
  SpanData span_;
  SpaceGroup fiber_;
  SpaceGroup base_;
  SubgroupHandle kernel_;
  std::vector<SplitIsometry> coset_splits_;
  std::optional<IntegerSolver> lift_solver_;
  std::vector<AffineMap> base_lifts_;
  ZLattice center_;
  QMat center_frame_;
  ZLattice projected_;
};

}  // namespace flatfiber
