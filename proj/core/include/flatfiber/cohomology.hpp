#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "flatfiber/finite_group.hpp"
#include "flatfiber/pairiso.hpp"

namespace flatfiber {

inline constexpr std::size_t kFiniteGroupBound = 48;

// ⊕ Z/t_i ⊕ Z^free_rank ⊕ (Q or Q/Z)^divisible_rank
struct AbelianGroup {
  std::vector<Integer> torsion;
  std::size_t free_rank = 0;
  std::size_t divisible_rank = 0;

  bool finite() const { return free_rank == 0 && divisible_rank == 0; }
  bool trivial() const { return finite() && torsion.empty(); }
  // Throws unless finite.
  Integer order() const;
  std::string to_string() const;
  friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;
};

enum class ModuleKind { lattice, rational, torus };

// Z^r, Q^r or Q^r/Z^r with a finite group acting by integral matrices, one per element.
struct GModule {
  ModuleKind kind = ModuleKind::lattice;
  std::size_t rank = 0;
  std::vector<ZMat> action;

  static GModule trivial(ModuleKind kind, const FiniteGroup& g, std::size_t rank);
};
// Throws unless the action is a homomorphism into GL(r, Z).
void validate_module(const FiniteGroup& g, const GModule& m);

// Normalized bar differential C^k -> C^{k+1}; cochains vanish when an argument is the identity.
ZMat bar_differential(const FiniteGroup& g, const GModule& m, std::size_t degree);
std::size_t rank_mod_prime(const ZMat& m);

// Degree 1 or 2 (degree 1 only for tori). Throws "finite-group bound exceeded".
AbelianGroup h_finite(const FiniteGroup& g, const GModule& m, std::size_t degree,
                      std::size_t bound = kFiniteGroupBound);

// Z(N) → 𝒞 = Span(Z(N)) → 𝒦 = 𝒞/Z(N), with Γ/N ≅ Γ' acting through its
// presentation generators.
struct ModuleTriple {
  std::size_t rank = 0;
  QMat center_frame;  // fiber coordinates, one column per basis vector of Z(N)
  std::vector<ZMat> generator_action;
  bool exact = false;
};
ModuleTriple module_triple(const FibrationSplit& s);

// Row block per relator, column block per generator.
ZMat fox_matrix(const Presentation& p, const std::vector<ZMat>& action, std::size_t rank);
ZMat word_action(const Word& w, const std::vector<ZMat>& action, std::size_t rank);
QVec evaluate_crossed(const Word& w, const std::vector<QVec>& values,
                      const std::vector<ZMat>& action, std::size_t rank);

// Values on the base presentation generators, in Z(N) coordinates;
// torus values are taken modulo Z^r.
struct CrossedHom {
  ModuleKind kind = ModuleKind::rational;
  std::vector<QVec> values;
};
bool satisfies_relators(const CrossedHom& f, const FibrationSplit& s);

FiniteGroup finite_quotient(const FibrationSplit& s);
GModule center_module(const FibrationSplit& s, const FiniteGroup& g, ModuleKind kind);

struct QuotientCohomology {
  std::size_t c_dimension = 0;    // H¹(Γ/N, 𝒞) ≅ Q^c_dimension
  std::size_t hom_dimension = 0;  // Hom_{Γ/N}(TN/N, 𝒞)
  AbelianGroup k_group;           // H¹(Γ/N, 𝒦)
};
QuotientCohomology h1_gamma_mod_n(const FibrationSplit& s);

struct KappaCokernel {
  std::vector<Integer> invariants;
  std::vector<Integer> inflation_part;  // H¹(Γ/TN, 𝒦) ≅ H²(Γ/TN, Z(N))
  std::vector<Integer> hom_part;        // coker of Hom(TN/N, 𝒞)^Γ → Hom(TN/N, 𝒦)^Γ
  Integer order() const;
  Integer bound() const;
};
KappaCokernel kappa_star_cokernel(const FibrationSplit& s);

// A basis of Z¹(Γ/N, 𝒞).
std::vector<CrossedHom> c_cocycle_basis(const FibrationSplit& s);
// Principal crossed homomorphism g ↦ g·v - v (v in Z(N) coordinates).
CrossedHom principal_crossed(const FibrationSplit& s, const QVec& v);
// The linear map L (Z(N) coordinates x base coordinates) with f(t) = L t on TN/N.
QMat restriction_to_translations(const CrossedHom& f, const FibrationSplit& s);
// v with f = principal_crossed(v), if f is principal.
std::optional<QVec> principal_witness(const CrossedHom& f, const FibrationSplit& s);

// The class of a fiber affinity h in 𝒦, i.e. v (Z(N) coordinates, reduced
// mod 1) with h ∈ N̄·(v + I); nullopt when h ∉ N̄·𝒞.
std::optional<QVec> kappa_coordinates(const FibrationSplit& s, const AffineMap& h);

// α̃ with α̃ ν α̃^{-1} = images[i] for the generators ν of `from`.
// Throws "automorphism not affinely realizable".
AffineMap lift_fiber_automorphism(const SpaceGroup& from, const SpaceGroup& to,
                                  const std::vector<AffineMap>& images);

struct FiberClass {
  CrossedHom cocycle;
  AffineMap alpha;
  AffineMap beta;
};
// The class of (α̃♯^{-1} Ξ2 β) Ξ1^{-1} in H¹(Γ1/N1, 𝒦1).
// Throws "ω-compatibility violated".
FiberClass build_fiber_class(const FibrationSplit& from, const FibrationSplit& to,
                             const AffineMap& alpha, const AffineMap& beta);
QVec fiber_class_value(const FibrationSplit& from, const FibrationSplit& to, const AffineMap& alpha,
                       const AffineMap& beta, const AffineMap& gamma);

struct KappaWitness {
  CrossedHom lift;  // 𝒞-valued, κ∗(lift) = class
  QMat l;           // base coordinates -> Span(Z(N1)), fiber coordinates
  QMat d;           // C̄ L
  QVec v;           // principal correction, fiber coordinates
  PairMorphismData data;
  AffineMap phi;
  bool verified = false;  // phi passes conjugation_test
};
std::optional<KappaWitness> class_in_kappa_image(const FiberClass& c, const FibrationSplit& from,
                                                 const FibrationSplit& to);

// Crossed homomorphisms evaluated on elements of Γ1, for law checks.
struct ElementCocycle {
  std::function<QVec(const AffineMap&)> value;
  std::function<QMat(const AffineMap&)> action;
  bool modulo_integers = false;
};
ElementCocycle dp1_cocycle(const PairMorphismData& data, const FibrationSplit& from);
ElementCocycle conjugated_dp1_cocycle(const PairMorphismData& data, const FibrationSplit& from);
ElementCocycle fiber_class_cocycle(const FibrationSplit& from, const FibrationSplit& to,
                                   const AffineMap& alpha, const AffineMap& beta);
ElementCocycle principal_cocycle(const FibrationSplit& s, const QVec& v);
ElementCocycle lifted_cocycle(const CrossedHom& y, const FibrationSplit& s);
// f(gh) = f(g) + g·f(h)
bool cocycle_law_holds(const ElementCocycle& f, const AffineMap& g, const AffineMap& h);

}  // namespace flatfiber
