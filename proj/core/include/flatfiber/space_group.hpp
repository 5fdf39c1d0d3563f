#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "flatfiber/affine.hpp"
#include "flatfiber/lattice.hpp"
#include "flatfiber/presentation.hpp"

namespace flatfiber {

inline constexpr std::size_t kDefaultPointGroupBound = 448;

// Closure of a finitely generated group of affine maps with finite linear
// image: a transversal of the point group and the translation lattice
// (generated by Schreier elements).
struct GroupClosure {
  std::size_t dim = 0;
  std::vector<QMat> points;  // points[0] is the identity
  std::vector<QVec> shifts;  // one representative translation per point part
  ZLattice lattice;
  std::map<QMat, std::size_t> index;

  std::optional<std::size_t> point_index(const QMat& point) const;
  bool contains(const AffineMap& g) const;
  std::size_t order() const { return points.size(); }
};

GroupClosure close_group(std::size_t dim, const std::vector<AffineMap>& generators,
                         std::size_t point_bound = kDefaultPointGroupBound);

class SpaceGroup {
 public:
  SpaceGroup() = default;

  // Closure of the generators; throws "point group not finite within bound"
  // or "not cocompact".
  static SpaceGroup from_generators(std::string name, const QMat& gram,
                                    const std::vector<AffineMap>& generators,
                                    std::size_t point_bound = kDefaultPointGroupBound);
  // Validates every invariant and canonicalizes the coset representatives.
  static SpaceGroup from_cosets(std::string name, const QMat& gram, const ZLattice& lattice,
                                std::vector<AffineMap> cosets);

  const std::string& name() const { return name_; }
  SpaceGroup renamed(std::string name) const;
  std::size_t dim() const { return gram_.rows(); }
  const QMat& gram() const { return gram_; }
  const ZLattice& lattice() const { return lattice_; }
  const std::vector<AffineMap>& cosets() const { return cosets_; }
  std::size_t point_group_order() const { return cosets_.size(); }
  std::vector<QMat> point_group() const;
  std::optional<std::size_t> coset_of(const QMat& point) const;
  bool contains(const AffineMap& g) const;
  // Lattice basis translations, then the non-identity coset representatives.
  std::vector<AffineMap> generators() const;
  std::vector<AffineMap> lattice_translations() const;
  const Presentation& presentation() const { return presentation_; }
  // Coset index i and lattice coordinates z with g = t^z · coset_i.
  std::pair<std::size_t, ZVec> decompose_element(const AffineMap& g) const;

  friend bool operator==(const SpaceGroup& a, const SpaceGroup& b) {
    return a.gram_ == b.gram_ && a.lattice_ == b.lattice_ && a.cosets_ == b.cosets_;
  }

 private:
  std::string name_;
  QMat gram_;
  ZLattice lattice_;
  std::vector<AffineMap> cosets_;
  std::map<QMat, std::size_t> coset_index_;
  Presentation presentation_;
};

// Presentation on lattice basis translations and non-identity coset
// representatives, with commutator, conjugation and multiplication relators.
Presentation standard_presentation(const SpaceGroup& g);
// The word t^z · g_i for a member, over the standard presentation.
Word normal_form_word(const SpaceGroup& g, const AffineMap& element);

// A subgroup given by generators; its closure through the finite point-group
// quotient is computed at construction.
class SubgroupHandle {
 public:
  SubgroupHandle() = default;
  SubgroupHandle(const SpaceGroup& parent, std::vector<AffineMap> generators);
  static SubgroupHandle unchecked(std::size_t dim, std::vector<AffineMap> generators);

  std::size_t dim() const { return closure_.dim; }
  const std::string& parent_name() const { return parent_name_; }
  const std::vector<AffineMap>& generators() const { return generators_; }
  const GroupClosure& closure() const { return closure_; }
  bool contains(const AffineMap& g) const { return closure_.contains(g); }

 private:
  std::string parent_name_;
  std::vector<AffineMap> generators_;
  GroupClosure closure_;
};

ZLattice translation_subgroup(const SubgroupHandle& h);
ZLattice center_lattice(const SpaceGroup& n);
ZLattice center_lattice(const SubgroupHandle& n);
bool is_normal(const SpaceGroup& g, const SubgroupHandle& n);
// Two-sided generator membership.
bool same_subgroup(const SubgroupHandle& a, const SubgroupHandle& b);
// phi G phi^{-1} == H as groups (generator images both ways).
bool conjugates_onto(const AffineMap& phi, const SpaceGroup& g, const SpaceGroup& h);

}  // namespace flatfiber
