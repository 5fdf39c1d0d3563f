#pragma once

#include <vector>

#include "flatfiber/space_group.hpp"

namespace flatfiber {

// A finite group by its multiplication table; element 0 is the identity.
class FiniteGroup {
 public:
  FiniteGroup() = default;
  // Validates associativity, identity and inverses.
  static FiniteGroup from_table(std::vector<std::vector<std::size_t>> table);
  static FiniteGroup cyclic(std::size_t n);
  // Γ/TN ≅ Π(Γ)/η(N); representatives are coset representatives of Γ.
  static FiniteGroup quotient(const SpaceGroup& g, const SubgroupHandle& n);

  std::size_t order() const { return table_.size(); }
  std::size_t multiply(std::size_t a, std::size_t b) const { return table_[a][b]; }
  std::size_t inverse(std::size_t a) const { return inverse_[a]; }
  const std::vector<std::vector<std::size_t>>& table() const { return table_; }
  // Present only for quotients.
  const std::vector<AffineMap>& representatives() const { return representatives_; }
  // Class of a member of the ambient group (quotients only).
  std::size_t element_of(const QMat& point) const;

 private:
  std::vector<std::vector<std::size_t>> table_;
  std::vector<std::size_t> inverse_;
  std::vector<AffineMap> representatives_;
  std::vector<std::vector<QMat>> classes_;
};

}  // namespace flatfiber
