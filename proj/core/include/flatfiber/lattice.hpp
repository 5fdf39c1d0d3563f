#pragma once

#include <optional>
#include <vector>

#include "flatfiber/matrix.hpp"

namespace flatfiber {

class QSubspace;

// A finitely generated subgroup of Q^n. The basis rows are the row HNF of
// the generators scaled by a common denominator, scaled back; this is
// independent of the denominator chosen and so canonical.
class ZLattice {
 public:
  explicit ZLattice(std::size_t dim = 0);
  static ZLattice generated_by(std::size_t dim, const std::vector<QVec>& generators);
  static ZLattice from_basis_rows(const QMat& rows);
  static ZLattice standard(std::size_t dim);

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return basis_.rows(); }
  bool full_rank() const { return rank() == dim_; }
  const QMat& basis() const { return basis_; }
  std::vector<QVec> basis_vectors() const;

  // Integer coordinates with respect to the basis rows, if v lies in the lattice.
  std::optional<ZVec> coordinates(const QVec& v) const;
  // Rational coordinates with respect to the basis rows, if v lies in the span.
  std::optional<QVec> rational_coordinates(const QVec& v) const;
  bool contains(const QVec& v) const;
  bool contains(const ZLattice& other) const;
  // v reduced into the half-open cell spanned by the basis (full rank only).
  QVec reduce(const QVec& v) const;
  ZLattice image(const QMat& linear) const;
  ZLattice scaled(const Rational& s) const;

  friend bool operator==(const ZLattice& a, const ZLattice& b) {
    return a.dim_ == b.dim_ && a.basis_ == b.basis_;
  }
  friend bool operator!=(const ZLattice& a, const ZLattice& b) { return !(a == b); }
  friend bool operator<(const ZLattice& a, const ZLattice& b) {
    if (a.dim_ != b.dim_) return a.dim_ < b.dim_;
    return a.basis_ < b.basis_;
  }

 private:
  std::size_t dim_;
  QMat basis_;
  std::vector<std::size_t> pivots_;
  QMat pivot_inverse_;
};

// A rational subspace stored by its reduced row echelon basis.
class QSubspace {
 public:
  explicit QSubspace(std::size_t dim = 0);
  static QSubspace spanned_by(std::size_t dim, const std::vector<QVec>& vectors);
  static QSubspace whole(std::size_t dim);

  std::size_t ambient_dim() const { return dim_; }
  std::size_t dimension() const { return basis_.rows(); }
  const QMat& basis() const { return basis_; }
  std::vector<QVec> basis_vectors() const;
  bool contains(const QVec& v) const;
  bool contains(const QSubspace& other) const;
  std::optional<QVec> coordinates(const QVec& v) const;
  QSubspace intersect(const QSubspace& other) const;
  QSubspace sum(const QSubspace& other) const;
  QSubspace image(const QMat& linear) const;
  // Linear forms (rows) whose common kernel is this subspace.
  QMat annihilator() const;

  friend bool operator==(const QSubspace& a, const QSubspace& b) {
    return a.dim_ == b.dim_ && a.basis_ == b.basis_;
  }
  friend bool operator!=(const QSubspace& a, const QSubspace& b) { return !(a == b); }

 private:
  std::size_t dim_;
  QMat basis_;
  std::vector<std::size_t> pivots_;
};

// {x : x^T G w = 0 for all w in W}; throws "invalid Gram form".
QSubspace g_orthogonal_complement(const QSubspace& w, const QMat& gram);
void require_gram(const QMat& gram);

ZLattice intersection(const ZLattice& a, const ZLattice& b);
// a ∩ W
ZLattice intersection(const ZLattice& a, const QSubspace& w);
// The integer points Z^n ∩ W ∩ Q·L: the primitive closure of L inside W.
ZLattice saturation(const ZLattice& l, const QSubspace& w);
// Z^n ∩ W.
ZLattice integer_points(const QSubspace& w);
// Invariant factors of outer/inner with ones stripped; a 0 entry stands for a free Z summand.
std::vector<Integer> quotient_invariants(const ZLattice& outer, const ZLattice& inner);
// |outer/inner| for finite quotients.
Integer lattice_index(const ZLattice& outer, const ZLattice& inner);

// Integer kernel of an integer matrix: basis rows of {z in Z^n : m z = 0}.
ZMat integer_kernel(const ZMat& m);

}  // namespace flatfiber
