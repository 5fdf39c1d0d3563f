#pragma once

#include <string>

#include "flatfiber/matrix.hpp"

namespace flatfiber {

// x ↦ shift + linear·x
struct AffineMap {
  QMat linear;
  QVec shift;

  static AffineMap identity(std::size_t dim);
  static AffineMap translation(const QVec& v);
  static AffineMap linear_map(const QMat& m);

  std::size_t dim() const { return shift.size(); }
  QVec apply(const QVec& x) const;
  bool is_translation() const { return linear.is_identity(); }

  friend bool operator==(const AffineMap& a, const AffineMap& b) {
    return a.linear == b.linear && a.shift == b.shift;
  }
  friend bool operator!=(const AffineMap& a, const AffineMap& b) { return !(a == b); }
  friend bool operator<(const AffineMap& a, const AffineMap& b);
};

using Isometry = AffineMap;

// a∘b, i.e. (a + A)(b + B) = (a + Ab) + AB
AffineMap compose(const AffineMap& a, const AffineMap& b);
AffineMap operator*(const AffineMap& a, const AffineMap& b);
AffineMap invert(const AffineMap& a);
// phi g phi^{-1}
AffineMap conjugate(const AffineMap& phi, const AffineMap& g);
AffineMap power(const AffineMap& a, long exponent);
bool preserves_gram(const AffineMap& a, const QMat& gram);

std::string to_string(const AffineMap& a);

}  // namespace flatfiber
