#include "flatfiber/affine.hpp"

namespace flatfiber {

AffineMap AffineMap::identity(std::size_t dim) { return {QMat::identity(dim), QVec(dim)}; }

AffineMap AffineMap::translation(const QVec& v) { return {QMat::identity(v.size()), v}; }

AffineMap AffineMap::linear_map(const QMat& m) { return {m, QVec(m.rows())}; }

QVec AffineMap::apply(const QVec& x) const { return shift + linear * x; }

bool operator<(const AffineMap& a, const AffineMap& b) {
  if (a.linear != b.linear) return a.linear < b.linear;
  return a.shift < b.shift;
}

AffineMap compose(const AffineMap& a, const AffineMap& b) {
  return {a.linear * b.linear, a.shift + a.linear * b.shift};
}

AffineMap operator*(const AffineMap& a, const AffineMap& b) { return compose(a, b); }

AffineMap invert(const AffineMap& a) {
  auto inv = inverse(a.linear);
  if (!inv) throw Error("affine map is not invertible");
  return {*inv, -(*inv * a.shift)};
}

AffineMap conjugate(const AffineMap& phi, const AffineMap& g) {
  return compose(compose(phi, g), invert(phi));
}

AffineMap power(const AffineMap& a, long exponent) {
  AffineMap base = exponent < 0 ? invert(a) : a;
  unsigned long e = exponent < 0 ? static_cast<unsigned long>(-exponent)
                                 : static_cast<unsigned long>(exponent);
  AffineMap result = AffineMap::identity(a.dim());
  while (e) {
    if (e & 1UL) result = compose(result, base);
    base = compose(base, base);
    e >>= 1;
  }
  return result;
}

bool preserves_gram(const AffineMap& a, const QMat& gram) {
  return a.linear.transpose() * gram * a.linear == gram;
}

std::string to_string(const AffineMap& a) {
  return "(" + to_string(a.shift) + " + " + to_string(a.linear) + ")";
}

}  // namespace flatfiber
