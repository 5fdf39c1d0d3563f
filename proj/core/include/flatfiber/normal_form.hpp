#pragma once

#include <vector>

#include "flatfiber/matrix.hpp"

namespace flatfiber {

// Row Hermite normal form: transform * input == form. Pivots are positive,
// entries above a pivot lie in [0, pivot), zero rows sit at the bottom.
struct HermiteForm {
  ZMat form;
  ZMat transform;
};
HermiteForm hnf(const ZMat& m);

// Smith normal form: left * input * right == diagonal with d1 | d2 | ...
struct SmithForm {
  ZMat left;
  ZMat diagonal;
  ZMat right;
  std::size_t rank() const;
  // Diagonal entries d1..dr including leading ones.
  std::vector<Integer> factors() const;
};
SmithForm snf(const ZMat& m);

// Nontrivial invariant factors (leading ones stripped).
std::vector<Integer> invariant_factors(const ZMat& m);

// Inverse of a unimodular integer matrix; throws otherwise.
ZMat unimodular_inverse(const ZMat& m);
Integer integer_determinant(const ZMat& m);

}  // namespace flatfiber
