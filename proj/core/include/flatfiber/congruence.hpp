#pragma once

#include <optional>
#include <vector>

#include "flatfiber/matrix.hpp"
#include "flatfiber/normal_form.hpp"

namespace flatfiber {

// Solves a z = b over the integers for a fixed rational matrix a; the Smith
// form is computed once so repeated right-hand sides are cheap.
class IntegerSolver {
 public:
  explicit IntegerSolver(const QMat& a);
  std::optional<ZVec> solve(const QVec& b) const;
  // Basis columns of the integer kernel of a.
  const ZMat& kernel() const { return kernel_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Integer scale_;
  SmithForm smith_;
  ZMat kernel_;
};

std::optional<ZVec> solve_integer(const QMat& a, const QVec& b);

// Some rational x with m x ≡ t (mod Z^k), if any.
std::optional<QVec> solve_congruence(const QMat& m, const QVec& t);

// Every solution class of m x ≡ t (mod Z^k) modulo Z^p + ker m, for integral m.
// Returns at most `limit` classes.
std::vector<QVec> congruence_classes(const ZMat& m, const QVec& t, std::size_t limit = 4096);

}  // namespace flatfiber
