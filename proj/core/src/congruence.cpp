#include "flatfiber/congruence.hpp"

namespace flatfiber {

IntegerSolver::IntegerSolver(const QMat& a)
    : rows_(a.rows()), cols_(a.cols()), scale_(common_denominator(a)) {
  smith_ = snf(clear_denominators(a));
  std::size_t r = smith_.rank();
  kernel_ = smith_.right.block(0, r, cols_, cols_ - r);
}

std::optional<ZVec> IntegerSolver::solve(const QVec& b) const {
  if (b.size() != rows_) throw Error("integer solve dimension mismatch");
  // a z = b  <=>  (scale a) z = scale b, which must be integral.
  QVec scaled_b = Rational(scale_) * b;
  auto ib = to_integer(scaled_b);
  if (!ib) return std::nullopt;
  ZVec c = smith_.left * *ib;
  std::size_t r = smith_.rank();
  ZVec y(cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i < r) {
      Integer q, rem;
      mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), c[i].get_mpz_t(),
                  smith_.diagonal(i, i).get_mpz_t());
      if (rem != 0) return std::nullopt;
      y[i] = q;
    } else if (c[i] != 0) {
      return std::nullopt;
    }
  }
  return smith_.right * y;
}

std::optional<ZVec> solve_integer(const QMat& a, const QVec& b) {
  return IntegerSolver(a).solve(b);
}

std::optional<QVec> solve_congruence(const QMat& m, const QVec& t) {
  if (t.size() != m.rows()) throw Error("congruence dimension mismatch");
  std::vector<QVec> left_kernel = nullspace(m.transpose());
  if (left_kernel.empty()) return solve_linear(m, t);
  QMat w(left_kernel.size(), m.rows());
  for (std::size_t i = 0; i < left_kernel.size(); ++i) w.set_row(i, left_kernel[i]);
  // t + z must lie in the column space: w (t + z) = 0 with z integral.
  auto z = solve_integer(w, -(w * t));
  if (!z) return std::nullopt;
  return solve_linear(m, t + to_rational(*z));
}

std::vector<QVec> congruence_classes(const ZMat& m, const QVec& t, std::size_t limit) {
  auto base = solve_congruence(to_rational(m), t);
  if (!base) return {};
  SmithForm s = snf(m);
  std::size_t r = s.rank();
  std::vector<Integer> d = s.factors();
  std::vector<QVec> out;
  ZVec counter(r);
  QMat right = to_rational(s.right);
  for (;;) {
    QVec y(m.cols());
    for (std::size_t i = 0; i < r; ++i) {
      y[i] = Rational(counter[i], d[i]);
      y[i].canonicalize();
    }
    QVec x = *base + right * y;
    for (auto& xi : x) xi = fractional_part(xi);
    out.push_back(std::move(x));
    if (out.size() >= limit) break;
    std::size_t i = 0;
    while (i < r) {
      counter[i] += 1;
      if (counter[i] < d[i]) break;
      counter[i] = 0;
      ++i;
    }
    if (i == r) break;
  }
  return out;
}

}  // namespace flatfiber
