#include "flatfiber/normal_form.hpp"

namespace flatfiber {

namespace {

Integer row_quotient(const Integer& a, const Integer& b) { return floor_div(a, b); }

}  // namespace

HermiteForm hnf(const ZMat& m) {
  ZMat h = m;
  ZMat u = ZMat::identity(m.rows());
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < h.cols() && pivot_row < h.rows(); ++col) {
    bool found = false;
    for (;;) {
      std::size_t best = h.rows();
      for (std::size_t i = pivot_row; i < h.rows(); ++i) {
        if (h(i, col) == 0) continue;
        if (best == h.rows() || abs_of(h(i, col)) < abs_of(h(best, col))) best = i;
      }
      if (best == h.rows()) break;
      found = true;
      h.swap_rows(best, pivot_row);
      u.swap_rows(best, pivot_row);
      bool remainder = false;
      for (std::size_t i = pivot_row + 1; i < h.rows(); ++i) {
        if (h(i, col) == 0) continue;
        Integer q = row_quotient(h(i, col), h(pivot_row, col));
        h.add_row(i, pivot_row, Integer(-q));
        u.add_row(i, pivot_row, Integer(-q));
        if (h(i, col) != 0) remainder = true;
      }
      if (!remainder) break;
    }
    if (!found) continue;
    if (h(pivot_row, col) < 0) {
      h.negate_row(pivot_row);
      u.negate_row(pivot_row);
    }
    for (std::size_t i = 0; i < pivot_row; ++i) {
      Integer q = floor_div(h(i, col), h(pivot_row, col));
      if (q == 0) continue;
      h.add_row(i, pivot_row, Integer(-q));
      u.add_row(i, pivot_row, Integer(-q));
    }
    ++pivot_row;
  }
  return {h, u};
}

std::size_t SmithForm::rank() const {
  std::size_t r = 0;
  for (std::size_t i = 0; i < std::min(diagonal.rows(), diagonal.cols()); ++i)
    if (diagonal(i, i) != 0) ++r;
  return r;
}

std::vector<Integer> SmithForm::factors() const {
  std::vector<Integer> f;
  for (std::size_t i = 0; i < rank(); ++i) f.push_back(diagonal(i, i));
  return f;
}

SmithForm snf(const ZMat& m) {
  ZMat s = m;
  ZMat u = ZMat::identity(m.rows());
  ZMat v = ZMat::identity(m.cols());
  std::size_t limit = std::min(s.rows(), s.cols());
  for (std::size_t t = 0; t < limit; ++t) {
    for (;;) {
      std::size_t bi = s.rows(), bj = s.cols();
      for (std::size_t i = t; i < s.rows(); ++i)
        for (std::size_t j = t; j < s.cols(); ++j) {
          if (s(i, j) == 0) continue;
          if (bi == s.rows() || abs_of(s(i, j)) < abs_of(s(bi, bj))) {
            bi = i;
            bj = j;
          }
        }
      if (bi == s.rows()) {
        return {u, s, v};
      }
      s.swap_rows(t, bi);
      u.swap_rows(t, bi);
      s.swap_cols(t, bj);
      v.swap_cols(t, bj);
      bool clean = true;
      for (std::size_t i = t + 1; i < s.rows(); ++i) {
        if (s(i, t) == 0) continue;
        Integer q = floor_div(s(i, t), s(t, t));
        s.add_row(i, t, Integer(-q));
        u.add_row(i, t, Integer(-q));
        if (s(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < s.cols(); ++j) {
        if (s(t, j) == 0) continue;
        Integer q = floor_div(s(t, j), s(t, t));
        s.add_col(j, t, Integer(-q));
        v.add_col(j, t, Integer(-q));
        if (s(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      std::size_t offending = s.rows();
      for (std::size_t i = t + 1; i < s.rows() && offending == s.rows(); ++i)
        for (std::size_t j = t + 1; j < s.cols(); ++j) {
          Integer r;
          mpz_fdiv_r(r.get_mpz_t(), s(i, j).get_mpz_t(), s(t, t).get_mpz_t());
          if (r != 0) {
            offending = i;
            break;
          }
        }
      if (offending == s.rows()) break;
      s.add_row(t, offending, Integer(1));
      u.add_row(t, offending, Integer(1));
    }
    if (s(t, t) < 0) {
      s.negate_row(t);
      u.negate_row(t);
    }
  }
  return {u, s, v};
}

std::vector<Integer> invariant_factors(const ZMat& m) {
  std::vector<Integer> out;
  for (const auto& d : snf(m).factors())
    if (d != 1) out.push_back(d);
  return out;
}

ZMat unimodular_inverse(const ZMat& m) {
  auto inv = inverse(to_rational(m));
  if (!inv) throw Error("matrix is singular");
  auto z = to_integer(*inv);
  if (!z) throw Error("matrix is not unimodular");
  return *z;
}

Integer integer_determinant(const ZMat& m) {
  Rational d = determinant(to_rational(m));
  return d.get_num();
}

}  // namespace flatfiber
