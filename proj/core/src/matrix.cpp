#include "flatfiber/matrix.hpp"

#include <sstream>

namespace flatfiber {

QVec operator+(const QVec& a, const QVec& b) {
  if (a.size() != b.size()) throw Error("vector sum dimension mismatch");
  QVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

QVec operator-(const QVec& a, const QVec& b) {
  if (a.size() != b.size()) throw Error("vector difference dimension mismatch");
  QVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

QVec operator-(const QVec& a) {
  QVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

QVec operator*(const Rational& s, const QVec& a) {
  QVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
  return r;
}

Rational dot(const QVec& a, const QVec& b) {
  if (a.size() != b.size()) throw Error("dot product dimension mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

bool is_zero(const QVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

bool is_integral(const QVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return is_integral(x); });
}

QVec zero_vector(std::size_t n) { return QVec(n); }

QVec concat(const QVec& a, const QVec& b) {
  QVec r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

QVec slice(const QVec& v, std::size_t start, std::size_t count) {
  return QVec(v.begin() + start, v.begin() + start + count);
}

QMat to_rational(const ZMat& m) {
  QMat q(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) q(i, j) = Rational(m(i, j));
  return q;
}

QVec to_rational(const ZVec& v) {
  QVec q(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) q[i] = Rational(v[i]);
  return q;
}

std::optional<ZMat> to_integer(const QMat& m) {
  ZMat z(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!is_integral(m(i, j))) return std::nullopt;
      z(i, j) = m(i, j).get_num();
    }
  return z;
}

std::optional<ZVec> to_integer(const QVec& v) {
  ZVec z(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!is_integral(v[i])) return std::nullopt;
    z[i] = v[i].get_num();
  }
  return z;
}

Integer common_denominator(const QMat& m) {
  Integer d = 1;
  for (const auto& x : m.data()) d = lcm_of(d, x.get_den());
  return d;
}

Integer common_denominator(const QVec& v) {
  Integer d = 1;
  for (const auto& x : v) d = lcm_of(d, x.get_den());
  return d;
}

ZMat clear_denominators(const QMat& m) {
  Integer d = common_denominator(m);
  ZMat z(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      Rational s = m(i, j) * Rational(d);
      z(i, j) = s.get_num();
    }
  return z;
}

QMat hstack(const QMat& a, const QMat& b) {
  if (a.rows() != b.rows()) throw Error("hstack row mismatch");
  QMat r(a.rows(), a.cols() + b.cols());
  r.set_block(0, 0, a);
  r.set_block(0, a.cols(), b);
  return r;
}

QMat vstack(const QMat& a, const QMat& b) {
  if (a.cols() != b.cols() && a.rows() && b.rows()) throw Error("vstack column mismatch");
  std::size_t cols = a.rows() ? a.cols() : b.cols();
  QMat r(a.rows() + b.rows(), cols);
  r.set_block(0, 0, a);
  r.set_block(a.rows(), 0, b);
  return r;
}

QMat direct_sum(const QMat& a, const QMat& b) {
  QMat r(a.rows() + b.rows(), a.cols() + b.cols());
  r.set_block(0, 0, a);
  r.set_block(a.rows(), a.cols(), b);
  return r;
}

RowEchelon row_echelon(const QMat& m) {
  QMat a = m;
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    a.swap_rows(p, r);
    Rational inv = 1 / a(r, c);
    for (std::size_t j = c; j < a.cols(); ++j) a(r, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c) == 0) continue;
      Rational f = -a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) += f * a(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return {a.block(0, 0, r, a.cols()), pivots};
}

std::size_t rank(const QMat& m) { return row_echelon(m).pivots.size(); }

std::vector<QVec> nullspace(const QMat& m) {
  RowEchelon e = row_echelon(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<QVec> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    QVec v(m.cols());
    v[free] = 1;
    for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.reduced(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<QVec> solve_linear(const QMat& m, const QVec& b) {
  if (b.size() != m.rows()) throw Error("solve_linear dimension mismatch");
  QMat aug(m.rows(), m.cols() + 1);
  aug.set_block(0, 0, m);
  for (std::size_t i = 0; i < m.rows(); ++i) aug(i, m.cols()) = b[i];
  RowEchelon e = row_echelon(aug);
  QVec x(m.cols());
  for (std::size_t i = 0; i < e.pivots.size(); ++i) {
    if (e.pivots[i] == m.cols()) return std::nullopt;
    x[e.pivots[i]] = e.reduced(i, m.cols());
  }
  return x;
}

std::optional<QMat> inverse(const QMat& m) {
  if (m.rows() != m.cols()) throw Error("inverse of non-square matrix");
  std::size_t n = m.rows();
  QMat aug = hstack(m, QMat::identity(n));
  RowEchelon e = row_echelon(aug);
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
  return e.reduced.block(0, n, n, n);
}

Rational determinant(const QMat& m) {
  if (m.rows() != m.cols()) throw Error("determinant of non-square matrix");
  QMat a = m;
  Rational det = 1;
  std::size_t n = a.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      a.swap_rows(p, c);
      det = -det;
    }
    det *= a(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a(i, c) == 0) continue;
      Rational f = -a(i, c) / a(c, c);
      a.add_row(i, c, f);
    }
  }
  return det;
}

bool is_symmetric(const QMat& m) { return m == m.transpose(); }

bool is_positive_definite(const QMat& m) {
  if (m.rows() != m.cols() || !is_symmetric(m)) return false;
  for (std::size_t k = 1; k <= m.rows(); ++k)
    if (determinant(m.block(0, 0, k, k)) <= 0) return false;
  return true;
}

std::string to_string(const QMat& m) {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) out << ", ";
    out << to_string(m.row(i));
  }
  out << ']';
  return out.str();
}

std::string to_string(const QVec& v) {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? ", " : "") << v[i].get_str();
  out << ']';
  return out.str();
}

}  // namespace flatfiber
