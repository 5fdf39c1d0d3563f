#include "flatfiber/lattice.hpp"

#include "flatfiber/normal_form.hpp"

namespace flatfiber {

namespace {

QMat rows_of(std::size_t dim, const std::vector<QVec>& vectors) {
  QMat m(vectors.size(), dim);
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].size() != dim) throw Error("vector dimension mismatch");
    m.set_row(i, vectors[i]);
  }
  return m;
}

std::vector<QVec> row_vectors(const QMat& m) {
  std::vector<QVec> out;
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(m.row(i));
  return out;
}

}  // namespace

ZLattice::ZLattice(std::size_t dim) : dim_(dim), basis_(0, dim) {}

ZLattice ZLattice::generated_by(std::size_t dim, const std::vector<QVec>& generators) {
  return from_basis_rows(rows_of(dim, generators));
}

ZLattice ZLattice::from_basis_rows(const QMat& rows) {
  ZLattice l(rows.cols());
  if (rows.rows() == 0) return l;
  Integer den = common_denominator(rows);
  ZMat scaled = clear_denominators(rows);
  ZMat h = hnf(scaled).form;
  std::size_t r = 0;
  while (r < h.rows()) {
    bool zero = true;
    for (std::size_t j = 0; j < h.cols(); ++j)
      if (h(r, j) != 0) zero = false;
    if (zero) break;
    ++r;
  }
  l.basis_ = QMat(r, rows.cols());
  Rational inv_den(Integer(1), den);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < rows.cols(); ++j) l.basis_(i, j) = Rational(h(i, j)) * inv_den;
  for (std::size_t i = 0; i < r; ++i) {
    std::size_t p = 0;
    while (l.basis_(i, p) == 0) ++p;
    l.pivots_.push_back(p);
  }
  QMat square(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t k = 0; k < r; ++k) square(i, k) = l.basis_(i, l.pivots_[k]);
  l.pivot_inverse_ = *inverse(square);
  return l;
}

ZLattice ZLattice::standard(std::size_t dim) { return from_basis_rows(QMat::identity(dim)); }

std::vector<QVec> ZLattice::basis_vectors() const { return row_vectors(basis_); }

std::optional<QVec> ZLattice::rational_coordinates(const QVec& v) const {
  if (v.size() != dim_) throw Error("lattice coordinate dimension mismatch");
  std::size_t r = rank();
  QVec x(r);
  for (std::size_t k = 0; k < r; ++k)
    for (std::size_t i = 0; i < r; ++i) x[k] += v[pivots_[i]] * pivot_inverse_(i, k);
  for (std::size_t j = 0; j < dim_; ++j) {
    Rational s = 0;
    for (std::size_t i = 0; i < r; ++i) s += x[i] * basis_(i, j);
    if (s != v[j]) return std::nullopt;
  }
  return x;
}

std::optional<ZVec> ZLattice::coordinates(const QVec& v) const {
  auto x = rational_coordinates(v);
  if (!x) return std::nullopt;
  return to_integer(*x);
}

bool ZLattice::contains(const QVec& v) const { return coordinates(v).has_value(); }

bool ZLattice::contains(const ZLattice& other) const {
  for (std::size_t i = 0; i < other.rank(); ++i)
    if (!contains(other.basis_.row(i))) return false;
  return true;
}

QVec ZLattice::reduce(const QVec& v) const {
  if (!full_rank()) throw Error("reduction modulo a lattice of deficient rank");
  QVec x = *rational_coordinates(v);
  QVec out(dim_);
  for (std::size_t i = 0; i < x.size(); ++i) {
    Rational f = fractional_part(x[i]);
    for (std::size_t j = 0; j < dim_; ++j) out[j] += f * basis_(i, j);
  }
  return out;
}

ZLattice ZLattice::image(const QMat& linear) const {
  std::vector<QVec> gens;
  for (std::size_t i = 0; i < rank(); ++i) gens.push_back(linear * basis_.row(i));
  return generated_by(linear.rows(), gens);
}

ZLattice ZLattice::scaled(const Rational& s) const { return from_basis_rows(s * basis_); }

QSubspace::QSubspace(std::size_t dim) : dim_(dim), basis_(0, dim) {}

QSubspace QSubspace::spanned_by(std::size_t dim, const std::vector<QVec>& vectors) {
  QSubspace w(dim);
  if (vectors.empty()) return w;
  RowEchelon e = row_echelon(rows_of(dim, vectors));
  w.basis_ = e.reduced;
  w.pivots_ = e.pivots;
  return w;
}

QSubspace QSubspace::whole(std::size_t dim) {
  std::vector<QVec> e;
  for (std::size_t i = 0; i < dim; ++i) {
    QVec v(dim);
    v[i] = 1;
    e.push_back(v);
  }
  return spanned_by(dim, e);
}

std::vector<QVec> QSubspace::basis_vectors() const { return row_vectors(basis_); }

std::optional<QVec> QSubspace::coordinates(const QVec& v) const {
  if (v.size() != dim_) throw Error("subspace coordinate dimension mismatch");
  QVec x(pivots_.size());
  for (std::size_t i = 0; i < pivots_.size(); ++i) x[i] = v[pivots_[i]];
  for (std::size_t j = 0; j < dim_; ++j) {
    Rational s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * basis_(i, j);
    if (s != v[j]) return std::nullopt;
  }
  return x;
}

bool QSubspace::contains(const QVec& v) const { return coordinates(v).has_value(); }

bool QSubspace::contains(const QSubspace& other) const {
  for (std::size_t i = 0; i < other.dimension(); ++i)
    if (!contains(other.basis_.row(i))) return false;
  return true;
}

QMat QSubspace::annihilator() const {
  std::vector<QVec> forms = nullspace(basis_);
  return rows_of(dim_, forms);
}

QSubspace QSubspace::intersect(const QSubspace& other) const {
  QMat constraints = vstack(annihilator(), other.annihilator());
  return spanned_by(dim_, nullspace(constraints));
}

QSubspace QSubspace::sum(const QSubspace& other) const {
  std::vector<QVec> all = basis_vectors();
  for (auto& v : other.basis_vectors()) all.push_back(v);
  return spanned_by(dim_, all);
}

QSubspace QSubspace::image(const QMat& linear) const {
  std::vector<QVec> out;
  for (auto& v : basis_vectors()) out.push_back(linear * v);
  return spanned_by(linear.rows(), out);
}

void require_gram(const QMat& gram) {
  if (!is_positive_definite(gram)) throw Error("invalid Gram form");
}

QSubspace g_orthogonal_complement(const QSubspace& w, const QMat& gram) {
  require_gram(gram);
  if (gram.rows() != w.ambient_dim()) throw Error("Gram form dimension mismatch");
  if (w.dimension() == 0) return QSubspace::whole(w.ambient_dim());
  QMat constraints = w.basis() * gram;
  return QSubspace::spanned_by(w.ambient_dim(), nullspace(constraints));
}

ZLattice integer_points(const QSubspace& w) {
  std::size_t n = w.ambient_dim();
  std::size_t k = w.dimension();
  if (k == 0) return ZLattice(n);
  ZMat m = clear_denominators(w.basis());
  SmithForm s = snf(m);
  ZMat row_basis = unimodular_inverse(s.right);
  return ZLattice::from_basis_rows(to_rational(row_basis.block(0, 0, k, n)));
}

ZMat integer_kernel(const ZMat& m) {
  std::vector<QVec> kernel = nullspace(to_rational(m));
  if (kernel.empty()) return ZMat(0, m.cols());
  ZLattice l = integer_points(QSubspace::spanned_by(m.cols(), kernel));
  return *to_integer(l.basis());
}

ZLattice intersection(const ZLattice& a, const QSubspace& w) {
  if (a.dim() != w.ambient_dim()) throw Error("intersection dimension mismatch");
  QMat ann = w.annihilator();
  if (ann.rows() == 0 || a.rank() == 0) return a;
  QMat constraint = ann * a.basis().transpose();
  ZMat kernel = integer_kernel(clear_denominators(constraint));
  if (kernel.rows() == 0) return ZLattice(a.dim());
  return ZLattice::from_basis_rows(to_rational(kernel) * a.basis());
}

ZLattice intersection(const ZLattice& a, const ZLattice& b) {
  if (a.dim() != b.dim()) throw Error("intersection dimension mismatch");
  if (a.rank() == 0 || b.rank() == 0) return ZLattice(a.dim());
  QMat joint = hstack(a.basis().transpose(), -b.basis().transpose());
  ZMat kernel = integer_kernel(clear_denominators(joint));
  if (kernel.rows() == 0) return ZLattice(a.dim());
  QMat za = to_rational(kernel.block(0, 0, kernel.rows(), a.rank()));
  return ZLattice::from_basis_rows(za * a.basis());
}

ZLattice saturation(const ZLattice& l, const QSubspace& w) {
  QSubspace span = QSubspace::spanned_by(l.dim(), l.basis_vectors());
  return integer_points(span.intersect(w));
}

std::vector<Integer> quotient_invariants(const ZLattice& outer, const ZLattice& inner) {
  if (outer.dim() != inner.dim()) throw Error("not a sublattice");
  ZMat coords(inner.rank(), outer.rank());
  for (std::size_t i = 0; i < inner.rank(); ++i) {
    auto c = outer.coordinates(inner.basis().row(i));
    if (!c) throw Error("not a sublattice");
    for (std::size_t j = 0; j < outer.rank(); ++j) coords(i, j) = (*c)[j];
  }
  std::vector<Integer> out;
  std::size_t r = 0;
  if (inner.rank() > 0) {
    SmithForm s = snf(coords);
    r = s.rank();
    for (const auto& d : s.factors())
      if (d != 1) out.push_back(d);
  }
  for (std::size_t i = r; i < outer.rank(); ++i) out.push_back(Integer(0));
  return out;
}

Integer lattice_index(const ZLattice& outer, const ZLattice& inner) {
  Integer index = 1;
  for (const auto& d : quotient_invariants(outer, inner)) {
    if (d == 0) throw Error("sublattice has infinite index");
    index *= d;
  }
  return index;
}

}  // namespace flatfiber
