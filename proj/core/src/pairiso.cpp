#include "flatfiber/pairiso.hpp"

#include <cstdlib>
#include <map>
#include <mutex>
#include <tuple>

namespace flatfiber {

namespace {

QMat inverse_or_throw(const QMat& m) {
  auto inv = inverse(m);
  if (!inv) throw Error("singular linear part");
  return *inv;
}

bool maps_points_into(const QMat& c, const QMat& c_inv, const SpaceGroup& from,
                      const SpaceGroup& to) {
  if (from.point_group_order() != to.point_group_order()) return false;
  for (const auto& a : from.point_group())
    if (!to.coset_of(c * a * c_inv)) return false;
  return true;
}

// Lattice-coordinate version of g: lattice Z^n.
struct LatticeView {
  SpaceGroup group;
  QMat basis;  // columns
  QMat basis_inverse;
};

LatticeView lattice_view(const SpaceGroup& g) {
  LatticeView v;
  v.basis = g.lattice().basis().transpose();
  v.basis_inverse = inverse_or_throw(v.basis);
  std::vector<AffineMap> cosets;
  for (const auto& c : g.cosets())
    cosets.push_back({v.basis_inverse * c.linear * v.basis, v.basis_inverse * c.shift});
  v.group = SpaceGroup::from_cosets(g.name(), v.basis.transpose() * g.gram() * v.basis,
                                    ZLattice::standard(g.dim()), std::move(cosets));
  return v;
}

bool standard_lattice(const SpaceGroup& g) { return g.lattice() == ZLattice::standard(g.dim()); }

// Translation classes c with (c + C) g1 (c + C)^{-1} = g2, both with lattice Z^n and
// C mapping the point group of g1 onto that of g2.
std::vector<QVec> translation_classes(const SpaceGroup& g1, const SpaceGroup& g2, const QMat& c,
                                      const QMat& c_inv, std::size_t limit) {
  std::size_t n = g1.dim();
  std::vector<std::vector<Integer>> rows;
  QVec target;
  for (std::size_t i = 1; i < g1.cosets().size(); ++i) {
    const auto& x = g1.cosets()[i];
    QMat s2 = c * x.linear * c_inv;
    auto j = g2.coset_of(s2);
    if (!j) return {};
    QMat lhs = QMat::identity(n) - s2;
    QVec rhs = g2.cosets()[*j].shift - c * x.shift;
    for (std::size_t r = 0; r < n; ++r) {
      std::vector<Integer> row(n);
      for (std::size_t k = 0; k < n; ++k) row[k] = lhs(r, k).get_num();
      rows.push_back(std::move(row));
      target.push_back(rhs[r]);
    }
  }
  if (rows.empty()) return {QVec(n)};
  return congruence_classes(ZMat::from_rows(rows, n), target, limit);
}

std::vector<QVec> grid_vectors(std::size_t k, int denominator) {
  std::vector<QVec> out{QVec{}};
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<QVec> next;
    for (const auto& v : out)
      for (int a = 0; a < denominator; ++a) {
        QVec w = v;
        Rational x(a, denominator);
        x.canonicalize();
        w.push_back(x);
        next.push_back(std::move(w));
      }
    out = std::move(next);
  }
  return out;
}

std::vector<QMat> combinations(const std::vector<QMat>& basis, const std::vector<Rational>& grid,
                               std::size_t rows, std::size_t cols) {
  std::vector<QMat> out{QMat(rows, cols)};
  for (const auto& e : basis) {
    std::vector<QMat> next;
    for (const auto& m : out)
      for (const auto& x : grid) next.push_back(m + x * e);
    out = std::move(next);
  }
  return out;
}

std::optional<PairCertificate> search_canonical(const FibrationSplit& from,
                                                const FibrationSplit& to,
                                                const SearchBounds& bounds) {
  std::size_t m = from.fiber_dim();
  std::size_t d = from.base_dim();
  const auto& fiber1 = from.fiber();
  const auto& fiber2 = to.fiber();
  const auto& base1 = from.base();
  const auto& base2 = to.base();
  std::vector<std::pair<AffineMap, SplitIsometry>> gens;
  for (const auto& g : from.ambient().generators()) gens.emplace_back(g, from.split(g));

  for (int level = 1; level <= bounds.entry_bound; ++level) {
    for (const auto& cf : unimodular_matrices(m, level)) {
      int fiber_level = entry_bound_of(cf);
      QMat cf_inv = inverse_or_throw(cf);
      if (!maps_points_into(cf, cf_inv, fiber1, fiber2)) continue;
      std::vector<QMat> e_basis = equivariant_d_basis(cf, from, to);
      for (const auto& cb : unimodular_matrices(d, level)) {
        if (std::max(fiber_level, entry_bound_of(cb)) != level) continue;
        QMat cb_inv = inverse_or_throw(cb);
        if (!maps_points_into(cb, cb_inv, base1, base2)) continue;
        for (const auto& cshift : translation_classes(base1, base2, cb, cb_inv,
                                                      bounds.translation_class_limit)) {
          AffineMap beta{cb, cshift};
          AffineMap beta_inv = invert(beta);
          std::size_t p = e_basis.size();
          std::vector<std::vector<Rational>> rows;
          QVec target;
          bool viable = true;
          for (const auto& [g, parts] : gens) {
            AffineMap delta2 = beta * parts.base * beta_inv;
            if (!base2.contains(delta2)) {
              viable = false;
              break;
            }
            AffineMap image = to.xi(to.lift(delta2));
            QMat s = cf * parts.fiber.linear * cf_inv;
            QMat x = image.linear * inverse_or_throw(s);
            auto j = fiber2.coset_of(x);
            if (!j) {
              viable = false;
              break;
            }
            QMat x_inv = inverse_or_throw(x);
            QVec rhs = x_inv * (image.shift - fiber2.cosets()[*j].shift) - cf * parts.fiber.shift;
            QMat lhs = QMat::identity(m) - s;
            for (std::size_t r = 0; r < m; ++r) {
              std::vector<Rational> row;
              for (const auto& e : e_basis) row.push_back((e * parts.base.shift)[r]);
              for (std::size_t k = 0; k < m; ++k) row.push_back(lhs(r, k));
              rows.push_back(std::move(row));
              target.push_back(rhs[r]);
            }
          }
          if (!viable) continue;
          auto u = solve_congruence(QMat::from_rows(rows, p + m), target);
          if (!u) continue;
          QMat dmat(m, d);
          for (std::size_t k = 0; k < p; ++k) dmat = dmat + (*u)[k] * e_basis[k];
          PairMorphismData data{{cf, slice(*u, p, m)}, beta, dmat};
          AffineMap phi = assemble_phi(data, from, to);
          if (!conjugation_test(phi, from, to))
            throw Error("internal error: solved pair data does not conjugate");
          return PairCertificate{phi, data, level};
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace

AffinityBlocks blocks_of(const AffineMap& phi, const SpanData& from, const SpanData& to) {
  std::size_t m = from.fiber_dim();
  std::size_t d = from.base_dim();
  if (to.fiber_dim() != m || to.base_dim() != d || phi.dim() != m + d)
    throw Error("affinity does not respect spans");
  QMat f = to.frame_inverse * phi.linear * from.frame;
  if (!f.block(m, 0, d, m).is_zero()) throw Error("affinity does not respect spans");
  QVec c = to.frame_inverse * phi.shift;
  return {f.block(0, 0, m, m), f.block(m, m, d, d), f.block(0, m, m, d), slice(c, 0, m),
          slice(c, m, d)};
}

AffineMap assemble(const AffinityBlocks& b, const SpanData& from, const SpanData& to) {
  std::size_t m = b.fiber_linear.rows();
  std::size_t d = b.base_linear.rows();
  QMat f(m + d, m + d);
  f.set_block(0, 0, b.fiber_linear);
  f.set_block(0, m, b.mixed);
  f.set_block(m, m, b.base_linear);
  return {to.frame * f * from.frame_inverse, to.frame * concat(b.fiber_shift, b.base_shift)};
}

BlockIdentityReport block_inverse_identities(const AffineMap& phi, const FibrationSplit& from,
                               const FibrationSplit& to) {
  BlockIdentityReport r;
  AffinityBlocks b = blocks_of(phi, from.span(), to.span());
  AffinityBlocks inv = blocks_of(invert(phi), to.span(), from.span());
  QMat fi = inverse_or_throw(b.fiber_linear);
  QMat bi = inverse_or_throw(b.base_linear);
  r.fiber_inverse = inv.fiber_linear == fi;
  r.base_inverse = inv.base_linear == bi;
  r.mixed_inverse = inv.mixed == -(fi * b.mixed * bi);
  r.mixed_in_center = true;
  for (std::size_t j = 0; j < b.mixed.cols(); ++j)
    if (!to.center_coordinates(b.mixed.col(j))) r.mixed_in_center = false;
  r.mixed_equivariant = true;
  for (const auto& g : from.ambient().generators()) {
    SplitIsometry parts = from.split(g);
    if (b.mixed * parts.base.linear != b.fiber_linear * parts.fiber.linear * fi * b.mixed)
      r.mixed_equivariant = false;
  }
  return r;
}

AffineMap assemble_phi(const PairMorphismData& data, const FibrationSplit& from,
                       const FibrationSplit& to) {
  return assemble({data.alpha.linear, data.beta.linear, data.d, data.alpha.shift, data.beta.shift},
                  from.span(), to.span());
}

PairMorphismData data_of(const AffineMap& phi, const FibrationSplit& from, const FibrationSplit& to) {
  AffinityBlocks b = blocks_of(phi, from.span(), to.span());
  return {{b.fiber_linear, b.fiber_shift}, {b.base_linear, b.base_shift}, b.mixed};
}

bool is_admissible(const PairMorphismData& data, const FibrationSplit& from,
                   const FibrationSplit& to) {
  std::size_t m = from.fiber_dim();
  std::size_t d = from.base_dim();
  if (data.alpha.dim() != m || data.beta.dim() != d || data.d.rows() != m || data.d.cols() != d)
    return false;
  if (!inverse(data.alpha.linear) || !inverse(data.beta.linear)) return false;
  if (!conjugates_onto(data.alpha, from.fiber(), to.fiber())) return false;
  if (!conjugates_onto(data.beta, from.base(), to.base())) return false;
  for (std::size_t j = 0; j < d; ++j)
    if (!to.center_coordinates(data.d.col(j))) return false;
  QMat ai = *inverse(data.alpha.linear);
  for (const auto& g : from.ambient().generators()) {
    SplitIsometry parts = from.split(g);
    if (data.d * parts.base.linear != data.alpha.linear * parts.fiber.linear * ai * data.d)
      return false;
  }
  return true;
}

bool theorem3_condition(const PairMorphismData& data, const FibrationSplit& from,
                        const FibrationSplit& to) {
  AffineMap alpha_inv = invert(data.alpha);
  AffineMap beta_inv = invert(data.beta);
  for (const auto& g : from.ambient().generators()) {
    SplitIsometry parts = from.split(g);
    AffineMap delta2 = data.beta * parts.base * beta_inv;
    if (!to.base().contains(delta2)) return false;
    AffineMap lhs = to.xi(to.lift(delta2));
    AffineMap rhs = AffineMap::translation(data.d * parts.base.shift) * data.alpha * parts.fiber *
                    alpha_inv;
    if (!to.fiber().contains(lhs * invert(rhs))) return false;
  }
  return true;
}

bool theorem3_condition_conjugated(const PairMorphismData& data, const FibrationSplit& from,
                                   const FibrationSplit& to) {
  AffineMap alpha_inv = invert(data.alpha);
  AffineMap beta_inv = invert(data.beta);
  QMat ci = inverse_or_throw(data.alpha.linear);
  for (const auto& g : from.ambient().generators()) {
    SplitIsometry parts = from.split(g);
    AffineMap delta2 = data.beta * parts.base * beta_inv;
    if (!to.base().contains(delta2)) return false;
    AffineMap lhs = alpha_inv * to.xi(to.lift(delta2)) * data.alpha;
    AffineMap rhs = AffineMap::translation(ci * (data.d * parts.base.shift)) * parts.fiber;
    if (!from.fiber().contains(lhs * invert(rhs))) return false;
  }
  return true;
}

bool conjugation_test(const AffineMap& phi, const SpaceGroup& g1, const SubgroupHandle& n1,
                      const SpaceGroup& g2, const SubgroupHandle& n2) {
  if (!inverse(phi.linear)) return false;
  if (!conjugates_onto(phi, g1, g2)) return false;
  AffineMap inv = invert(phi);
  for (const auto& y : n1.generators())
    if (!n2.contains(phi * y * inv)) return false;
  for (const auto& y : n2.generators())
    if (!n1.contains(inv * y * phi)) return false;
  return true;
}

bool conjugation_test(const AffineMap& phi, const FibrationSplit& from, const FibrationSplit& to) {
  return conjugation_test(phi, from.ambient(), from.normal(), to.ambient(), to.normal());
}

std::vector<QMat> equivariant_d_basis(const QMat& fiber_linear, const FibrationSplit& from,
                                      const FibrationSplit& to) {
  std::size_t m = from.fiber_dim();
  std::size_t d = from.base_dim();
  const QMat& z = to.center_frame();
  std::size_t r = z.cols();
  if (r == 0) return {};
  QMat ci = inverse_or_throw(fiber_linear);
  // Unknown Y (r x d), row-major; constraint Z Y B' - S Z Y = 0 per generator.
  std::vector<std::vector<Rational>> rows;
  for (const auto& g : from.ambient().generators()) {
    SplitIsometry parts = from.split(g);
    const QMat& bp = parts.base.linear;
    QMat sz = fiber_linear * parts.fiber.linear * ci * z;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        std::vector<Rational> row(r * d);
        for (std::size_t k = 0; k < r; ++k)
          for (std::size_t l = 0; l < d; ++l) {
            row[k * d + l] += z(i, k) * bp(l, j);
            if (l == j) row[k * d + l] -= sz(i, k);
          }
        rows.push_back(std::move(row));
      }
  }
  std::vector<QMat> out;
  for (const auto& y : nullspace(QMat::from_rows(rows, r * d))) {
    QMat ym(r, d);
    for (std::size_t k = 0; k < r; ++k)
      for (std::size_t l = 0; l < d; ++l) ym(k, l) = y[k * d + l];
    out.push_back(z * ym);
  }
  return out;
}

std::optional<PairCertificate> pair_isomorphism_search(const FibrationSplit& from,
                                                       const FibrationSplit& to,
                                                       const SearchBounds& bounds) {
  if (from.ambient().dim() != to.ambient().dim() || from.fiber_dim() != to.fiber_dim() ||
      from.base_dim() != to.base_dim())
    return std::nullopt;
  if (from.ambient().point_group_order() != to.ambient().point_group_order() ||
      from.fiber().point_group_order() != to.fiber().point_group_order() ||
      from.base().point_group_order() != to.base().point_group_order() ||
      from.center_rank() != to.center_rank())
    return std::nullopt;
  bool canonical = standard_lattice(from.fiber()) && standard_lattice(from.base()) &&
                   standard_lattice(to.fiber()) && standard_lattice(to.base());
  if (canonical) return search_canonical(from, to, bounds);
  FibrationSplit a = FibrationSplit::analyze(from.ambient(), from.normal());
  FibrationSplit b = FibrationSplit::analyze(to.ambient(), to.normal());
  auto cert = search_canonical(a, b, bounds);
  if (cert) cert->data = data_of(cert->phi, from, to);
  return cert;
}

std::vector<PairMorphismData> candidate_space(const FibrationSplit& from, const FibrationSplit& to,
                                              int bound, int denominator,
                                              const std::vector<Rational>& d_grid) {
  std::size_t m = from.fiber_dim();
  std::size_t d = from.base_dim();
  if (to.fiber_dim() != m || to.base_dim() != d) return {};
  std::vector<std::pair<AffineMap, std::vector<QMat>>> alphas;
  for (const auto& cf : unimodular_matrices(m, bound)) {
    QMat cf_inv = inverse_or_throw(cf);
    if (!maps_points_into(cf, cf_inv, from.fiber(), to.fiber())) continue;
    std::vector<QMat> ds = combinations(equivariant_d_basis(cf, from, to), d_grid, m, d);
    for (const auto& shift : grid_vectors(m, denominator)) {
      AffineMap alpha{cf, shift};
      if (conjugates_onto(alpha, from.fiber(), to.fiber())) alphas.emplace_back(alpha, ds);
    }
  }
  std::vector<AffineMap> betas;
  for (const auto& cb : unimodular_matrices(d, bound)) {
    QMat cb_inv = inverse_or_throw(cb);
    if (!maps_points_into(cb, cb_inv, from.base(), to.base())) continue;
    for (const auto& shift : grid_vectors(d, denominator)) {
      AffineMap beta{cb, shift};
      if (conjugates_onto(beta, from.base(), to.base())) betas.push_back(beta);
    }
  }
  std::vector<PairMorphismData> out;
  for (const auto& [alpha, ds] : alphas)
    for (const auto& beta : betas)
      for (const auto& dm : ds) out.push_back({alpha, beta, dm});
  return out;
}

const std::vector<QMat>& unimodular_matrices(std::size_t n, int bound) {
  static std::mutex mutex;
  static std::map<std::pair<std::size_t, int>, std::vector<QMat>> cache;
  std::lock_guard lock(mutex);
  auto key = std::make_pair(n, bound);
  if (auto it = cache.find(key); it != cache.end()) return it->second;

  std::size_t cells = n * n;
  long long width = 2LL * bound + 1;
  long long total = 1;
  for (std::size_t i = 0; i < cells; ++i) {
    total *= width;
    if (total > 2'000'000) throw Error("unimodular enumeration too large");
  }
  using Key = std::tuple<int, long long, std::vector<long long>>;
  std::vector<std::pair<Key, QMat>> found;
  std::vector<long long> entries(cells);
  for (long long code = 0; code < total; ++code) {
    long long rest = code;
    for (std::size_t i = 0; i < cells; ++i) {
      entries[i] = rest % width - bound;
      rest /= width;
    }
    QMat q(n, n);
    int maxabs = 0;
    long long distance = 0;
    for (std::size_t i = 0; i < cells; ++i) {
      q(i / n, i % n) = static_cast<long>(entries[i]);
      maxabs = std::max(maxabs, static_cast<int>(std::llabs(entries[i])));
      distance += std::llabs(entries[i] - (i / n == i % n ? 1 : 0));
    }
    Rational det = determinant(q);
    if (det != 1 && det != -1) continue;
    found.emplace_back(Key{maxabs, distance, entries}, std::move(q));
  }
  std::sort(found.begin(), found.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<QMat> out;
  for (auto& f : found) out.push_back(std::move(f.second));
  return cache.emplace(key, std::move(out)).first->second;
}

int entry_bound_of(const QMat& m) {
  int out = 0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      Rational a = abs(m(i, j));
      out = std::max(out, static_cast<int>(floor_of(a).get_si()));
    }
  return out;
}

std::vector<AffineMap> affine_conjugacies(const SpaceGroup& g1, const SpaceGroup& g2, int bound,
                                          std::size_t limit) {
  std::vector<AffineMap> out;
  if (g1.dim() != g2.dim() || g1.point_group_order() != g2.point_group_order()) return out;
  LatticeView v1 = lattice_view(g1);
  LatticeView v2 = lattice_view(g2);
  for (const auto& c : unimodular_matrices(g1.dim(), bound)) {
    QMat c_inv = inverse_or_throw(c);
    if (!maps_points_into(c, c_inv, v1.group, v2.group)) continue;
    for (const auto& shift : translation_classes(v1.group, v2.group, c, c_inv, limit)) {
      AffineMap phi{v2.basis * c * v1.basis_inverse, v2.basis * shift};
      if (!conjugates_onto(phi, g1, g2))
        throw Error("internal error: translation class does not conjugate");
      out.push_back(phi);
      if (out.size() >= limit) return out;
    }
  }
  return out;
}

}  // namespace flatfiber
