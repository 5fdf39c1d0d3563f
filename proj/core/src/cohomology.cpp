#include "flatfiber/cohomology.hpp"

#include <cstdint>
#include <sstream>

namespace flatfiber {

namespace {

constexpr std::uint64_t kPrime = 2147483647ULL;

QMat identity_q(std::size_t n) { return QMat::identity(n); }

std::size_t power(std::size_t base, std::size_t exponent) {
  std::size_t out = 1;
  for (std::size_t i = 0; i < exponent; ++i) out *= base;
  return out;
}

void add_block(ZMat& target, std::size_t row, std::size_t col, const ZMat& block, int sign) {
  for (std::size_t i = 0; i < block.rows(); ++i)
    for (std::size_t j = 0; j < block.cols(); ++j) {
      if (sign > 0)
        target(row + i, col + j) += block(i, j);
      else
        target(row + i, col + j) -= block(i, j);
    }
}

std::vector<Integer> nontrivial(const std::vector<Integer>& factors) {
  std::vector<Integer> out;
  for (const auto& f : factors)
    if (f != 1) out.push_back(abs(f));
  return out;
}

Integer product(const std::vector<Integer>& xs) {
  Integer p = 1;
  for (const auto& x : xs) p *= x;
  return p;
}

QVec flatten(const std::vector<QVec>& values) {
  QVec out;
  for (const auto& v : values) out.insert(out.end(), v.begin(), v.end());
  return out;
}

std::vector<QVec> unflatten(const QVec& x, std::size_t blocks, std::size_t rank) {
  std::vector<QVec> out;
  for (std::size_t i = 0; i < blocks; ++i) out.push_back(slice(x, i * rank, rank));
  return out;
}

QVec reduce_mod_one(QVec v) {
  for (auto& x : v) x = fractional_part(x);
  return v;
}

// Column block per generator: (ρ(x) - I) v.
ZMat principal_matrix(const std::vector<ZMat>& action, std::size_t rank) {
  ZMat m(action.size() * rank, rank);
  for (std::size_t i = 0; i < action.size(); ++i) {
    add_block(m, i * rank, 0, action[i], 1);
    add_block(m, i * rank, 0, ZMat::identity(rank), -1);
  }
  return m;
}

const Presentation& base_presentation(const FibrationSplit& s) { return s.base().presentation(); }

}  // namespace

Integer AbelianGroup::order() const {
  if (!finite()) throw Error("infinite abelian group has no order");
  return product(torsion);
}

std::string AbelianGroup::to_string() const {
  std::ostringstream out;
  bool first = true;
  auto sep = [&] {
    if (!first) out << " + ";
    first = false;
  };
  for (const auto& t : torsion) {
    sep();
    out << "Z/" << t;
  }
  if (free_rank) {
    sep();
    out << "Z^" << free_rank;
  }
  if (divisible_rank) {
    sep();
    out << "D^" << divisible_rank;
  }
  if (first) out << "0";
  return out.str();
}

GModule GModule::trivial(ModuleKind kind, const FiniteGroup& g, std::size_t rank) {
  return {kind, rank, std::vector<ZMat>(g.order(), ZMat::identity(rank))};
}

void validate_module(const FiniteGroup& g, const GModule& m) {
  if (m.action.size() != g.order()) throw Error("module action needs one matrix per element");
  for (const auto& a : m.action)
    if (a.rows() != m.rank || a.cols() != m.rank) throw Error("module action has wrong size");
  if (m.rank > 0 && !m.action[0].is_identity()) throw Error("identity acts nontrivially");
  for (std::size_t a = 0; a < g.order(); ++a)
    for (std::size_t b = 0; b < g.order(); ++b)
      if (m.action[g.multiply(a, b)] != m.action[a] * m.action[b])
        throw Error("module action is not a homomorphism");
}

ZMat bar_differential(const FiniteGroup& g, const GModule& m, std::size_t degree) {
  std::size_t q = g.order() - 1;
  std::size_t r = m.rank;
  std::size_t k = degree;
  std::size_t cols = power(q, k);
  std::size_t rows = power(q, k + 1);
  ZMat out(rows * r, cols * r);
  if (r == 0) return out;
  std::vector<std::size_t> t(k + 1);
  auto encode = [&](const std::vector<std::size_t>& u) {
    std::size_t code = 0;
    for (auto x : u) code = code * q + (x - 1);
    return code;
  };
  ZMat identity = ZMat::identity(r);
  for (std::size_t row = 0; row < rows; ++row) {
    std::size_t rest = row;
    for (std::size_t i = k + 1; i-- > 0;) {
      t[i] = rest % q + 1;
      rest /= q;
    }
    std::vector<std::size_t> tail(t.begin() + 1, t.end());
    add_block(out, row * r, encode(tail) * r, m.action[t[0]], 1);
    for (std::size_t i = 0; i < k; ++i) {
      std::size_t merged = g.multiply(t[i], t[i + 1]);
      if (merged == 0) continue;
      std::vector<std::size_t> u;
      for (std::size_t j = 0; j < i; ++j) u.push_back(t[j]);
      u.push_back(merged);
      for (std::size_t j = i + 2; j <= k; ++j) u.push_back(t[j]);
      add_block(out, row * r, encode(u) * r, identity, (i + 1) % 2 == 0 ? 1 : -1);
    }
    std::vector<std::size_t> head(t.begin(), t.end() - 1);
    add_block(out, row * r, encode(head) * r, identity, (k + 1) % 2 == 0 ? 1 : -1);
  }
  return out;
}

std::size_t rank_mod_prime(const ZMat& m) {
  std::size_t rows = m.rows();
  std::size_t cols = m.cols();
  std::vector<std::vector<std::uint64_t>> a(rows, std::vector<std::uint64_t>(cols));
  Integer p(static_cast<unsigned long>(kPrime));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      Integer x;
      mpz_fdiv_r(x.get_mpz_t(), m(i, j).get_mpz_t(), p.get_mpz_t());
      a[i][j] = x.get_ui();
    }
  auto inverse_of = [](std::uint64_t x) {
    std::uint64_t result = 1, base = x, e = kPrime - 2;
    while (e) {
      if (e & 1) result = result * base % kPrime;
      base = base * base % kPrime;
      e >>= 1;
    }
    return result;
  };
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && a[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(a[pivot], a[rank]);
    std::uint64_t inv = inverse_of(a[rank][c]);
    for (std::size_t j = c; j < cols; ++j) a[rank][j] = a[rank][j] * inv % kPrime;
    for (std::size_t i = rank + 1; i < rows; ++i) {
      std::uint64_t f = a[i][c];
      if (f == 0) continue;
      for (std::size_t j = c; j < cols; ++j)
        a[i][j] = (a[i][j] + (kPrime - f) * a[rank][j]) % kPrime;
    }
    ++rank;
  }
  return rank;
}

AbelianGroup h_finite(const FiniteGroup& g, const GModule& m, std::size_t degree,
                      std::size_t bound) {
  if (g.order() > bound) throw Error("finite-group bound exceeded");
  if (degree < 1 || degree > 2) throw Error("unsupported cohomological degree");
  if (m.kind == ModuleKind::torus && degree != 1) throw Error("unsupported cohomological degree");
  validate_module(g, m);
  AbelianGroup out;
  if (m.rank == 0 || g.order() == 1) return out;

  std::size_t k = m.kind == ModuleKind::torus ? 2 : degree;
  ZMat previous = bar_differential(g, m, k - 1);
  ZMat current = bar_differential(g, m, k);
  SmithForm smith = snf(previous);
  std::size_t cochains = current.cols();
  // dim H^k(G, Q^r) = dim C^k - rank δ^{k-1} - rank δ^k; the mod-p rank is a
  // lower bound for the rational rank, so a zero gap here is a proof.
  std::size_t gap = cochains - smith.rank() - rank_mod_prime(current);
  if (gap != 0) gap = cochains - smith.rank() - rank(to_rational(current));

  if (m.kind == ModuleKind::rational) {
    out.divisible_rank = gap;
    return out;
  }
  if (m.kind == ModuleKind::lattice) {
    out.torsion = nontrivial(smith.factors());
    out.free_rank = gap;
    return out;
  }
  // Torus coefficients: classes are killed by n = |G|, so they are
  // represented by cocycles into the n-torsion T[n]; count Z¹(G, T[n]) and
  // the coboundaries inside it.
  ZMat delta1 = bar_differential(g, m, 1);
  ZMat delta0 = bar_differential(g, m, 0);
  SmithForm s1 = snf(delta1);
  std::size_t gap1 = delta1.cols() - s1.rank() - snf(delta0).rank();
  Integer n(static_cast<unsigned long>(g.order()));
  for (const auto& f : s1.factors()) {
    Integer d = gcd_of(f, n);
    if (d != 1) out.torsion.push_back(d);
  }
  out.divisible_rank = gap1;
  return out;
}

ModuleTriple module_triple(const FibrationSplit& s) {
  ModuleTriple t;
  t.rank = s.center_rank();
  t.center_frame = s.center_frame();
  for (const auto& lift : s.base_generator_lifts()) t.generator_action.push_back(s.center_action(lift));
  std::vector<QVec> cols;
  for (std::size_t j = 0; j < t.center_frame.cols(); ++j) cols.push_back(t.center_frame.col(j));
  QSubspace span = QSubspace::spanned_by(s.fiber_dim(), cols);
  t.exact = intersection(s.fiber().lattice(), span) == s.center();
  return t;
}

ZMat word_action(const Word& w, const std::vector<ZMat>& action, std::size_t rank) {
  ZMat out = ZMat::identity(rank);
  for (const auto& l : w)
    out = out * (l.inverse ? unimodular_inverse(action[l.generator]) : action[l.generator]);
  return out;
}

ZMat fox_matrix(const Presentation& p, const std::vector<ZMat>& action, std::size_t rank) {
  std::size_t k = p.size();
  ZMat out(p.relators.size() * rank, k * rank);
  if (rank == 0) return out;
  std::vector<ZMat> inverses;
  for (const auto& a : action) inverses.push_back(unimodular_inverse(a));
  for (std::size_t r = 0; r < p.relators.size(); ++r) {
    ZMat prefix = ZMat::identity(rank);
    for (const auto& l : p.relators[r]) {
      if (!l.inverse) {
        add_block(out, r * rank, l.generator * rank, prefix, 1);
        prefix = prefix * action[l.generator];
      } else {
        prefix = prefix * inverses[l.generator];
        add_block(out, r * rank, l.generator * rank, prefix, -1);
      }
    }
  }
  return out;
}

QVec evaluate_crossed(const Word& w, const std::vector<QVec>& values,
                      const std::vector<ZMat>& action, std::size_t rank) {
  QVec out(rank);
  if (rank == 0) return out;
  QMat prefix = identity_q(rank);
  for (const auto& l : w) {
    QMat a = to_rational(action[l.generator]);
    if (!l.inverse) {
      out = out + prefix * values[l.generator];
      prefix = prefix * a;
    } else {
      prefix = prefix * *inverse(a);
      out = out - prefix * values[l.generator];
    }
  }
  return out;
}

bool satisfies_relators(const CrossedHom& f, const FibrationSplit& s) {
  ModuleTriple t = module_triple(s);
  for (const auto& relator : base_presentation(s).relators) {
    QVec v = evaluate_crossed(relator, f.values, t.generator_action, t.rank);
    if (f.kind == ModuleKind::torus ? !is_integral(v) : !is_zero(v)) return false;
  }
  return true;
}

FiniteGroup finite_quotient(const FibrationSplit& s) {
  return FiniteGroup::quotient(s.ambient(), s.normal());
}

GModule center_module(const FibrationSplit& s, const FiniteGroup& g, ModuleKind kind) {
  GModule m{kind, s.center_rank(), {}};
  for (const auto& rep : g.representatives()) m.action.push_back(s.center_action(rep));
  validate_module(g, m);
  return m;
}

QuotientCohomology h1_gamma_mod_n(const FibrationSplit& s) {
  QuotientCohomology out;
  ModuleTriple t = module_triple(s);
  std::size_t r = t.rank;
  if (r == 0) return out;
  const auto& pres = base_presentation(s);
  ZMat fox = fox_matrix(pres, t.generator_action, r);
  SmithForm smith = snf(fox);
  std::size_t principal_rank = rank(to_rational(principal_matrix(t.generator_action, r)));
  out.c_dimension = pres.size() * r - smith.rank() - principal_rank;
  out.k_group.torsion = nontrivial(smith.factors());
  out.k_group.divisible_rank = out.c_dimension;

  // Hom_{Γ/N}(TN/N, 𝒞): X (r x d) with X B' = ρ X on every generator.
  std::size_t d = s.base_dim();
  std::vector<std::vector<Rational>> rows;
  for (std::size_t g = 0; g < pres.size(); ++g) {
    const QMat& bp = pres.generators[g].linear;
    QMat rho = to_rational(t.generator_action[g]);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        std::vector<Rational> row(r * d);
        for (std::size_t l = 0; l < d; ++l) row[i * d + l] += bp(l, j);
        for (std::size_t k = 0; k < r; ++k) row[k * d + j] -= rho(i, k);
        rows.push_back(std::move(row));
      }
  }
  out.hom_dimension = rows.empty() ? r * d : nullspace(QMat::from_rows(rows, r * d)).size();
  return out;
}

Integer KappaCokernel::order() const { return product(invariants); }
Integer KappaCokernel::bound() const { return product(inflation_part) * product(hom_part); }

KappaCokernel kappa_star_cokernel(const FibrationSplit& s) {
  KappaCokernel out;
  ModuleTriple t = module_triple(s);
  std::size_t r = t.rank;
  if (r == 0) return out;
  out.invariants = nontrivial(snf(fox_matrix(base_presentation(s), t.generator_action, r)).factors());

  FiniteGroup g = finite_quotient(s);
  out.inflation_part = h_finite(g, center_module(s, g, ModuleKind::lattice), 2).torsion;

  // X ↦ (X σ(g) - ρ(g) X)_g on integral r x d matrices, σ in proj(L) coordinates.
  std::size_t d = s.projected_lattice().rank();
  const auto& lifts = s.base_generator_lifts();
  ZMat e(lifts.size() * r * d, r * d);
  for (std::size_t g = 0; g < lifts.size(); ++g) {
    ZMat sigma = s.projected_action(lifts[g]);
    const ZMat& rho = t.generator_action[g];
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        std::size_t row = g * r * d + i * d + j;
        for (std::size_t l = 0; l < d; ++l) e(row, i * d + l) += sigma(l, j);
        for (std::size_t k = 0; k < r; ++k) e(row, k * d + j) -= rho(i, k);
      }
  }
  out.hom_part = nontrivial(snf(e).factors());
  return out;
}

std::vector<CrossedHom> c_cocycle_basis(const FibrationSplit& s) {
  ModuleTriple t = module_triple(s);
  std::size_t k = base_presentation(s).size();
  std::vector<CrossedHom> out;
  if (t.rank == 0) return out;
  ZMat fox = fox_matrix(base_presentation(s), t.generator_action, t.rank);
  std::vector<QVec> kernel;
  if (fox.rows() == 0) {
    for (std::size_t i = 0; i < k * t.rank; ++i) {
      QVec e(k * t.rank);
      e[i] = 1;
      kernel.push_back(e);
    }
  } else {
    kernel = nullspace(to_rational(fox));
  }
  for (const auto& x : kernel)
    out.push_back({ModuleKind::rational, unflatten(x, k, t.rank)});
  return out;
}

CrossedHom principal_crossed(const FibrationSplit& s, const QVec& v) {
  ModuleTriple t = module_triple(s);
  CrossedHom f{ModuleKind::rational, {}};
  for (const auto& a : t.generator_action) f.values.push_back(to_rational(a) * v - v);
  return f;
}

QMat restriction_to_translations(const CrossedHom& f, const FibrationSplit& s) {
  ModuleTriple t = module_triple(s);
  const ZLattice& proj = s.projected_lattice();
  std::size_t d = proj.rank();
  QMat y(t.rank, d);
  for (std::size_t j = 0; j < d; ++j) {
    Word w = normal_form_word(s.base(), AffineMap::translation(proj.basis().row(j)));
    QVec value = evaluate_crossed(w, f.values, t.generator_action, t.rank);
    for (std::size_t i = 0; i < t.rank; ++i) y(i, j) = value[i];
  }
  return y * *inverse(proj.basis().transpose());
}

std::optional<QVec> principal_witness(const CrossedHom& f, const FibrationSplit& s) {
  ModuleTriple t = module_triple(s);
  if (t.rank == 0) return QVec{};
  QMat m = to_rational(principal_matrix(t.generator_action, t.rank));
  return solve_linear(m, flatten(f.values));
}

std::optional<QVec> kappa_coordinates(const FibrationSplit& s, const AffineMap& h) {
  const SpaceGroup& fiber = s.fiber();
  auto j = fiber.coset_of(h.linear);
  if (!j) return std::nullopt;
  QMat a_inv = *inverse(h.linear);
  QVec w0 = a_inv * (h.shift - fiber.cosets()[*j].shift);
  std::vector<QVec> cols;
  for (std::size_t c = 0; c < s.center_frame().cols(); ++c) cols.push_back(s.center_frame().col(c));
  QSubspace span = QSubspace::spanned_by(s.fiber_dim(), cols);
  QMat ann = span.annihilator();
  QMat lattice_cols = fiber.lattice().basis().transpose();
  QVec v = w0;
  if (ann.rows() > 0) {
    auto z = solve_integer(ann * lattice_cols, ann * w0);
    if (!z) return std::nullopt;
    v = w0 - lattice_cols * to_rational(*z);
  }
  auto coords = s.center().rational_coordinates(v);
  if (!coords) return std::nullopt;
  return reduce_mod_one(*coords);
}

AffineMap lift_fiber_automorphism(const SpaceGroup& from, const SpaceGroup& to,
                                  const std::vector<AffineMap>& images) {
  std::size_t m = from.dim();
  auto gens = from.generators();
  if (images.size() != gens.size() || to.dim() != m)
    throw Error("automorphism not affinely realizable");
  // Unknowns: C (row-major m x m), then c. Equations C A = A' C and C a + c - A' c = a'.
  std::size_t unknowns = m * m + m;
  std::vector<std::vector<Rational>> rows;
  QVec rhs;
  for (std::size_t g = 0; g < gens.size(); ++g) {
    const auto& a = gens[g];
    const auto& b = images[g];
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        std::vector<Rational> row(unknowns);
        for (std::size_t k = 0; k < m; ++k) {
          row[i * m + k] += a.linear(k, j);
          row[k * m + j] -= b.linear(i, k);
        }
        rows.push_back(std::move(row));
        rhs.push_back(0);
      }
    for (std::size_t i = 0; i < m; ++i) {
      std::vector<Rational> row(unknowns);
      for (std::size_t k = 0; k < m; ++k) row[i * m + k] += a.shift[k];
      row[m * m + i] += 1;
      for (std::size_t k = 0; k < m; ++k) row[m * m + k] -= b.linear(i, k);
      rows.push_back(std::move(row));
      rhs.push_back(b.shift[i]);
    }
  }
  auto x = solve_linear(QMat::from_rows(rows, unknowns), rhs);
  if (!x) throw Error("automorphism not affinely realizable");
  QMat c(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) c(i, j) = (*x)[i * m + j];
  AffineMap alpha{c, slice(*x, m * m, m)};
  if (!inverse(c) || !conjugates_onto(alpha, from, to))
    throw Error("automorphism not affinely realizable");
  for (std::size_t g = 0; g < gens.size(); ++g)
    if (alpha * gens[g] * invert(alpha) != images[g])
      throw Error("automorphism not affinely realizable");
  return alpha;
}

QVec fiber_class_value(const FibrationSplit& from, const FibrationSplit& to, const AffineMap& alpha,
                       const AffineMap& beta, const AffineMap& gamma) {
  SplitIsometry parts = from.split(gamma);
  AffineMap delta = beta * parts.base * invert(beta);
  if (!to.base().contains(delta)) throw Error("β does not conjugate the base groups");
  AffineMap image = to.xi(to.lift(delta));
  AffineMap h = invert(alpha) * image * alpha * invert(parts.fiber);
  auto v = kappa_coordinates(from, h);
  if (!v) throw Error("ω-compatibility violated");
  return *v;
}

FiberClass build_fiber_class(const FibrationSplit& from, const FibrationSplit& to,
                             const AffineMap& alpha, const AffineMap& beta) {
  FiberClass c{{ModuleKind::torus, {}}, alpha, beta};
  for (const auto& lift : from.base_generator_lifts())
    c.cocycle.values.push_back(fiber_class_value(from, to, alpha, beta, lift));
  if (!satisfies_relators(c.cocycle, from))
    throw Error("internal error: fiber class violates the cocycle identity");
  return c;
}

std::optional<KappaWitness> class_in_kappa_image(const FiberClass& c, const FibrationSplit& from,
                                                 const FibrationSplit& to) {
  ModuleTriple t = module_triple(from);
  std::size_t r = t.rank;
  const auto& pres = base_presentation(from);
  KappaWitness w;
  w.lift = {ModuleKind::rational, std::vector<QVec>(pres.size(), QVec(r))};
  if (r > 0) {
    QMat fox = to_rational(fox_matrix(pres, t.generator_action, r));
    QVec x = flatten(c.cocycle.values);
    if (fox.rows() > 0) {
      auto z = solve_integer(fox, fox * x);
      if (!z) return std::nullopt;
      x = x - to_rational(*z);
    }
    w.lift.values = unflatten(x, pres.size(), r);
  }
  QMat lc = r > 0 ? restriction_to_translations(w.lift, from) : QMat(0, from.base_dim());
  QVec u(r);
  if (r > 0) {
    QMat m(0, r);
    QVec rhs;
    for (std::size_t g = 0; g < pres.size(); ++g) {
      m = vstack(m, identity_q(r) - to_rational(t.generator_action[g]));
      QVec residual = w.lift.values[g] - lc * pres.generators[g].shift;
      rhs.insert(rhs.end(), residual.begin(), residual.end());
    }
    auto sol = solve_linear(m, rhs);
    if (!sol) throw Error("internal error: restriction does not determine the class");
    u = *sol;
  }
  const QMat& frame = t.center_frame;
  w.v = r > 0 ? frame * u : QVec(from.fiber_dim());
  w.l = r > 0 ? frame * lc : QMat(from.fiber_dim(), from.base_dim());
  w.d = c.alpha.linear * w.l;
  w.data = {c.alpha * AffineMap::translation(w.v), c.beta, w.d};
  w.phi = assemble_phi(w.data, from, to);
  w.verified = conjugation_test(w.phi, from, to);
  return w;
}

ElementCocycle dp1_cocycle(const PairMorphismData& data, const FibrationSplit& from) {
  QMat c = data.alpha.linear;
  QMat ci = *inverse(c);
  return {[=, &from](const AffineMap& g) { return data.d * from.split(g).base.shift; },
          [=, &from](const AffineMap& g) { return c * from.split(g).fiber.linear * ci; }, false};
}

ElementCocycle conjugated_dp1_cocycle(const PairMorphismData& data, const FibrationSplit& from) {
  QMat cid = *inverse(data.alpha.linear) * data.d;
  return {[=, &from](const AffineMap& g) { return cid * from.split(g).base.shift; },
          [&from](const AffineMap& g) { return from.split(g).fiber.linear; }, false};
}

ElementCocycle fiber_class_cocycle(const FibrationSplit& from, const FibrationSplit& to,
                                   const AffineMap& alpha, const AffineMap& beta) {
  return {[=, &from, &to](const AffineMap& g) {
            return fiber_class_value(from, to, alpha, beta, g);
          },
          [&from](const AffineMap& g) { return to_rational(from.center_action(g)); }, true};
}

ElementCocycle principal_cocycle(const FibrationSplit& s, const QVec& v) {
  return {[=, &s](const AffineMap& g) { return to_rational(s.center_action(g)) * v - v; },
          [&s](const AffineMap& g) { return to_rational(s.center_action(g)); }, false};
}

ElementCocycle lifted_cocycle(const CrossedHom& y, const FibrationSplit& s) {
  ModuleTriple t = module_triple(s);
  return {[=, &s](const AffineMap& g) {
            Word w = normal_form_word(s.base(), s.split(g).base);
            return evaluate_crossed(w, y.values, t.generator_action, t.rank);
          },
          [&s](const AffineMap& g) { return to_rational(s.center_action(g)); },
          y.kind == ModuleKind::torus};
}

bool cocycle_law_holds(const ElementCocycle& f, const AffineMap& g, const AffineMap& h) {
  QVec diff = f.value(g * h) - (f.value(g) + f.action(g) * f.value(h));
  return f.modulo_integers ? is_integral(diff) : is_zero(diff);
}

}  // namespace flatfiber
