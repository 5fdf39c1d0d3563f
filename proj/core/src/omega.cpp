#include "flatfiber/omega.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "flatfiber/pairiso.hpp"

namespace flatfiber {

namespace {

bool normalizes(const AffineMap& h, const SpaceGroup& m) { return conjugates_onto(h, m, m); }

AffineMap image_of_generator(const FibrationSplit& s, const AffineMap& alpha, const AffineMap& beta,
                             const AffineMap& delta) {
  AffineMap target = beta * delta * invert(beta);
  if (!s.base().contains(target)) throw Error("β does not conjugate the base groups");
  return alpha * s.xi(s.lift(target)) * invert(alpha);
}

}  // namespace

bool inner_affinity(const SpaceGroup& m, const AffineMap& h) {
  auto j = m.coset_of(h.linear);
  if (!j) return false;
  QVec w = h.shift - m.cosets()[*j].shift;
  QSubspace span = QSubspace::spanned_by(m.dim(), center_lattice(m).basis_vectors());
  QMat ann = span.annihilator();
  if (ann.rows() == 0) return true;
  return solve_integer(ann * m.lattice().basis().transpose(), ann * w).has_value();
}

bool outer_equivalent(const SpaceGroup& m, const AffineMap& h1, const AffineMap& h2) {
  return inner_affinity(m, invert(h2) * h1);
}

std::optional<std::size_t> OuterData::class_of(const AffineMap& h) const {
  for (std::size_t i = 0; i < reps.size(); ++i)
    if (outer_equivalent(group, h, reps[i])) return i;
  return std::nullopt;
}

OuterData outer_data_from(const SpaceGroup& m, const std::vector<AffineMap>& reps) {
  OuterData out{m, {}, {}, true};
  if (reps.empty() || !inner_affinity(m, reps.front())) throw Error("Out(M) data invalid");
  for (const auto& r : reps) {
    if (r.dim() != m.dim() || !normalizes(r, m)) throw Error("Out(M) data invalid");
    if (out.class_of(r)) throw Error("Out(M) data invalid");
    out.reps.push_back(r);
  }
  out.reps.front() = AffineMap::identity(m.dim());
  out.table.assign(reps.size(), std::vector<std::size_t>(reps.size()));
  for (std::size_t a = 0; a < reps.size(); ++a)
    for (std::size_t b = 0; b < reps.size(); ++b) {
      auto c = out.class_of(out.reps[a] * out.reps[b]);
      if (!c) throw Error("Out(M) data invalid");
      out.table[a][b] = *c;
    }
  return out;
}

OuterData outer_data_search(const SpaceGroup& m, int bound) {
  std::vector<AffineMap> reps{AffineMap::identity(m.dim())};
  OuterData probe{m, reps, {}, false};
  for (const auto& h : affine_conjugacies(m, m, bound, 4096))
    if (!probe.class_of(h)) probe.reps.push_back(h);
  // GL(1, Z) is finite and the translation classes are exhaustive, so a
  // one-dimensional search misses nothing.
  if (m.dim() == 1) return outer_data_from(m, probe.reps);
  return probe;
}

std::vector<AffineMap> base_automorphisms(const SpaceGroup& delta, int bound) {
  return affine_conjugacies(delta, delta, bound, 4096);
}

AffineMap OmegaInvariant::evaluate(const AffineMap& delta) const {
  return flatfiber::evaluate(normal_form_word(base_model, delta), generator_images);
}

std::string OmegaInvariant::describe() const {
  std::ostringstream out;
  if (trivial) return "trivial";
  if (image.empty()) {
    out << "nontrivial (classes unresolved)";
    return out.str();
  }
  out << "image {";
  for (std::size_t i = 0; i < image.size(); ++i) out << (i ? "," : "") << image[i];
  out << "}";
  return out.str();
}

OmegaInvariant omega(const FibrationSplit& s, const OuterData& out, const SpaceGroup& base_model,
                     const AffineMap& alpha, const AffineMap& beta) {
  if (!conjugates_onto(alpha, s.fiber(), out.group)) throw Error("fiber not isomorphic to model");
  if (!conjugates_onto(beta, base_model, s.base())) throw Error("base not isomorphic to model");
  OmegaInvariant inv{out.group, base_model, {}, {}, {}, true, out.complete};
  for (const auto& g : base_model.presentation().generators) {
    AffineMap h = image_of_generator(s, alpha, beta, g);
    inv.generator_images.push_back(h);
    inv.generator_classes.push_back(out.class_of(h));
    if (!inner_affinity(out.group, h)) inv.trivial = false;
  }
  bool known = std::all_of(inv.generator_classes.begin(), inv.generator_classes.end(),
                           [](const auto& c) { return c.has_value(); });
  if (known && out.complete) {
    std::set<std::size_t> image{0};
    for (const auto& c : inv.generator_classes) image.insert(*c);
    bool grown = true;
    while (grown) {
      grown = false;
      std::vector<std::size_t> current(image.begin(), image.end());
      for (auto a : current)
        for (auto b : current) grown |= image.insert(out.table[a][b]).second;
    }
    inv.image.assign(image.begin(), image.end());
  } else {
    inv.complete = false;
  }
  return inv;
}

OmegaInvariant omega(const FibrationSplit& s, const OuterData& out, const SpaceGroup& base_model,
                     int bound) {
  auto alphas = affine_conjugacies(s.fiber(), out.group, bound, 1);
  if (alphas.empty()) throw Error("fiber not isomorphic to model");
  auto betas = affine_conjugacies(base_model, s.base(), bound, 1);
  if (betas.empty()) throw Error("base not isomorphic to model");
  return omega(s, out, base_model, alphas.front(), betas.front());
}

bool omega_equal(const OmegaInvariant& a, const OmegaInvariant& b, const OuterData& out,
                 const std::vector<AffineMap>& base_autos) {
  if (!(a.fiber_model == b.fiber_model) || !(a.base_model == b.base_model)) return false;
  if (a.trivial != b.trivial) return false;
  if (a.complete && b.complete && a.image.size() != b.image.size()) return false;
  const auto& gens = b.base_model.presentation().generators;
  for (const auto& sigma : base_autos) {
    AffineMap sigma_inv = invert(sigma);
    std::vector<AffineMap> moved;
    for (const auto& g : gens) moved.push_back(a.evaluate(sigma * g * sigma_inv));
    for (const auto& o : out.reps) {
      AffineMap o_inv = invert(o);
      bool all = true;
      for (std::size_t i = 0; i < gens.size() && all; ++i)
        all = outer_equivalent(out.group, o * moved[i] * o_inv, b.generator_images[i]);
      if (all) return true;
    }
  }
  return false;
}

}  // namespace flatfiber
