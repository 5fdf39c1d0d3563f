#include "flatfiber/space_group.hpp"

#include <algorithm>
#include <numeric>

namespace flatfiber {

std::optional<std::size_t> GroupClosure::point_index(const QMat& point) const {
  auto it = index.find(point);
  if (it == index.end()) return std::nullopt;
  return it->second;
}

bool GroupClosure::contains(const AffineMap& g) const {
  if (g.dim() != dim) return false;
  auto i = point_index(g.linear);
  if (!i) return false;
  return lattice.contains(g.shift - shifts[*i]);
}

GroupClosure close_group(std::size_t dim, const std::vector<AffineMap>& generators,
                         std::size_t point_bound) {
  GroupClosure c;
  c.dim = dim;
  c.points.push_back(QMat::identity(dim));
  c.shifts.push_back(QVec(dim));
  c.index.emplace(c.points[0], 0);
  std::vector<QVec> translations;
  for (std::size_t k = 0; k < c.points.size(); ++k) {
    AffineMap rep{c.points[k], c.shifts[k]};
    for (const auto& g : generators) {
      if (g.dim() != dim) throw Error("generator dimension mismatch");
      AffineMap rg = compose(rep, g);
      auto it = c.index.find(rg.linear);
      if (it == c.index.end()) {
        if (c.points.size() >= point_bound) throw Error("point group not finite within bound");
        c.index.emplace(rg.linear, c.points.size());
        c.points.push_back(rg.linear);
        c.shifts.push_back(rg.shift);
      } else {
        QVec t = rg.shift - c.shifts[it->second];
        if (!is_zero(t)) translations.push_back(std::move(t));
      }
    }
  }
  c.lattice = ZLattice::generated_by(dim, translations);
  return c;
}

SpaceGroup SpaceGroup::from_generators(std::string name, const QMat& gram,
                                       const std::vector<AffineMap>& generators,
                                       std::size_t point_bound) {
  require_gram(gram);
  for (const auto& g : generators) {
    if (g.dim() != gram.rows()) throw Error("generator dimension mismatch");
    if (!preserves_gram(g, gram)) throw Error("generator does not preserve the Gram form");
  }
  GroupClosure c = close_group(gram.rows(), generators, point_bound);
  if (!c.lattice.full_rank()) throw Error("not cocompact");
  std::vector<AffineMap> cosets;
  for (std::size_t i = 0; i < c.points.size(); ++i) cosets.push_back({c.points[i], c.shifts[i]});
  return from_cosets(std::move(name), gram, c.lattice, std::move(cosets));
}

SpaceGroup SpaceGroup::from_cosets(std::string name, const QMat& gram, const ZLattice& lattice,
                                   std::vector<AffineMap> cosets) {
  require_gram(gram);
  std::size_t n = gram.rows();
  if (lattice.dim() != n) throw Error("lattice dimension mismatch");
  if (!lattice.full_rank()) throw Error("not cocompact");
  if (cosets.empty()) throw Error("no coset representatives");
  for (auto& c : cosets) {
    if (c.dim() != n || c.linear.rows() != n || c.linear.cols() != n)
      throw Error("coset representative dimension mismatch");
    c.shift = lattice.reduce(c.shift);
  }
  auto identity_it = std::find_if(cosets.begin(), cosets.end(),
                                  [](const AffineMap& c) { return c.linear.is_identity(); });
  if (identity_it == cosets.end()) throw Error("identity coset missing");
  if (!is_zero(identity_it->shift)) throw Error("identity coset has nonzero translation");
  // Errors name cosets by their input position.
  std::vector<std::size_t> origin(cosets.size());
  std::iota(origin.begin(), origin.end(), 0);
  std::size_t identity_at = static_cast<std::size_t>(identity_it - cosets.begin());
  std::swap(origin[0], origin[identity_at]);
  std::sort(origin.begin() + 1, origin.end(),
            [&](std::size_t a, std::size_t b) { return cosets[a] < cosets[b]; });
  std::vector<AffineMap> sorted;
  for (auto i : origin) sorted.push_back(cosets[i]);
  cosets = std::move(sorted);

  SpaceGroup g;
  g.name_ = std::move(name);
  g.gram_ = gram;
  g.lattice_ = lattice;
  g.cosets_ = std::move(cosets);
  for (std::size_t i = 0; i < g.cosets_.size(); ++i) {
    const auto& c = g.cosets_[i];
    if (!g.coset_index_.emplace(c.linear, i).second)
      throw Error("repeated point part at coset " + std::to_string(origin[i]));
    if (!preserves_gram(c, gram))
      throw Error("point part of coset " + std::to_string(origin[i]) +
                  " does not preserve the Gram form");
    if (lattice.image(c.linear) != lattice)
      throw Error("point part of coset " + std::to_string(origin[i]) +
                  " does not preserve the lattice");
  }
  for (std::size_t i = 0; i < g.cosets_.size(); ++i)
    for (std::size_t j = 0; j < g.cosets_.size(); ++j) {
      const auto& a = g.cosets_[i];
      const auto& b = g.cosets_[j];
      QMat product = a.linear * b.linear;
      auto k = g.coset_of(product);
      std::string pair = "(" + std::to_string(origin[i]) + ", " + std::to_string(origin[j]) + ")";
      if (!k) throw Error("point parts not closed under multiplication for pair " + pair);
      QVec defect = a.shift + a.linear * b.shift - g.cosets_[*k].shift;
      if (!lattice.contains(defect)) throw Error("Frobenius congruence violated for pair " + pair);
    }
  g.presentation_ = standard_presentation(g);
  return g;
}

SpaceGroup SpaceGroup::renamed(std::string name) const {
  SpaceGroup g = *this;
  g.name_ = std::move(name);
  return g;
}

std::vector<QMat> SpaceGroup::point_group() const {
  std::vector<QMat> out;
  for (const auto& c : cosets_) out.push_back(c.linear);
  return out;
}

std::optional<std::size_t> SpaceGroup::coset_of(const QMat& point) const {
  auto it = coset_index_.find(point);
  if (it == coset_index_.end()) return std::nullopt;
  return it->second;
}

bool SpaceGroup::contains(const AffineMap& g) const {
  if (g.dim() != dim()) return false;
  auto i = coset_of(g.linear);
  if (!i) return false;
  return lattice_.contains(g.shift - cosets_[*i].shift);
}

std::vector<AffineMap> SpaceGroup::lattice_translations() const {
  std::vector<AffineMap> out;
  for (const auto& v : lattice_.basis_vectors()) out.push_back(AffineMap::translation(v));
  return out;
}

std::vector<AffineMap> SpaceGroup::generators() const {
  std::vector<AffineMap> out = lattice_translations();
  out.insert(out.end(), cosets_.begin() + 1, cosets_.end());
  return out;
}

std::pair<std::size_t, ZVec> SpaceGroup::decompose_element(const AffineMap& g) const {
  auto i = coset_of(g.linear);
  if (!i) throw Error("element is not a member of " + name_);
  auto z = lattice_.coordinates(g.shift - cosets_[*i].shift);
  if (!z) throw Error("element is not a member of " + name_);
  return {*i, *z};
}

SubgroupHandle::SubgroupHandle(const SpaceGroup& parent, std::vector<AffineMap> generators)
    : parent_name_(parent.name()), generators_(std::move(generators)) {
  for (const auto& g : generators_)
    if (!parent.contains(g)) throw Error("subgroup generator is not a member of " + parent.name());
  closure_ = close_group(parent.dim(), generators_, parent.point_group_order() + 1);
}

SubgroupHandle SubgroupHandle::unchecked(std::size_t dim, std::vector<AffineMap> generators) {
  SubgroupHandle h;
  h.generators_ = std::move(generators);
  h.closure_ = close_group(dim, h.generators_);
  return h;
}

ZLattice translation_subgroup(const SubgroupHandle& h) { return h.closure().lattice; }

namespace {

QSubspace fixed_space(std::size_t dim, const std::vector<QMat>& points) {
  QMat constraints(0, dim);
  for (const auto& a : points) constraints = vstack(constraints, a - QMat::identity(dim));
  return QSubspace::spanned_by(dim, nullspace(constraints));
}

}  // namespace

ZLattice center_lattice(const SpaceGroup& n) {
  return intersection(n.lattice(), fixed_space(n.dim(), n.point_group()));
}

ZLattice center_lattice(const SubgroupHandle& n) {
  return intersection(n.closure().lattice, fixed_space(n.dim(), n.closure().points));
}

bool is_normal(const SpaceGroup& g, const SubgroupHandle& n) {
  for (const auto& x : g.generators()) {
    AffineMap xi = invert(x);
    for (const auto& y : n.generators()) {
      if (!n.contains(x * y * xi)) return false;
      if (!n.contains(xi * y * x)) return false;
    }
  }
  return true;
}

bool same_subgroup(const SubgroupHandle& a, const SubgroupHandle& b) {
  if (a.dim() != b.dim()) return false;
  for (const auto& g : a.generators())
    if (!b.contains(g)) return false;
  for (const auto& g : b.generators())
    if (!a.contains(g)) return false;
  return true;
}

bool conjugates_onto(const AffineMap& phi, const SpaceGroup& g, const SpaceGroup& h) {
  if (g.dim() != h.dim() || phi.dim() != g.dim()) return false;
  AffineMap inv = invert(phi);
  for (const auto& x : g.generators())
    if (!h.contains(phi * x * inv)) return false;
  for (const auto& y : h.generators())
    if (!g.contains(inv * y * phi)) return false;
  return true;
}

}  // namespace flatfiber
