#include "flatfiber/finite_group.hpp"

#include <algorithm>

namespace flatfiber {

FiniteGroup FiniteGroup::from_table(std::vector<std::vector<std::size_t>> table) {
  std::size_t n = table.size();
  if (n == 0) throw Error("empty group table");
  for (const auto& row : table) {
    if (row.size() != n) throw Error("group table is not square");
    for (auto x : row)
      if (x >= n) throw Error("group table entry out of range");
  }
  for (std::size_t a = 0; a < n; ++a)
    if (table[0][a] != a || table[a][0] != a) throw Error("element 0 is not the identity");
  FiniteGroup g;
  g.inverse_.assign(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (table[a][b] == 0) g.inverse_[a] = b;
  for (std::size_t a = 0; a < n; ++a)
    if (g.inverse_[a] == n || table[g.inverse_[a]][a] != 0) throw Error("group table lacks inverses");
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]])
          throw Error("group table is not associative");
  g.table_ = std::move(table);
  return g;
}

FiniteGroup FiniteGroup::cyclic(std::size_t n) {
  std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  return from_table(std::move(t));
}

FiniteGroup FiniteGroup::quotient(const SpaceGroup& g, const SubgroupHandle& n) {
  const auto& kernel_points = n.closure().points;
  std::vector<std::vector<QMat>> classes;
  std::vector<AffineMap> reps;
  std::vector<bool> seen(g.cosets().size(), false);
  for (std::size_t i = 0; i < g.cosets().size(); ++i) {
    if (seen[i]) continue;
    const QMat& a = g.cosets()[i].linear;
    std::vector<QMat> cls;
    for (const auto& k : kernel_points) {
      QMat p = a * k;
      auto j = g.coset_of(p);
      if (!j) throw Error("normal subgroup point part outside the group");
      seen[*j] = true;
      cls.push_back(p);
    }
    std::sort(cls.begin(), cls.end());
    classes.push_back(std::move(cls));
    reps.push_back(g.cosets()[i]);
  }
  FiniteGroup out;
  out.classes_ = std::move(classes);
  out.representatives_ = std::move(reps);
  std::size_t order = out.classes_.size();
  std::vector<std::vector<std::size_t>> table(order, std::vector<std::size_t>(order));
  for (std::size_t a = 0; a < order; ++a)
    for (std::size_t b = 0; b < order; ++b)
      table[a][b] = out.element_of(out.representatives_[a].linear * out.representatives_[b].linear);
  FiniteGroup checked = from_table(std::move(table));
  out.table_ = checked.table_;
  out.inverse_ = checked.inverse_;
  return out;
}

std::size_t FiniteGroup::element_of(const QMat& point) const {
  for (std::size_t i = 0; i < classes_.size(); ++i)
    if (std::binary_search(classes_[i].begin(), classes_[i].end(), point)) return i;
  throw Error("point part not in the quotient");
}

}  // namespace flatfiber
