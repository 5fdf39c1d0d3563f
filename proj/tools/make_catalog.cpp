// Writes the shipped catalog files from generator lists.
#include <iostream>

#include "flatfiber/catalog.hpp"

using namespace flatfiber;

namespace {

Rational q(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

AffineMap op(const QMat& linear, QVec shift) { return {linear, std::move(shift)}; }

std::vector<AffineMap> unit_translations(std::size_t n) {
  std::vector<AffineMap> out;
  for (std::size_t i = 0; i < n; ++i) {
    QVec e(n);
    e[i] = 1;
    out.push_back(AffineMap::translation(e));
  }
  return out;
}

CatalogEntry make(const std::string& name, const QMat& gram, std::vector<AffineMap> ops,
                  std::vector<AffineMap> translations = {}) {
  if (translations.empty()) translations = unit_translations(gram.rows());
  translations.insert(translations.end(), ops.begin(), ops.end());
  return {SpaceGroup::from_generators(name, gram, translations), {}, {}};
}

std::vector<CatalogEntry> one_dimensional() {
  QMat g{{1}};
  CatalogEntry z = make("p1_1d", g, {});
  z.out_reps = {AffineMap::identity(1), op(QMat{{-1}}, {0})};
  CatalogEntry d = make("pm_1d", g, {op(QMat{{-1}}, {0})});
  d.out_reps = {AffineMap::identity(1), op(QMat{{1}}, {q(1, 2)})};
  return {z, d};
}

std::vector<CatalogEntry> wallpaper() {
  QMat oblique{{2, 1}, {1, 3}};
  QMat rect{{1, 0}, {0, 2}};
  QMat square = QMat::identity(2);
  QMat hex{{2, -1}, {-1, 2}};
  QMat minus = QMat{{-1, 0}, {0, -1}};
  QMat mx{{1, 0}, {0, -1}};
  QMat my{{-1, 0}, {0, 1}};
  QMat r4{{0, -1}, {1, 0}};
  QMat diag{{0, 1}, {1, 0}};
  QMat r3{{0, -1}, {1, -1}};
  QMat r6{{1, -1}, {1, 0}};
  QMat m_anti{{0, -1}, {-1, 0}};
  QVec zero{0, 0};
  std::vector<AffineMap> centered{AffineMap::translation({1, 0}),
                                  AffineMap::translation({q(1, 2), q(1, 2)})};
  return {
      make("p1", oblique, {}),
      make("p2", oblique, {op(minus, zero)}),
      make("pm", rect, {op(mx, zero)}),
      make("pg", rect, {op(my, {0, q(1, 2)})}),
      make("cm", rect, {op(mx, zero)}, centered),
      make("pmm", rect, {op(mx, zero), op(my, zero)}),
      make("pmg", rect, {op(minus, zero), op(my, {q(1, 2), 0})}),
      make("pgg", rect, {op(minus, zero), op(my, {q(1, 2), q(1, 2)})}),
      make("cmm", rect, {op(mx, zero), op(my, zero)}, centered),
      make("p4", square, {op(r4, zero)}),
      make("p4m", square, {op(r4, zero), op(mx, zero)}),
      make("p4g", square, {op(r4, zero), op(my, {q(1, 2), q(1, 2)})}),
      make("p3", hex, {op(r3, zero)}),
      make("p3m1", hex, {op(r3, zero), op(m_anti, zero)}),
      make("p31m", hex, {op(r3, zero), op(diag, zero)}),
      make("p6", hex, {op(r6, zero)}),
      make("p6m", hex, {op(r6, zero), op(m_anti, zero)}),
  };
}

std::vector<CatalogEntry> three_dimensional() {
  QMat triclinic{{2, 1, 0}, {1, 3, 1}, {0, 1, 4}};
  QMat mono{{1, 0, 0}, {0, 2, 0}, {0, 0, 3}};
  QMat inv{{-1, 0, 0}, {0, -1, 0}, {0, 0, -1}};
  QMat two_z{{-1, 0, 0}, {0, -1, 0}, {0, 0, 1}};
  QMat two_x{{1, 0, 0}, {0, -1, 0}, {0, 0, -1}};
  QMat m_z{{1, 0, 0}, {0, 1, 0}, {0, 0, -1}};
  QVec zero{0, 0, 0};
  return {
      make("P1", triclinic, {}),
      make("P-1", triclinic, {op(inv, zero)}),
      make("P2", mono, {op(two_z, zero)}),
      make("P2_1", mono, {op(two_z, {0, 0, q(1, 2)})}),
      make("Pm", mono, {op(m_z, zero)}),
      make("Pc", mono, {op(m_z, {q(1, 2), 0, 0})}),
      make("P2/m", mono, {op(two_z, zero), op(inv, zero)}),
      make("P222", mono, {op(two_z, zero), op(two_x, zero)}),
  };
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_catalog <output-directory>\n";
    return 1;
  }
  std::filesystem::path dir = argv[1];
  std::filesystem::create_directories(dir);
  try {
    write_json_file(dir / "onedim.json", catalog_file_json(one_dimensional()));
    write_json_file(dir / "wallpaper.json", catalog_file_json(wallpaper()));
    write_json_file(dir / "space3d.json", catalog_file_json(three_dimensional()));
  } catch (const std::exception& e) {
    std::cerr << "make_catalog: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
