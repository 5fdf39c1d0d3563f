#include "flatfiber/json_io.hpp"

#include <fstream>

namespace flatfiber {

namespace {

std::string at(const std::string& where, std::size_t i) { return where + "[" + std::to_string(i) + "]"; }
std::string at(const std::string& where, const std::string& key) { return where + "." + key; }

const Json& field(const Json& j, const std::string& key, const std::string& where) {
  if (!j.is_object()) throw ParseError(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(where, "missing field \"" + key + "\"");
  return *it;
}

const Json& array_of(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where, "expected an array");
  return j;
}

}  // namespace

Json to_json(const Rational& q) { return to_string(q); }

Json to_json(const QVec& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

Json to_json(const QMat& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(to_json(m.row(i)));
  return out;
}

Json to_json(const AffineMap& a) { return {{"linear", to_json(a.linear)}, {"shift", to_json(a.shift)}}; }

Json to_json(const Presentation& p) {
  Json relators = Json::array();
  for (const auto& r : p.relators) relators.push_back(p.spell(r));
  return {{"generators", p.names}, {"relators", relators}};
}

Json to_json(const SpaceGroup& g) {
  Json cosets = Json::array();
  for (const auto& c : g.cosets()) cosets.push_back(to_json(c));
  return {{"schema", kSchema},
          {"name", g.name()},
          {"dim", g.dim()},
          {"gram", to_json(g.gram())},
          {"lattice", to_json(g.lattice().basis())},
          {"cosets", cosets},
          {"presentation", to_json(g.presentation())}};
}

Rational rational_from_json(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(std::to_string(j.get<long long>()));
  if (!j.is_string()) throw ParseError(where, "expected a rational string");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const Error& e) {
    throw ParseError(where, e.what());
  }
}

QVec vector_from_json(const Json& j, const std::string& where) {
  QVec v;
  const Json& a = array_of(j, where);
  for (std::size_t i = 0; i < a.size(); ++i) v.push_back(rational_from_json(a[i], at(where, i)));
  return v;
}

QMat matrix_from_json(const Json& j, const std::string& where) {
  const Json& a = array_of(j, where);
  std::vector<QVec> rows;
  for (std::size_t i = 0; i < a.size(); ++i) rows.push_back(vector_from_json(a[i], at(where, i)));
  std::size_t cols = rows.empty() ? 0 : rows.front().size();
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (rows[i].size() != cols) throw ParseError(at(where, i), "ragged matrix row");
  return QMat::from_rows(rows, cols);
}

AffineMap affine_from_json(const Json& j, const std::string& where) {
  QMat linear = matrix_from_json(field(j, "linear", where), at(where, "linear"));
  QVec shift = vector_from_json(field(j, "shift", where), at(where, "shift"));
  if (linear.rows() != shift.size() || linear.cols() != shift.size())
    throw ParseError(where, "linear part and shift disagree in dimension");
  return {linear, shift};
}

std::vector<AffineMap> affine_list_from_json(const Json& j, const std::string& where) {
  std::vector<AffineMap> out;
  const Json& a = array_of(j, where);
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(affine_from_json(a[i], at(where, i)));
  return out;
}

void require_schema(const Json& j, const std::string& where) {
  const Json& s = field(j, "schema", where);
  if (!s.is_string() || s.get<std::string>() != kSchema)
    throw ParseError(at(where, "schema"), std::string("expected \"") + kSchema + "\"");
}

SpaceGroup space_group_from_json(const Json& j, const std::string& where) {
  const Json& name_field = field(j, "name", where);
  if (!name_field.is_string()) throw ParseError(at(where, "name"), "expected a string");
  std::string name = name_field.get<std::string>();
  std::string here = where + " (" + name + ")";
  QMat gram = matrix_from_json(field(j, "gram", where), at(here, "gram"));
  QMat lattice_rows = matrix_from_json(field(j, "lattice", where), at(here, "lattice"));
  auto cosets = affine_list_from_json(field(j, "cosets", where), at(here, "cosets"));
  if (j.contains("dim")) {
    const Json& d = j["dim"];
    if (!d.is_number_unsigned() || d.get<std::size_t>() != gram.rows())
      throw ParseError(at(here, "dim"), "does not match the Gram matrix");
  }
  SpaceGroup g;
  try {
    g = SpaceGroup::from_cosets(name, gram, ZLattice::from_basis_rows(lattice_rows), cosets);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(here, e.what());
  }
  if (j.contains("presentation") && j["presentation"] != to_json(g.presentation()))
    throw ParseError(at(here, "presentation"), "does not match the derived presentation");
  return g;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string(), "cannot open file");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError(path.string() + ": byte " + std::to_string(e.byte), "malformed JSON");
  }
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << j.dump(2) << "\n";
}

}  // namespace flatfiber
