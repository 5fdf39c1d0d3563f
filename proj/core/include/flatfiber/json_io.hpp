#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "flatfiber/space_group.hpp"

namespace flatfiber {

using Json = nlohmann::json;

inline constexpr const char* kSchema = "flatfiber/1";

// Raised for malformed input; the message starts with the location.
class ParseError : public Error {
 public:
  ParseError(const std::string& where, const std::string& what) : Error(where + ": " + what) {}
};

Json to_json(const Rational& q);
Json to_json(const QVec& v);
Json to_json(const QMat& m);
Json to_json(const AffineMap& a);
Json to_json(const Presentation& p);
Json to_json(const SpaceGroup& g);

Rational rational_from_json(const Json& j, const std::string& where);
QVec vector_from_json(const Json& j, const std::string& where);
QMat matrix_from_json(const Json& j, const std::string& where);
AffineMap affine_from_json(const Json& j, const std::string& where);
std::vector<AffineMap> affine_list_from_json(const Json& j, const std::string& where);
// Rebuilds through SpaceGroup::from_cosets; a stored presentation must match the derived one.
SpaceGroup space_group_from_json(const Json& j, const std::string& where);

// Checks the "schema" field.
void require_schema(const Json& j, const std::string& where);
Json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& j);

}  // namespace flatfiber
