#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "flatfiber/json_io.hpp"
#include "flatfiber/omega.hpp"

namespace flatfiber {

struct CatalogEntry {
  SpaceGroup group;
  std::vector<AffineMap> out_reps;  // shipped Out(M) representatives, may be empty
  std::string source;
};

class Catalog {
 public:
  // $FLATFIBER_CATALOG_DIR if set, else the directory fixed at build time.
  static std::filesystem::path default_directory();
  // Every *.json file in the directory, in name order.
  static Catalog load(const std::filesystem::path& directory);
  static Catalog load_default() { return load(default_directory()); }

  void add_file(const std::filesystem::path& path);
  void add(CatalogEntry entry);

  bool contains(const std::string& name) const { return index_.count(name) > 0; }
  // Throws "unknown group".
  const CatalogEntry& entry(const std::string& name) const;
  const SpaceGroup& group(const std::string& name) const { return entry(name).group; }
  const std::vector<CatalogEntry>& entries() const { return entries_; }
  std::vector<std::string> names() const;
  std::vector<std::string> names_of_dimension(std::size_t dim) const;

  // Shipped data is validated; otherwise a bounded search, which is only
  // exhaustive in dimension 1. Throws "Out(M) data unavailable" above dimension 2.
  OuterData outer(const std::string& name, int bound = 2) const;
  // The first catalog group of the same dimension affinely conjugate to g.
  std::optional<std::string> identify(const SpaceGroup& g, int bound = 2) const;

 private:
  std::vector<CatalogEntry> entries_;
  std::map<std::string, std::size_t> index_;
};

Json to_json(const CatalogEntry& e);
CatalogEntry catalog_entry_from_json(const Json& j, const std::string& where);
// {"schema", "groups": [...]}
Json catalog_file_json(const std::vector<CatalogEntry>& entries);
std::vector<CatalogEntry> catalog_file_from_json(const Json& j, const std::string& where);

}  // namespace flatfiber
