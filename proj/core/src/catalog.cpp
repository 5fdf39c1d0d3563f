#include "flatfiber/catalog.hpp"

#include <algorithm>
#include <cstdlib>

#include "flatfiber/pairiso.hpp"

#ifndef FLATFIBER_DEFAULT_CATALOG_DIR
#define FLATFIBER_DEFAULT_CATALOG_DIR "data/catalog"
#endif

namespace flatfiber {

std::filesystem::path Catalog::default_directory() {
  if (const char* env = std::getenv("FLATFIBER_CATALOG_DIR"); env && *env) return env;
  return FLATFIBER_DEFAULT_CATALOG_DIR;
}

Catalog Catalog::load(const std::filesystem::path& directory) {
  if (!std::filesystem::is_directory(directory))
    throw ParseError(directory.string(), "catalog directory not found");
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(directory))
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  Catalog c;
  for (const auto& f : files) c.add_file(f);
  return c;
}

void Catalog::add_file(const std::filesystem::path& path) {
  for (auto& e : catalog_file_from_json(read_json_file(path), path.string())) {
    e.source = path.filename().string();
    add(std::move(e));
  }
}

void Catalog::add(CatalogEntry entry) {
  const std::string& name = entry.group.name();
  if (contains(name)) throw Error("duplicate catalog group " + name);
  if (!entry.out_reps.empty()) outer_data_from(entry.group, entry.out_reps);
  index_.emplace(name, entries_.size());
  entries_.push_back(std::move(entry));
}

const CatalogEntry& Catalog::entry(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw Error("unknown group " + name);
  return entries_[it->second];
}

std::vector<std::string> Catalog::names() const {
  std::vector<std::string> out;
  for (const auto& e : entries_) out.push_back(e.group.name());
  return out;
}

std::vector<std::string> Catalog::names_of_dimension(std::size_t dim) const {
  std::vector<std::string> out;
  for (const auto& e : entries_)
    if (e.group.dim() == dim) out.push_back(e.group.name());
  return out;
}

OuterData Catalog::outer(const std::string& name, int bound) const {
  const CatalogEntry& e = entry(name);
  if (!e.out_reps.empty()) return outer_data_from(e.group, e.out_reps);
  if (e.group.dim() > 2) throw Error("Out(M) data unavailable");
  return outer_data_search(e.group, bound);
}

std::optional<std::string> Catalog::identify(const SpaceGroup& g, int bound) const {
  for (const auto& e : entries_)
    if (e.group.dim() == g.dim() && !affine_conjugacies(g, e.group, bound, 1).empty())
      return e.group.name();
  return std::nullopt;
}

Json to_json(const CatalogEntry& e) {
  Json j = to_json(e.group);
  j.erase("schema");
  if (!e.out_reps.empty()) {
    Json out = Json::array();
    for (const auto& r : e.out_reps) out.push_back(to_json(r));
    j["out"] = out;
  }
  return j;
}

CatalogEntry catalog_entry_from_json(const Json& j, const std::string& where) {
  CatalogEntry e{space_group_from_json(j, where), {}, {}};
  if (j.contains("out")) e.out_reps = affine_list_from_json(j["out"], where + ".out");
  return e;
}

Json catalog_file_json(const std::vector<CatalogEntry>& entries) {
  Json groups = Json::array();
  for (const auto& e : entries) groups.push_back(to_json(e));
  return {{"schema", kSchema}, {"groups", groups}};
}

std::vector<CatalogEntry> catalog_file_from_json(const Json& j, const std::string& where) {
  require_schema(j, where);
  if (!j.contains("groups") || !j["groups"].is_array())
    throw ParseError(where, "missing array \"groups\"");
  std::vector<CatalogEntry> out;
  const Json& groups = j["groups"];
  for (std::size_t i = 0; i < groups.size(); ++i)
    out.push_back(catalog_entry_from_json(groups[i], where + ": groups[" + std::to_string(i) + "]"));
  return out;
}

}  // namespace flatfiber
