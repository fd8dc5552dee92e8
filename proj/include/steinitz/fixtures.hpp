#pragma once

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "steinitz/field.hpp"
#include "steinitz/group_build.hpp"

namespace steinitz {

inline nlohmann::json read_json_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw SpecError("cannot read " + p.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw SpecError("malformed JSON in " + p.string() + ": " + e.what());
  }
}

struct GroupFixture {
  std::string name;
  nlohmann::json spec;
  std::optional<std::string> expected_kind;
};

struct FieldFixture {
  std::string name;
  nlohmann::json spec;
  /// Part of the field set the property suites iterate over.
  bool suite = false;
};

/// The bundled corpus: a manifest naming group specs, field specs and scenarios.
struct Fixtures {
  std::filesystem::path dir;
  std::vector<GroupFixture> groups;  ///< sorted by name
  std::vector<FieldFixture> fields;
  std::map<std::string, nlohmann::json> scenarios;

  const GroupFixture& group(const std::string& name) const {
    for (auto& g : groups)
      if (g.name == name) return g;
    throw SpecError("no group fixture named '" + name + "'");
  }
  const FieldFixture& field(const std::string& name) const {
    for (auto& f : fields)
      if (f.name == name) return f;
    throw SpecError("no field fixture named '" + name + "'");
  }
  std::vector<const FieldFixture*> suite_fields() const {
    std::vector<const FieldFixture*> out;
    for (auto& f : fields)
      if (f.suite) out.push_back(&f);
    return out;
  }
};

/// STEINITZ_FIXTURES, else the directory baked in at build time.
inline std::filesystem::path default_fixture_dir() {
  if (const char* env = std::getenv("STEINITZ_FIXTURES"); env && *env) return env;
#ifdef STEINITZ_DEFAULT_FIXTURES
  return STEINITZ_DEFAULT_FIXTURES;
#else
  return "fixtures";
#endif
}

inline Fixtures load_fixtures(const std::filesystem::path& dir) {
  const auto manifest_path = dir / "manifest.json";
  if (!std::filesystem::exists(manifest_path)) throw SpecError("no fixture manifest at " + manifest_path.string());
  const auto m = read_json_file(manifest_path);
  Fixtures fx;
  fx.dir = dir;
  try {
    for (auto& e : m.at("groups")) {
      GroupFixture g{e.at("name").get<std::string>(), read_json_file(dir / e.at("file").get<std::string>()), {}};
      if (e.contains("kind")) g.expected_kind = e.at("kind").get<std::string>();
      fx.groups.push_back(std::move(g));
    }
    for (auto& e : m.at("fields"))
      fx.fields.push_back({e.at("name").get<std::string>(), read_json_file(dir / e.at("file").get<std::string>()),
                           e.value("suite", false)});
    if (m.contains("scenarios"))
      for (auto& e : m.at("scenarios")) {
        auto s = read_json_file(dir / e.get<std::string>());
        fx.scenarios.emplace(s.at("name").get<std::string>(), std::move(s));
      }
  } catch (const nlohmann::json::exception& e) {
    throw SpecError(std::string("malformed fixture manifest: ") + e.what());
  }
  if (fx.groups.empty()) throw SpecError("fixture manifest lists no groups");
  std::sort(fx.groups.begin(), fx.groups.end(), [](auto& a, auto& b) { return a.name < b.name; });
  return fx;
}

} // namespace steinitz
