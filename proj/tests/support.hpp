#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"
#include "smaclite/engine.hpp"
#include "smaclite/error.hpp"
#include "smaclite/scenario.hpp"

namespace testing_support {

using Json = nlohmann::ordered_json;
using namespace smaclite;

/// The published 10-versus-11 example, with the 32x32 size it implies.
inline const char* kPublishedScenario = R"({
  "name": "10m_vs_11m",
  "custom_unit_path": "smaclite/env/units/smaclite_units",
  "num_allied_units": 10,
  "num_enemy_units": 11,
  "groups": [
    {"x": 9, "y": 16, "faction": "ALLY", "units": {"example_custom_unit": 10}},
    {"x": 23, "y": 16, "faction": "ENEMY", "units": {"example_custom_unit": 11}}
  ],
  "attack_point": [9, 16],
  "terrain_preset": "NARROW",
  "num_unit_types": 0,
  "width": 32,
  "height": 32
})";

inline const char* kPublishedUnit = R"({
  "hp": 45, "armor": 0, "damage": 6, "cooldown": 3, "speed": 3.15,
  "attack_range": 3, "size": 3, "attributes": ["LIGHT", "BIOLOGICAL"],
  "minimum_scan_range": 100, "valid_targets": ["GROUND", "AIR"]
})";

/// Unit document with neutral defaults; `fields` override them.
inline std::string unit_doc(const Json& fields) {
  Json doc{{"hp", 100}, {"damage", 0}, {"cooldown", 1}, {"speed", 0}, {"size", 1}};
  for (const auto& [k, v] : fields.items()) doc[k] = v;
  return doc.dump();
}

inline Catalog& catalog() {
  static Catalog c;
  return c;
}

struct GroupSpec {
  double x = 0.0;
  double y = 0.0;
  Faction faction = Faction::Ally;
  std::vector<std::pair<std::string, int>> units;
};

/// Builds a scenario document on an open map. `extra` fields are merged in
/// last, so they can override anything.
inline Json scenario_doc(const std::vector<GroupSpec>& groups, const Json& extra = Json::object()) {
  Json doc;
  doc["name"] = "test";
  int allies = 0;
  int enemies = 0;
  doc["groups"] = Json::array();
  for (const GroupSpec& g : groups) {
    Json units = Json::object();
    for (const auto& [ref, n] : g.units) {
      units[ref] = n;
      (g.faction == Faction::Ally ? allies : enemies) += n;
    }
    doc["groups"].push_back(
        Json{{"x", g.x}, {"y", g.y}, {"faction", g.faction == Faction::Ally ? "ALLY" : "ENEMY"}, {"units", units}});
  }
  doc["num_allied_units"] = allies;
  doc["num_enemy_units"] = enemies;
  doc["attack_point"] = Json::array({16, 16});
  doc["width"] = 32;
  doc["height"] = 32;
  for (const auto& [k, v] : extra.items()) doc[k] = v;
  return doc;
}

/// Built-in names come from the catalog; any other reference is looked up by
/// its final path component in `custom`.
inline UnitLoader loader_with(std::map<std::string, std::string> custom) {
  return [custom = std::move(custom)](const std::string& ref) {
    if (is_builtin_reference(ref)) return catalog().builtin_unit(ref);
    std::string name = ref.substr(ref.find_last_of('/') + 1);
    if (name.ends_with(".json")) name.resize(name.size() - 5);
    const auto it = custom.find(name);
    if (it == custom.end()) throw Error(ErrorCode::Io, "unknown test unit " + ref);
    return parse_unit_type(it->second);
  };
}

inline std::shared_ptr<const Scenario> make_scenario(const Json& doc, std::map<std::string, std::string> custom = {}) {
  return std::make_shared<const Scenario>(parse_scenario(doc.dump(), loader_with(std::move(custom)),
                                                         catalog().terrain_loader()));
}

struct Spot {
  std::string ref;
  Faction faction;
  double x;
  double y;
};

/// One group per unit, so every unit starts exactly at its spot.
inline std::shared_ptr<const Scenario> scenario_at(const std::vector<Spot>& spots,
                                                   const std::map<std::string, std::string>& custom,
                                                   const Json& extra = Json::object()) {
  std::vector<GroupSpec> groups;
  for (const Spot& s : spots) groups.push_back({s.x, s.y, s.faction, {{s.ref, 1}}});
  return make_scenario(scenario_doc(groups, extra), custom);
}

inline std::shared_ptr<const Scenario> shipped(const std::string& name) {
  return std::make_shared<const Scenario>(catalog().load_scenario(name));
}

struct LayoutGolden {
  std::string scenario;
  int obs;
  int state;
  int actions;
};

/// Vector sizes counted field by field by hand; they agree with the sizes the
/// reference environment reports for the same maps.
inline const std::vector<LayoutGolden>& layout_goldens() {
  static const std::vector<LayoutGolden> goldens{
      {"2s_vs_1sc", 17, 27, 7},  {"3s5z", 128, 216, 14},    {"MMM2", 176, 322, 18},
      {"corridor", 156, 282, 30}, {"3s_vs_5z", 48, 68, 11}, {"bane_vs_bane", 336, 984, 30},
  };
  return goldens;
}

/// Puts a living unit at a new position, keeping the collision world in sync.
inline void place(GameState& state, int id, Vec2 p) {
  state.units[id].position = p;
  state.world.disc(id).position = p;
}

}  // namespace testing_support
