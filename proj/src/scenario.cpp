#include "smaclite/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json_util.hpp"
#include "smaclite/error.hpp"

#ifndef SMACLITE_DATA_DIR
#define SMACLITE_DATA_DIR "data"
#endif

namespace smaclite {

using detail::Json;
namespace fs = std::filesystem;

std::string_view to_string(Faction faction) { return faction == Faction::Ally ? "ALLY" : "ENEMY"; }

// ---------------------------------------------------------------------------
// TerrainGrid

TerrainGrid TerrainGrid::from_rows(const std::vector<std::string>& rows) {
  if (rows.empty()) return TerrainGrid{};
  const int height = static_cast<int>(rows.size());
  const int width = static_cast<int>(rows.front().size());
  TerrainGrid grid(width, height);
  for (int r = 0; r < height; ++r) {
    const std::string& row = rows[r];
    if (static_cast<int>(row.size()) != width) {
      throw Error(ErrorCode::TerrainDimensionMismatch, "terrain rows have unequal lengths");
    }
    const int y = height - 1 - r;
    for (int x = 0; x < width; ++x) {
      switch (row[x]) {
        case '_': break;
        case 'X': grid.set_blocked(x, y, true); break;
        default:
          throw Error(ErrorCode::MalformedDocument, std::string("terrain cell '") + row[x] + "' is neither '_' nor 'X'");
      }
    }
  }
  return grid;
}

std::vector<std::string> TerrainGrid::to_rows() const {
  std::vector<std::string> rows;
  rows.reserve(height_);
  for (int y = height_ - 1; y >= 0; --y) {
    std::string row(width_, '_');
    for (int x = 0; x < width_; ++x) {
      if (blocked(x, y)) row[x] = 'X';
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

bool TerrainGrid::walkable(Vec2 p) const {
  if (!(p.x >= 0.0 && p.y >= 0.0 && p.x < width_ && p.y < height_)) return false;
  return !blocked(static_cast<int>(p.x), static_cast<int>(p.y));
}

// ---------------------------------------------------------------------------
// Scenario helpers

double Scenario::max_unit_radius() const {
  double r = 0.0;
  for (const auto& [ref, type] : unit_types) r = std::max(r, type.radius());
  return r;
}

double Scenario::max_unit_speed() const {
  double v = 0.0;
  for (const auto& [ref, type] : unit_types) v = std::max(v, type.speed);
  return v;
}

bool is_builtin_reference(std::string_view reference) {
  if (reference.empty()) return false;
  return std::all_of(reference.begin(), reference.end(), [](char c) {
    return std::isupper(static_cast<unsigned char>(c)) || std::isdigit(static_cast<unsigned char>(c)) || c == '_';
  });
}

std::string canonical_reference(std::string_view reference) {
  if (!is_builtin_reference(reference) && reference.size() > 5 && reference.ends_with(".json")) {
    reference.remove_suffix(5);
  }
  return std::string(reference);
}

namespace {

std::string resolve_reference(const std::string& canonical, const std::optional<std::string>& custom_unit_path) {
  if (is_builtin_reference(canonical)) return canonical;
  fs::path path = custom_unit_path ? fs::path(*custom_unit_path) / canonical : fs::path(canonical);
  return path.generic_string() + ".json";
}

Faction parse_faction(const Json& v) {
  const std::string& s = detail::as_string(v, "faction");
  if (s == "ALLY") return Faction::Ally;
  if (s == "ENEMY") return Faction::Enemy;
  throw Error(ErrorCode::InvalidEnum, "unknown faction '" + s + "'");
}

int positive_int(const Json& doc, const char* key) {
  const long long v = detail::as_integer(detail::require(doc, key), key);
  if (v < 1) throw Error(ErrorCode::InvariantViolation, std::string("'") + key + "' must be >= 1");
  return static_cast<int>(v);
}

std::vector<std::string> terrain_rows(const Json& v) {
  if (!v.is_array()) throw Error(ErrorCode::MalformedDocument, "'terrain' must be an array of strings");
  std::vector<std::string> rows;
  for (const auto& row : v) rows.push_back(detail::as_string(row, "terrain"));
  return rows;
}

void check_positive(double value, const char* key) {
  if (!(value > 0.0)) throw Error(ErrorCode::InvariantViolation, std::string("'") + key + "' must be > 0");
}

}  // namespace

Scenario parse_scenario(std::string_view text, const UnitLoader& unit_loader, const TerrainLoader& terrain_loader) {
  const Json doc = detail::parse_document(text, "scenario");
  Scenario s;

  s.name = detail::as_string(detail::require(doc, "name"), "name");
  if (auto it = doc.find("custom_unit_path"); it != doc.end() && !it->is_null()) {
    s.custom_unit_path = detail::as_string(*it, "custom_unit_path");
  }
  s.num_allied_units = positive_int(doc, "num_allied_units");
  s.num_enemy_units = positive_int(doc, "num_enemy_units");
  s.width = positive_int(doc, "width");
  s.height = positive_int(doc, "height");

  const Json& point = detail::require(doc, "attack_point");
  if (!point.is_array() || point.size() != 2) {
    throw Error(ErrorCode::MalformedDocument, "'attack_point' must be [x, y]");
  }
  s.attack_point = {detail::as_number(point[0], "attack_point"), detail::as_number(point[1], "attack_point")};

  const Json& groups = detail::require(doc, "groups");
  if (!groups.is_array()) throw Error(ErrorCode::MalformedDocument, "'groups' must be an array");
  int allies = 0;
  int enemies = 0;
  for (const auto& g : groups) {
    if (!g.is_object()) throw Error(ErrorCode::MalformedDocument, "each group must be an object");
    UnitGroup group;
    group.x = detail::as_number(detail::require(g, "x"), "x");
    group.y = detail::as_number(detail::require(g, "y"), "y");
    group.faction = parse_faction(detail::require(g, "faction"));
    const Json& units = detail::require(g, "units");
    if (!units.is_object()) throw Error(ErrorCode::MalformedDocument, "group 'units' must be an object");
    int total = 0;
    for (const auto& [ref, count] : units.items()) {
      const long long n = detail::as_integer(count, "units");
      if (n < 1) throw Error(ErrorCode::InvariantViolation, "unit count for '" + ref + "' must be >= 1");
      group.units.emplace_back(canonical_reference(ref), static_cast<int>(n));
      total += static_cast<int>(n);
    }
    if (total < 1) throw Error(ErrorCode::InvariantViolation, "group has no units");
    if (group.x < 0.0 || group.y < 0.0 || group.x > s.width || group.y > s.height) {
      throw Error(ErrorCode::InvariantViolation, "group centre lies outside the map");
    }
    (group.faction == Faction::Ally ? allies : enemies) += total;
    s.groups.push_back(std::move(group));
  }
  if (allies != s.num_allied_units) {
    throw Error(ErrorCode::GroupCountMismatch, "ally groups hold " + std::to_string(allies) + " units, num_allied_units is " +
                                                   std::to_string(s.num_allied_units));
  }
  if (enemies != s.num_enemy_units) {
    throw Error(ErrorCode::GroupCountMismatch, "enemy groups hold " + std::to_string(enemies) +
                                                   " units, num_enemy_units is " + std::to_string(s.num_enemy_units));
  }

  // Terrain: inline rows win over a preset; neither means an open map.
  std::vector<std::string> rows;
  if (auto it = doc.find("terrain"); it != doc.end()) {
    rows = terrain_rows(*it);
  } else if (auto preset = doc.find("terrain_preset"); preset != doc.end()) {
    const std::string& name = detail::as_string(*preset, "terrain_preset");
    if (!terrain_loader) throw Error(ErrorCode::InvalidEnum, "no terrain presets available for '" + name + "'");
    rows = terrain_loader(name);
  }
  if (rows.empty()) {
    s.terrain = TerrainGrid(s.width, s.height);
  } else {
    s.terrain = TerrainGrid::from_rows(rows);
    if (s.terrain.width() != s.width || s.terrain.height() != s.height) {
      throw Error(ErrorCode::TerrainDimensionMismatch,
                  "terrain is " + std::to_string(s.terrain.width()) + "x" + std::to_string(s.terrain.height()) +
                      ", scenario declares " + std::to_string(s.width) + "x" + std::to_string(s.height));
    }
  }
  s.obstacles = collapse_terrain(s.terrain);

  if (auto it = doc.find("ally_has_shields"); it != doc.end()) s.ally_has_shields = detail::as_bool(*it, "ally_has_shields");
  if (auto it = doc.find("enemy_has_shields"); it != doc.end()) s.enemy_has_shields = detail::as_bool(*it, "enemy_has_shields");

  if (auto it = doc.find("episode_limit"); it != doc.end()) {
    const long long limit = detail::as_integer(*it, "episode_limit");
    if (limit < 1) throw Error(ErrorCode::InvariantViolation, "'episode_limit' must be >= 1");
    s.episode_limit = static_cast<int>(limit);
  }
  s.sight_range = detail::number_or(doc, "sight_range", s.sight_range);
  s.targeting_range = detail::number_or(doc, "targeting_range", s.targeting_range);
  s.shield_regen_delay = detail::number_or(doc, "shield_regen_delay", s.shield_regen_delay);
  s.shield_regen_rate = detail::number_or(doc, "shield_regen_rate", s.shield_regen_rate);
  s.energy_regen_rate = detail::number_or(doc, "energy_regen_rate", s.energy_regen_rate);
  check_positive(s.sight_range, "sight_range");
  check_positive(s.targeting_range, "targeting_range");

  // Resolve every participating unit type once.
  for (const auto& group : s.groups) {
    for (const auto& [ref, count] : group.units) {
      if (s.unit_types.contains(ref)) continue;
      const std::string resolved = resolve_reference(ref, s.custom_unit_path);
      if (!unit_loader) throw Error(ErrorCode::UnresolvableUnitType, "no unit loader for '" + resolved + "'");
      try {
        s.unit_types.emplace(ref, unit_loader(resolved));
      } catch (const Error& e) {
        if (e.code() == ErrorCode::Io || e.code() == ErrorCode::UnresolvableUnitType) {
          throw Error(ErrorCode::UnresolvableUnitType, "cannot resolve unit type '" + resolved + "': " + e.what());
        }
        throw;
      }
    }
  }

  if (auto it = doc.find("num_unit_types"); it != doc.end()) {
    const long long n = detail::as_integer(*it, "num_unit_types");
    if (n < 0) throw Error(ErrorCode::BadTypeIdMap, "'num_unit_types' must be >= 0");
    s.num_unit_types = static_cast<int>(n);
  }
  if (auto it = doc.find("unit_type_ids"); it != doc.end()) {
    if (!it->is_object()) throw Error(ErrorCode::MalformedDocument, "'unit_type_ids' must be an object");
    for (const auto& [ref, id] : it->items()) {
      s.unit_type_ids[canonical_reference(ref)] = static_cast<int>(detail::as_integer(id, "unit_type_ids"));
    }
  }
  if (static_cast<int>(s.unit_type_ids.size()) != s.num_unit_types) {
    throw Error(ErrorCode::BadTypeIdMap, "unit_type_ids has " + std::to_string(s.unit_type_ids.size()) +
                                             " entries, num_unit_types is " + std::to_string(s.num_unit_types));
  }
  std::vector<bool> seen(s.num_unit_types, false);
  for (const auto& [ref, id] : s.unit_type_ids) {
    if (id < 0 || id >= s.num_unit_types || seen[id]) {
      throw Error(ErrorCode::BadTypeIdMap, "unit type ids must be exactly 0..num_unit_types-1");
    }
    seen[id] = true;
  }
  if (s.num_unit_types > 0) {
    for (const auto& [ref, type] : s.unit_types) {
      if (!s.unit_type_ids.contains(ref)) throw Error(ErrorCode::BadTypeIdMap, "unit type '" + ref + "' has no id");
    }
  }
  return s;
}

std::string to_json(const Scenario& s) {
  Json doc;
  doc["name"] = s.name;
  if (s.custom_unit_path) doc["custom_unit_path"] = *s.custom_unit_path;
  doc["num_allied_units"] = s.num_allied_units;
  doc["num_enemy_units"] = s.num_enemy_units;
  Json groups = Json::array();
  for (const auto& g : s.groups) {
    Json group;
    group["x"] = g.x;
    group["y"] = g.y;
    group["faction"] = std::string(to_string(g.faction));
    group["units"] = Json::object();
    for (const auto& [ref, count] : g.units) group["units"][ref] = count;
    groups.push_back(std::move(group));
  }
  doc["groups"] = std::move(groups);
  doc["attack_point"] = {s.attack_point.x, s.attack_point.y};
  doc["width"] = s.width;
  doc["height"] = s.height;
  doc["terrain"] = s.terrain.to_rows();
  doc["ally_has_shields"] = s.ally_has_shields;
  doc["enemy_has_shields"] = s.enemy_has_shields;
  doc["num_unit_types"] = s.num_unit_types;
  doc["unit_type_ids"] = Json::object();
  for (const auto& [ref, id] : s.unit_type_ids) doc["unit_type_ids"][ref] = id;
  doc["episode_limit"] = s.episode_limit;
  doc["sight_range"] = s.sight_range;
  doc["targeting_range"] = s.targeting_range;
  doc["shield_regen_delay"] = s.shield_regen_delay;
  doc["shield_regen_rate"] = s.shield_regen_rate;
  doc["energy_regen_rate"] = s.energy_regen_rate;
  return doc.dump(2);
}

// ---------------------------------------------------------------------------
// Terrain collapse

std::vector<Rect> collapse_terrain(const TerrainGrid& grid) {
  struct Open {
    int x0, x1, y0;
  };
  std::vector<Rect> out;
  std::vector<Open> open;  // strips still growing, ordered by x0

  auto close = [&](const Open& o, int y_end) {
    out.push_back(Rect{double(o.x0), double(o.y0), double(o.x1), double(y_end)});
  };

  for (int y = 0; y <= grid.height(); ++y) {
    std::vector<std::pair<int, int>> runs;
    if (y < grid.height()) {
      for (int x = 0; x < grid.width();) {
        if (!grid.blocked(x, y)) {
          ++x;
          continue;
        }
        const int start = x;
        while (x < grid.width() && grid.blocked(x, y)) ++x;
        runs.emplace_back(start, x);
      }
    }
    std::vector<Open> next;
    for (const auto& [x0, x1] : runs) {
      auto it = std::find_if(open.begin(), open.end(), [&](const Open& o) { return o.x0 == x0 && o.x1 == x1; });
      if (it != open.end()) {
        next.push_back(*it);
        open.erase(it);
      } else {
        next.push_back(Open{x0, x1, y});
      }
    }
    for (const auto& o : open) close(o, y);
    open = std::move(next);
  }
  std::sort(out.begin(), out.end(), [](const Rect& a, const Rect& b) {
    return a.ymin != b.ymin ? a.ymin < b.ymin : a.xmin < b.xmin;
  });
  return out;
}

// ---------------------------------------------------------------------------
// Placement

std::vector<Placement> place_groups(const Scenario& s) {
  std::vector<Placement> out;
  out.reserve(s.num_allied_units + s.num_enemy_units);

  for (const auto& group : s.groups) {
    int count = 0;
    double pitch = 0.0;
    for (const auto& [ref, n] : group.units) {
      count += n;
      pitch = std::max(pitch, s.unit_types.at(ref).size);
    }
    const int side = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(count)) - 1e-9));
    const int rows = (count + side - 1) / side;
    const double half_span = (side - 1) * pitch / 2.0;

    std::vector<Vec2> offsets;
    offsets.reserve(count);
    for (int i = 0; i < count; ++i) {
      const int row = i / side;
      const int col = i % side;
      offsets.push_back({col * pitch - half_span, half_span - row * pitch});
    }

    // Shift the whole lattice back inside the map if it spills over an edge.
    const double r = pitch / 2.0;
    const double min_x = group.x - half_span - r;
    const double max_x = group.x + half_span + r;
    const double max_y = group.y + half_span + r;
    const double min_y = group.y + half_span - (rows - 1) * pitch - r;
    if (max_x - min_x > s.width + 1e-9 || max_y - min_y > s.height + 1e-9) {
      throw Error(ErrorCode::PlacementOverflow, "a group of " + std::to_string(count) + " units does not fit in the map");
    }
    Vec2 shift;
    if (min_x < 0.0) shift.x = -min_x;
    if (max_x > s.width) shift.x = s.width - max_x;
    if (min_y < 0.0) shift.y = -min_y;
    if (max_y > s.height) shift.y = s.height - max_y;

    int i = 0;
    for (const auto& [ref, n] : group.units) {
      for (int k = 0; k < n; ++k, ++i) {
        out.push_back(Placement{group.faction, ref, Vec2{group.x, group.y} + offsets[i] + shift});
      }
    }
  }

  for (std::size_t a = 0; a < out.size(); ++a) {
    const UnitType& ta = s.unit_types.at(out[a].type_ref);
    for (std::size_t b = a + 1; b < out.size(); ++b) {
      const UnitType& tb = s.unit_types.at(out[b].type_ref);
      if (ta.plane != tb.plane) continue;
      if (distance(out[a].position, out[b].position) < ta.radius() + tb.radius() - 1e-9) {
        throw Error(ErrorCode::PlacementOverflow, "initial unit positions overlap");
      }
    }
    if (ta.plane == Plane::Ground) {
      for (const Rect& rect : s.obstacles) {
        if (distance(rect, out[a].position) < ta.radius() - 1e-9) {
          throw Error(ErrorCode::PlacementOverflow, "a ground unit starts inside blocked terrain");
        }
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Catalog

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

namespace {

fs::path default_data_dir() {
  if (const char* env = std::getenv("SMACLITE_DATA_DIR"); env != nullptr && *env != '\0') return fs::path(env);
  return fs::path(SMACLITE_DATA_DIR);
}

std::string lowercase(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

}  // namespace

Catalog::Catalog() : data_dir_(default_data_dir()) {}
Catalog::Catalog(fs::path data_dir) : data_dir_(std::move(data_dir)) {}

UnitType Catalog::builtin_unit(const std::string& name) const {
  const fs::path path = data_dir_ / "units" / (lowercase(name) + ".json");
  if (!fs::exists(path)) throw Error(ErrorCode::UnresolvableUnitType, "no built-in unit named '" + name + "'");
  return parse_unit_type(read_text_file(path));
}

std::vector<std::string> Catalog::terrain_preset(const std::string& name) const {
  const fs::path path = data_dir_ / "terrain" / (lowercase(name) + ".json");
  if (!fs::exists(path)) throw Error(ErrorCode::InvalidEnum, "unknown terrain preset '" + name + "'");
  const Json doc = detail::parse_document(read_text_file(path), "terrain preset");
  return terrain_rows(detail::require(doc, "terrain"));
}

std::vector<std::string> Catalog::scenario_names() const {
  std::vector<std::string> names;
  const fs::path dir = data_dir_ / "scenarios";
  if (!fs::exists(dir)) return names;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() == ".json") names.push_back(entry.path().stem().string());
  }
  std::sort(names.begin(), names.end());
  return names;
}

UnitLoader Catalog::unit_loader(fs::path base_dir) const {
  return [this, base_dir = std::move(base_dir)](const std::string& resolved) {
    if (is_builtin_reference(resolved)) return builtin_unit(resolved);
    fs::path path(resolved);
    if (path.is_relative() && !base_dir.empty() && fs::exists(base_dir / path)) path = base_dir / path;
    return parse_unit_type(read_text_file(path));
  };
}

TerrainLoader Catalog::terrain_loader() const {
  return [this](const std::string& name) { return terrain_preset(name); };
}

Scenario Catalog::load_scenario(const std::string& name_or_path) const {
  fs::path path = data_dir_ / "scenarios" / (name_or_path + ".json");
  if (!fs::exists(path)) path = fs::path(name_or_path);
  if (!fs::exists(path)) throw Error(ErrorCode::Io, "no shipped scenario or file named '" + name_or_path + "'");
  return parse_scenario(read_text_file(path), unit_loader(path.parent_path()), terrain_loader());
}

}  // namespace smaclite
