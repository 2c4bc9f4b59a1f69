#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "smaclite/unit_type.hpp"
#include "smaclite/vec2.hpp"

namespace smaclite {

enum class Faction : std::uint8_t { Ally = 0, Enemy = 1 };

std::string_view to_string(Faction faction);

/// Walkability grid. Row index is the world y coordinate (row 0 is the
/// southern edge); cell (x, y) covers [x, x+1) x [y, y+1).
class TerrainGrid {
 public:
  TerrainGrid() = default;
  TerrainGrid(int width, int height) : width_(width), height_(height), blocked_(std::size_t(width) * height, 0) {}

  /// Builds a grid from JSON-style rows of '_' (walkable) and 'X' (blocked).
  /// rows[0] is the northernmost row, so the text reads like a map.
  static TerrainGrid from_rows(const std::vector<std::string>& rows);
  std::vector<std::string> to_rows() const;

  int width() const { return width_; }
  int height() const { return height_; }
  bool blocked(int x, int y) const { return blocked_[index(x, y)] != 0; }
  void set_blocked(int x, int y, bool value) { blocked_[index(x, y)] = value ? 1 : 0; }

  /// False outside the grid.
  bool walkable(Vec2 p) const;

  bool operator==(const TerrainGrid&) const = default;

 private:
  std::size_t index(int x, int y) const { return std::size_t(y) * width_ + x; }
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> blocked_;
};

struct UnitGroup {
  double x = 0.0;
  double y = 0.0;
  Faction faction = Faction::Ally;
  /// (unit-type reference, count) in declaration order.
  std::vector<std::pair<std::string, int>> units;

  bool operator==(const UnitGroup&) const = default;
};

/// A parsed, fully resolved battle map.
struct Scenario {
  std::string name;
  std::optional<std::string> custom_unit_path;
  int num_allied_units = 0;
  int num_enemy_units = 0;
  std::vector<UnitGroup> groups;
  Vec2 attack_point;
  int width = 0;
  int height = 0;
  TerrainGrid terrain;
  std::vector<Rect> obstacles;
  bool ally_has_shields = false;
  bool enemy_has_shields = false;
  int num_unit_types = 0;
  /// Canonical unit-type reference -> observation type id.
  std::map<std::string, int> unit_type_ids;
  /// Canonical unit-type reference -> resolved type.
  std::map<std::string, UnitType> unit_types;

  // Optional extensions with engine defaults.
  int episode_limit = 150;
  double sight_range = 9.0;
  double targeting_range = 6.0;
  double shield_regen_delay = 10.0;  // seconds without damage
  double shield_regen_rate = 2.0;    // shield per second
  double energy_regen_rate = 0.5625; // energy per second

  bool has_shields(Faction f) const { return f == Faction::Ally ? ally_has_shields : enemy_has_shields; }
  int num_units(Faction f) const { return f == Faction::Ally ? num_allied_units : num_enemy_units; }
  double max_unit_radius() const;
  double max_unit_speed() const;

  bool operator==(const Scenario&) const = default;
};

/// Receives a resolved reference: either an uppercase built-in name such as
/// "MARINE", or a file path with custom_unit_path prepended and ".json"
/// attached.
using UnitLoader = std::function<UnitType(const std::string& resolved_reference)>;
/// Returns the '_'/'X' rows of a named terrain preset such as "CORRIDOR".
using TerrainLoader = std::function<std::vector<std::string>(const std::string& preset_name)>;

/// True when the reference names a built-in unit (uppercase name).
bool is_builtin_reference(std::string_view reference);

/// Canonical map key for a reference: built-in names unchanged, paths with a
/// trailing ".json" removed, so "type" and "type.json" coincide.
std::string canonical_reference(std::string_view reference);

Scenario parse_scenario(std::string_view text, const UnitLoader& unit_loader,
                        const TerrainLoader& terrain_loader = {});

/// Serializes with inline terrain. Parsing the result with a loader that
/// returns the same unit types yields an equal Scenario.
std::string to_json(const Scenario& scenario);

/// Greedy collapse of blocked cells: maximal horizontal runs per row, then
/// runs with identical column span in consecutive rows are merged. Output
/// ordered by (ymin, xmin).
std::vector<Rect> collapse_terrain(const TerrainGrid& grid);

struct Placement {
  Faction faction = Faction::Ally;
  std::string type_ref;  // canonical reference into Scenario::unit_types
  Vec2 position;
};

/// Lays each group out on a square lattice around its centre. Throws
/// PlacementOverflow when a group cannot fit inside the map, or when units
/// would overlap each other or blocked terrain.
std::vector<Placement> place_groups(const Scenario& scenario);

/// Locates shipped data: built-in units, terrain presets and scenarios.
class Catalog {
 public:
  /// Uses $SMACLITE_DATA_DIR when set, else the directory compiled in.
  Catalog();
  explicit Catalog(std::filesystem::path data_dir);

  const std::filesystem::path& data_dir() const { return data_dir_; }

  UnitType builtin_unit(const std::string& name) const;
  std::vector<std::string> terrain_preset(const std::string& name) const;
  std::vector<std::string> scenario_names() const;

  /// Resolves built-in names from the catalog and relative paths against
  /// base_dir.
  UnitLoader unit_loader(std::filesystem::path base_dir = {}) const;
  TerrainLoader terrain_loader() const;

  /// A shipped scenario name (e.g. "3s5z") or a path to a scenario file.
  Scenario load_scenario(const std::string& name_or_path) const;

 private:
  std::filesystem::path data_dir_;
};

std::string read_text_file(const std::filesystem::path& path);

}  // namespace smaclite
