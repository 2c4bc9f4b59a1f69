#pragma once

#include <cstdint>
#include <initializer_list>
#include <map>
#include <set>
#include <string>
#include <string_view>

namespace smaclite {

/// Boundary-to-boundary range used when a unit file says "MELEE".
inline constexpr double kMeleeRange = 0.1;

enum class CombatType { Damage, Healing };
enum class Plane : std::uint8_t { Ground = 0, Air = 1, Colossus = 2 };
enum class TargeterKind { Standard, Kamikaze, LaserBeam, Heal };

/// Small bit set over the three planes.
class PlaneSet {
 public:
  constexpr PlaneSet() = default;
  constexpr PlaneSet(std::initializer_list<Plane> planes) {
    for (Plane p : planes) insert(p);
  }
  constexpr void insert(Plane p) { bits_ |= bit(p); }
  constexpr bool contains(Plane p) const { return (bits_ & bit(p)) != 0; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool operator==(const PlaneSet&) const = default;

 private:
  static constexpr std::uint8_t bit(Plane p) { return std::uint8_t(1u << static_cast<unsigned>(p)); }
  std::uint8_t bits_ = 0;
};

/// Static per-type combat attributes, as read from a unit JSON document.
struct UnitType {
  double hp = 0.0;
  double hp_regen = 0.0;
  double shield = 0.0;
  double energy = 0.0;
  double initial_energy = 0.0;
  double size = 1.0;  // diameter
  double speed = 0.0;
  CombatType combat_type = CombatType::Damage;
  double damage = 0.0;
  double armor = 0.0;
  double attack_range = kMeleeRange;
  bool melee = true;  // attack_range came from the MELEE sentinel
  int attacks = 1;
  double cooldown = 0.0;
  double minimum_scan_range = 0.0;
  Plane plane = Plane::Ground;
  PlaneSet valid_targets{Plane::Ground};  // as declared; see can_target()
  std::set<std::string> attributes;
  std::map<std::string, double> bonuses;
  TargeterKind targeter = TargeterKind::Standard;
  std::map<std::string, double> targeter_kwargs;

  double radius() const { return size / 2.0; }
  bool is_healer() const { return combat_type == CombatType::Healing; }

  /// Every unit may target the COLOSSUS plane regardless of valid_targets.
  bool can_target(Plane p) const { return p == Plane::Colossus || valid_targets.contains(p); }

  /// Flat per-hit bonus against a target carrying the given attributes.
  double bonus_against(const std::set<std::string>& target_attributes) const;

  bool operator==(const UnitType&) const = default;
};

/// Parses a unit definition. Throws Error with MalformedDocument, MissingField,
/// InvalidEnum or InvariantViolation.
UnitType parse_unit_type(std::string_view text);

/// Serializes back to the unit JSON format; parse_unit_type(to_json(t)) == t.
std::string to_json(const UnitType& type);

std::string_view to_string(Plane plane);
std::string_view to_string(TargeterKind kind);
std::string_view to_string(CombatType type);

}  // namespace smaclite
