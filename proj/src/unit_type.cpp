#include "smaclite/unit_type.hpp"

#include <array>
#include <utility>

#include "json_util.hpp"

namespace smaclite {

using detail::Json;

namespace {

constexpr std::array<std::pair<std::string_view, Plane>, 3> kPlanes{{
    {"GROUND", Plane::Ground},
    {"AIR", Plane::Air},
    {"COLOSSUS", Plane::Colossus},
}};

constexpr std::array<std::pair<std::string_view, TargeterKind>, 4> kTargeters{{
    {"STANDARD", TargeterKind::Standard},
    {"KAMIKAZE", TargeterKind::Kamikaze},
    {"LASER_BEAM", TargeterKind::LaserBeam},
    {"HEAL", TargeterKind::Heal},
}};

constexpr std::array<std::pair<std::string_view, CombatType>, 2> kCombatTypes{{
    {"DAMAGE", CombatType::Damage},
    {"HEALING", CombatType::Healing},
}};

template <typename E, std::size_t N>
E lookup(const std::array<std::pair<std::string_view, E>, N>& table, const std::string& name, const char* field) {
  for (const auto& [text, value] : table) {
    if (text == name) return value;
  }
  throw Error(ErrorCode::InvalidEnum, std::string("unknown ") + field + " '" + name + "'");
}

template <typename E, std::size_t N>
std::string_view name_of(const std::array<std::pair<std::string_view, E>, N>& table, E value) {
  for (const auto& [text, v] : table) {
    if (v == value) return text;
  }
  return "?";
}

double non_negative(const Json& doc, const char* key, double fallback) {
  const double v = detail::number_or(doc, key, fallback);
  if (v < 0.0) throw Error(ErrorCode::InvariantViolation, std::string("'") + key + "' must be >= 0");
  return v;
}

double required_non_negative(const Json& doc, const char* key) {
  const double v = detail::as_number(detail::require(doc, key), key);
  if (v < 0.0) throw Error(ErrorCode::InvariantViolation, std::string("'") + key + "' must be >= 0");
  return v;
}

double positive_kwarg(const UnitType& t, const char* key) {
  auto it = t.targeter_kwargs.find(key);
  if (it == t.targeter_kwargs.end() || !(it->second > 0.0)) {
    throw Error(ErrorCode::InvariantViolation,
                std::string(to_string(t.targeter)) + " targeter needs targeter_kwargs." + key + " > 0");
  }
  return it->second;
}

}  // namespace

std::string_view to_string(Plane plane) { return name_of(kPlanes, plane); }
std::string_view to_string(TargeterKind kind) { return name_of(kTargeters, kind); }
std::string_view to_string(CombatType type) { return name_of(kCombatTypes, type); }

double UnitType::bonus_against(const std::set<std::string>& target_attributes) const {
  double total = 0.0;
  for (const auto& [attribute, bonus] : bonuses) {
    if (target_attributes.contains(attribute)) total += bonus;
  }
  return total;
}

UnitType parse_unit_type(std::string_view text) {
  const Json doc = detail::parse_document(text, "unit definition");
  UnitType t;

  t.hp = required_non_negative(doc, "hp");
  t.damage = required_non_negative(doc, "damage");
  t.cooldown = required_non_negative(doc, "cooldown");
  t.speed = required_non_negative(doc, "speed");
  t.size = detail::as_number(detail::require(doc, "size"), "size");
  if (!(t.size > 0.0)) throw Error(ErrorCode::InvariantViolation, "'size' must be > 0");

  t.hp_regen = non_negative(doc, "hp_regen", 0.0);
  t.shield = non_negative(doc, "shield", 0.0);
  t.energy = non_negative(doc, "energy", 0.0);
  t.initial_energy = detail::number_or(doc, "initial_energy", 0.0);
  if (t.initial_energy > t.energy || t.initial_energy < 0.0) {
    throw Error(ErrorCode::InvariantViolation, "'initial_energy' must lie in [0, energy]");
  }
  t.armor = non_negative(doc, "armor", 0.0);
  t.minimum_scan_range = non_negative(doc, "minimum_scan_range", 0.0);

  if (auto it = doc.find("attack_range"); it != doc.end()) {
    if (it->is_string()) {
      if (it->get<std::string>() != "MELEE") {
        throw Error(ErrorCode::InvalidEnum, "attack_range must be a number or MELEE");
      }
      t.attack_range = kMeleeRange;
      t.melee = true;
    } else {
      t.attack_range = detail::as_number(*it, "attack_range");
      if (t.attack_range < 0.0) throw Error(ErrorCode::InvariantViolation, "'attack_range' must be >= 0");
      t.melee = false;
    }
  }

  if (auto it = doc.find("attacks"); it != doc.end()) {
    const long long n = detail::as_integer(*it, "attacks");
    if (n < 1) throw Error(ErrorCode::InvariantViolation, "'attacks' must be >= 1");
    t.attacks = static_cast<int>(n);
  }

  if (auto it = doc.find("combat_type"); it != doc.end()) {
    t.combat_type = lookup(kCombatTypes, detail::as_string(*it, "combat_type"), "combat_type");
  }
  if (auto it = doc.find("plane"); it != doc.end()) {
    t.plane = lookup(kPlanes, detail::as_string(*it, "plane"), "plane");
  }
  if (auto it = doc.find("valid_targets"); it != doc.end()) {
    if (!it->is_array()) throw Error(ErrorCode::MalformedDocument, "'valid_targets' must be an array");
    t.valid_targets = PlaneSet{};
    for (const auto& p : *it) t.valid_targets.insert(lookup(kPlanes, detail::as_string(p, "valid_targets"), "plane"));
  }
  if (auto it = doc.find("attributes"); it != doc.end()) {
    if (!it->is_array()) throw Error(ErrorCode::MalformedDocument, "'attributes' must be an array");
    for (const auto& a : *it) t.attributes.insert(detail::as_string(a, "attributes"));
  }
  if (auto it = doc.find("bonuses"); it != doc.end()) {
    if (!it->is_object()) throw Error(ErrorCode::MalformedDocument, "'bonuses' must be an object");
    for (const auto& [attribute, bonus] : it->items()) t.bonuses[attribute] = detail::as_number(bonus, "bonuses");
  }

  if (auto it = doc.find("targeter"); it != doc.end()) {
    t.targeter = lookup(kTargeters, detail::as_string(*it, "targeter"), "targeter");
  } else if (t.combat_type == CombatType::Healing) {
    t.targeter = TargeterKind::Heal;
  }
  if (auto it = doc.find("targeter_kwargs"); it != doc.end()) {
    if (!it->is_object()) throw Error(ErrorCode::MalformedDocument, "'targeter_kwargs' must be an object");
    for (const auto& [key, value] : it->items()) t.targeter_kwargs[key] = detail::as_number(value, "targeter_kwargs");
  }

  if ((t.combat_type == CombatType::Healing) != (t.targeter == TargeterKind::Heal)) {
    throw Error(ErrorCode::InvariantViolation, "HEALING combat_type requires the HEAL targeter and vice versa");
  }
  if (t.targeter == TargeterKind::Kamikaze) positive_kwarg(t, "radius");
  if (t.targeter == TargeterKind::LaserBeam) {
    positive_kwarg(t, "width");
    positive_kwarg(t, "height");
  }
  return t;
}

std::string to_json(const UnitType& t) {
  Json doc;
  doc["hp"] = t.hp;
  doc["hp_regen"] = t.hp_regen;
  doc["shield"] = t.shield;
  doc["energy"] = t.energy;
  doc["initial_energy"] = t.initial_energy;
  doc["size"] = t.size;
  doc["speed"] = t.speed;
  doc["combat_type"] = std::string(to_string(t.combat_type));
  doc["damage"] = t.damage;
  doc["armor"] = t.armor;
  if (t.melee) {
    doc["attack_range"] = "MELEE";
  } else {
    doc["attack_range"] = t.attack_range;
  }
  doc["attacks"] = t.attacks;
  doc["cooldown"] = t.cooldown;
  doc["minimum_scan_range"] = t.minimum_scan_range;
  doc["plane"] = std::string(to_string(t.plane));
  Json targets = Json::array();
  for (const auto& [name, plane] : kPlanes) {
    if (t.valid_targets.contains(plane)) targets.push_back(std::string(name));
  }
  doc["valid_targets"] = targets;
  doc["attributes"] = t.attributes;
  doc["bonuses"] = Json::object();
  for (const auto& [k, v] : t.bonuses) doc["bonuses"][k] = v;
  doc["targeter"] = std::string(to_string(t.targeter));
  doc["targeter_kwargs"] = Json::object();
  for (const auto& [k, v] : t.targeter_kwargs) doc["targeter_kwargs"][k] = v;
  return doc.dump(2);
}

}  // namespace smaclite
