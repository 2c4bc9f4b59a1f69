#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "smaclite/collision.hpp"
#include "smaclite/rng.hpp"
#include "smaclite/scenario.hpp"

namespace smaclite {

inline constexpr int kGameStepsPerEnvStep = 8;
inline constexpr double kGameStepSeconds = 1.0 / 16.0;
/// Healing throughput in health per second and energy cost per health point.
inline constexpr double kHealRate = 9.0;
inline constexpr double kEnergyPerHeal = 1.0 / 3.0;

enum class CommandKind : std::uint8_t { Noop, Stop, Move, Target, AttackMove };

struct Command {
  CommandKind kind = CommandKind::Noop;
  Vec2 point;       // Move / AttackMove destination
  int target = -1;  // Target unit id

  static Command noop() { return {}; }
  static Command stop() { return {CommandKind::Stop, {}, -1}; }
  static Command move(Vec2 p) { return {CommandKind::Move, p, -1}; }
  static Command attack(int unit_id) { return {CommandKind::Target, {}, unit_id}; }
  static Command attack_move(Vec2 p) { return {CommandKind::AttackMove, p, -1}; }

  bool operator==(const Command&) const = default;
};

struct Unit {
  int id = 0;
  int team_id = 0;  // index within its faction
  Faction faction = Faction::Ally;
  std::string type_ref;
  UnitType type;

  Vec2 position;
  Vec2 velocity;
  Vec2 preferred_velocity;
  double health = 0.0;
  double shield = 0.0;
  double max_shield = 0.0;  // type.shield if the team has shields, else 0
  double energy = 0.0;
  double cooldown = 0.0;  // seconds until the next attack
  double effective_max_speed = 0.0;

  Command command;
  int target = -1;
  bool attacking_declared = false;
  bool was_attacking = false;     // declaration of the previous game step
  int last_damaged_at = -1'000'000;  // game step of the last hit taken
  std::vector<int> attacked_by;       // attackers during the current game step
  std::vector<int> attacked_by_last;  // attackers during the previous game step
  bool alive = true;

  double radius() const { return type.radius(); }
  bool operator==(const Unit&) const = default;
};

/// One volley (or self-destruct) worth of damage against one unit.
struct DamageRecord {
  int step = 0;  // game step at which it happened
  int attacker = 0;
  int target = 0;
  double shield_damage = 0.0;
  double health_damage = 0.0;
  bool killed = false;

  bool operator==(const DamageRecord&) const = default;
};

struct GameState {
  std::shared_ptr<const Scenario> scenario;
  std::vector<Unit> units;  // id == index; allies first, then enemies
  Rng rng;
  int step_counter = 0;  // game steps elapsed
  std::vector<DamageRecord> ledger;  // current env step only
  CollisionWorld world;              // living units only

  int num_allies() const { return scenario->num_allied_units; }
  int num_enemies() const { return scenario->num_enemy_units; }
  Unit& ally(int team_id) { return units[team_id]; }
  const Unit& ally(int team_id) const { return units[team_id]; }
  Unit& enemy(int team_id) { return units[num_allies() + team_id]; }
  const Unit& enemy(int team_id) const { return units[num_allies() + team_id]; }
  bool team_alive(Faction f) const;

  bool operator==(const GameState& other) const;
};

/// Rectangles fencing the map in on all four sides, one cell thick.
std::vector<Rect> boundary_frame(int width, int height);

GameState reset(std::shared_ptr<const Scenario> scenario, std::uint64_t seed);

using GameStepObserver = std::function<void(const GameState&)>;

struct StepEvents {
  std::vector<DamageRecord> ledger;
  int enemies_killed = 0;
  int allies_killed = 0;
};

/// Applies one command per ally (dead allies should carry noop) and runs the
/// eight game steps of one environment step. `observer` sees the state after
/// every game step.
StepEvents env_step(GameState& state, std::span<const Command> ally_commands, const GameStepObserver& observer = {});

void game_step(GameState& state);
void phase_target_cleanup(GameState& state);
void phase_velocity_preparation(GameState& state);
void phase_velocity_adjustment(GameState& state);
void phase_execute(GameState& state);

/// Boundary-to-boundary distance between two units.
double gap(const Unit& a, const Unit& b);
bool in_attack_range(const Unit& attacker, const Unit& target);

void apply_attack(GameState& state, Unit& attacker, Unit& target);
/// Returns the amount healed.
double apply_heal(Unit& healer, Unit& target);
void execute_targeter(GameState& state, Unit& attacker);

}  // namespace smaclite
