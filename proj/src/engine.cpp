#include "smaclite/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "smaclite/error.hpp"

namespace smaclite {

namespace {

constexpr double kCooldownEpsilon = 1e-9;

bool contains(const std::vector<int>& ids, int id) { return std::find(ids.begin(), ids.end(), id) != ids.end(); }

Vec2 toward(const Unit& u, Vec2 destination, double max_speed) {
  const Vec2 delta = destination - u.position;
  const double dist = norm(delta);
  if (dist == 0.0) return {};
  // Never ask for more than reaches the destination within one game step.
  const double speed = std::min(max_speed, dist / kGameStepSeconds);
  return delta * (speed / dist);
}

void kill(GameState& state, Unit& unit) {
  unit.alive = false;
  unit.health = 0.0;
  unit.shield = 0.0;
  unit.velocity = {};
  unit.preferred_velocity = {};
  unit.command = Command::noop();
  unit.target = -1;
  unit.attacking_declared = false;
  state.world.remove_disc(unit.id);
}

bool is_priority(const Unit& attacker, const Unit& candidate) {
  return !attacker.type.is_healer() && candidate.type.is_healer();
}

bool heal_candidate(const Unit& healer, const Unit& other) {
  return other.alive && other.id != healer.id && other.faction == healer.faction && !other.type.is_healer() &&
         (other.health < other.type.hp || other.was_attacking);
}

bool attack_candidate(const Unit& attacker, const Unit& other) {
  return other.alive && other.faction != attacker.faction && attacker.type.can_target(other.type.plane);
}

bool in_scan_range(const Unit& u, const Unit& other) { return gap(u, other) <= u.type.minimum_scan_range; }

void select_attack_move_target(GameState& state, Unit& u) {
  if (u.type.is_healer()) {
    if (u.target >= 0) return;  // already kept through clean-up
    const Unit* best = nullptr;
    for (const Unit& other : state.units) {
      if (!heal_candidate(u, other) || !in_scan_range(u, other)) continue;
      if (best == nullptr || other.health < best->health ||
          (other.health == best->health && distance(u.position, other.position) < distance(u.position, best->position))) {
        best = &other;
      }
    }
    if (best != nullptr) u.target = best->id;
    return;
  }

  const Unit* current = u.target >= 0 ? &state.units[u.target] : nullptr;
  if (current != nullptr && is_priority(u, *current)) return;

  const Unit* best = nullptr;
  for (const Unit& other : state.units) {
    if (!attack_candidate(u, other) || !in_scan_range(u, other)) continue;
    if (current != nullptr && !is_priority(u, other)) continue;  // only a priority target can displace
    if (best == nullptr) {
      best = &other;
      continue;
    }
    const bool p_other = is_priority(u, other);
    const bool p_best = is_priority(u, *best);
    if (p_other != p_best) {
      if (p_other) best = &other;
      continue;
    }
    if (distance(u.position, other.position) < distance(u.position, best->position)) best = &other;
  }
  if (best != nullptr) u.target = best->id;
}

void prepare_target(GameState& state, Unit& u, double max_speed) {
  const Unit& target = state.units[u.target];
  if (!target.alive) {
    u.preferred_velocity = {};
    return;
  }
  if (in_attack_range(u, target)) {
    u.attacking_declared = true;
    u.preferred_velocity = {};
  } else {
    u.preferred_velocity = toward(u, target.position, max_speed);
  }
}

double healer_speed_limit(const GameState& state, const Unit& healer) {
  double limit = healer.type.speed;
  for (const Unit& other : state.units) {
    if (!other.alive || other.id == healer.id || other.faction != healer.faction) continue;
    if (other.type.speed <= 0.0 || !in_scan_range(healer, other)) continue;
    limit = std::min(limit, other.type.speed);
  }
  return limit;
}

void regenerate(const GameState& state, Unit& u) {
  const Scenario& s = *state.scenario;
  if (u.type.hp_regen > 0.0) u.health = std::min(u.type.hp, u.health + u.type.hp_regen * kGameStepSeconds);
  if (u.type.energy > 0.0) u.energy = std::min(u.type.energy, u.energy + s.energy_regen_rate * kGameStepSeconds);
  if (u.max_shield > 0.0 && state.step_counter - u.last_damaged_at >= std::lround(s.shield_regen_delay / kGameStepSeconds)) {
    u.shield = std::min(u.max_shield, u.shield + s.shield_regen_rate * kGameStepSeconds);
  }
}

void clamp_to_map(const Scenario& s, Unit& u) {
  const double r = std::min(u.radius(), 0.5 * std::min(s.width, s.height));
  u.position.x = std::clamp(u.position.x, r, s.width - r);
  u.position.y = std::clamp(u.position.y, r, s.height - r);
}

Disc disc_for(const Unit& u) {
  Disc d;
  d.id = u.id;
  d.position = u.position;
  d.velocity = u.velocity;
  d.preferred_velocity = u.preferred_velocity;
  d.radius = u.radius();
  d.max_speed = u.effective_max_speed;
  d.plane = u.type.plane;
  d.is_static = u.preferred_velocity == Vec2{};
  return d;
}

// Does a circle of radius r at p touch the rectangle centred at c with the
// given half extents along `axis` and its perpendicular?
bool circle_hits_box(Vec2 p, double r, Vec2 c, Vec2 axis, double half_along, double half_across) {
  const Vec2 d = p - c;
  const double along = dot(d, axis);
  const double across = dot(d, perp(axis));
  const double da = std::max(0.0, std::fabs(along) - half_along);
  const double dc = std::max(0.0, std::fabs(across) - half_across);
  return da * da + dc * dc <= r * r;
}

}  // namespace

bool GameState::team_alive(Faction f) const {
  return std::any_of(units.begin(), units.end(), [f](const Unit& u) { return u.faction == f && u.alive; });
}

bool GameState::operator==(const GameState& other) const {
  return *scenario == *other.scenario && units == other.units && rng == other.rng &&
         step_counter == other.step_counter && ledger == other.ledger && world == other.world;
}

std::vector<Rect> boundary_frame(int width, int height) {
  const double w = width;
  const double h = height;
  return {
      Rect{-1.0, -1.0, w + 1.0, 0.0},  // south
      Rect{w, 0.0, w + 1.0, h},        // east
      Rect{-1.0, h, w + 1.0, h + 1.0}, // north
      Rect{-1.0, 0.0, 0.0, h},         // west
  };
}

double gap(const Unit& a, const Unit& b) { return distance(a.position, b.position) - a.radius() - b.radius(); }

bool in_attack_range(const Unit& attacker, const Unit& target) { return gap(attacker, target) <= attacker.type.attack_range; }

GameState reset(std::shared_ptr<const Scenario> scenario, std::uint64_t seed) {
  if (!scenario) throw Error(ErrorCode::InvariantViolation, "reset needs a scenario");
  GameState state;
  state.scenario = scenario;
  state.rng = Rng(seed);

  state.world = CollisionWorld(scenario->obstacles, boundary_frame(scenario->width, scenario->height));

  const std::vector<Placement> placements = place_groups(*scenario);
  std::vector<const Placement*> ordered;
  for (const auto& p : placements) if (p.faction == Faction::Ally) ordered.push_back(&p);
  for (const auto& p : placements) if (p.faction == Faction::Enemy) ordered.push_back(&p);

  int team_counts[2] = {0, 0};
  for (const Placement* p : ordered) {
    Unit u;
    u.id = static_cast<int>(state.units.size());
    u.team_id = team_counts[static_cast<int>(p->faction)]++;
    u.faction = p->faction;
    u.type_ref = p->type_ref;
    u.type = scenario->unit_types.at(p->type_ref);
    u.position = p->position;
    u.health = u.type.hp;
    u.max_shield = scenario->has_shields(u.faction) ? u.type.shield : 0.0;
    u.shield = u.max_shield;
    u.energy = u.type.initial_energy;
    u.effective_max_speed = u.type.speed;
    u.command = u.faction == Faction::Ally ? Command::stop() : Command::attack_move(scenario->attack_point);
    state.units.push_back(std::move(u));
  }
  for (const Unit& u : state.units) state.world.add_disc(disc_for(u));
  return state;
}

void phase_target_cleanup(GameState& state) {
  for (Unit& u : state.units) {
    if (!u.alive) continue;
    switch (u.command.kind) {
      case CommandKind::Noop:
      case CommandKind::Stop:
      case CommandKind::Move:
        u.target = -1;
        break;
      case CommandKind::Target:
        u.target = state.units[u.command.target].alive ? u.command.target : -1;
        break;
      case CommandKind::AttackMove: {
        if (u.target < 0) break;
        const Unit& t = state.units[u.target];
        if (!t.alive) {
          u.target = -1;
        } else if (contains(u.attacked_by_last, t.id)) {
          // never abandon someone who just hit us
        } else if (!in_attack_range(u, t)) {
          u.target = -1;
        } else if (u.type.is_healer() && !heal_candidate(u, t)) {
          u.target = -1;
        }
        break;
      }
    }
  }
}

void phase_velocity_preparation(GameState& state) {
  for (Unit& u : state.units) {
    if (!u.alive) continue;
    u.effective_max_speed = u.type.speed;
    u.preferred_velocity = {};
    switch (u.command.kind) {
      case CommandKind::Noop:
      case CommandKind::Stop:
        break;
      case CommandKind::Move:
        u.preferred_velocity = toward(u, u.command.point, u.effective_max_speed);
        break;
      case CommandKind::Target:
        if (u.target >= 0) prepare_target(state, u, u.effective_max_speed);
        break;
      case CommandKind::AttackMove:
        select_attack_move_target(state, u);
        if (u.type.is_healer()) u.effective_max_speed = healer_speed_limit(state, u);
        if (u.target >= 0) {
          prepare_target(state, u, u.effective_max_speed);
        } else {
          u.preferred_velocity = toward(u, u.command.point, u.effective_max_speed);
        }
        break;
    }
  }
}

void phase_velocity_adjustment(GameState& state) {
  for (const Unit& u : state.units) {
    if (u.alive) state.world.disc(u.id) = disc_for(u);
  }
  const std::vector<Vec2> velocities = state.world.step_velocities(CollisionParams{1.0, kGameStepSeconds});
  const auto& discs = state.world.discs();
  for (std::size_t i = 0; i < discs.size(); ++i) state.units[discs[i].id].velocity = velocities[i];
}

void apply_attack(GameState& state, Unit& attacker, Unit& target) {
  if (!target.alive) return;
  attacker.cooldown = attacker.type.cooldown;
  const double raw = attacker.type.damage + attacker.type.bonus_against(target.type.attributes);
  DamageRecord record{state.step_counter, attacker.id, target.id, 0.0, 0.0, false};
  for (int hit = 0; hit < attacker.type.attacks && target.alive; ++hit) {
    const double to_shield = std::min(target.shield, raw);
    const double remainder = raw - to_shield;
    double to_health = remainder > 0.0 ? std::max(0.0, remainder - target.type.armor) : 0.0;
    to_health = std::min(target.health, to_health);
    target.shield -= to_shield;
    target.health -= to_health;
    record.shield_damage += to_shield;
    record.health_damage += to_health;
    if (target.health <= 0.0) {
      record.killed = true;
      kill(state, target);
    }
  }
  target.last_damaged_at = state.step_counter;
  if (!contains(target.attacked_by, attacker.id)) target.attacked_by.push_back(attacker.id);
  state.ledger.push_back(record);
}

double apply_heal(Unit& healer, Unit& target) {
  if (!target.alive) return 0.0;
  const double healed =
      std::max(0.0, std::min({kHealRate * kGameStepSeconds, target.type.hp - target.health, healer.energy / kEnergyPerHeal}));
  target.health += healed;
  healer.energy = std::max(0.0, healer.energy - healed * kEnergyPerHeal);
  return healed;
}

void execute_targeter(GameState& state, Unit& attacker) {
  Unit& target = state.units[attacker.target];
  switch (attacker.type.targeter) {
    case TargeterKind::Standard:
      apply_attack(state, attacker, target);
      break;
    case TargeterKind::Heal:
      apply_heal(attacker, target);
      break;
    case TargeterKind::Kamikaze: {
      const double radius = attacker.type.targeter_kwargs.at("radius");
      for (Unit& other : state.units) {
        if (!other.alive || other.faction == attacker.faction) continue;
        const bool hit = other.id == target.id ||
                         (attacker.type.can_target(other.type.plane) &&
                          distance(attacker.position, other.position) - other.radius() <= radius);
        if (hit) apply_attack(state, attacker, other);
      }
      // The explosion consumes the attacker; whatever it had left is lost.
      state.ledger.push_back(
          DamageRecord{state.step_counter, attacker.id, attacker.id, attacker.shield, attacker.health, true});
      kill(state, attacker);
      break;
    }
    case TargeterKind::LaserBeam: {
      const double width = attacker.type.targeter_kwargs.at("width");
      const double height = attacker.type.targeter_kwargs.at("height");
      const Vec2 line = target.position - attacker.position;
      const Vec2 axis = abs_sq(line) > 0.0 ? normalize(line) : Vec2{1.0, 0.0};
      const Vec2 centre = target.position;
      for (Unit& other : state.units) {
        if (!other.alive || other.faction == attacker.faction) continue;
        const bool hit = other.id == target.id ||
                         (attacker.type.can_target(other.type.plane) &&
                          circle_hits_box(other.position, other.radius(), centre, axis, height / 2.0, width / 2.0));
        if (hit) apply_attack(state, attacker, other);
      }
      break;
    }
  }
}

void phase_execute(GameState& state) {
  std::vector<int> order;
  order.reserve(state.units.size());
  for (const Unit& u : state.units) {
    if (u.alive) order.push_back(u.id);
  }
  state.rng.shuffle(std::span<int>(order));

  const Scenario& s = *state.scenario;
  for (int id : order) {
    Unit& u = state.units[id];
    if (!u.alive) continue;  // killed earlier in this pass

    u.position += u.velocity * kGameStepSeconds;
    clamp_to_map(s, u);
    u.cooldown = std::max(0.0, u.cooldown - kGameStepSeconds);
    if (u.cooldown <= kCooldownEpsilon) u.cooldown = 0.0;
    regenerate(state, u);

    const bool combat = u.command.kind == CommandKind::Target ||
                        (u.command.kind == CommandKind::AttackMove && u.target >= 0);
    if (!combat || !u.attacking_declared || u.cooldown > 0.0 || u.target < 0) continue;
    if (!state.units[u.target].alive) continue;  // fizzles, cooldown kept
    execute_targeter(state, u);
  }
}

void game_step(GameState& state) {
  for (Unit& u : state.units) {
    u.was_attacking = u.attacking_declared;
    u.attacking_declared = false;
    u.attacked_by_last = std::move(u.attacked_by);
    u.attacked_by.clear();
  }
  phase_target_cleanup(state);
  phase_velocity_preparation(state);
  phase_velocity_adjustment(state);
  phase_execute(state);
  ++state.step_counter;
}

StepEvents env_step(GameState& state, std::span<const Command> ally_commands, const GameStepObserver& observer) {
  if (static_cast<int>(ally_commands.size()) != state.num_allies()) {
    throw Error(ErrorCode::WrongActionCount, "expected " + std::to_string(state.num_allies()) + " commands, got " +
                                                 std::to_string(ally_commands.size()));
  }
  state.ledger.clear();
  for (int i = 0; i < state.num_allies(); ++i) {
    Unit& u = state.ally(i);
    if (u.alive) u.command = ally_commands[i];
  }

  std::vector<bool> alive_before(state.units.size());
  for (const Unit& u : state.units) alive_before[u.id] = u.alive;

  for (int k = 0; k < kGameStepsPerEnvStep; ++k) {
    game_step(state);
    if (observer) observer(state);
  }

  StepEvents events;
  events.ledger = state.ledger;
  for (const Unit& u : state.units) {
    if (alive_before[u.id] && !u.alive) ++(u.faction == Faction::Enemy ? events.enemies_killed : events.allies_killed);
  }
  return events;
}

}  // namespace smaclite
