#include "smaclite/env.hpp"

#include <algorithm>
#include <array>

#include "smaclite/error.hpp"

namespace smaclite {

namespace {

constexpr std::array<Vec2, 4> kMoveDirections{Vec2{0.0, 1.0}, Vec2{1.0, 0.0}, Vec2{0.0, -1.0}, Vec2{-1.0, 0.0}};

bool has_ally_healer(const Scenario& s) {
  for (const auto& g : s.groups) {
    if (g.faction != Faction::Ally) continue;
    for (const auto& [ref, n] : g.units) {
      if (s.unit_types.at(ref).is_healer()) return true;
    }
  }
  return false;
}

}  // namespace

RewardConfig RewardConfig::for_scenario(const Scenario& s) {
  RewardConfig c;
  double pool = 0.0;
  for (const auto& g : s.groups) {
    if (g.faction != Faction::Enemy) continue;
    for (const auto& [ref, n] : g.units) {
      const UnitType& t = s.unit_types.at(ref);
      pool += n * (t.hp + (s.enemy_has_shields ? t.shield : 0.0));
    }
  }
  c.denominator = pool + c.kill_bonus * s.num_enemy_units + c.win_bonus;
  return c;
}

double compute_reward(const RewardConfig& config, std::span<const DamageRecord> ledger, int num_allies, bool won) {
  double dealt = 0.0;
  int kills = 0;
  for (const DamageRecord& r : ledger) {
    if (r.target < num_allies) continue;
    dealt += r.shield_damage + r.health_damage;
    if (r.killed) ++kills;
  }
  const double raw = dealt + config.kill_bonus * kills + (won ? config.win_bonus : 0.0);
  return raw / config.denominator * config.scale;
}

Layout::Layout(const Scenario& s)
    : n_allies(s.num_allied_units),
      n_enemies(s.num_enemy_units),
      n_actions(kFirstTargetAction + s.num_enemy_units),
      unit_types(s.num_unit_types),
      ally_shield(s.ally_has_shields ? 1 : 0),
      enemy_shield(s.enemy_has_shields ? 1 : 0) {}

Environment::Environment(std::shared_ptr<const Scenario> scenario, std::uint64_t seed)
    : scenario_(std::move(scenario)), layout_(*scenario_), reward_(RewardConfig::for_scenario(*scenario_)), base_seed_(seed) {
  if (has_ally_healer(*scenario_) && scenario_->num_allied_units > scenario_->num_enemy_units) {
    throw Error(ErrorCode::InvariantViolation,
                "an allied healer needs one target action per ally, but there are more allies than enemies");
  }
  reset(seed);
  episodes_started_ = 0;
}

void Environment::reset() { reset(base_seed_ + static_cast<std::uint64_t>(episodes_started_)); }

void Environment::reset(std::uint64_t seed) {
  state_ = smaclite::reset(scenario_, seed);
  episode_seed_ = seed;
  ++episodes_started_;
  episode_steps_ = 0;
  terminated_ = false;
  last_actions_.assign(layout_.n_allies, kNoop);
}

Command Environment::decode_action(int agent, int action) const {
  const Unit& u = state_.ally(agent);
  switch (action) {
    case kNoop: return Command::noop();
    case kStop: return Command::stop();
    case kMoveNorth:
    case kMoveEast:
    case kMoveSouth:
    case kMoveWest:
      return Command::move(u.position + kMoveDistance * kMoveDirections[action - kMoveNorth]);
    default: break;
  }
  const int k = action - kFirstTargetAction;
  return Command::attack(u.type.is_healer() ? state_.ally(k).id : state_.enemy(k).id);
}

std::vector<int> Environment::get_avail_agent_actions(int agent) const {
  std::vector<int> avail(layout_.n_actions, 0);
  const Unit& u = state_.ally(agent);
  if (!u.alive) {
    avail[kNoop] = 1;
    return avail;
  }
  avail[kStop] = 1;
  const Scenario& s = *scenario_;
  for (int d = 0; d < 4; ++d) {
    const Vec2 dest = u.position + kMoveDistance * kMoveDirections[d];
    const bool in_bounds = dest.x >= 0.0 && dest.y >= 0.0 && dest.x < s.width && dest.y < s.height;
    const bool ok = u.type.plane == Plane::Ground ? s.terrain.walkable(dest) : in_bounds;
    avail[kMoveNorth + d] = ok ? 1 : 0;
  }
  for (int k = 0; k < layout_.n_enemies; ++k) {
    bool ok = false;
    if (u.type.is_healer()) {
      if (k < layout_.n_allies) {
        const Unit& t = state_.ally(k);
        ok = t.alive && t.id != u.id && !t.type.is_healer() &&
             distance(u.position, t.position) <= s.targeting_range;
      }
    } else {
      const Unit& t = state_.enemy(k);
      ok = t.alive && u.type.can_target(t.type.plane) && distance(u.position, t.position) <= s.targeting_range;
    }
    avail[kFirstTargetAction + k] = ok ? 1 : 0;
  }
  return avail;
}

std::vector<std::vector<int>> Environment::get_avail_actions() const {
  std::vector<std::vector<int>> out;
  out.reserve(layout_.n_allies);
  for (int i = 0; i < layout_.n_allies; ++i) out.push_back(get_avail_agent_actions(i));
  return out;
}

StepResult Environment::step(std::span<const int> actions) {
  if (terminated_) throw Error(ErrorCode::EpisodeOver, "step called after the episode ended; call reset");
  if (static_cast<int>(actions.size()) != layout_.n_allies) {
    throw Error(ErrorCode::WrongActionCount, "expected " + std::to_string(layout_.n_allies) + " actions, got " +
                                                 std::to_string(actions.size()));
  }
  std::vector<Command> commands;
  commands.reserve(actions.size());
  for (int i = 0; i < layout_.n_allies; ++i) {
    const int a = actions[i];
    if (a < 0 || a >= layout_.n_actions || get_avail_agent_actions(i)[a] == 0) {
      throw Error(ErrorCode::UnavailableAction,
                  "agent " + std::to_string(i) + " cannot take action " + std::to_string(a) + " now");
    }
    commands.push_back(decode_action(i, a));
  }

  const StepEvents events = env_step(state_, commands, observer_);
  last_actions_.assign(actions.begin(), actions.end());
  ++episode_steps_;

  const bool allies_alive = state_.team_alive(Faction::Ally);
  const bool enemies_alive = state_.team_alive(Faction::Enemy);
  StepResult r;
  r.battle_won = !enemies_alive && allies_alive;
  r.timed_out = allies_alive && enemies_alive && episode_steps_ >= scenario_->episode_limit;
  r.terminated = !allies_alive || !enemies_alive || r.timed_out;
  r.reward = compute_reward(reward_, events.ledger, layout_.n_allies, r.battle_won);
  r.episode_steps = episode_steps_;
  for (const Unit& u : state_.units) {
    if (!u.alive) ++(u.faction == Faction::Ally ? r.dead_allies : r.dead_enemies);
  }
  terminated_ = r.terminated;
  return r;
}

void Environment::append_unit_feats(std::vector<float>& out, const Unit& u, bool with_shield) const {
  if (with_shield) out.push_back(u.max_shield > 0.0 ? static_cast<float>(u.shield / u.max_shield) : 0.0f);
  if (layout_.unit_types > 0) {
    const int id = scenario_->unit_type_ids.at(u.type_ref);
    for (int t = 0; t < layout_.unit_types; ++t) out.push_back(t == id ? 1.0f : 0.0f);
  }
}

std::vector<float> Environment::get_obs_agent(int agent) const {
  const Layout& L = layout_;
  std::vector<float> obs;
  obs.reserve(L.obs_size());
  const Unit& self = state_.ally(agent);
  if (!self.alive) return std::vector<float>(L.obs_size(), 0.0f);

  const double sight = scenario_->sight_range;
  const std::vector<int> avail = get_avail_agent_actions(agent);
  for (int d = 0; d < 4; ++d) obs.push_back(static_cast<float>(avail[kMoveNorth + d]));

  auto visible = [&](const Unit& other) { return other.alive && distance(self.position, other.position) <= sight; };
  auto geometry = [&](const Unit& other) {
    const Vec2 rel = other.position - self.position;
    obs.push_back(static_cast<float>(norm(rel) / sight));
    obs.push_back(static_cast<float>(rel.x / sight));
    obs.push_back(static_cast<float>(rel.y / sight));
  };

  for (int k = 0; k < L.n_enemies; ++k) {
    const Unit& e = state_.enemy(k);
    if (!visible(e)) {
      obs.insert(obs.end(), L.enemy_feats(), 0.0f);
      continue;
    }
    const bool attackable = !self.type.is_healer() && avail[kFirstTargetAction + k] != 0;
    obs.push_back(attackable ? 1.0f : 0.0f);
    geometry(e);
    obs.push_back(static_cast<float>(e.health / e.type.hp));
    append_unit_feats(obs, e, L.enemy_shield != 0);
  }
  for (int j = 0; j < L.n_allies; ++j) {
    if (j == agent) continue;
    const Unit& a = state_.ally(j);
    if (!visible(a)) {
      obs.insert(obs.end(), L.ally_feats(), 0.0f);
      continue;
    }
    obs.push_back(1.0f);
    geometry(a);
    obs.push_back(static_cast<float>(a.health / a.type.hp));
    append_unit_feats(obs, a, L.ally_shield != 0);
  }
  obs.push_back(static_cast<float>(self.health / self.type.hp));
  append_unit_feats(obs, self, L.ally_shield != 0);
  return obs;
}

std::vector<std::vector<float>> Environment::get_obs() const {
  std::vector<std::vector<float>> out;
  out.reserve(layout_.n_allies);
  for (int i = 0; i < layout_.n_allies; ++i) out.push_back(get_obs_agent(i));
  return out;
}

std::vector<float> Environment::get_state() const {
  const Layout& L = layout_;
  const Scenario& s = *scenario_;
  const double half_w = s.width / 2.0;
  const double half_h = s.height / 2.0;
  std::vector<float> st;
  st.reserve(L.state_size());

  for (int i = 0; i < L.n_allies; ++i) {
    const Unit& a = state_.ally(i);
    if (!a.alive) {
      st.insert(st.end(), L.state_ally_feats(), 0.0f);
      continue;
    }
    st.push_back(static_cast<float>(a.health / a.type.hp));
    st.push_back(a.type.cooldown > 0.0 ? static_cast<float>(a.cooldown / a.type.cooldown) : 0.0f);
    st.push_back(static_cast<float>((a.position.x - half_w) / half_w));
    st.push_back(static_cast<float>((a.position.y - half_h) / half_h));
    append_unit_feats(st, a, L.ally_shield != 0);
  }
  for (int k = 0; k < L.n_enemies; ++k) {
    const Unit& e = state_.enemy(k);
    if (!e.alive) {
      st.insert(st.end(), L.state_enemy_feats(), 0.0f);
      continue;
    }
    st.push_back(static_cast<float>(e.health / e.type.hp));
    st.push_back(static_cast<float>((e.position.x - half_w) / half_w));
    st.push_back(static_cast<float>((e.position.y - half_h) / half_h));
    append_unit_feats(st, e, L.enemy_shield != 0);
  }
  for (int i = 0; i < L.n_allies; ++i) {
    for (int a = 0; a < L.n_actions; ++a) st.push_back(a == last_actions_[i] ? 1.0f : 0.0f);
  }
  return st;
}

EnvInfo Environment::get_env_info() const {
  return EnvInfo{layout_.n_allies, layout_.n_enemies, layout_.n_actions, layout_.obs_size(), layout_.state_size(),
                 scenario_->episode_limit};
}

}  // namespace smaclite
