#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "smaclite/engine.hpp"

namespace smaclite {

/// Fixed action ids; target actions follow at kFirstTargetAction + k.
enum Action : int {
  kNoop = 0,
  kStop = 1,
  kMoveNorth = 2,
  kMoveEast = 3,
  kMoveSouth = 4,
  kMoveWest = 5,
  kFirstTargetAction = 6,
};

/// Distance covered by one move action's destination.
inline constexpr double kMoveDistance = 2.0;

struct RewardConfig {
  double kill_bonus = 10.0;
  double win_bonus = 200.0;
  double scale = 20.0;
  double denominator = 1.0;

  /// Sum of enemy max health and effective shields, plus every bonus.
  static RewardConfig for_scenario(const Scenario& scenario);
};

/// Scaled reward for the damage entries of one env step. Only hits on enemy
/// units (ids >= num_allies) count; healing never appears in the ledger.
double compute_reward(const RewardConfig& config, std::span<const DamageRecord> ledger, int num_allies, bool won);

struct EnvInfo {
  int n_agents = 0;
  int n_enemies = 0;
  int n_actions = 0;
  int obs_shape = 0;
  int state_shape = 0;
  int episode_limit = 0;

  bool operator==(const EnvInfo&) const = default;
};

/// Vector sizes, computable from the scenario alone.
struct Layout {
  int n_allies = 0;
  int n_enemies = 0;
  int n_actions = 0;
  int unit_types = 0;  // one-hot width
  int ally_shield = 0;
  int enemy_shield = 0;

  explicit Layout(const Scenario& scenario);
  int move_feats() const { return 4; }
  int enemy_feats() const { return 5 + enemy_shield + unit_types; }
  int ally_feats() const { return 5 + ally_shield + unit_types; }
  int own_feats() const { return 1 + ally_shield + unit_types; }
  int obs_size() const { return move_feats() + n_enemies * enemy_feats() + (n_allies - 1) * ally_feats() + own_feats(); }
  int state_ally_feats() const { return 4 + ally_shield + unit_types; }
  int state_enemy_feats() const { return 3 + enemy_shield + unit_types; }
  int state_size() const {
    return n_allies * state_ally_feats() + n_enemies * state_enemy_feats() + n_allies * n_actions;
  }
};

struct StepResult {
  double reward = 0.0;
  bool terminated = false;
  bool battle_won = false;
  bool timed_out = false;
  int episode_steps = 0;
  int dead_allies = 0;
  int dead_enemies = 0;
};

/// Cooperative multi-agent facade over the engine: one agent per allied
/// unit, shared reward, masked discrete actions.
class Environment {
 public:
  explicit Environment(std::shared_ptr<const Scenario> scenario, std::uint64_t seed = 0);

  /// Starts a new episode. Without an argument the seed advances by one per
  /// episode from the constructor seed.
  void reset();
  void reset(std::uint64_t seed);

  /// Throws WrongActionCount, UnavailableAction or EpisodeOver; the state is
  /// left untouched when it throws.
  StepResult step(std::span<const int> actions);

  std::vector<std::vector<float>> get_obs() const;
  std::vector<float> get_obs_agent(int agent) const;
  std::vector<float> get_state() const;
  std::vector<std::vector<int>> get_avail_actions() const;
  std::vector<int> get_avail_agent_actions(int agent) const;
  EnvInfo get_env_info() const;

  const Scenario& scenario() const { return *scenario_; }
  const GameState& game() const { return state_; }
  const Layout& layout() const { return layout_; }
  const RewardConfig& reward_config() const { return reward_; }
  std::uint64_t episode_seed() const { return episode_seed_; }
  bool episode_over() const { return terminated_; }
  int episode_steps() const { return episode_steps_; }

  /// Called with the state after every game step (used for replays).
  void set_observer(GameStepObserver observer) { observer_ = std::move(observer); }

  /// Translates an action id into an engine command for the agent.
  Command decode_action(int agent, int action) const;

 private:
  /// Optional shield fraction and type one-hot.
  void append_unit_feats(std::vector<float>& out, const Unit& u, bool with_shield) const;

  std::shared_ptr<const Scenario> scenario_;
  Layout layout_;
  RewardConfig reward_;
  GameState state_;
  std::uint64_t base_seed_;
  std::uint64_t episode_seed_ = 0;
  int episodes_started_ = 0;
  int episode_steps_ = 0;
  bool terminated_ = false;
  std::vector<int> last_actions_;
  GameStepObserver observer_;
};

}  // namespace smaclite
