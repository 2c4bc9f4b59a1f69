#pragma once

#include <istream>
#include <string>
#include <utility>
#include <vector>

#include "smaclite/engine.hpp"

namespace smaclite {

// Replays are newline-delimited JSON. The first line is a header describing
// the map and the static per-unit attributes; then one "step" line per game
// step and one "actions" line before each environment step.

struct ReplayUnitInfo {
  int id = 0;
  Faction faction = Faction::Ally;
  std::string type_ref;
  double radius = 0.5;
  double max_health = 0.0;
  double max_shield = 0.0;
  Plane plane = Plane::Ground;

  bool operator==(const ReplayUnitInfo&) const = default;
};

struct ReplayHeader {
  std::string scenario;
  int width = 0;
  int height = 0;
  std::uint64_t seed = 0;
  std::vector<Rect> obstacles;
  std::vector<ReplayUnitInfo> units;

  bool operator==(const ReplayHeader&) const = default;
};

struct ReplayUnitState {
  int id = 0;
  double x = 0.0;
  double y = 0.0;
  double health = 0.0;
  double shield = 0.0;
  double energy = 0.0;
  double cooldown = 0.0;
  bool alive = false;

  bool operator==(const ReplayUnitState&) const = default;
};

struct ReplayStep {
  int step_counter = 0;
  std::vector<ReplayUnitState> units;
  std::vector<DamageRecord> ledger;  // entries made during this game step

  bool operator==(const ReplayStep&) const = default;
};

struct ReplayActions {
  int env_step = 0;
  std::vector<int> actions;

  bool operator==(const ReplayActions&) const = default;
};

struct Replay {
  ReplayHeader header;
  std::vector<ReplayStep> steps;
  std::vector<ReplayActions> actions;
};

std::string replay_header_line(const GameState& state, std::uint64_t seed);
std::string replay_step_line(const GameState& state);
std::string replay_actions_line(int env_step, const std::vector<int>& actions);

/// Throws MalformedReplay on anything it cannot parse. An empty stream is a
/// valid replay with no header and no steps.
Replay parse_replay(std::istream& in);

/// One self-contained SVG picture of a game step, in map units with north up.
std::string render_svg(const ReplayHeader& header, const ReplayStep& step);

}  // namespace smaclite
