#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "smaclite/env.hpp"

namespace smaclite {

struct EpisodeSummary {
  double episode_return = 0.0;
  bool won = false;
  int steps = 0;

  bool operator==(const EpisodeSummary&) const = default;
};

struct BenchReport {
  std::string scenario;
  int episodes = 0;
  std::uint64_t seed = 0;
  int parallel = 1;
  long long total_steps = 0;
  double mean_step_seconds = 0.0;
  double median_step_seconds = 0.0;
  double p95_step_seconds = 0.0;
  double peak_rss_mb = 0.0;
  double mean_return = 0.0;
  double max_return = 0.0;
  double win_rate = 0.0;
  std::vector<EpisodeSummary> per_episode;
};

/// Uniform choice among the available actions of every agent.
class RandomPolicy {
 public:
  explicit RandomPolicy(std::uint64_t seed) : rng_(seed) {}
  std::vector<int> act(const Environment& env);

 private:
  Rng rng_;
};

/// Seed used by the environment (first) and the policy (second) in episode i.
std::pair<std::uint64_t, std::uint64_t> episode_seeds(std::uint64_t seed, int episode);

/// Plays random episodes and times Environment::step only. The trajectories
/// depend on (scenario, seed) alone, not on `parallel`.
BenchReport run_random(std::shared_ptr<const Scenario> scenario, int episodes, std::uint64_t seed, int parallel = 1);

/// Plays one random episode and writes its replay. Returns the episode summary.
EpisodeSummary dump_replay(std::shared_ptr<const Scenario> scenario, std::uint64_t seed,
                           const std::filesystem::path& out_path);

/// Writes frame_<step>.svg for every game step whose counter is a multiple
/// of every_n. Returns the number of files written.
int render_frames(const std::filesystem::path& replay_path, const std::filesystem::path& out_dir, int every_n);

std::string format_report_table(const BenchReport& report);
std::string report_json(const BenchReport& report);

/// Peak resident set size of this process in MiB, or 0 if unknown.
double peak_rss_mb();

}  // namespace smaclite
