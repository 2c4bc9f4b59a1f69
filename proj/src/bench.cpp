#include "smaclite/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <thread>

#include "json_util.hpp"
#include "smaclite/error.hpp"
#include "smaclite/replay.hpp"

namespace smaclite {

namespace {

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct WorkerResult {
  std::vector<EpisodeSummary> episodes;  // indexed by episode
  std::vector<double> step_seconds;
  double peak_rss = 0.0;
};

double percentile(std::vector<double> values, double q) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(pos);
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

}  // namespace

std::vector<int> RandomPolicy::act(const Environment& env) {
  std::vector<int> actions;
  const int n = env.layout().n_allies;
  actions.reserve(n);
  for (int i = 0; i < n; ++i) {
    const std::vector<int> avail = env.get_avail_agent_actions(i);
    std::vector<int> choices;
    for (int a = 0; a < static_cast<int>(avail.size()); ++a) {
      if (avail[a] != 0) choices.push_back(a);
    }
    actions.push_back(choices[static_cast<std::size_t>(rng_.below(choices.size()))]);
  }
  return actions;
}

std::pair<std::uint64_t, std::uint64_t> episode_seeds(std::uint64_t seed, int episode) {
  const std::uint64_t env_seed = seed + static_cast<std::uint64_t>(episode);
  return {env_seed, mix(env_seed ^ 0x5eed5eed5eed5eedULL)};
}

BenchReport run_random(std::shared_ptr<const Scenario> scenario, int episodes, std::uint64_t seed, int parallel) {
  if (episodes < 1) throw Error(ErrorCode::InvariantViolation, "episodes must be >= 1");
  parallel = std::clamp(parallel, 1, episodes);

  std::vector<WorkerResult> results(parallel);
  auto worker = [&](int w) {
    WorkerResult& out = results[w];
    Environment env(scenario, seed);
    for (int e = w; e < episodes; e += parallel) {
      const auto [env_seed, policy_seed] = episode_seeds(seed, e);
      env.reset(env_seed);
      RandomPolicy policy(policy_seed);
      EpisodeSummary summary;
      while (!env.episode_over()) {
        const std::vector<int> actions = policy.act(env);
        const auto t0 = std::chrono::steady_clock::now();
        const StepResult r = env.step(actions);
        const auto t1 = std::chrono::steady_clock::now();
        out.step_seconds.push_back(std::chrono::duration<double>(t1 - t0).count());
        summary.episode_return += r.reward;
        summary.won = r.battle_won;
        summary.steps = r.episode_steps;
      }
      out.episodes.push_back(summary);
      out.peak_rss = std::max(out.peak_rss, peak_rss_mb());
    }
  };

  if (parallel == 1) {
    worker(0);
  } else {
    std::vector<std::thread> threads;
    for (int w = 0; w < parallel; ++w) threads.emplace_back(worker, w);
    for (auto& t : threads) t.join();
  }

  BenchReport report;
  report.scenario = scenario->name;
  report.episodes = episodes;
  report.seed = seed;
  report.parallel = parallel;
  report.per_episode.resize(episodes);
  std::vector<double> all_steps;
  for (int w = 0; w < parallel; ++w) {
    for (std::size_t k = 0; k < results[w].episodes.size(); ++k) {
      report.per_episode[w + static_cast<int>(k) * parallel] = results[w].episodes[k];
    }
    all_steps.insert(all_steps.end(), results[w].step_seconds.begin(), results[w].step_seconds.end());
    report.peak_rss_mb = std::max(report.peak_rss_mb, results[w].peak_rss);
  }
  report.total_steps = static_cast<long long>(all_steps.size());
  report.mean_step_seconds =
      all_steps.empty() ? 0.0 : std::accumulate(all_steps.begin(), all_steps.end(), 0.0) / all_steps.size();
  report.median_step_seconds = percentile(all_steps, 0.5);
  report.p95_step_seconds = percentile(all_steps, 0.95);
  double wins = 0.0;
  report.max_return = report.per_episode.front().episode_return;
  for (const auto& e : report.per_episode) {
    report.mean_return += e.episode_return;
    report.max_return = std::max(report.max_return, e.episode_return);
    wins += e.won ? 1.0 : 0.0;
  }
  report.mean_return /= episodes;
  report.win_rate = wins / episodes;
  return report;
}

EpisodeSummary dump_replay(std::shared_ptr<const Scenario> scenario, std::uint64_t seed,
                           const std::filesystem::path& out_path) {
  std::ofstream out(out_path);
  if (!out) throw Error(ErrorCode::Io, "cannot write '" + out_path.string() + "'");

  const auto [env_seed, policy_seed] = episode_seeds(seed, 0);
  Environment env(scenario, env_seed);
  RandomPolicy policy(policy_seed);
  out << replay_header_line(env.game(), env_seed) << '\n';
  out << replay_step_line(env.game()) << '\n';
  env.set_observer([&out](const GameState& s) { out << replay_step_line(s) << '\n'; });

  EpisodeSummary summary;
  while (!env.episode_over()) {
    const std::vector<int> actions = policy.act(env);
    out << replay_actions_line(env.episode_steps(), actions) << '\n';
    const StepResult r = env.step(actions);
    summary.episode_return += r.reward;
    summary.won = r.battle_won;
    summary.steps = r.episode_steps;
  }
  out.flush();
  if (!out) throw Error(ErrorCode::Io, "failed while writing '" + out_path.string() + "'");
  return summary;
}

int render_frames(const std::filesystem::path& replay_path, const std::filesystem::path& out_dir, int every_n) {
  if (every_n < 1) throw Error(ErrorCode::InvariantViolation, "every_n must be >= 1");
  std::ifstream in(replay_path);
  if (!in) throw Error(ErrorCode::Io, "cannot read '" + replay_path.string() + "'");
  const Replay replay = parse_replay(in);
  if (replay.steps.empty()) return 0;

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create '" + out_dir.string() + "': " + ec.message());
  int written = 0;
  for (const ReplayStep& step : replay.steps) {
    if (step.step_counter % every_n != 0) continue;
    char name[32];
    std::snprintf(name, sizeof name, "frame_%06d.svg", step.step_counter);
    std::ofstream f(out_dir / name);
    if (!f) throw Error(ErrorCode::Io, "cannot write '" + (out_dir / name).string() + "'");
    f << render_svg(replay.header, step);
    ++written;
  }
  return written;
}

std::string format_report_table(const BenchReport& r) {
  char buf[1024];
  std::snprintf(buf, sizeof buf,
                "scenario        %s\n"
                "episodes        %d (seed %llu, %d thread%s)\n"
                "env steps       %lld\n"
                "s/step mean     %.6f\n"
                "s/step median   %.6f\n"
                "s/step p95      %.6f\n"
                "peak RSS        %.1f MiB\n"
                "mean return     %.4f\n"
                "max return      %.4f\n"
                "win rate        %.3f\n",
                r.scenario.c_str(), r.episodes, static_cast<unsigned long long>(r.seed), r.parallel,
                r.parallel == 1 ? "" : "s", r.total_steps, r.mean_step_seconds, r.median_step_seconds,
                r.p95_step_seconds, r.peak_rss_mb, r.mean_return, r.max_return, r.win_rate);
  return buf;
}

std::string report_json(const BenchReport& r) {
  detail::Json j;
  j["scenario"] = r.scenario;
  j["episodes"] = r.episodes;
  j["seed"] = r.seed;
  j["parallel"] = r.parallel;
  j["total_steps"] = r.total_steps;
  j["mean_step_seconds"] = r.mean_step_seconds;
  j["median_step_seconds"] = r.median_step_seconds;
  j["p95_step_seconds"] = r.p95_step_seconds;
  j["peak_rss_mb"] = r.peak_rss_mb;
  j["mean_return"] = r.mean_return;
  j["max_return"] = r.max_return;
  j["win_rate"] = r.win_rate;
  j["returns"] = detail::Json::array();
  for (const auto& e : r.per_episode) j["returns"].push_back(e.episode_return);
  return j.dump(2);
}

double peak_rss_mb() {
  std::ifstream status("/proc/self/status");
  std::string line;
  while (std::getline(status, line)) {
    if (line.rfind("VmHWM:", 0) == 0) {
      std::istringstream fields(line.substr(6));
      double kb = 0.0;
      fields >> kb;
      return kb / 1024.0;
    }
  }
  return 0.0;
}

}  // namespace smaclite
