#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "doctest.h"
#include "smaclite/bench.hpp"
#include "smaclite/replay.hpp"
#include "support.hpp"

using namespace smaclite;
using testing_support::Json;
using testing_support::scenario_at;
using testing_support::shipped;
using testing_support::unit_doc;

namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / ("smaclite_bench_" + std::to_string(::getpid()))) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvariantViolation;
}

}  // namespace

TEST_CASE("random rollouts are reproducible and independent of worker count") {
  const auto scenario = shipped("3m");
  const BenchReport a = run_random(scenario, 6, 99);
  const BenchReport b = run_random(scenario, 6, 99);
  const BenchReport c = run_random(scenario, 6, 99, 3);
  CHECK(a.per_episode == b.per_episode);
  CHECK(a.per_episode == c.per_episode);
  CHECK(a.total_steps == c.total_steps);
  CHECK(c.parallel == 3);

  REQUIRE(a.per_episode.size() == 6);
  long long steps = 0;
  double sum = 0;
  double best = -1;
  int wins = 0;
  for (const auto& e : a.per_episode) {
    steps += e.steps;
    sum += e.episode_return;
    best = std::max(best, e.episode_return);
    wins += e.won ? 1 : 0;
  }
  CHECK(a.total_steps == steps);
  CHECK(a.mean_return == doctest::Approx(sum / 6));
  CHECK(a.max_return == best);
  CHECK(a.win_rate == doctest::Approx(wins / 6.0));
  CHECK(a.mean_step_seconds > 0);
  CHECK(a.median_step_seconds <= a.p95_step_seconds);
  CHECK(a.peak_rss_mb > 0);

  const BenchReport other = run_random(scenario, 6, 100);
  CHECK(other.per_episode != a.per_episode);

  CHECK(code_of([&] { run_random(scenario, 0, 1); }) == ErrorCode::InvariantViolation);
}

TEST_CASE("report formats carry the numbers") {
  const BenchReport r = run_random(shipped("3m"), 2, 5);
  const Json j = Json::parse(report_json(r));
  CHECK(j["scenario"] == "3m");
  CHECK(j["episodes"] == 2);
  CHECK(j["seed"] == 5);
  CHECK(j["returns"].size() == 2);
  CHECK(j["total_steps"] == r.total_steps);
  CHECK(format_report_table(r).find("3m") != std::string::npos);
}

TEST_CASE("replays are reproducible and re-simulate exactly") {
  TempDir tmp;
  const auto scenario = shipped("3s5z");
  const EpisodeSummary first = dump_replay(scenario, 7, tmp.path / "a.jsonl");
  const EpisodeSummary second = dump_replay(scenario, 7, tmp.path / "b.jsonl");
  CHECK(first == second);
  const std::string text = slurp(tmp.path / "a.jsonl");
  CHECK(text == slurp(tmp.path / "b.jsonl"));

  std::istringstream in(text);
  const Replay replay = parse_replay(in);
  REQUIRE_FALSE(replay.actions.empty());
  CHECK(replay.header.scenario == "3s5z");
  CHECK(replay.steps.size() == 1 + 8 * replay.actions.size());
  CHECK(int(replay.actions.size()) == first.steps);

  // Drive a fresh environment with the recorded actions only.
  std::ostringstream again;
  Environment env(scenario, replay.header.seed);
  again << replay_header_line(env.game(), replay.header.seed) << '\n' << replay_step_line(env.game()) << '\n';
  env.set_observer([&again](const GameState& s) { again << replay_step_line(s) << '\n'; });
  for (const ReplayActions& a : replay.actions) {
    again << replay_actions_line(a.env_step, a.actions) << '\n';
    env.step(a.actions);
  }
  CHECK(again.str() == text);

  dump_replay(scenario, 8, tmp.path / "c.jsonl");
  CHECK(slurp(tmp.path / "c.jsonl") != text);

  CHECK(code_of([&] { dump_replay(scenario, 7, tmp.path / "missing" / "dir" / "x.jsonl"); }) == ErrorCode::Io);
}

TEST_CASE("replay parsing rejects garbage") {
  std::istringstream bad("{\"kind\":\"header\"\n");
  CHECK(code_of([&] { parse_replay(bad); }) == ErrorCode::MalformedReplay);
  std::istringstream empty("");
  const Replay r = parse_replay(empty);
  CHECK(r.steps.empty());
}

TEST_CASE("frame rendering") {
  TempDir tmp;
  SUBCASE("empty replay gives no frames") {
    std::ofstream(tmp.path / "empty.jsonl").close();
    CHECK(render_frames(tmp.path / "empty.jsonl", tmp.path / "frames", 8) == 0);
    CHECK_FALSE(fs::exists(tmp.path / "frames"));
  }
  SUBCASE("unit geometry and sampling") {
    const std::map<std::string, std::string> custom{
        {"pawn", unit_doc({{"damage", 5}, {"speed", 2}})},
        {"target", unit_doc({{"hp", 10}, {"speed", 1}})},
    };
    const auto scenario = scenario_at({{"pawn", Faction::Ally, 16, 16}, {"target", Faction::Enemy, 28, 4}}, custom,
                                      Json{{"episode_limit", 5}});
    const EpisodeSummary ep = dump_replay(scenario, 1, tmp.path / "r.jsonl");
    const int frames = render_frames(tmp.path / "r.jsonl", tmp.path / "frames", 8);
    CHECK(frames == ep.steps + 1);
    const std::string svg = slurp(tmp.path / "frames" / "frame_000000.svg");
    CHECK(svg.find("viewBox=\"0 0 32 32\"") != std::string::npos);
    // Centre of the map, radius 1/64 of its width.
    CHECK(svg.find("<circle cx=\"16\" cy=\"16\" r=\"0.5\"") != std::string::npos);
    CHECK(fs::exists(tmp.path / "frames" / ("frame_" + std::string(6 - std::to_string(8 * ep.steps).size(), '0') +
                                            std::to_string(8 * ep.steps) + ".svg")));
    CHECK(render_frames(tmp.path / "r.jsonl", tmp.path / "all", 1) == 8 * ep.steps + 1);
  }
  CHECK(code_of([&] { render_frames(tmp.path / "nope.jsonl", tmp.path / "f", 8); }) == ErrorCode::Io);
}
