#include <cstdint>
#include <iostream>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "smaclite/bench.hpp"
#include "smaclite/error.hpp"
#include "smaclite/scenario.hpp"

namespace {

std::shared_ptr<const smaclite::Scenario> load(const std::string& name_or_path) {
  return std::make_shared<const smaclite::Scenario>(smaclite::Catalog().load_scenario(name_or_path));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"smaclite: micro-combat environment driver"};
  app.require_subcommand(1);

  std::string scenario;
  std::uint64_t seed = 0;

  auto* bench = app.add_subcommand("bench", "Random-policy rollouts with timing and memory statistics");
  int episodes = 20;
  int parallel = 1;
  bool json = false;
  bench->add_option("--scenario", scenario, "Shipped scenario name or path to a scenario file")->required();
  bench->add_option("--episodes", episodes, "Number of episodes")->check(CLI::PositiveNumber);
  bench->add_option("--seed", seed, "Base seed");
  bench->add_option("--parallel", parallel, "Worker threads")->check(CLI::PositiveNumber);
  bench->add_flag("--json", json, "Print the report as JSON");

  auto* replay = app.add_subcommand("replay", "Play one random episode and write its replay");
  std::string out_file;
  replay->add_option("--scenario", scenario, "Shipped scenario name or path to a scenario file")->required();
  replay->add_option("--seed", seed, "Episode seed");
  replay->add_option("--out", out_file, "Output file")->required();

  auto* render = app.add_subcommand("render", "Render replay frames as SVG");
  std::string replay_path;
  std::string out_dir;
  int every_n = 8;
  render->add_option("--replay", replay_path, "Replay file")->required();
  render->add_option("--out", out_dir, "Output directory")->required();
  render->add_option("--every-n", every_n, "Render every n-th game step")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*bench) {
      const smaclite::BenchReport report = smaclite::run_random(load(scenario), episodes, seed, parallel);
      std::cout << (json ? smaclite::report_json(report) + "\n" : smaclite::format_report_table(report));
    } else if (*replay) {
      const smaclite::EpisodeSummary s = smaclite::dump_replay(load(scenario), seed, out_file);
      std::cout << "wrote " << out_file << " (" << s.steps << " env steps, return " << s.episode_return
                << (s.won ? ", won" : "") << ")\n";
    } else if (*render) {
      const int n = smaclite::render_frames(replay_path, out_dir, every_n);
      std::cout << "wrote " << n << " frame" << (n == 1 ? "" : "s") << " to " << out_dir << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
