#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "support.hpp"

using namespace smaclite;
using testing_support::Json;
using testing_support::make_scenario;
using testing_support::place;
using testing_support::scenario_at;
using testing_support::Spot;
using testing_support::shipped;
using testing_support::unit_doc;
using testing_support::kPublishedScenario;
using testing_support::kPublishedUnit;

namespace {

GameState battle(const std::vector<Spot>& spots, const std::map<std::string, std::string>& custom,
                 const Json& extra = Json::object(), std::uint64_t seed = 1) {
  return reset(scenario_at(spots, custom, extra), seed);
}

std::vector<Command> all(const GameState& s, Command c) { return std::vector<Command>(s.num_allies(), c); }

}  // namespace

TEST_CASE("reset is deterministic and so is stepping") {
  for (const char* name : {"3s5z", "MMM2", "bane_vs_bane"}) {
    const auto scenario = shipped(name);
    GameState a = reset(scenario, 42);
    GameState b = reset(scenario, 42);
    CHECK(a == b);
    for (int i = 0; i < 10; ++i) {
      env_step(a, all(a, Command::move({16, 16})));
      env_step(b, all(b, Command::move({16, 16})));
    }
    CHECK(a == b);
  }
}

TEST_CASE("published example resets with the standing enemy order") {
  const GameState s = reset(make_scenario(Json::parse(kPublishedScenario), {{"example_custom_unit", kPublishedUnit}}), 3);
  REQUIRE(s.units.size() == 21);
  int attack_moving = 0;
  for (const Unit& u : s.units) {
    CHECK(u.health == 45);
    CHECK(u.cooldown == 0);
    CHECK(u.alive);
    if (u.faction == Faction::Enemy) {
      CHECK(u.command == Command::attack_move({9, 16}));
      ++attack_moving;
    } else {
      CHECK(u.command == Command::stop());
    }
  }
  CHECK(attack_moving == 11);
  CHECK(s.world.discs().size() == 21);
}

TEST_CASE("volleys hit shields first, then armor") {
  const std::map<std::string, std::string> custom{
      {"gunner", unit_doc({{"damage", 6}, {"bonuses", {{"ARMORED", 20}}}, {"cooldown", 0.5}})},
      {"cannon", unit_doc({{"damage", 10}})},
      {"twin", unit_doc({{"damage", 6}, {"attacks", 2}})},
      {"tank", unit_doc({{"armor", 1}, {"shield", 10}, {"attributes", {"ARMORED"}}})},
      {"soft", unit_doc({{"hp", 10}})},
  };
  GameState s = battle({{"gunner", Faction::Ally, 4, 4},
                        {"cannon", Faction::Ally, 8, 4},
                        {"twin", Faction::Ally, 12, 4},
                        {"tank", Faction::Enemy, 4, 8},
                        {"tank", Faction::Enemy, 8, 8},
                        {"soft", Faction::Enemy, 12, 8}},
                       custom);
  s.step_counter = 17;

  SUBCASE("bonus damage against an armored target") {
    Unit& t = s.units[3];
    t.shield = 0;
    apply_attack(s, s.units[0], t);
    CHECK(t.health == 75);
    CHECK(s.units[0].cooldown == 0.5);
    CHECK(t.last_damaged_at == 17);
    CHECK(t.attacked_by == std::vector<int>{0});
    REQUIRE(s.ledger.size() == 1);
    CHECK(s.ledger[0] == DamageRecord{17, 0, 3, 0.0, 25.0, false});
  }
  SUBCASE("shield soaks part, armor applies to the rest") {
    Unit& t = s.units[4];
    t.shield = 4;
    apply_attack(s, s.units[1], t);
    CHECK(t.shield == 0);
    CHECK(t.health == 95);
    CHECK(s.ledger.back() == DamageRecord{17, 1, 4, 4.0, 5.0, false});
  }
  SUBCASE("armor is skipped while the shield absorbs everything") {
    Unit& t = s.units[4];
    t.shield = 10;
    apply_attack(s, s.units[1], t);
    CHECK(t.shield == 0);
    CHECK(t.health == 100);
  }
  SUBCASE("multi-hit volley stops at the kill and records once") {
    Unit& t = s.units[5];
    apply_attack(s, s.units[2], t);
    CHECK_FALSE(t.alive);
    CHECK(t.health == 0);
    CHECK_FALSE(s.world.contains(5));
    REQUIRE(s.ledger.size() == 1);
    CHECK(s.ledger[0] == DamageRecord{17, 2, 5, 0.0, 10.0, true});
    apply_attack(s, s.units[2], t);
    CHECK(s.ledger.size() == 1);
  }
}

TEST_CASE("mutual targeting with the published unit lands exactly one hit each") {
  GameState s = battle({{"example_custom_unit", Faction::Ally, 10, 16}, {"example_custom_unit", Faction::Enemy, 15, 16}},
                       {{"example_custom_unit", kPublishedUnit}});
  s.units[1].command = Command::attack(0);
  const StepEvents ev = env_step(s, std::vector<Command>{Command::attack(1)});
  CHECK(s.units[0].health == 39);
  CHECK(s.units[1].health == 39);
  CHECK(ev.ledger.size() == 2);
  // Hit on the first game step, then seven decrements of 1/16 s.
  CHECK(s.units[0].cooldown == 3.0 - 7.0 / 16.0);
  CHECK(s.units[0].position == Vec2{10, 16});
  CHECK(s.units[1].position == Vec2{15, 16});
}

TEST_CASE("healing follows the rate and energy limits") {
  const std::map<std::string, std::string> custom{
      {"medic", unit_doc({{"combat_type", "HEALING"}, {"energy", 200}, {"initial_energy", 200}, {"attack_range", 4}})},
      {"grunt", unit_doc({})},
  };
  GameState s = battle({{"medic", Faction::Ally, 10, 16}, {"grunt", Faction::Ally, 12, 16}, {"grunt", Faction::Enemy, 28, 28}},
                       custom);
  Unit& medic = s.units[0];
  Unit& grunt = s.units[1];
  grunt.health = 80;
  CHECK(apply_heal(medic, grunt) == doctest::Approx(0.5625).epsilon(1e-15));
  CHECK(grunt.health == 80.5625);
  CHECK(medic.energy == 200 - 0.1875);

  medic.energy = 0.1;
  CHECK(apply_heal(medic, grunt) == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(medic.energy == doctest::Approx(0.0));

  medic.energy = 0;
  CHECK(apply_heal(medic, grunt) == 0);

  medic.energy = 200;
  grunt.health = 100;
  CHECK(apply_heal(medic, grunt) == 0);
  CHECK(grunt.health == 100);

  SUBCASE("through the game loop, healing never reaches the ledger") {
    grunt.health = 50;
    s.units[2].command = Command::stop();
    env_step(s, std::vector<Command>{Command::attack(1), Command::stop()});
    CHECK(grunt.health == doctest::Approx(50 + 8 * 0.5625));
    CHECK(s.ledger.empty());
  }
}

TEST_CASE("kamikaze hits inside its radius and consumes the attacker") {
  const std::map<std::string, std::string> custom{
      {"bomb", unit_doc({{"hp", 30}, {"damage", 5}, {"targeter", "KAMIKAZE"}, {"targeter_kwargs", {{"radius", 2}}}})},
      {"dummy", unit_doc({})},
  };
  const double eps = 1e-6;
  // Boundary distances 0.5, 2 - eps and 2 + eps from the blast centre.
  GameState s = battle({{"bomb", Faction::Ally, 10, 16},
                        {"dummy", Faction::Enemy, 11, 16},
                        {"dummy", Faction::Enemy, 10, 18.5 - eps},
                        {"dummy", Faction::Enemy, 10, 13.5 - eps}},
                       custom);
  s.units[0].target = 1;
  execute_targeter(s, s.units[0]);
  CHECK(s.units[1].health == 95);
  CHECK(s.units[2].health == 95);
  CHECK(s.units[3].health == 100);
  CHECK_FALSE(s.units[0].alive);
  CHECK_FALSE(s.world.contains(0));
  REQUIRE(s.ledger.size() == 3);
  CHECK(s.ledger.back() == DamageRecord{0, 0, 0, 0.0, 30.0, true});

  SUBCASE("three adjacent enemies all take damage on the step it attacks") {
    GameState g = battle({{"bomb", Faction::Ally, 10, 16},
                          {"dummy", Faction::Enemy, 11, 16},
                          {"dummy", Faction::Enemy, 10, 17},
                          {"dummy", Faction::Enemy, 9, 16}},
                         custom);
    for (int i = 1; i <= 3; ++i) g.units[i].command = Command::stop();
    g.units[0].command = Command::attack(1);
    game_step(g);
    CHECK_FALSE(g.units[0].alive);
    for (int i = 1; i <= 3; ++i) CHECK(g.units[i].health == 95);
  }
}

TEST_CASE("laser beam covers a box across the firing line") {
  const std::map<std::string, std::string> custom{
      {"beam", unit_doc({{"damage", 10},
                         {"attack_range", 7},
                         {"targeter", "LASER_BEAM"},
                         {"targeter_kwargs", {{"width", 3}, {"height", 0.5}}}})},
      {"dummy", unit_doc({})},
  };
  GameState s = battle({{"beam", Faction::Ally, 10, 16},
                        {"dummy", Faction::Enemy, 16, 16},
                        {"dummy", Faction::Enemy, 16, 17.9},   // across 1.9: reaches the 1.5 half-width
                        {"dummy", Faction::Enemy, 16, 13.9},   // across 2.1: misses
                        {"dummy", Faction::Enemy, 17.2, 16}},  // along 1.2: misses the 0.25 half-height
                       custom);
  s.units[0].target = 1;
  execute_targeter(s, s.units[0]);
  CHECK(s.units[1].health == 90);
  CHECK(s.units[2].health == 90);
  CHECK(s.units[3].health == 100);
  CHECK(s.units[4].health == 100);
  CHECK(s.units[0].alive);

  SUBCASE("alone, only the target is hit") {
    GameState g = battle({{"beam", Faction::Ally, 10, 16}, {"dummy", Faction::Enemy, 16, 16}}, custom);
    g.units[0].target = 1;
    execute_targeter(g, g.units[0]);
    CHECK(g.ledger.size() == 1);
    CHECK(g.units[1].health == 90);
  }
}

TEST_CASE("regeneration respects delays and caps") {
  const std::map<std::string, std::string> custom{
      {"guard", unit_doc({{"shield", 20}, {"hp", 45}, {"hp_regen", 0.27}})},
      {"caster", unit_doc({{"energy", 50}, {"initial_energy", 10}})},
      {"far", unit_doc({})},
  };
  GameState s = battle({{"guard", Faction::Ally, 6, 6}, {"caster", Faction::Ally, 9, 6}, {"far", Faction::Enemy, 26, 26}},
                       custom, Json{{"ally_has_shields", true}});
  Unit& guard = s.units[0];
  s.units[2].command = Command::stop();
  guard.shield = 15;
  guard.last_damaged_at = 0;
  guard.health = 44;

  game_step(s);
  CHECK(guard.health == 44 + 0.27 / 16);
  CHECK(s.units[1].energy == 10 + 0.5625 / 16);

  guard.health = 44.999;
  game_step(s);
  CHECK(guard.health == 45);

  // 160 game steps of calm are needed before the shield recovers.
  for (int i = 2; i < 160; ++i) game_step(s);
  CHECK(guard.shield == 15);
  game_step(s);
  CHECK(guard.shield == 15 + 2.0 / 16);
  for (int i = 0; i < 7; ++i) game_step(s);
  CHECK(guard.shield == 16);

  guard.shield = 19.95;
  game_step(s);
  CHECK(guard.shield == 20);
  s.units[1].energy = 49.99;
  game_step(s);
  CHECK(s.units[1].energy == 50);
}

TEST_CASE("attack on a target killed earlier in the pass fizzles") {
  const std::map<std::string, std::string> custom{
      {"gun", unit_doc({{"damage", 50}, {"attack_range", 3}, {"cooldown", 2}})},
      {"dummy", unit_doc({{"hp", 10}})},
  };
  GameState s = battle({{"gun", Faction::Ally, 10, 16}, {"gun", Faction::Ally, 10, 18}, {"dummy", Faction::Enemy, 12, 17}},
                       custom);
  for (int id : {0, 1}) {
    s.units[id].command = Command::attack(2);
    s.units[id].target = 2;
    s.units[id].attacking_declared = true;
  }
  s.units[2].command = Command::stop();
  phase_execute(s);
  CHECK_FALSE(s.units[2].alive);
  REQUIRE(s.ledger.size() == 1);
  const int shooter = s.ledger[0].attacker;
  const int other = 1 - shooter;
  CHECK(s.units[shooter].cooldown == 2);
  CHECK(s.units[other].cooldown == 0);
}

TEST_CASE("target clean-up per command") {
  const std::map<std::string, std::string> custom{{"gun", unit_doc({{"attack_range", 2}, {"minimum_scan_range", 3}})}};
  GameState s = battle({{"gun", Faction::Ally, 10, 16}, {"gun", Faction::Enemy, 20, 16}, {"gun", Faction::Enemy, 12, 16}},
                       custom);
  Unit& u = s.units[0];
  for (int id : {1, 2}) s.units[id].command = Command::stop();

  u.command = Command::attack_move({30, 16});
  u.target = 1;
  phase_target_cleanup(s);
  CHECK(u.target == -1);  // out of range

  u.target = 1;
  u.attacked_by_last = {1};
  phase_target_cleanup(s);
  CHECK(u.target == 1);  // it hit us last step

  u.target = 2;
  u.attacked_by_last.clear();
  phase_target_cleanup(s);
  CHECK(u.target == 2);

  s.units[2].health = 1;
  u.type.damage = 5;
  apply_attack(s, u, s.units[2]);
  REQUIRE_FALSE(s.units[2].alive);
  phase_target_cleanup(s);
  CHECK(u.target == -1);  // dead

  u.target = 1;
  u.command = Command::move({5, 5});
  phase_target_cleanup(s);
  CHECK(u.target == -1);

  u.command = Command::attack(1);
  phase_target_cleanup(s);
  CHECK(u.target == 1);
}

TEST_CASE("attack-movers switch to a healer entering scan range") {
  GameState s = battle({{"MARINE", Faction::Ally, 10, 16},
                        {"MARAUDER", Faction::Enemy, 14, 16},
                        {"MEDIVAC", Faction::Enemy, 10, 26}},
                       {});
  for (int id : {1, 2}) s.units[id].command = Command::stop();
  Unit& marine = s.units[0];
  marine.command = Command::attack_move({30, 16});
  marine.target = 1;
  phase_target_cleanup(s);
  phase_velocity_preparation(s);
  CHECK(marine.target == 1);

  // Gap of 6 - 0.375 - 0.75 to the medivac: inside scan and attack range.
  place(s, 2, {10, 22});
  phase_target_cleanup(s);
  phase_velocity_preparation(s);
  CHECK(marine.target == 2);
  CHECK(marine.attacking_declared);
  CHECK(marine.preferred_velocity == Vec2{});
}

TEST_CASE("attack declared exactly at the range boundary") {
  const std::map<std::string, std::string> custom{{"gun", unit_doc({{"attack_range", 3}, {"speed", 2}})}};
  GameState s = battle({{"gun", Faction::Ally, 10, 16}, {"gun", Faction::Enemy, 14, 16}}, custom);
  Unit& u = s.units[0];
  u.command = Command::attack(1);
  s.units[1].command = Command::stop();
  phase_target_cleanup(s);
  phase_velocity_preparation(s);
  CHECK(u.attacking_declared);
  CHECK(u.preferred_velocity == Vec2{});

  place(s, 1, {std::nextafter(14.0, 20.0), 16});
  u.attacking_declared = false;
  phase_velocity_preparation(s);
  CHECK_FALSE(u.attacking_declared);
  CHECK(u.preferred_velocity.x == doctest::Approx(2.0));
}

TEST_CASE("idle healer heads for the attack point at the slowest ally's pace") {
  const std::map<std::string, std::string> custom{
      {"medic", unit_doc({{"combat_type", "HEALING"}, {"energy", 50}, {"speed", 3.5}, {"minimum_scan_range", 5}})},
      {"slow", unit_doc({{"speed", 2}})},
      {"wall", unit_doc({{"speed", 0}})},
  };
  GameState s = battle({{"medic", Faction::Ally, 10, 10},
                        {"slow", Faction::Ally, 12, 10},
                        {"wall", Faction::Ally, 10, 12},
                        {"wall", Faction::Enemy, 28, 28}},
                       custom);
  s.units[3].command = Command::stop();
  Unit& medic = s.units[0];
  medic.command = Command::attack_move({10, 20});
  phase_target_cleanup(s);
  phase_velocity_preparation(s);
  CHECK(medic.target == -1);
  CHECK(medic.effective_max_speed == 2);
  CHECK(medic.preferred_velocity.x == doctest::Approx(0.0));
  CHECK(medic.preferred_velocity.y == doctest::Approx(2.0));

  SUBCASE("a wounded ally becomes the target") {
    s.units[1].health = 60;
    phase_target_cleanup(s);
    phase_velocity_preparation(s);
    CHECK(medic.target == 1);
  }
  SUBCASE("without a mobile ally in scan range the healer keeps its speed") {
    place(s, 1, {25, 10});
    phase_velocity_preparation(s);
    CHECK(medic.effective_max_speed == 3.5);
  }
}

TEST_CASE("a unit busy attacking holds still while others steer around it") {
  const std::map<std::string, std::string> custom{
      {"gun", unit_doc({{"attack_range", 1}, {"speed", 3}})},
      {"runner", unit_doc({{"speed", 4}})},
  };
  GameState s = battle({{"gun", Faction::Ally, 10, 16},
                        {"runner", Faction::Ally, 7, 16},
                        {"gun", Faction::Enemy, 11.5, 16}},
                       custom);
  s.units[2].command = Command::stop();
  for (int k = 0; k < 24; ++k) {
    env_step(s, std::vector<Command>{Command::attack(2), Command::move({20, 16})});
    CHECK(s.units[0].velocity == Vec2{});
    CHECK(s.units[0].position == Vec2{10, 16});
  }
  CHECK(distance(s.units[0].position, s.units[1].position) >= 1.0 - 1e-9);
}

TEST_CASE("a lone mover keeps its preferred velocity") {
  const std::map<std::string, std::string> custom{{"runner", unit_doc({{"speed", 3}})}};
  GameState s = battle({{"runner", Faction::Ally, 10, 10}, {"runner", Faction::Enemy, 28, 28}}, custom);
  s.units[1].command = Command::stop();
  game_step(s);
  env_step(s, std::vector<Command>{Command::move({10, 20})});
  CHECK(s.units[0].velocity.x == doctest::Approx(0.0));
  CHECK(s.units[0].velocity.y == doctest::Approx(3.0));
  CHECK(s.units[0].position.y == doctest::Approx(10 + 3.0 * 8 / 16));
}

TEST_CASE("wrong command count is rejected") {
  GameState s = reset(shipped("3m"), 1);
  CHECK_THROWS_AS(env_step(s, std::vector<Command>(2)), Error);
}

TEST_CASE("random battles keep every invariant") {
  for (std::string name : {"MMM2", "3s5z", "bane_vs_bane", "2s_vs_1sc", "corridor"}) {
    CAPTURE(name);
    const auto scenario = shipped(name);
    GameState s = reset(scenario, 9);
    std::mt19937_64 gen(5);
    std::vector<Unit> dead_snapshot(s.units.size());
    std::vector<bool> was_dead(s.units.size(), false);
    std::string broken;
    const GameStepObserver check = [&](const GameState& g) {
      for (const Unit& u : g.units) {
        if (u.health > u.type.hp || u.health < 0) broken = "health";
        if (u.shield > u.max_shield || u.shield < 0 || u.max_shield > u.type.shield) broken = "shield";
        if (u.energy < 0 || u.energy > std::max(u.type.energy, u.type.initial_energy)) broken = "energy";
        if (u.alive && u.faction == Faction::Enemy && u.command != Command::attack_move(g.scenario->attack_point)) broken = "command";
        if (!u.alive) {
          if (g.world.contains(u.id) || u.velocity != Vec2{} || u.health != 0) broken = "dead state";
          if (was_dead[u.id] && u.position != dead_snapshot[u.id].position) broken = "dead moved";
          if (!was_dead[u.id]) {
            was_dead[u.id] = true;
            dead_snapshot[u.id] = u;
          }
        }
      }
    };
    for (int step = 0; step < 60 && s.team_alive(Faction::Ally) && s.team_alive(Faction::Enemy); ++step) {
      std::vector<Command> cmds;
      for (int i = 0; i < s.num_allies(); ++i) {
        const int pick = static_cast<int>(gen() % 4);
        if (!s.ally(i).alive) {
          cmds.push_back(Command::noop());
        } else if (pick == 0) {
          cmds.push_back(Command::stop());
        } else if (pick == 1) {
          cmds.push_back(Command::move(s.ally(i).position + Vec2{2, 0}));
        } else {
          std::vector<int> live;
          for (int e = 0; e < s.num_enemies(); ++e) {
            if (s.enemy(e).alive) live.push_back(s.enemy(e).id);
          }
          cmds.push_back(Command::attack(live[gen() % live.size()]));
        }
      }
      env_step(s, cmds, check);
    }
    CHECK(broken == "");
  }
}

TEST_CASE("ledger accounts for every point of damage") {
  GameState s = reset(shipped("3m"), 4);
  for (int step = 0; step < 40; ++step) {
    std::vector<double> before;
    for (const Unit& u : s.units) before.push_back(u.health + u.shield);
    std::vector<Command> cmds;
    for (int i = 0; i < s.num_allies(); ++i) {
      cmds.push_back(s.ally(i).alive ? Command::attack_move({24, 16}) : Command::noop());
    }
    // Allies may not attack-move through the env API, but the engine allows it.
    const StepEvents ev = env_step(s, cmds);
    double lost = 0;
    for (const Unit& u : s.units) lost += before[u.id] - (u.health + u.shield);
    double recorded = 0;
    for (const DamageRecord& r : ev.ledger) recorded += r.health_damage + r.shield_damage;
    CHECK(recorded == doctest::Approx(lost).epsilon(1e-12));
  }
}
