#include "smaclite/replay.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "json_util.hpp"
#include "smaclite/error.hpp"

namespace smaclite {

using detail::Json;

namespace {

Json rect_json(const Rect& r) { return Json::array({r.xmin, r.ymin, r.xmax, r.ymax}); }

Rect rect_from(const Json& j) {
  if (!j.is_array() || j.size() != 4) throw Error(ErrorCode::MalformedReplay, "obstacle must be [xmin,ymin,xmax,ymax]");
  return Rect{j[0].get<double>(), j[1].get<double>(), j[2].get<double>(), j[3].get<double>()};
}

Json ledger_json(const DamageRecord& r) {
  return Json::array({r.step, r.attacker, r.target, r.shield_damage, r.health_damage, r.killed});
}

DamageRecord ledger_from(const Json& j) {
  if (!j.is_array() || j.size() != 6) throw Error(ErrorCode::MalformedReplay, "bad ledger entry");
  return DamageRecord{j[0].get<int>(), j[1].get<int>(), j[2].get<int>(), j[3].get<double>(), j[4].get<double>(),
                      j[5].get<bool>()};
}

const char* colour_for(Faction f) { return f == Faction::Ally ? "#2b7bd6" : "#d63b2b"; }

}  // namespace

std::string replay_header_line(const GameState& state, std::uint64_t seed) {
  const Scenario& s = *state.scenario;
  Json j;
  j["type"] = "header";
  j["scenario"] = s.name;
  j["width"] = s.width;
  j["height"] = s.height;
  j["seed"] = seed;
  j["obstacles"] = Json::array();
  for (const Rect& r : s.obstacles) j["obstacles"].push_back(rect_json(r));
  j["units"] = Json::array();
  for (const Unit& u : state.units) {
    j["units"].push_back(Json{{"id", u.id},
                              {"faction", std::string(to_string(u.faction))},
                              {"type", u.type_ref},
                              {"radius", u.radius()},
                              {"max_health", u.type.hp},
                              {"max_shield", u.max_shield},
                              {"plane", std::string(to_string(u.type.plane))}});
  }
  return j.dump();
}

std::string replay_step_line(const GameState& state) {
  Json j;
  j["type"] = "step";
  j["step_counter"] = state.step_counter;
  j["units"] = Json::array();
  for (const Unit& u : state.units) {
    j["units"].push_back(Json::array(
        {u.id, u.position.x, u.position.y, u.health, u.shield, u.energy, u.cooldown, u.alive}));
  }
  // Entries stamped with the game step that just ran.
  j["ledger"] = Json::array();
  for (const DamageRecord& r : state.ledger) {
    if (r.step == state.step_counter - 1) j["ledger"].push_back(ledger_json(r));
  }
  return j.dump();
}

std::string replay_actions_line(int env_step, const std::vector<int>& actions) {
  Json j;
  j["type"] = "actions";
  j["env_step"] = env_step;
  j["actions"] = actions;
  return j.dump();
}

Replay parse_replay(std::istream& in) {
  Replay replay;
  std::string line;
  int line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const Json j = Json::parse(line);
      const std::string type = j.at("type").get<std::string>();
      if (type == "header") {
        ReplayHeader& h = replay.header;
        h.scenario = j.at("scenario").get<std::string>();
        h.width = j.at("width").get<int>();
        h.height = j.at("height").get<int>();
        h.seed = j.at("seed").get<std::uint64_t>();
        for (const Json& r : j.at("obstacles")) h.obstacles.push_back(rect_from(r));
        for (const Json& u : j.at("units")) {
          ReplayUnitInfo info;
          info.id = u.at("id").get<int>();
          info.faction = u.at("faction").get<std::string>() == "ALLY" ? Faction::Ally : Faction::Enemy;
          info.type_ref = u.at("type").get<std::string>();
          info.radius = u.at("radius").get<double>();
          info.max_health = u.at("max_health").get<double>();
          info.max_shield = u.at("max_shield").get<double>();
          const std::string plane = u.at("plane").get<std::string>();
          info.plane = plane == "AIR" ? Plane::Air : plane == "COLOSSUS" ? Plane::Colossus : Plane::Ground;
          h.units.push_back(std::move(info));
        }
        have_header = true;
      } else if (type == "step") {
        if (!have_header) throw Error(ErrorCode::MalformedReplay, "step record before header");
        ReplayStep step;
        step.step_counter = j.at("step_counter").get<int>();
        for (const Json& u : j.at("units")) {
          if (!u.is_array() || u.size() != 8) throw Error(ErrorCode::MalformedReplay, "bad unit record");
          step.units.push_back(ReplayUnitState{u[0].get<int>(), u[1].get<double>(), u[2].get<double>(),
                                               u[3].get<double>(), u[4].get<double>(), u[5].get<double>(),
                                               u[6].get<double>(), u[7].get<bool>()});
        }
        for (const Json& r : j.at("ledger")) step.ledger.push_back(ledger_from(r));
        replay.steps.push_back(std::move(step));
      } else if (type == "actions") {
        replay.actions.push_back(ReplayActions{j.at("env_step").get<int>(), j.at("actions").get<std::vector<int>>()});
      } else {
        throw Error(ErrorCode::MalformedReplay, "unknown record type '" + type + "'");
      }
    } catch (const Json::exception& e) {
      throw Error(ErrorCode::MalformedReplay, "line " + std::to_string(line_no) + ": " + e.what());
    } catch (const Error& e) {
      if (e.code() == ErrorCode::MalformedReplay) throw;
      throw Error(ErrorCode::MalformedReplay, "line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return replay;
}

std::string render_svg(const ReplayHeader& header, const ReplayStep& step) {
  std::ostringstream svg;
  svg << std::setprecision(6);
  const double w = header.width;
  const double h = header.height;
  // Flip y so north is up: world (x, y) draws at (x, h - y).
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << w << ' ' << h << "\" width=\"640\" height=\""
      << 640.0 * h / w << "\">\n";
  svg << "<rect x=\"0\" y=\"0\" width=\"" << w << "\" height=\"" << h << "\" fill=\"#f4f1e8\"/>\n";
  for (const Rect& r : header.obstacles) {
    svg << "<rect x=\"" << r.xmin << "\" y=\"" << h - r.ymax << "\" width=\"" << r.width() << "\" height=\""
        << r.height() << "\" fill=\"#55534e\"/>\n";
  }
  for (const ReplayUnitState& u : step.units) {
    if (!u.alive || u.id < 0 || u.id >= static_cast<int>(header.units.size())) continue;
    const ReplayUnitInfo& info = header.units[u.id];
    const double cx = u.x;
    const double cy = h - u.y;
    const double r = info.radius;
    svg << "<circle cx=\"" << cx << "\" cy=\"" << cy << "\" r=\"" << r << "\" fill=\"" << colour_for(info.faction)
        << "\" fill-opacity=\"" << (info.plane == Plane::Air ? 0.45 : 0.85) << "\"/>\n";
    // Health arc clockwise from 12 o'clock, slightly outside the body.
    const double frac = info.max_health > 0.0 ? std::clamp(u.health / info.max_health, 0.0, 1.0) : 0.0;
    const double ar = r * 1.15;
    if (frac >= 0.9999) {
      svg << "<circle cx=\"" << cx << "\" cy=\"" << cy << "\" r=\"" << ar
          << "\" fill=\"none\" stroke=\"#3cb043\" stroke-width=\"" << r * 0.2 << "\"/>\n";
    } else if (frac > 0.0) {
      const double angle = frac * 2.0 * std::numbers::pi;
      const double ex = cx + ar * std::sin(angle);
      const double ey = cy - ar * std::cos(angle);
      svg << "<path d=\"M " << cx << ' ' << cy - ar << " A " << ar << ' ' << ar << " 0 " << (frac > 0.5 ? 1 : 0)
          << " 1 " << ex << ' ' << ey << "\" fill=\"none\" stroke=\"#3cb043\" stroke-width=\"" << r * 0.2
          << "\"/>\n";
    }
  }
  svg << "<text x=\"0.5\" y=\"1.2\" font-size=\"1\" fill=\"#222\">" << header.scenario << " step "
      << step.step_counter << "</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace smaclite
