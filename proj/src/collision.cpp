#include "smaclite/collision.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

#include "smaclite/error.hpp"

namespace smaclite {

namespace {

constexpr double kEpsilon = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Unit vector for a coincident pair, chosen from the unordered id pair and
// flipped for the higher id so the two sides push in opposite directions.
Vec2 tie_break_normal(int self, int other) {
  const auto lo = static_cast<std::uint32_t>(std::min(self, other));
  const auto hi = static_cast<std::uint32_t>(std::max(self, other));
  const std::uint64_t h = splitmix64((std::uint64_t(lo) << 32) | hi);
  const double angle = static_cast<double>(h >> 11) * 0x1.0p-53 * 2.0 * std::numbers::pi;
  const Vec2 n{std::cos(angle), std::sin(angle)};
  return self < other ? n : -n;
}

// Tangent directions of the two legs of the cone from the origin around a
// disc of radius r centred at p (|p| > r).
Vec2 left_leg(Vec2 p, double r) {
  const double dist_sq = abs_sq(p);
  const double leg = std::sqrt(dist_sq - r * r);
  return Vec2{p.x * leg - p.y * r, p.x * r + p.y * leg} / dist_sq;
}

Vec2 right_leg(Vec2 p, double r) {
  const double dist_sq = abs_sq(p);
  const double leg = std::sqrt(dist_sq - r * r);
  return Vec2{p.x * leg + p.y * r, -p.x * r + p.y * leg} / dist_sq;
}

// Optimum on line `line_no` subject to the earlier lines and the speed disc.
bool linear_program1(std::span<const HalfPlane> lines, std::size_t line_no, double radius, Vec2 opt,
                     bool direction_opt, Vec2& result) {
  const HalfPlane& line = lines[line_no];
  const double dot_product = dot(line.point, line.direction);
  const double discriminant = dot_product * dot_product + radius * radius - abs_sq(line.point);
  if (discriminant < 0.0) return false;  // line misses the speed disc

  const double sqrt_disc = std::sqrt(discriminant);
  double t_left = -dot_product - sqrt_disc;
  double t_right = -dot_product + sqrt_disc;

  for (std::size_t i = 0; i < line_no; ++i) {
    const double denominator = det(line.direction, lines[i].direction);
    const double numerator = det(lines[i].direction, line.point - lines[i].point);
    if (std::fabs(denominator) <= kEpsilon) {
      if (numerator < 0.0) return false;
      continue;
    }
    const double t = numerator / denominator;
    if (denominator >= 0.0) {
      t_right = std::min(t_right, t);
    } else {
      t_left = std::max(t_left, t);
    }
    if (t_left > t_right) return false;
  }

  if (direction_opt) {
    result = dot(opt, line.direction) > 0.0 ? line.point + t_right * line.direction
                                            : line.point + t_left * line.direction;
  } else {
    const double t = dot(line.direction, opt - line.point);
    result = line.point + std::clamp(t, t_left, t_right) * line.direction;
  }
  return true;
}

// Returns the index of the first line that could not be satisfied, or
// lines.size() on success.
std::size_t linear_program2(std::span<const HalfPlane> lines, double radius, Vec2 opt, bool direction_opt,
                            Vec2& result) {
  if (direction_opt) {
    result = opt * radius;
  } else if (abs_sq(opt) > radius * radius) {
    result = normalize(opt) * radius;
  } else {
    result = opt;
  }
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (det(lines[i].direction, lines[i].point - result) > 0.0) {
      const Vec2 previous = result;
      if (!linear_program1(lines, i, radius, opt, direction_opt, result)) {
        result = previous;
        return i;
      }
    }
  }
  return lines.size();
}

// Infeasible case: keep obstacle lines hard and minimise the largest
// penetration behind the remaining lines.
void linear_program3(std::span<const HalfPlane> lines, std::size_t obstacle_count, std::size_t begin, double radius,
                     Vec2& result) {
  double distance = 0.0;
  std::vector<HalfPlane> projected;
  for (std::size_t i = begin; i < lines.size(); ++i) {
    if (det(lines[i].direction, lines[i].point - result) <= distance) continue;

    projected.assign(lines.begin(), lines.begin() + static_cast<std::ptrdiff_t>(obstacle_count));
    for (std::size_t j = obstacle_count; j < i; ++j) {
      HalfPlane line;
      const double determinant = det(lines[i].direction, lines[j].direction);
      if (std::fabs(determinant) <= kEpsilon) {
        if (dot(lines[i].direction, lines[j].direction) > 0.0) continue;
        line.point = 0.5 * (lines[i].point + lines[j].point);
      } else {
        line.point = lines[i].point +
                     (det(lines[j].direction, lines[i].point - lines[j].point) / determinant) * lines[i].direction;
      }
      line.direction = normalize(lines[j].direction - lines[i].direction);
      projected.push_back(line);
    }

    const Vec2 previous = result;
    if (linear_program2(projected, radius, perp(lines[i].direction), true, result) < projected.size()) {
      // Only reachable through rounding; the previous result is already the
      // best known point.
      result = previous;
    }
    distance = det(lines[i].direction, lines[i].point - result);
  }
}

}  // namespace

std::vector<Segment> rectangle_segments(const Rect& r) {
  const std::array<Vec2, 4> v{Vec2{r.xmin, r.ymin}, Vec2{r.xmax, r.ymin}, Vec2{r.xmax, r.ymax}, Vec2{r.xmin, r.ymax}};
  std::array<Vec2, 4> dir;
  for (int k = 0; k < 4; ++k) dir[k] = normalize(v[(k + 1) % 4] - v[k]);
  std::vector<Segment> out;
  out.reserve(4);
  for (int k = 0; k < 4; ++k) {
    out.push_back(Segment{v[k], v[(k + 1) % 4], dir[k], dir[(k + 3) % 4], dir[(k + 1) % 4], true, true});
  }
  return out;
}

UnitConstraint unit_halfplane(const Disc& self, const Disc& other, double tau, double dt) {
  const Vec2 other_velocity = other.is_static ? Vec2{} : other.velocity;
  const Vec2 relative_position = other.position - self.position;
  const Vec2 relative_velocity = self.velocity - other_velocity;
  const double dist_sq = abs_sq(relative_position);
  const double combined_radius = self.radius + other.radius;
  const double combined_radius_sq = combined_radius * combined_radius;

  HalfPlane line;
  line.source = LineSource::Unit;
  Vec2 u;

  if (dist_sq > combined_radius_sq) {
    const double inv_tau = 1.0 / tau;
    const Vec2 w = relative_velocity - inv_tau * relative_position;
    const double w_length_sq = abs_sq(w);
    const double dot1 = dot(w, relative_position);
    if (dot1 < 0.0 && dot1 * dot1 > combined_radius_sq * w_length_sq) {
      // Closest boundary point lies on the cut-off circle.
      const double w_length = std::sqrt(w_length_sq);
      const Vec2 unit_w = w / w_length;
      line.direction = Vec2{unit_w.y, -unit_w.x};
      u = (combined_radius * inv_tau - w_length) * unit_w;
    } else {
      // Closest boundary point lies on one of the legs.
      if (det(relative_position, w) > 0.0) {
        line.direction = left_leg(relative_position, combined_radius);
      } else {
        line.direction = -right_leg(relative_position, combined_radius);
      }
      u = dot(relative_velocity, line.direction) * line.direction - relative_velocity;
    }
  } else {
    // Already overlapping: separate within a single step.
    const double inv_dt = 1.0 / dt;
    const Vec2 w = relative_velocity - inv_dt * relative_position;
    const double w_length = norm(w);
    Vec2 unit_w;
    if (w_length > kEpsilon) {
      unit_w = w / w_length;
    } else if (dist_sq > 0.0) {
      unit_w = -relative_position / std::sqrt(dist_sq);
    } else {
      unit_w = tie_break_normal(self.id, other.id);
    }
    line.direction = Vec2{unit_w.y, -unit_w.x};
    u = (combined_radius * inv_dt - w_length) * unit_w;
  }

  line.point = self.velocity + (other.is_static ? 1.0 : 0.5) * u;
  return UnitConstraint{line, u};
}

void append_obstacle_halfplanes(const Disc& self, const Segment& seg, double tau, std::vector<HalfPlane>& lines) {
  const double inv_tau = 1.0 / tau;
  const double radius = self.radius;
  const Vec2 velocity = self.velocity;

  Vec2 point1 = seg.a;
  Vec2 point2 = seg.b;
  bool convex1 = seg.convex_a;
  bool convex2 = seg.convex_b;
  const Vec2 relative_position1 = point1 - self.position;
  const Vec2 relative_position2 = point2 - self.position;

  {
    const Vec2 edge = point2 - point1;
    const double s = std::clamp(dot(-relative_position1, edge) / abs_sq(edge), 0.0, 1.0);
    const double reach = radius + tau * self.max_speed;
    if (abs_sq(relative_position1 + s * edge) > reach * reach) return;
  }

  for (const HalfPlane& existing : lines) {
    if (det(inv_tau * relative_position1 - existing.point, existing.direction) - inv_tau * radius >= -kEpsilon &&
        det(inv_tau * relative_position2 - existing.point, existing.direction) - inv_tau * radius >= -kEpsilon) {
      return;  // an earlier line already keeps us off this segment
    }
  }

  const double dist_sq1 = abs_sq(relative_position1);
  const double dist_sq2 = abs_sq(relative_position2);
  const double radius_sq = radius * radius;
  const Vec2 obstacle_vector = point2 - point1;
  const double s = dot(-relative_position1, obstacle_vector) / abs_sq(obstacle_vector);
  const double dist_sq_line = abs_sq(-relative_position1 - s * obstacle_vector);

  HalfPlane line;
  line.source = LineSource::Obstacle;

  if (s < 0.0 && dist_sq1 <= radius_sq) {
    // Touching the first vertex.
    if (convex1) {
      line.point = Vec2{};
      line.direction = normalize(perp(relative_position1));
      lines.push_back(line);
    }
    return;
  }
  if (s > 1.0 && dist_sq2 <= radius_sq) {
    // Touching the second vertex; the next edge handles it unless it faces us.
    if (convex2 && det(relative_position2, seg.next_direction) >= 0.0) {
      line.point = Vec2{};
      line.direction = normalize(perp(relative_position2));
      lines.push_back(line);
    }
    return;
  }
  if (s >= 0.0 && s < 1.0 && dist_sq_line <= radius_sq) {
    // Touching the edge itself.
    line.point = Vec2{};
    line.direction = -seg.direction;
    lines.push_back(line);
    return;
  }

  Vec2 left_leg_direction;
  Vec2 right_leg_direction;
  Vec2 left_neighbor_direction = seg.prev_direction;
  Vec2 right_vertex_direction = seg.next_direction;
  Vec2 first_direction = seg.direction;
  bool single_vertex = false;

  if (s < 0.0 && dist_sq_line <= radius_sq) {
    // Seen obliquely: the first vertex alone defines the obstacle.
    if (!convex1) return;
    single_vertex = true;
    point2 = point1;
    convex2 = convex1;
    right_vertex_direction = seg.direction;
    left_leg_direction = left_leg(relative_position1, radius);
    right_leg_direction = right_leg(relative_position1, radius);
  } else if (s > 1.0 && dist_sq_line <= radius_sq) {
    // Seen obliquely: the second vertex alone defines the obstacle.
    if (!convex2) return;
    single_vertex = true;
    point1 = point2;
    convex1 = convex2;
    left_neighbor_direction = seg.direction;
    first_direction = seg.next_direction;
    left_leg_direction = left_leg(relative_position2, radius);
    right_leg_direction = right_leg(relative_position2, radius);
  } else {
    left_leg_direction = convex1 ? left_leg(relative_position1, radius) : -seg.direction;
    right_leg_direction = convex2 ? right_leg(relative_position2, radius) : seg.direction;
  }

  // A leg from a convex vertex may not point into the neighbouring edge; use
  // that edge's own cut-off instead and emit nothing if it would bind.
  bool left_leg_foreign = false;
  bool right_leg_foreign = false;
  if (convex1 && det(left_leg_direction, -left_neighbor_direction) >= 0.0) {
    left_leg_direction = -left_neighbor_direction;
    left_leg_foreign = true;
  }
  if (convex2 && det(right_leg_direction, right_vertex_direction) <= 0.0) {
    right_leg_direction = right_vertex_direction;
    right_leg_foreign = true;
  }

  const Vec2 left_cutoff = inv_tau * (point1 - self.position);
  const Vec2 right_cutoff = inv_tau * (point2 - self.position);
  const Vec2 cutoff_vector = right_cutoff - left_cutoff;

  const double t = single_vertex ? 0.5 : dot(velocity - left_cutoff, cutoff_vector) / abs_sq(cutoff_vector);
  const double t_left = dot(velocity - left_cutoff, left_leg_direction);
  const double t_right = dot(velocity - right_cutoff, right_leg_direction);

  if ((t < 0.0 && t_left < 0.0) || (single_vertex && t_left < 0.0 && t_right < 0.0)) {
    const Vec2 unit_w = normalize(velocity - left_cutoff);
    line.direction = Vec2{unit_w.y, -unit_w.x};
    line.point = left_cutoff + radius * inv_tau * unit_w;
    lines.push_back(line);
    return;
  }
  if (t > 1.0 && t_right < 0.0) {
    const Vec2 unit_w = normalize(velocity - right_cutoff);
    line.direction = Vec2{unit_w.y, -unit_w.x};
    line.point = right_cutoff + radius * inv_tau * unit_w;
    lines.push_back(line);
    return;
  }

  const double dist_sq_cutoff =
      (t < 0.0 || t > 1.0 || single_vertex) ? kInf : abs_sq(velocity - (left_cutoff + t * cutoff_vector));
  const double dist_sq_left = t_left < 0.0 ? kInf : abs_sq(velocity - (left_cutoff + t_left * left_leg_direction));
  const double dist_sq_right =
      t_right < 0.0 ? kInf : abs_sq(velocity - (right_cutoff + t_right * right_leg_direction));

  if (dist_sq_cutoff <= dist_sq_left && dist_sq_cutoff <= dist_sq_right) {
    line.direction = -first_direction;
    line.point = left_cutoff + radius * inv_tau * perp(line.direction);
    lines.push_back(line);
  } else if (dist_sq_left <= dist_sq_right) {
    if (left_leg_foreign) return;
    line.direction = left_leg_direction;
    line.point = left_cutoff + radius * inv_tau * perp(line.direction);
    lines.push_back(line);
  } else {
    if (right_leg_foreign) return;
    line.direction = -right_leg_direction;
    line.point = right_cutoff + radius * inv_tau * perp(line.direction);
    lines.push_back(line);
  }
}

std::vector<HalfPlane> obstacle_halfplanes(const Disc& self, const Segment& seg, double tau) {
  std::vector<HalfPlane> lines;
  append_obstacle_halfplanes(self, seg, tau, lines);
  return lines;
}

Vec2 solve_velocity(Vec2 preferred, double max_speed, std::span<const HalfPlane> lines, std::size_t obstacle_count) {
  Vec2 result;
  const std::size_t failed = linear_program2(lines, max_speed, preferred, false, result);
  if (failed < lines.size()) linear_program3(lines, obstacle_count, failed, max_speed, result);
  return result;
}

// ---------------------------------------------------------------------------

ObstacleSet::ObstacleSet(std::span<const Rect> terrain, std::span<const Rect> boundary)
    : terrain_count_(terrain.size()) {
  rects_.assign(terrain.begin(), terrain.end());
  rects_.insert(rects_.end(), boundary.begin(), boundary.end());
  std::vector<RectEntry> entries;
  entries.reserve(rects_.size());
  for (std::size_t i = 0; i < rects_.size(); ++i) {
    entries.push_back(RectEntry{static_cast<int>(i), rects_[i]});
    for (const Segment& s : rectangle_segments(rects_[i])) segments_.push_back(s);
  }
  index_ = RectIndex(entries);
}

void ObstacleSet::rects_near(const Disc& disc, double range, std::vector<int>& out) const {
  index_.query(disc.position, range, out);
  std::erase_if(out, [&](int id) { return !blocks(static_cast<std::size_t>(id), disc.plane); });
}

void ObstacleSet::segments_near(const Disc& disc, double range, std::vector<int>& out) const {
  std::vector<int> rect_ids;
  rects_near(disc, range, rect_ids);
  out.clear();
  const double range_sq = range * range;
  for (int rect_id : rect_ids) {
    for (int k = 0; k < 4; ++k) {
      const int id = rect_id * 4 + k;
      const Segment& seg = segments_[id];
      const Vec2 edge = seg.b - seg.a;
      const Vec2 rel = disc.position - seg.a;
      if (det(edge, rel) >= 0.0) continue;  // back face
      const double s = std::clamp(dot(rel, edge) / abs_sq(edge), 0.0, 1.0);
      if (abs_sq(rel - s * edge) <= range_sq) out.push_back(id);
    }
  }
}

namespace {

// Keeps `self` from closing more than `share` of the current gap to `other`
// along the line of centres within one step.
HalfPlane gap_line(const Disc& self, const Disc& other, double share, double dt) {
  const Vec2 offset = other.position - self.position;
  const double d = norm(offset);
  const Vec2 toward = d > 0.0 ? offset / d : -tie_break_normal(self.id, other.id);
  const double limit = std::max(0.0, d - self.radius - other.radius) * share / dt;
  return HalfPlane{limit * toward, perp(toward), LineSource::Unit};
}

// Same for the closest point of a rectangle, which never moves.
bool rect_gap_line(const Disc& self, const Rect& rect, double dt, HalfPlane& line) {
  const Vec2 closest{std::clamp(self.position.x, rect.xmin, rect.xmax), std::clamp(self.position.y, rect.ymin, rect.ymax)};
  const Vec2 offset = closest - self.position;
  const double d = norm(offset);
  if (d <= 0.0) return false;
  const Vec2 toward = offset / d;
  line = HalfPlane{std::max(0.0, d - self.radius) / dt * toward, perp(toward), LineSource::Obstacle};
  return true;
}

}  // namespace

std::vector<Vec2> step_velocities(std::span<const Disc> discs, const ObstacleSet& obstacles,
                                  const CollisionParams& params) {
  const std::size_t n = discs.size();
  std::vector<Vec2> result(n);
  if (n == 0) return result;

  double r_max = 0.0;
  double v_max = 0.0;
  for (const Disc& d : discs) {
    r_max = std::max(r_max, d.radius);
    v_max = std::max(v_max, d.max_speed);
  }

  // One index per plane; entry ids are positions in `discs`.
  constexpr std::size_t kPlanes = 3;
  std::array<std::vector<PointEntry>, kPlanes> per_plane;
  for (std::size_t i = 0; i < n; ++i) {
    per_plane[static_cast<std::size_t>(discs[i].plane)].push_back(PointEntry{static_cast<int>(i), discs[i].position});
  }
  std::array<PointIndex, kPlanes> indices;
  for (std::size_t p = 0; p < kPlanes; ++p) indices[p] = PointIndex(per_plane[p]);

  // Neighbours in id order and nearby rectangles, kept for the safety pass.
  std::vector<std::vector<int>> neighbours(n);
  std::vector<std::vector<int>> nearby_rects(n);
  std::vector<int> found;
  for (std::size_t i = 0; i < n; ++i) {
    const Disc& self = discs[i];
    const double reach = self.radius + r_max + params.tau * (self.max_speed + v_max);
    indices[static_cast<std::size_t>(self.plane)].query(self.position, reach, found);
    for (int j : found) {
      if (static_cast<std::size_t>(j) == i) continue;
      const Disc& other = discs[j];
      const double pair_reach = self.radius + other.radius + params.tau * (self.max_speed + other.max_speed);
      if (abs_sq(other.position - self.position) <= pair_reach * pair_reach) neighbours[i].push_back(j);
    }
    std::sort(neighbours[i].begin(), neighbours[i].end(), [&](int a, int b) { return discs[a].id < discs[b].id; });
    if (!self.is_static) obstacles.rects_near(self, self.radius + params.tau * self.max_speed, nearby_rects[i]);
  }

  std::vector<int> segment_ids;
  std::vector<HalfPlane> lines;
  auto orca_lines = [&](std::size_t i) {
    const Disc& self = discs[i];
    lines.clear();
    if (!obstacles.rects().empty()) {
      obstacles.segments_near(self, self.radius + params.tau * self.max_speed, segment_ids);
      for (int id : segment_ids) append_obstacle_halfplanes(self, obstacles.segments()[id], params.tau, lines);
    }
    const std::size_t obstacle_count = lines.size();
    for (int j : neighbours[i]) lines.push_back(unit_halfplane(self, discs[j], params.tau, params.dt).line);
    return obstacle_count;
  };

  for (std::size_t i = 0; i < n; ++i) {
    if (discs[i].is_static) continue;  // holds position: exactly zero
    const std::size_t obstacle_count = orca_lines(i);
    result[i] = solve_velocity(discs[i].preferred_velocity, discs[i].max_speed, lines, obstacle_count);
  }

  // Safety pass. ORCA only promises separation when every program is
  // feasible. A disc whose velocity would overlap something next step
  // switches to a program whose hard lines close at most half of each gap
  // (all of it towards static discs and walls). Two such discs cannot
  // collide, and v = 0 always satisfies the hard lines, so the loop reaches
  // a fixed point in at most n rounds.
  constexpr double kSlack = 1e-10;
  auto overlaps_next = [&](std::size_t i) {
    const Disc& self = discs[i];
    const Vec2 next = self.position + params.dt * result[i];
    for (int j : neighbours[i]) {
      const Disc& other = discs[j];
      const double limit = std::min(self.radius + other.radius, distance(self.position, other.position)) - kSlack;
      if (distance(next, other.position + params.dt * result[j]) < limit) return true;
    }
    for (int r : nearby_rects[i]) {
      const Rect& rect = obstacles.rects()[r];
      const double limit = std::min(self.radius, distance(rect, self.position)) - kSlack;
      if (distance(rect, next) < limit) return true;
    }
    return false;
  };

  std::vector<char> safe(n, 0);
  std::vector<std::size_t> switching;
  for (std::size_t round = 0; round <= n; ++round) {
    switching.clear();
    for (std::size_t i = 0; i < n; ++i) {
      if (!overlaps_next(i)) continue;
      if (!discs[i].is_static && !safe[i]) switching.push_back(i);
      for (int j : neighbours[i]) {
        if (!discs[j].is_static && !safe[j]) switching.push_back(static_cast<std::size_t>(j));
      }
    }
    if (switching.empty()) break;
    std::sort(switching.begin(), switching.end());
    switching.erase(std::unique(switching.begin(), switching.end()), switching.end());

    for (std::size_t i : switching) {
      const Disc& self = discs[i];
      std::vector<HalfPlane> hard;
      for (int j : neighbours[i]) hard.push_back(gap_line(self, discs[j], discs[j].is_static ? 1.0 : 0.5, params.dt));
      for (int r : nearby_rects[i]) {
        HalfPlane line;
        if (rect_gap_line(self, obstacles.rects()[r], params.dt, line)) hard.push_back(line);
      }
      orca_lines(i);
      const std::size_t hard_count = hard.size();
      hard.insert(hard.end(), lines.begin(), lines.end());
      Vec2 v = solve_velocity(self.preferred_velocity, self.max_speed, hard, hard_count);
      for (std::size_t k = 0; k < hard_count; ++k) {
        if (hard[k].penetration(v) > kSlack) v = Vec2{};
      }
      result[i] = v;
      safe[i] = 1;
    }
  }
  return result;
}

// ---------------------------------------------------------------------------

namespace {

auto find_disc(std::vector<Disc>& discs, int id) {
  return std::lower_bound(discs.begin(), discs.end(), id, [](const Disc& d, int v) { return d.id < v; });
}

auto find_disc(const std::vector<Disc>& discs, int id) {
  return std::lower_bound(discs.begin(), discs.end(), id, [](const Disc& d, int v) { return d.id < v; });
}

}  // namespace

void CollisionWorld::add_disc(const Disc& disc) {
  auto it = find_disc(discs_, disc.id);
  if (it != discs_.end() && it->id == disc.id) {
    throw Error(ErrorCode::DuplicateId, "disc " + std::to_string(disc.id) + " is already present");
  }
  discs_.insert(it, disc);
}

void CollisionWorld::remove_disc(int id) {
  auto it = find_disc(discs_, id);
  if (it == discs_.end() || it->id != id) throw Error(ErrorCode::UnknownId, "no disc " + std::to_string(id));
  discs_.erase(it);
}

bool CollisionWorld::contains(int id) const {
  auto it = find_disc(discs_, id);
  return it != discs_.end() && it->id == id;
}

Disc& CollisionWorld::disc(int id) {
  auto it = find_disc(discs_, id);
  if (it == discs_.end() || it->id != id) throw Error(ErrorCode::UnknownId, "no disc " + std::to_string(id));
  return *it;
}

const Disc& CollisionWorld::disc(int id) const {
  auto it = find_disc(discs_, id);
  if (it == discs_.end() || it->id != id) throw Error(ErrorCode::UnknownId, "no disc " + std::to_string(id));
  return *it;
}

std::vector<Vec2> CollisionWorld::step_velocities(const CollisionParams& params) const {
  return smaclite::step_velocities(discs_, obstacles_, params);
}

bool CollisionWorld::operator==(const CollisionWorld& other) const {
  return discs_ == other.discs_ && obstacles_.rects() == other.obstacles_.rects() &&
         obstacles_.terrain_count() == other.obstacles_.terrain_count();
}

}  // namespace smaclite
