#pragma once

#include <span>
#include <vector>

#include "smaclite/spatial.hpp"
#include "smaclite/unit_type.hpp"
#include "smaclite/vec2.hpp"

namespace smaclite {

/// A unit as seen by the collision solver.
struct Disc {
  int id = 0;
  Vec2 position;
  Vec2 velocity;            // velocity committed on the previous step
  Vec2 preferred_velocity;  // what the unit asks for this step
  double radius = 0.5;
  double max_speed = 0.0;
  Plane plane = Plane::Ground;
  /// Holding position: never yields and always gets (0, 0) back. Neighbours
  /// treat it as immovable and take the whole correction themselves.
  bool is_static = false;

  bool operator==(const Disc&) const = default;
};

enum class LineSource { Unit, Obstacle };

/// Constraint in velocity space: v is allowed iff det(direction, v - point) >= 0,
/// i.e. v lies on the left of the directed line.
struct HalfPlane {
  Vec2 point;
  Vec2 direction;
  LineSource source = LineSource::Unit;

  bool allows(Vec2 v, double eps = 0.0) const { return det(direction, v - point) >= -eps; }
  /// How far v sits behind the line (negative when allowed).
  double penetration(Vec2 v) const { return det(direction, point - v); }
};

/// One edge of an obstacle polygon, traced counterclockwise so the blocked
/// interior is on the left of a -> b.
struct Segment {
  Vec2 a;
  Vec2 b;
  Vec2 direction;       // unit vector a -> b
  Vec2 prev_direction;  // direction of the edge ending at a
  Vec2 next_direction;  // direction of the edge starting at b
  bool convex_a = true;
  bool convex_b = true;
};

/// The four counterclockwise edges of a rectangle, bottom edge first.
std::vector<Segment> rectangle_segments(const Rect& rect);

struct UnitConstraint {
  HalfPlane line;
  Vec2 u;  // smallest change of relative velocity that leaves the velocity obstacle
};

/// Constraint for `self` induced by `other`. Non-overlapping pairs use the
/// horizon tau; overlapping pairs are pushed apart within one step dt.
/// `self` takes half of u, or all of it when `other` is static.
UnitConstraint unit_halfplane(const Disc& self, const Disc& other, double tau, double dt);

/// Appends the constraints that keep `self` off `seg` for tau seconds. Lines
/// already in `lines` that cover the segment suppress new ones, so callers
/// pass obstacle lines only.
void append_obstacle_halfplanes(const Disc& self, const Segment& seg, double tau, std::vector<HalfPlane>& lines);
std::vector<HalfPlane> obstacle_halfplanes(const Disc& self, const Segment& seg, double tau);

/// Closest velocity to `preferred` inside the speed disc that satisfies all
/// lines. The first obstacle_count lines are hard; when the whole set is
/// infeasible the result minimises the largest penetration behind the rest.
Vec2 solve_velocity(Vec2 preferred, double max_speed, std::span<const HalfPlane> lines, std::size_t obstacle_count);

/// Obstacle geometry shared by every step of an episode. Terrain rectangles
/// block GROUND discs only; boundary rectangles (the map edge) block every
/// plane. Rect ids run over terrain first, then boundary.
class ObstacleSet {
 public:
  ObstacleSet() = default;
  explicit ObstacleSet(std::span<const Rect> terrain, std::span<const Rect> boundary = {});

  const std::vector<Rect>& rects() const { return rects_; }
  const std::vector<Segment>& segments() const { return segments_; }
  const RectIndex& index() const { return index_; }
  std::size_t terrain_count() const { return terrain_count_; }
  bool blocks(std::size_t rect_id, Plane plane) const { return plane == Plane::Ground || rect_id >= terrain_count_; }

  /// Segments that `disc` may run into within the query radius, in segment
  /// order, restricted to edges whose outside faces the disc and to
  /// rectangles that block its plane.
  void segments_near(const Disc& disc, double range, std::vector<int>& out) const;
  /// Ids of rectangles blocking the disc's plane within `range` of its centre.
  void rects_near(const Disc& disc, double range, std::vector<int>& out) const;

 private:
  std::vector<Rect> rects_;
  std::vector<Segment> segments_;  // 4 per rect, rect-major
  std::size_t terrain_count_ = 0;
  RectIndex index_;
};

struct CollisionParams {
  double tau = 1.0;        // seconds of look-ahead
  double dt = 1.0 / 16.0;  // length of one step
};

/// New velocities for every disc, in input order, all computed from the same
/// snapshot. Only discs on the same plane interact; only GROUND discs see
/// terrain, every disc sees the boundary. A final pass guarantees that no two discs and no ground disc
/// and rectangle overlap after advancing by dt, unless they already did.
std::vector<Vec2> step_velocities(std::span<const Disc> discs, const ObstacleSet& obstacles,
                                  const CollisionParams& params = {});

/// Mutable set of discs keyed by id.
class CollisionWorld {
 public:
  CollisionWorld() = default;
  explicit CollisionWorld(std::span<const Rect> terrain, std::span<const Rect> boundary = {})
      : obstacles_(terrain, boundary) {}

  void add_disc(const Disc& disc);
  void remove_disc(int id);
  void remove_all() { discs_.clear(); }

  bool contains(int id) const;
  Disc& disc(int id);
  const Disc& disc(int id) const;
  const std::vector<Disc>& discs() const { return discs_; }
  const ObstacleSet& obstacles() const { return obstacles_; }

  std::vector<Vec2> step_velocities(const CollisionParams& params = {}) const;

  bool operator==(const CollisionWorld& other) const;

 private:
  std::vector<Disc> discs_;  // ascending id
  ObstacleSet obstacles_;
};

}  // namespace smaclite
