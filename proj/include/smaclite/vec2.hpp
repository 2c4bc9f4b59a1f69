#pragma once

#include <cmath>

namespace smaclite {

/// Plain 2D vector in grid units (positions) or grid units per second
/// (velocities).
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2() = default;
  constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

  constexpr Vec2 operator-() const { return {-x, -y}; }
  constexpr Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
  constexpr Vec2& operator+=(const Vec2& o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr Vec2& operator-=(const Vec2& o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  constexpr bool operator==(const Vec2&) const = default;
};

constexpr Vec2 operator*(double s, const Vec2& v) { return {v.x * s, v.y * s}; }

constexpr double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }

/// z-component of the 3D cross product; positive when b is counterclockwise
/// of a.
constexpr double det(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }

constexpr double abs_sq(const Vec2& v) { return dot(v, v); }

inline double norm(const Vec2& v) { return std::sqrt(abs_sq(v)); }

inline Vec2 normalize(const Vec2& v) { return v / norm(v); }

inline double distance(const Vec2& a, const Vec2& b) { return norm(a - b); }

/// Left-hand perpendicular (rotated +90 degrees).
constexpr Vec2 perp(const Vec2& v) { return {-v.y, v.x}; }

/// Axis-aligned rectangle, closed on all sides.
struct Rect {
  double xmin = 0.0;
  double ymin = 0.0;
  double xmax = 0.0;
  double ymax = 0.0;

  constexpr double width() const { return xmax - xmin; }
  constexpr double height() const { return ymax - ymin; }
  constexpr double area() const { return width() * height(); }
  constexpr bool operator==(const Rect&) const = default;
};

/// Euclidean distance from p to the closest point of r; zero inside.
inline double distance(const Rect& r, const Vec2& p) {
  const double dx = p.x < r.xmin ? r.xmin - p.x : (p.x > r.xmax ? p.x - r.xmax : 0.0);
  const double dy = p.y < r.ymin ? r.ymin - p.y : (p.y > r.ymax ? p.y - r.ymax : 0.0);
  return std::sqrt(dx * dx + dy * dy);
}

}  // namespace smaclite
