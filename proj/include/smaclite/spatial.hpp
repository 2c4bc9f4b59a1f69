#pragma once

#include <span>
#include <vector>

#include "smaclite/vec2.hpp"

namespace smaclite {

struct PointEntry {
  int id = 0;
  Vec2 position;
};

struct RectEntry {
  int id = 0;
  Rect rect;
};

/// Static 2D k-d tree over points. Built once, then queried read-only.
class PointIndex {
 public:
  PointIndex() = default;
  explicit PointIndex(std::span<const PointEntry> points);

  std::size_t size() const { return nodes_.size(); }
  bool empty() const { return nodes_.empty(); }

  /// Ids with distance(center, p) <= radius, ascending.
  std::vector<int> query(Vec2 center, double radius) const;
  /// Same, appending into out (cleared first) to avoid reallocations.
  void query(Vec2 center, double radius, std::vector<int>& out) const;

 private:
  void build(std::size_t lo, std::size_t hi, int depth);
  void search(std::size_t lo, std::size_t hi, int depth, Vec2 c, double r2, std::vector<int>& out) const;

  std::vector<PointEntry> nodes_;  // median-split implicit tree
};

/// Rectangles sorted by xmin; a query sweeps the prefix whose xmin can reach
/// the ball and tests the exact point-to-rectangle distance. Terrain holds at
/// most a few dozen rectangles, so this beats a tree in practice.
class RectIndex {
 public:
  RectIndex() = default;
  explicit RectIndex(std::span<const RectEntry> rects);

  std::size_t size() const { return entries_.size(); }
  const std::vector<RectEntry>& entries() const { return entries_; }

  /// Ids whose rectangle lies within distance radius of center, ascending.
  std::vector<int> query(Vec2 center, double radius) const;
  void query(Vec2 center, double radius, std::vector<int>& out) const;

 private:
  std::vector<RectEntry> entries_;  // sorted by rect.xmin
  double max_width_ = 0.0;
};

PointIndex build_point_index(std::span<const PointEntry> points);
std::vector<int> query_points(const PointIndex& index, Vec2 center, double radius);
std::vector<int> query_rects(const RectIndex& index, Vec2 center, double radius);

}  // namespace smaclite
