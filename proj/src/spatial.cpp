#include "smaclite/spatial.hpp"

#include <algorithm>

namespace smaclite {

PointIndex::PointIndex(std::span<const PointEntry> points) : nodes_(points.begin(), points.end()) {
  build(0, nodes_.size(), 0);
}

void PointIndex::build(std::size_t lo, std::size_t hi, int depth) {
  if (hi - lo <= 1) return;
  const std::size_t mid = lo + (hi - lo) / 2;
  const bool by_x = depth % 2 == 0;
  std::nth_element(nodes_.begin() + lo, nodes_.begin() + mid, nodes_.begin() + hi,
                   [by_x](const PointEntry& a, const PointEntry& b) {
                     return by_x ? a.position.x < b.position.x : a.position.y < b.position.y;
                   });
  build(lo, mid, depth + 1);
  build(mid + 1, hi, depth + 1);
}

void PointIndex::search(std::size_t lo, std::size_t hi, int depth, Vec2 c, double r2, std::vector<int>& out) const {
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    const PointEntry& node = nodes_[mid];
    if (abs_sq(node.position - c) <= r2) out.push_back(node.id);
    const double delta = depth % 2 == 0 ? c.x - node.position.x : c.y - node.position.y;
    // Near side first by recursion, far side only if the splitting line is in reach.
    if (delta <= 0.0) {
      search(lo, mid, depth + 1, c, r2, out);
      if (delta * delta > r2) return;
      lo = mid + 1;
    } else {
      search(mid + 1, hi, depth + 1, c, r2, out);
      if (delta * delta > r2) return;
      hi = mid;
    }
    ++depth;
  }
}

void PointIndex::query(Vec2 center, double radius, std::vector<int>& out) const {
  out.clear();
  search(0, nodes_.size(), 0, center, radius * radius, out);
  std::sort(out.begin(), out.end());
}

std::vector<int> PointIndex::query(Vec2 center, double radius) const {
  std::vector<int> out;
  query(center, radius, out);
  return out;
}

RectIndex::RectIndex(std::span<const RectEntry> rects) : entries_(rects.begin(), rects.end()) {
  std::sort(entries_.begin(), entries_.end(), [](const RectEntry& a, const RectEntry& b) {
    return a.rect.xmin != b.rect.xmin ? a.rect.xmin < b.rect.xmin : a.id < b.id;
  });
  for (const auto& e : entries_) max_width_ = std::max(max_width_, e.rect.width());
}

void RectIndex::query(Vec2 center, double radius, std::vector<int>& out) const {
  out.clear();
  // Only rectangles with xmin in [cx - r - max_width, cx + r] can reach the ball.
  const double lo = center.x - radius - max_width_ - 1e-9;
  const double hi = center.x + radius;
  auto it = std::lower_bound(entries_.begin(), entries_.end(), lo,
                             [](const RectEntry& e, double v) { return e.rect.xmin < v; });
  for (; it != entries_.end() && it->rect.xmin <= hi; ++it) {
    if (distance(it->rect, center) <= radius) out.push_back(it->id);
  }
  std::sort(out.begin(), out.end());
}

std::vector<int> RectIndex::query(Vec2 center, double radius) const {
  std::vector<int> out;
  query(center, radius, out);
  return out;
}

PointIndex build_point_index(std::span<const PointEntry> points) { return PointIndex(points); }

std::vector<int> query_points(const PointIndex& index, Vec2 center, double radius) {
  return index.query(center, radius);
}

std::vector<int> query_rects(const RectIndex& index, Vec2 center, double radius) {
  return index.query(center, radius);
}

}  // namespace smaclite
