#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace selfasm {

struct Point {
  int32_t x = 0;
  int32_t y = 0;

  friend bool operator==(const Point&, const Point&) = default;

  Point operator+(Point o) const { return {x + o.x, y + o.y}; }
  Point operator-(Point o) const { return {x - o.x, y - o.y}; }
};

// Row-major order: by y, then x. Sorted point sets use this everywhere so
// serialization is deterministic.
inline bool yx_less(Point a, Point b) {
  return a.y != b.y ? a.y < b.y : a.x < b.x;
}

struct PointHash {
  size_t operator()(Point p) const {
    uint64_t v = (uint64_t(uint32_t(p.x)) << 32) | uint32_t(p.y);
    v *= 0x9e3779b97f4a7c15ull;
    v ^= v >> 29;
    return size_t(v);
  }
};

struct Box {
  Point lo;
  Point hi;  // inclusive
  int32_t width() const { return hi.x - lo.x + 1; }
  int32_t height() const { return hi.y - lo.y + 1; }
};

// A finite set of lattice points kept sorted by (y,x) with no duplicates.
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(std::vector<Point> pts);

  static PointSet from_unsorted(std::vector<Point> pts) { return PointSet(std::move(pts)); }

  const std::vector<Point>& points() const { return pts_; }
  size_t size() const { return pts_.size(); }
  bool empty() const { return pts_.empty(); }
  bool contains(Point p) const;

  PointSet translated(Point d) const;
  Box bounding_box() const;  // precondition: non-empty

  bool is_subset_of(const PointSet& o) const;
  bool connected() const;  // 4-neighbor grid connectivity

  PointSet set_union(const PointSet& o) const;
  PointSet set_minus(const PointSet& o) const;
  bool intersects(const PointSet& o) const;

  friend bool operator==(const PointSet&, const PointSet&) = default;

  // "x y" per line.
  std::string to_text() const;
  static PointSet from_text(const std::string& text);
  // JSON document: one array of [x,y] pairs.
  std::string to_json() const;

 private:
  std::vector<Point> pts_;
};

// Fast membership for repeated queries against one set.
class PointGrid {
 public:
  explicit PointGrid(const PointSet& ps);
  bool contains(Point p) const;
  const Box& box() const { return box_; }

 private:
  Box box_{};
  int32_t w_ = 0, h_ = 0;
  std::vector<uint8_t> mask_;
};

}  // namespace selfasm
