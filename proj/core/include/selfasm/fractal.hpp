#pragma once

#include <array>
#include <optional>
#include <string>

#include "selfasm/geom.hpp"

namespace selfasm {

enum class FractalKind { U, H };

// Generator of a discrete self-similar fractal: a connected set of lattice
// points containing (0,0), strictly inside its w x h bounding rectangle,
// with w > 1 and h > 1.
struct Generator {
  PointSet points;
  int32_t width = 0;   // max x + 1
  int32_t height = 0;  // max y + 1

  static Generator make(PointSet pts);  // validates, throws std::invalid_argument
  static const Generator& u();
  static const Generator& h();
  static const Generator& sierpinski();
};

struct FractalStage {
  Generator generator;
  int stage = 1;
  PointSet points;
};

// Stage n of the fractal: X_1 = G, X_{i+1} = X_i + (w^i, h^i) G.
FractalStage stage_points(const Generator& g, int n);
PointSet stage_points(FractalKind kind, int n);

// Addresses over {a..g}, innermost symbol first. Labeling:
//   a=(0,2) b=(0,1) c=(0,0) d=(1,0) for U, (1,1) for H
//   e=(2,2) f=(2,1) g=(2,0)
Point address_to_point(const std::string& address, FractalKind kind);
std::string point_to_address(Point p, int n, FractalKind kind);

// Smallest stage containing p, or nullopt if p is never in the fractal
// (checked up to max_stage).
std::optional<int> smallest_stage_of(Point p, FractalKind kind, int max_stage = 24);

enum class BottleneckRole { TopLeft, MiddleLeft, BottomLeft, TopRight, MiddleRight, BottomRight };

struct BottleneckSet {
  FractalKind kind;
  int stage = 2;
  // Indexed by BottleneckRole.
  std::array<Point, 6> points;

  Point at(BottleneckRole r) const { return points[size_t(r)]; }
  PointSet as_set() const;
};

// The six bottleneck points of stage i >= 2:
//   B^H_i = (3^{i-1} + (3^{i-2}-1)/2, same) + 3^{i-2} * B0
//   B^U_i = (3^{i-1} + (3^{i-2}-1)/2, 0)    + 3^{i-2} * B0
// with B0 = {(0,0),(0,1),(0,2),(2,0),(2,1),(2,2)}.
BottleneckSet bottleneck_points(FractalKind kind, int i);

// Center tile of stage i (connects left and right halves).
Point center_of_stage(FractalKind kind, int i);

// Stage-n ladder: three stacked copies of U_n minus the westernmost column,
// easternmost column and southernmost row of the stack.
PointSet ladder_shape(int n);

// Union of address_to_point over all fixed-length alternatives of a
// character-class pattern like "[defg][abc][ab]|[ef]cc".
PointSet address_pattern_points(const std::string& pattern, int n, FractalKind kind);

}  // namespace selfasm
