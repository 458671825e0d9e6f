#ifndef BOUSSQ_GEOMETRY_HPP
#define BOUSSQ_GEOMETRY_HPP

#include <cmath>
#include <vector>

namespace boussq {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  double dot(Vec2 o) const { return x * o.x + y * o.y; }
  double norm() const { return std::hypot(x, y); }
};

inline Vec2 operator*(double s, Vec2 v) { return v * s; }

/// z-component of the cross product of two in-plane vectors.
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

/// Axis-aligned rectangle in domain units.
struct Rect {
  double x_min, x_max, y_min, y_max;

  double width() const { return x_max - x_min; }
  double height() const { return y_max - y_min; }
  double area() const { return width() * height(); }
};

/// Union of axis-aligned rectangles with pairwise-disjoint interiors.
/// Houses the cavity (0,1)^2 and its extension (0,1)^2 ∪ (1,2)x(-1,2).
struct RectUnion {
  std::vector<Rect> rects;

  double area() const {
    double a = 0.0;
    for (const auto& r : rects) a += r.area();
    return a;
  }
};

inline RectUnion unit_square() { return {{{0.0, 1.0, 0.0, 1.0}}}; }

/// Cavity plus downstream extension; the two share the segment x=1, 0<y<1.
inline RectUnion extended_cavity() {
  return {{{0.0, 1.0, 0.0, 1.0}, {1.0, 2.0, -1.0, 2.0}}};
}

}  // namespace boussq

#endif
