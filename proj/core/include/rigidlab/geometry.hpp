#pragma once

#include <cmath>
#include <vector>

namespace rigidlab {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  Point2 operator+(Point2 o) const { return {x + o.x, y + o.y}; }
  Point2 operator-(Point2 o) const { return {x - o.x, y - o.y}; }
  Point2 operator*(double s) const { return {x * s, y * s}; }
  friend Point2 operator*(double s, Point2 p) { return p * s; }
  friend bool operator==(const Point2&, const Point2&) = default;
};

inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }
inline Point2 rotate90(Point2 a) { return {-a.y, a.x}; }
inline Point2 mirror_x(Point2 a) { return {a.x, -a.y}; }

/// Intersections of circle(c1, r1) and circle(c2, r2).
///
/// Two points are returned left-of-(c1 -> c2) first. When the squared
/// half-chord r1^2 - a^2 lies within tol * max(1, r1^2) of zero the circles
/// are treated as tangent and one point is returned. Throws
/// std::invalid_argument for non-positive radii or centres closer than tol.
std::vector<Point2> circle_circle(Point2 c1, double r1, Point2 c2, double r2, double tol);

}  // namespace rigidlab
