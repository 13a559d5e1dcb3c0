#include "rigidlab/geometry.hpp"

#include <algorithm>
#include <stdexcept>

namespace rigidlab {

std::vector<Point2> circle_circle(Point2 c1, double r1, Point2 c2, double r2, double tol) {
  if (!(r1 > 0.0) || !(r2 > 0.0)) throw std::invalid_argument("circle radii must be positive");
  const Point2 delta = c2 - c1;
  const double d = norm(delta);
  if (d <= tol) throw std::invalid_argument("concentric circles");
  const double a = (d * d + r1 * r1 - r2 * r2) / (2.0 * d);
  const double h2 = r1 * r1 - a * a;
  const double slack = tol * std::max(1.0, r1 * r1);
  const Point2 e = delta * (1.0 / d);
  const Point2 foot = c1 + e * a;
  if (h2 < -slack) return {};
  if (h2 <= slack) return {foot};
  const double h = std::sqrt(h2);
  const Point2 n = rotate90(e);
  return {foot + n * h, foot - n * h};
}

}  // namespace rigidlab
