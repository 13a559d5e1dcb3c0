#pragma once

#include <string>
#include <vector>

#include "rigidlab/geometry.hpp"

namespace rigidlab::cli {

/// Static SVG 1.1 drawing in model coordinates (y up). The viewBox is the
/// bounding box of everything drawn plus a 5% margin; output depends only
/// on the calls made.
class SvgCanvas {
 public:
  void line(Point2 a, Point2 b, const std::string& stroke, double width = 1.0);
  void polyline(const std::vector<Point2>& pts, const std::string& stroke, double width = 1.0);
  void circle(Point2 center, double radius, const std::string& stroke, double width = 1.0);
  void dot(Point2 center, const std::string& fill, double size = 3.0);
  void label(Point2 at, const std::string& text);

  std::string str() const;

 private:
  struct Item {
    enum Kind { line, polyline, circle, dot, label } kind;
    std::vector<Point2> pts;
    double radius = 0.0;
    std::string color;
    double width = 1.0;
    std::string text;
  };
  void grow(Point2 p);

  std::vector<Item> items_;
  bool empty_ = true;
  double xmin_ = 0, xmax_ = 0, ymin_ = 0, ymax_ = 0;
};

}  // namespace rigidlab::cli
