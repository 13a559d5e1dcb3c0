#include "rigidlab_cli/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace rigidlab::cli {

namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x == 0.0 ? 0.0 : x);  // no "-0"
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

void SvgCanvas::grow(Point2 p) {
  if (empty_) {
    xmin_ = xmax_ = p.x;
    ymin_ = ymax_ = p.y;
    empty_ = false;
    return;
  }
  xmin_ = std::min(xmin_, p.x);
  xmax_ = std::max(xmax_, p.x);
  ymin_ = std::min(ymin_, p.y);
  ymax_ = std::max(ymax_, p.y);
}

void SvgCanvas::line(Point2 a, Point2 b, const std::string& stroke, double width) {
  grow(a);
  grow(b);
  items_.push_back({Item::line, {a, b}, 0.0, stroke, width, {}});
}

void SvgCanvas::polyline(const std::vector<Point2>& pts, const std::string& stroke, double width) {
  if (pts.size() < 2) return;
  for (const auto& p : pts) grow(p);
  items_.push_back({Item::polyline, pts, 0.0, stroke, width, {}});
}

void SvgCanvas::circle(Point2 center, double radius, const std::string& stroke, double width) {
  grow(center - Point2{radius, radius});
  grow(center + Point2{radius, radius});
  items_.push_back({Item::circle, {center}, radius, stroke, width, {}});
}

void SvgCanvas::dot(Point2 center, const std::string& fill, double size) {
  grow(center);
  items_.push_back({Item::dot, {center}, 0.0, fill, size, {}});
}

void SvgCanvas::label(Point2 at, const std::string& text) {
  grow(at);
  items_.push_back({Item::label, {at}, 0.0, "black", 1.0, text});
}

std::string SvgCanvas::str() const {
  double x0 = xmin_, x1 = xmax_, y0 = ymin_, y1 = ymax_;
  if (empty_) x0 = x1 = y0 = y1 = 0.0;
  double w = x1 - x0;
  double h = y1 - y0;
  const double extent = std::max({w, h, 1e-9});
  if (w < 1e-9 * extent) w = extent;
  if (h < 1e-9 * extent) h = extent;
  const double mx = 0.05 * w;
  const double my = 0.05 * h;
  const double vx = x0 - mx;
  const double vy = -y1 - my;  // y is flipped on output
  const double vw = w + 2 * mx;
  const double vh = h + 2 * my;
  // stroke widths and dot sizes are in pixels of an 800-wide image
  const double px = vw / 800.0;

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" height=\""
     << num(800.0 * vh / vw) << "\" viewBox=\"" << num(vx) << ' ' << num(vy) << ' ' << num(vw)
     << ' ' << num(vh) << "\">\n";
  os << "<rect x=\"" << num(vx) << "\" y=\"" << num(vy) << "\" width=\"" << num(vw)
     << "\" height=\"" << num(vh) << "\" fill=\"white\"/>\n";
  for (const auto& it : items_) {
    switch (it.kind) {
      case Item::line:
        os << "<line x1=\"" << num(it.pts[0].x) << "\" y1=\"" << num(-it.pts[0].y) << "\" x2=\""
           << num(it.pts[1].x) << "\" y2=\"" << num(-it.pts[1].y) << "\" stroke=\"" << it.color
           << "\" stroke-width=\"" << num(it.width * px) << "\"/>\n";
        break;
      case Item::polyline:
        os << "<polyline fill=\"none\" stroke=\"" << it.color << "\" stroke-width=\""
           << num(it.width * px) << "\" points=\"";
        for (std::size_t i = 0; i < it.pts.size(); ++i) {
          if (i) os << ' ';
          os << num(it.pts[i].x) << ',' << num(-it.pts[i].y);
        }
        os << "\"/>\n";
        break;
      case Item::circle:
        os << "<circle cx=\"" << num(it.pts[0].x) << "\" cy=\"" << num(-it.pts[0].y) << "\" r=\""
           << num(it.radius) << "\" fill=\"none\" stroke=\"" << it.color << "\" stroke-width=\""
           << num(it.width * px) << "\"/>\n";
        break;
      case Item::dot:
        os << "<circle cx=\"" << num(it.pts[0].x) << "\" cy=\"" << num(-it.pts[0].y) << "\" r=\""
           << num(it.width * px) << "\" fill=\"" << it.color << "\"/>\n";
        break;
      case Item::label:
        os << "<text x=\"" << num(it.pts[0].x) << "\" y=\"" << num(-it.pts[0].y)
           << "\" font-size=\"" << num(12 * px) << "\" font-family=\"sans-serif\">"
           << escape(it.text) << "</text>\n";
        break;
    }
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace rigidlab::cli
