#include "rigidlab_cli/framework_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace rigidlab::cli {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw FileError("field '" + field + "': " + what);
}

const json& require(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(key, "missing");
  return *it;
}

long long as_int(const json& v, const std::string& field) {
  if (!v.is_number_integer()) fail(field, "expected an integer");
  return v.get<long long>();
}

double as_real(const json& v, const std::string& field) {
  double x = 0.0;
  if (v.is_number()) {
    x = v.get<double>();
  } else if (v.is_string()) {
    const auto& s = v.get_ref<const std::string&>();
    std::size_t used = 0;
    try {
      x = std::stod(s, &used);
    } catch (const std::exception&) {
      fail(field, "not a number: \"" + s + "\"");
    }
    if (used != s.size()) fail(field, "trailing characters in \"" + s + "\"");
  } else {
    fail(field, "expected a number or numeric string");
  }
  if (!std::isfinite(x)) fail(field, "not finite");
  return x;
}

std::string line_of(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

std::vector<Point2> parse_point_list(const json& arr, const std::string& field) {
  if (!arr.is_array()) fail(field, "expected an array of points");
  std::vector<Point2> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string f = field + "[" + std::to_string(i) + "]";
    if (!arr[i].is_array() || arr[i].size() != 2) fail(f, "expected [x, y]");
    out.push_back({as_real(arr[i][0], f + "[0]"), as_real(arr[i][1], f + "[1]")});
  }
  return out;
}

}  // namespace

std::string format_length(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

FrameworkDocument parse_document(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FileError("JSON syntax error at " + line_of(text, e.byte == 0 ? 0 : e.byte - 1) + ": " +
                    e.what());
  }
  if (!root.is_object()) throw FileError("top level: expected a JSON object");

  const long long dim = as_int(require(root, "dimension"), "dimension");
  if (dim < 1) fail("dimension", "must be >= 1");
  const long long n = as_int(require(root, "n"), "n");
  if (n < 0 || n > 100000) fail("n", "out of range");

  const json& edges = require(root, "edges");
  if (!edges.is_array()) fail("edges", "expected an array");
  Graph g(static_cast<int>(n));
  std::map<Edge, double> lengths;
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const std::string f = "edges[" + std::to_string(k) + "]";
    const json& e = edges[k];
    if (!e.is_array() || e.size() != 3) fail(f, "expected [i, j, length]");
    const long long i = as_int(e[0], f + "[0]");
    const long long j = as_int(e[1], f + "[1]");
    if (i < 0 || i >= n) fail(f + "[0]", "vertex index out of range");
    if (j < 0 || j >= n) fail(f + "[1]", "vertex index out of range");
    if (i == j) fail(f, "self-loop");
    const double len = as_real(e[2], f + "[2]");
    if (!(len > 0.0)) fail(f + "[2]", "length must be positive");
    if (g.has_edge(static_cast<int>(i), static_cast<int>(j))) fail(f, "duplicate edge");
    g.add_edge(static_cast<int>(i), static_cast<int>(j));
    lengths[Edge(static_cast<int>(i), static_cast<int>(j))] = len;
  }

  FrameworkDocument doc;
  doc.framework = Framework(std::move(g), static_cast<int>(dim), std::move(lengths));

  if (auto it = root.find("points"); it != root.end()) {
    if (!it->is_array()) fail("points", "expected an array");
    if (static_cast<long long>(it->size()) != n) fail("points", "need exactly n points");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string f = "points[" + std::to_string(i) + "]";
      const json& p = (*it)[i];
      if (!p.is_array() || static_cast<long long>(p.size()) != dim) {
        fail(f, "expected " + std::to_string(dim) + " coordinates");
      }
      std::vector<double> c;
      for (std::size_t k = 0; k < p.size(); ++k) c.push_back(as_real(p[k], f + "[" + std::to_string(k) + "]"));
      doc.points.push_back(std::move(c));
    }
  }

  if (auto it = root.find("fourbar"); it != root.end()) {
    if (!it->is_object()) fail("fourbar", "expected an object");
    FourBar fb;
    fb.ground = as_real(require(*it, "b"), "fourbar.b");
    fb.crank = as_real(require(*it, "r_a"), "fourbar.r_a");
    fb.follower = as_real(require(*it, "r_b"), "fourbar.r_b");
    fb.coupler = as_real(require(*it, "l_c"), "fourbar.l_c");
    const json& off = require(*it, "offset");
    if (!off.is_array() || off.size() != 2) fail("fourbar.offset", "expected [u, v]");
    fb.offset = {as_real(off[0], "fourbar.offset[0]"), as_real(off[1], "fourbar.offset[1]")};
    try {
      fb.validate();
    } catch (const std::exception& e) {
      fail("fourbar", e.what());
    }
    doc.fourbar = fb;
  }

  if (auto it = root.find("solutions"); it != root.end()) {
    if (!it->is_array()) fail("solutions", "expected an array");
    if (dim != 2) fail("solutions", "only planar solutions are supported");
    for (std::size_t s = 0; s < it->size(); ++s) {
      const std::string f = "solutions[" + std::to_string(s) + "]";
      auto pts = parse_point_list((*it)[s], f);
      if (static_cast<long long>(pts.size()) != n) fail(f, "need exactly n points");
      doc.solutions.push_back(std::move(pts));
    }
  }
  return doc;
}

FrameworkDocument read_document(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_document(ss.str());
  } catch (const FileError& e) {
    throw FileError(path + ": " + e.what());
  }
}

std::string to_json(const FrameworkDocument& doc) {
  const Framework& fw = doc.framework;
  json root = json::object();
  root["dimension"] = fw.dim();
  root["n"] = fw.graph().vertex_count();
  json edges = json::array();
  for (const Edge& e : fw.graph().sorted_edges()) {
    edges.push_back(json::array({e.u, e.v, format_length(fw.length(e.u, e.v))}));
  }
  root["edges"] = std::move(edges);
  if (!doc.points.empty()) root["points"] = doc.points;
  if (doc.fourbar) {
    const FourBar& fb = *doc.fourbar;
    root["fourbar"] = {{"b", format_length(fb.ground)},
                       {"r_a", format_length(fb.crank)},
                       {"r_b", format_length(fb.follower)},
                       {"l_c", format_length(fb.coupler)},
                       {"offset", json::array({format_length(fb.offset.x), format_length(fb.offset.y)})}};
  }
  if (!doc.solutions.empty()) {
    json sols = json::array();
    for (const auto& s : doc.solutions) {
      json pts = json::array();
      for (const Point2& p : s) pts.push_back(json::array({p.x, p.y}));
      sols.push_back(std::move(pts));
    }
    root["solutions"] = std::move(sols);
  }
  // one edge, point or solution per line
  std::string text = "{\n";
  bool first = true;
  for (const char* key : {"dimension", "n", "edges", "points", "fourbar", "solutions"}) {
    auto it = root.find(key);
    if (it == root.end()) continue;
    text += first ? "" : ",\n";
    first = false;
    text += "  \"" + std::string(key) + "\": ";
    if (it->is_array() && !it->empty()) {
      text += "[\n";
      for (std::size_t i = 0; i < it->size(); ++i) {
        text += "    " + (*it)[i].dump() + (i + 1 < it->size() ? ",\n" : "\n");
      }
      text += "  ]";
    } else {
      text += it->dump();
    }
  }
  return text + "\n}\n";
}

void write_document(const std::string& path, const FrameworkDocument& doc) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << to_json(doc);
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

std::vector<Point2> planar_points(const FrameworkDocument& doc) {
  if (doc.framework.dim() != 2) throw FileError("points: framework is not planar");
  std::vector<Point2> out;
  for (const auto& p : doc.points) out.push_back({p[0], p[1]});
  return out;
}

}  // namespace rigidlab::cli
