#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rigidlab/coupler.hpp"
#include "rigidlab/graph.hpp"
#include "rigidlab/solver.hpp"

namespace rigidlab::cli {

/// Malformed framework file. The message names the line (syntax errors) or
/// the JSON field (semantic errors).
class FileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// JSON framework document:
///   { "dimension": d, "n": n, "edges": [[i, j, "length"], ...],
///     "points": [[x, y, ...], ...],                      optional
///     "fourbar": {"b", "r_a", "r_b", "l_c", "offset": [u, v]},  optional
///     "solutions": [[[x, y], ...], ...] }                 optional
/// Lengths are written as 17-significant-digit strings; numbers are also
/// accepted on input.
struct FrameworkDocument {
  Framework framework;
  std::vector<std::vector<double>> points;
  std::optional<FourBar> fourbar;
  std::vector<std::vector<Point2>> solutions;
};

std::string format_length(double x);

FrameworkDocument parse_document(const std::string& text);
FrameworkDocument read_document(const std::string& path);

std::string to_json(const FrameworkDocument& doc);
void write_document(const std::string& path, const FrameworkDocument& doc);

/// Embedding points as 2D points; throws FileError if not planar.
std::vector<Point2> planar_points(const FrameworkDocument& doc);

}  // namespace rigidlab::cli
