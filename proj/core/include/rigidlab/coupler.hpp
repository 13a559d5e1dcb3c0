#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "rigidlab/geometry.hpp"
#include "rigidlab/graph.hpp"
#include "rigidlab/solver.hpp"

namespace rigidlab {

/// Four-bar linkage with ground pivots A = (0, 0) and B = (ground, 0).
/// The crank AP turns about A, the follower BQ about B, PQ is the coupler
/// link, and the coupler point sits at `offset` in the frame with origin P
/// and x-axis towards Q.
struct FourBar {
  double ground = 1.0;
  double crank = 1.0;
  double follower = 1.0;
  double coupler = 1.0;
  Point2 offset{0.5, 0.5};

  void validate() const;

  /// Coupler triangle reflected across PQ.
  FourBar flipped() const {
    FourBar f = *this;
    f.offset.y = -f.offset.y;
    return f;
  }

  /// |PX| and |QX| for the coupler point X.
  double coupler_side_p() const { return norm(offset); }
  double coupler_side_q() const { return norm(offset - Point2{coupler, 0.0}); }
};

/// Assembly mode: `plus` puts Q to the left of the ray P -> B.
enum class Branch { plus, minus };

struct CouplerPose {
  Point2 crank_tip;     // P
  Point2 follower_tip;  // Q
  Point2 point;         // coupler point
};

std::optional<CouplerPose> coupler_pose(const FourBar& fb, double theta, Branch branch);

/// None when the dyad cannot close at crank angle theta.
std::optional<Point2> coupler_point(const FourBar& fb, double theta, Branch branch);

/// Crank-angle interval [lo, hi] (hi may exceed 2*pi) on which the linkage
/// assembles. A full turn is reported as [0, 2*pi) with full_turn set.
struct BranchArc {
  Branch branch = Branch::plus;
  double lo = 0.0;
  double hi = 0.0;
  bool full_turn = false;
};

inline constexpr int kArcResolution = 3600;

/// Samples |P(theta) - B| against [|coupler - follower|, coupler + follower]
/// and bisects each boundary to 1e-12. Both branches share the intervals.
std::vector<BranchArc> assembly_arcs(const FourBar& fb, int resolution = kArcResolution);

struct Circle {
  Point2 center;
  double radius = 1.0;
};

struct CrossingSet {
  std::vector<double> roots;       // transversal crossings, crank angles
  std::vector<double> tangencies;  // touches without a sign change, excluded
};

/// Roots of |coupler_point(theta) - center|^2 - radius^2 on every assembly
/// arc of `branch`, isolated by sign changes on `resolution` samples per arc
/// and refined by bisection to 1e-12. Throws std::domain_error when the
/// curve coincides with the circle along an arc.
CrossingSet circle_crossings(const FourBar& fb, Branch branch, const Circle& circle,
                             int resolution = kArcResolution);

/// Sampled coupler curve, one polyline per assembly arc.
std::vector<std::vector<Point2>> coupler_curve(const FourBar& fb, Branch branch,
                                               int resolution = 720);

/// Desargues framework built from a four-bar: the grounded triangle
/// A B C, the mechanism, and the bar from C to the coupler point.
/// Vertex layout: 0 = A, 1 = B, 2 = C, 3 = P, 4 = Q, 5 = coupler point.
struct DesarguesParams {
  FourBar mechanism;
  double apex_a = 1.0;  // |AC|
  double apex_b = 1.0;  // |BC|
  double radius = 1.0;  // |C X|, the floating circle

  /// Apex positions: above the base first, then below. Empty if the apex
  /// triangle is not realizable; a single point if it degenerates.
  std::vector<Point2> apex_positions() const;
};

struct DesarguesCrossing {
  bool flipped = false;  // coupler triangle reflected across PQ
  bool above = true;     // apex above the base line
  Branch branch = Branch::plus;
  double theta = 0.0;
};

struct DesarguesCount {
  int total = 0;
  /// Indexed [flipped][below]: crossings of each coupler curve with the
  /// circle around each apex position.
  std::array<std::array<int, 2>, 2> per_curve{};
  int tangencies = 0;
  /// Doubling the sampling resolution left every count unchanged.
  bool resolution_stable = true;
  std::vector<DesarguesCrossing> crossings;

  int above() const { return per_curve[0][0] + per_curve[1][0]; }
  int below() const { return per_curve[0][1] + per_curve[1][1]; }
};

/// Pinned embedding count of the Desargues framework: the sum, over both
/// coupler-triangle orientations and both apex placements, of the crossings
/// of the coupler curve with the circle centred at the apex.
DesarguesCount desargues_count(const DesarguesParams& params, int resolution = kArcResolution);

/// One pinned embedding (pin 0 -> 1) per crossing in `count`.
std::vector<PinnedEmbedding> desargues_embeddings(const DesarguesParams& params,
                                                  const DesarguesCount& count);

Graph desargues_graph();
Framework desargues_framework(const DesarguesParams& params);

/// Recovers the mechanism from a framework in the Desargues vertex layout.
/// Throws std::invalid_argument if the graph is not that layout.
DesarguesParams desargues_params(const Framework& fw);

/// Moving-link lengths (crank, follower, coupler and both coupler-triangle
/// sides) each scaled by an independent factor drawn from
/// [max(1 - epsilon, 1e-3), 1 + epsilon]; draws that break the coupler
/// triangle are redrawn. Ground pivots are untouched.
FourBar perturb_mechanism(const FourBar& fb, double epsilon, std::uint64_t seed);

struct SearchOptions {
  std::uint64_t seed = 1;
  int budget = 100000;  // candidate evaluations
  unsigned threads = 1;
};

struct DesarguesWitness {
  DesarguesParams params;
  Framework framework;
  DesarguesCount count;
  int evaluations = 0;   // budget consumed up to and including the success
  double margin = 0.0;   // relative gap between radius^2 and the nearest
                         // extremum of a squared-distance profile
};

/// Seeded sampling of mechanisms and apex placements, with the circle
/// radius chosen by a level scan of the sampled distance profiles, then
/// coordinate-wise refinement maximizing (crossings, margin). Returns the
/// first candidate in index order with desargues_count == 24, or nullopt if
/// the budget runs out. Throws if budget < 1000.
std::optional<DesarguesWitness> search_desargues_lengths(const SearchOptions& options);

/// Best circle radius for a fixed mechanism and apex: maximizes the sampled
/// crossing count above the base, ties broken by margin.
struct RadiusFit {
  double radius = 0.0;
  int crossings_above = 0;
  double margin = 0.0;
};
RadiusFit fit_radius(const FourBar& fb, Point2 apex, int resolution = 720);

}  // namespace rigidlab
