#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rigidlab/geometry.hpp"
#include "rigidlab/graph.hpp"
#include "rigidlab/henneberg.hpp"

namespace rigidlab {

/// Ordered pin: vertex `a` sits at the origin, vertex `b` on the positive
/// x-axis at distance l_ab. Pinning quotients out direct isometries only, so
/// mirror images remain distinct solutions.
struct Pin {
  int a = 0;
  int b = 1;
  friend bool operator==(const Pin&, const Pin&) = default;
};

/// Lowest edge of the graph in lexicographic order.
Pin default_pin(const Graph& g);

struct PinnedEmbedding {
  std::vector<Point2> points;
  Pin pin;
};

enum class SolveMethod { branch, newton };

std::string to_string(SolveMethod m);

struct SolutionSet {
  std::vector<PinnedEmbedding> solutions;
  SolveMethod method = SolveMethod::branch;
  bool complete = false;
  /// A branch met a near-tangent circle pair and produced a single child.
  bool degenerate = false;
  /// Newton limits whose Jacobian is singular; excluded from `solutions`.
  std::vector<PinnedEmbedding> non_generic;

  std::size_t count() const { return solutions.size(); }
};

struct SolverConfig {
  double tol_res = 1e-9;
  double tol_dedup = 1e-6;
  int starts = 10000;
  int max_iter = 100;
  std::uint64_t seed = 0;
  unsigned threads = 1;  // 0 = hardware concurrency
  std::optional<Pin> pin;

  /// Throws std::invalid_argument for non-positive tolerances or counts.
  void validate() const;
};

/// Rigid motion (rotation + translation, no reflection) bringing `pin.a` to
/// the origin and `pin.b` onto the positive x-axis.
PinnedEmbedding repin(const std::vector<Point2>& points, Pin pin);

/// max over edges of | |p_i - p_j|^2 - d_ij | / max(1, d_ij).
double max_relative_residual(const Framework& fw, const std::vector<Point2>& points);

/// Max over vertices of the Euclidean distance between corresponding points.
double embedding_distance(const PinnedEmbedding& a, const PinnedEmbedding& b);

PinnedEmbedding mirrored(const PinnedEmbedding& e);

/// Sort by coordinates rounded to a 10*tol_dedup grid, ties broken by the
/// raw coordinates. Output does not depend on input order.
std::vector<PinnedEmbedding> canonical_order(std::vector<PinnedEmbedding> sols, double tol_dedup);

/// Canonical order, then keep the first of every cluster closer than
/// tol_dedup under embedding_distance.
std::vector<PinnedEmbedding> deduplicate(std::vector<PinnedEmbedding> sols, double tol_dedup);

/// Same size and a one-to-one match within tol under embedding_distance.
bool same_solutions(const std::vector<PinnedEmbedding>& a, const std::vector<PinnedEmbedding>& b,
                    double tol);

/// Complete enumeration of real planar embeddings along a type-I order:
/// base edge pinned, apex in both half-planes, every step branching on a
/// circle-circle intersection. Solutions are re-pinned to cfg.pin (default
/// lowest edge). Throws std::invalid_argument when `seq` has a type-II step,
/// does not rebuild fw.graph(), fw is not planar, or a branch hits
/// concentric circles.
SolutionSet solve_branch(const Framework& fw, const HennebergSequence& seq,
                         const SolverConfig& cfg = {});

/// Multi-start damped Newton on |p_i - p_j|^2 = d_ij with the pin vertices
/// fixed. Returns deduplicated, residual-checked solutions; a lower bound
/// on the true count (complete = false). Requires a planar Laman framework.
SolutionSet solve_newton(const Framework& fw, const SolverConfig& cfg = {});

namespace branch {

/// Partial embeddings over all n vertices; vertices not yet placed hold
/// (0, 0).
using Placement = std::vector<Point2>;

struct Extension {
  std::vector<Placement> placements;
  bool degenerate = false;
};

/// Triangle (x, y, z): x at the origin, y at (l_xy, 0), z in both half-planes.
Extension place_base(int n, int x, int y, int z, double l_xy, double l_xz, double l_yz,
                     double tol);

/// Places `v` at every intersection of circle(p_a, l_va) and circle(p_b, l_vb).
Extension extend(const std::vector<Placement>& current, int v, int a, double l_va, int b,
                 double l_vb, double tol);

}  // namespace branch

}  // namespace rigidlab
