#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "rigidlab/bounds.hpp"
#include "rigidlab/coupler.hpp"
#include "rigidlab/graph.hpp"
#include "rigidlab/rigidity.hpp"
#include "rigidlab/solver.hpp"

namespace rigidlab {

/// Lengths read off a planar embedding.
Framework framework_from_points(const Graph& g, const std::vector<Point2>& points);

/// Lengths read off a seeded embedding with coordinates uniform in [-1, 1].
Framework random_planar_framework(const Graph& g, std::uint64_t seed);

/// Fan triangulation (diagonals from vertex 0) of a seeded convex n-gon,
/// lengths taken from that polygon. Requires n >= 3.
Framework fan_triangulation(int n, std::uint64_t seed);

/// Convex polygon used by fan_triangulation(n, seed).
std::vector<Point2> convex_polygon(int n, std::uint64_t seed);

Graph k33();

/// Triangle on 0, 1, 2; each later vertex joined to two distinct earlier
/// vertices chosen at random.
Graph random_henneberg1_graph(int n, std::uint64_t seed);

/// Relative gap used when synthesising Henneberg-I lengths.
inline constexpr double kLengthSlack = 1e-2;

/// Chooses lengths step by step along a type-I sequence of `g`: with M the
/// largest distance between the attachment vertices over all embeddings
/// built so far, both new bars get length M * (1 + kLengthSlack) / 2.
/// Base triangle and retries are seeded. Throws std::invalid_argument if `g`
/// is not Henneberg-I.
Framework henneberg1_max_lengths(const Graph& g, std::uint64_t seed);

struct SimplexChain {
  Framework framework;
  Embedding<Rational> embedding;
  bool certified = false;  // exact infinitesimal rigidity at `embedding`
};

/// K_{d+1}, then each new vertex joined to the d most recent ones, embedded
/// at seeded random rational points. Requires n >= d+1.
SimplexChain simplex_chain(int d, int n, std::uint64_t seed);

enum class GlueKind { caterpillar, fan };

/// A Desargues framework inside a glued family; `vertices` maps the block
/// layout (A, B, C, P, Q, X) to labels of the glued framework.
struct DesarguesBlock {
  DesarguesParams params;
  std::array<int, 6> vertices{};
};

struct GluedFramework {
  GlueKind kind = GlueKind::caterpillar;
  Framework framework;
  std::vector<DesarguesBlock> blocks;
};

/// Scales every length of the construction.
DesarguesParams scaled(const DesarguesParams& p, double factor);

/// `blocks` copies of the witness chained along edges: block k+1 stands on
/// the coupler bar PQ of block k, scaled to its length. n = 6 + 4(blocks-1).
/// Throws std::invalid_argument if the witness does not have 24 embeddings.
GluedFramework caterpillar(int blocks, const Framework& witness);

struct FanOptions {
  double epsilon = 1e-3;
  std::uint64_t seed = 1;
  int retries = 32;  // perturbation draws per block
};

/// `blocks` perturbed copies of the witness mechanism sharing the base bar
/// and the apex triangle. n = 6 + 3(blocks-1). Each perturbed block keeps
/// the witness radius when it still gives 24 crossings and is refitted
/// otherwise; a block that cannot be brought back to 24 is redrawn.
GluedFramework fan_family(int blocks, const Framework& witness, const FanOptions& options = {});

/// desargues_count of every block relative to its own base bar.
std::vector<int> block_counts(const GluedFramework& glued);

/// Product of per-block counts.
BigInt compositional_count(std::span<const int> per_block_counts);

/// Every real pinned embedding the blocks' crossings compose into: block
/// embeddings are moved rigidly onto their already placed base (and, for
/// fans, the shared apex). Pinned on (0, 1).
std::vector<PinnedEmbedding> enumerate_glued_embeddings(const GluedFramework& glued);

/// Pinned embedding count of a fan family counted directly: the apex side
/// is shared by all blocks, so this is the sum over sides of the product
/// of per-block crossings on that side.
BigInt fan_embedding_count(const GluedFramework& glued);

/// Built-in 24-embedding Desargues framework found by
/// search_desargues_lengths (seed 1).
Framework desargues_witness();

}  // namespace rigidlab
