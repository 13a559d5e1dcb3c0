#pragma once

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rigidlab/graph.hpp"

namespace rigidlab {

/// Adds `vertex` joined to `a` and `b`.
struct TypeIStep {
  int vertex = 0;
  int a = 0;
  int b = 0;
  friend bool operator==(const TypeIStep&, const TypeIStep&) = default;
};

/// Adds `vertex` joined to `a`, `b`, `c` and removes the old edge (a, b).
struct TypeIIStep {
  int vertex = 0;
  int a = 0;
  int b = 0;
  int c = 0;
  Edge removed() const { return {a, b}; }
  friend bool operator==(const TypeIIStep&, const TypeIIStep&) = default;
};

using HennebergStep = std::variant<TypeIStep, TypeIIStep>;

/// Construction of a Laman graph on `n` vertices from the triangle `base`.
/// Vertex labels are those of the target graph.
struct HennebergSequence {
  int n = 3;
  std::array<int, 3> base{0, 1, 2};
  std::vector<HennebergStep> steps;

  bool type_i_only() const;
};

enum class HennebergClass { type_i, type_ii, not_laman };

std::string to_string(HennebergClass c);

struct ExtractOptions {
  /// Only reverse type-I steps (degree-2 removals).
  bool type_i_only = false;
};

/// Reverse search with backtracking: degree-2 removals first, then reverse
/// type-II steps at degree-3 vertices (neighbour pairs in lexicographic
/// order). Returns nullopt when `g` is not Laman or, with `type_i_only`,
/// not Henneberg-I.
std::optional<HennebergSequence> extract_sequence(const Graph& g, ExtractOptions options = {});

HennebergClass classify(const Graph& g);

/// Rebuilds the graph, verifying that every intermediate graph is Laman.
/// Throws std::invalid_argument on malformed steps or a non-Laman stage.
Graph replay(const HennebergSequence& seq);

/// The intermediate graphs G_3, G_4, ... as induced subgraphs, vertices
/// relabelled in order of introduction. Accepts prefixes that do not yet
/// cover all n vertices; same validation as replay().
std::vector<Graph> replay_stages(const HennebergSequence& seq);

}  // namespace rigidlab
