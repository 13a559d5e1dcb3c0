#include "rigidlab/families.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "rigidlab/parallel.hpp"

namespace rigidlab {

namespace {

constexpr double kGlueTol = 1e-7;

std::map<Edge, double> lengths_from(const Graph& g, const std::vector<Point2>& points) {
  std::map<Edge, double> lengths;
  for (const Edge& e : g.edges()) lengths[e] = distance(points[e.u], points[e.v]);
  return lengths;
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Rigid motion taking (a0, b0) onto (a1, b1); |a0 b0| == |a1 b1| is assumed.
struct Motion {
  Point2 from;
  Point2 to;
  double c = 1.0;
  double s = 0.0;

  Point2 operator()(Point2 p) const {
    const Point2 q = p - from;
    return Point2{c * q.x - s * q.y, s * q.x + c * q.y} + to;
  }
};

Motion motion_between(Point2 a0, Point2 b0, Point2 a1, Point2 b1) {
  const Point2 u = b0 - a0;
  const Point2 w = b1 - a1;
  const double angle = std::atan2(w.y, w.x) - std::atan2(u.y, u.x);
  return Motion{a0, a1, std::cos(angle), std::sin(angle)};
}

void add_bar(Graph& g, std::map<Edge, double>& lengths, int u, int v, double len) {
  g.add_edge(u, v);
  lengths[Edge(u, v)] = len;
}

bool has_24(const DesarguesCount& c) {
  return c.total == 24 && c.resolution_stable && c.tangencies == 0;
}

}  // namespace

Framework framework_from_points(const Graph& g, const std::vector<Point2>& points) {
  if (static_cast<int>(points.size()) != g.vertex_count()) {
    throw std::invalid_argument("framework_from_points: point count differs from vertex count");
  }
  return Framework(g, 2, lengths_from(g, points));
}

Framework random_planar_framework(const Graph& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Point2> pts(static_cast<std::size_t>(g.vertex_count()));
  for (auto& p : pts) p = {uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0)};
  return framework_from_points(g, pts);
}

std::vector<Point2> convex_polygon(int n, std::uint64_t seed) {
  if (n < 3) throw std::invalid_argument("convex_polygon: need n >= 3");
  std::mt19937_64 rng(seed);
  const double a = uniform(rng, 1.0, 2.0);
  const double b = a * uniform(rng, 0.6, 1.0);
  const double step = 2.0 * std::numbers::pi / n;
  std::vector<Point2> pts;
  pts.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    // jitter stays inside the slot, so angles remain strictly increasing
    const double t = step * (k + uniform(rng, 0.2, 0.8));
    pts.push_back({a * std::cos(t), b * std::sin(t)});
  }
  return pts;
}

Framework fan_triangulation(int n, std::uint64_t seed) {
  const auto pts = convex_polygon(n, seed);
  Graph g(n);
  for (int k = 0; k + 1 < n; ++k) g.add_edge(k, k + 1);
  g.add_edge(0, n - 1);
  for (int k = 2; k <= n - 2; ++k) g.add_edge(0, k);
  return framework_from_points(g, pts);
}

Graph k33() {
  Graph g(6);
  for (int i = 0; i < 3; ++i) {
    for (int j = 3; j < 6; ++j) g.add_edge(i, j);
  }
  return g;
}

Graph random_henneberg1_graph(int n, std::uint64_t seed) {
  if (n < 3) throw std::invalid_argument("random_henneberg1_graph: need n >= 3");
  std::mt19937_64 rng(seed);
  Graph g(n);
  g.add_edge(0, 1);
  g.add_edge(0, 2);
  g.add_edge(1, 2);
  for (int v = 3; v < n; ++v) {
    std::uniform_int_distribution<int> pick(0, v - 1);
    const int a = pick(rng);
    int b = pick(rng);
    while (b == a) b = pick(rng);
    g.add_edge(v, a);
    g.add_edge(v, b);
  }
  return g;
}

Framework henneberg1_max_lengths(const Graph& g, std::uint64_t seed) {
  const auto seq = extract_sequence(g, ExtractOptions{.type_i_only = true});
  if (!seq) throw std::invalid_argument("henneberg1_max_lengths: graph is not Henneberg-I");
  const int n = g.vertex_count();
  const auto [x, y, z] = seq->base;
  constexpr int kAttempts = 64;
  constexpr double kTol = 1e-12;

  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    std::mt19937_64 rng(split_seed(seed, static_cast<std::uint64_t>(attempt)));
    const Point2 px{0.0, 0.0};
    const Point2 py{uniform(rng, 1.0, 2.0), 0.0};
    const Point2 pz{uniform(rng, -0.5, 2.5), uniform(rng, 0.3, 1.5)};
    std::map<Edge, double> lengths;
    lengths[Edge(x, y)] = distance(px, py);
    lengths[Edge(x, z)] = distance(px, pz);
    lengths[Edge(y, z)] = distance(py, pz);
    auto ext = branch::place_base(n, x, y, z, lengths[Edge(x, y)], lengths[Edge(x, z)],
                                  lengths[Edge(y, z)], kTol);
    bool ok = !ext.degenerate;

    for (const auto& step : seq->steps) {
      if (!ok) break;
      const auto& s = std::get<TypeIStep>(step);
      double hi = 0.0;
      double lo = std::numeric_limits<double>::infinity();
      for (const auto& p : ext.placements) {
        const double d = distance(p[s.a], p[s.b]);
        hi = std::max(hi, d);
        lo = std::min(lo, d);
      }
      // coincident attachment points in some embedding: the circles would be
      // concentric there, so draw a new base
      if (lo <= 1e-9 * std::max(1.0, hi)) {
        ok = false;
        break;
      }
      const double len = hi * (1.0 + kLengthSlack) / 2.0;
      lengths[Edge(s.vertex, s.a)] = len;
      lengths[Edge(s.vertex, s.b)] = len;
      ext = branch::extend(ext.placements, s.vertex, s.a, len, s.b, len, kTol);
      ok = !ext.degenerate;
    }
    if (ok) return Framework(g, 2, std::move(lengths));
  }
  throw std::runtime_error("henneberg1_max_lengths: no nondegenerate lengths after retries");
}

SimplexChain simplex_chain(int d, int n, std::uint64_t seed) {
  if (d < 1) throw std::invalid_argument("simplex_chain: need d >= 1");
  if (n < d + 1) throw std::invalid_argument("simplex_chain: need n >= d+1");
  Graph g(n);
  for (int i = 0; i <= d; ++i) {
    for (int j = i + 1; j <= d; ++j) g.add_edge(i, j);
  }
  for (int v = d + 1; v < n; ++v) {
    for (int k = 1; k <= d; ++k) g.add_edge(v, v - k);
  }
  SimplexChain out;
  out.embedding = random_rational_embedding(n, d, seed);
  std::map<Edge, double> lengths;
  for (const Edge& e : g.edges()) {
    Rational sq = 0;
    for (int k = 0; k < d; ++k) {
      const Rational diff = out.embedding.at(e.u, k) - out.embedding.at(e.v, k);
      sq += diff * diff;
    }
    lengths[e] = std::sqrt(sq.get_d());
  }
  out.certified = infinitesimally_rigid(g, out.embedding);
  out.framework = Framework(std::move(g), d, std::move(lengths));
  return out;
}

DesarguesParams scaled(const DesarguesParams& p, double factor) {
  if (!(factor > 0.0)) throw std::invalid_argument("scaled: factor must be positive");
  DesarguesParams q = p;
  q.mechanism.ground *= factor;
  q.mechanism.crank *= factor;
  q.mechanism.follower *= factor;
  q.mechanism.coupler *= factor;
  q.mechanism.offset = q.mechanism.offset * factor;
  q.apex_a *= factor;
  q.apex_b *= factor;
  q.radius *= factor;
  return q;
}

GluedFramework caterpillar(int blocks, const Framework& witness) {
  if (blocks < 1) throw std::invalid_argument("caterpillar: need at least one block");
  const DesarguesParams base = desargues_params(witness);
  if (!has_24(desargues_count(base))) {
    throw std::invalid_argument("caterpillar: witness does not have 24 embeddings");
  }
  const int n = 6 + 4 * (blocks - 1);
  Graph g(n);
  std::map<Edge, double> lengths;
  GluedFramework out;
  out.kind = GlueKind::caterpillar;

  int prev_p = -1;
  int prev_q = -1;
  double prev_coupler = 0.0;
  for (int k = 0; k < blocks; ++k) {
    DesarguesBlock blk;
    if (k == 0) {
      blk.params = base;
      blk.vertices = {0, 1, 2, 3, 4, 5};
    } else {
      const int first = 6 + 4 * (k - 1);
      blk.params = scaled(base, prev_coupler / base.mechanism.ground);
      blk.vertices = {prev_p, prev_q, first, first + 1, first + 2, first + 3};
    }
    const auto& m = blk.params.mechanism;
    const auto [a, b, c, p, q, x] = blk.vertices;
    if (k == 0) add_bar(g, lengths, a, b, m.ground);  // later bases are the previous PQ
    add_bar(g, lengths, a, c, blk.params.apex_a);
    add_bar(g, lengths, b, c, blk.params.apex_b);
    add_bar(g, lengths, a, p, m.crank);
    add_bar(g, lengths, b, q, m.follower);
    add_bar(g, lengths, p, q, m.coupler);
    add_bar(g, lengths, p, x, m.coupler_side_p());
    add_bar(g, lengths, q, x, m.coupler_side_q());
    add_bar(g, lengths, c, x, blk.params.radius);
    prev_p = p;
    prev_q = q;
    prev_coupler = m.coupler;
    out.blocks.push_back(blk);
  }
  out.framework = Framework(std::move(g), 2, std::move(lengths));
  return out;
}

GluedFramework fan_family(int blocks, const Framework& witness, const FanOptions& options) {
  if (blocks < 1) throw std::invalid_argument("fan_family: need at least one block");
  if (!(options.epsilon >= 0.0)) throw std::invalid_argument("fan_family: negative epsilon");
  if (options.retries < 1) throw std::invalid_argument("fan_family: need retries >= 1");
  const DesarguesParams base = desargues_params(witness);
  if (!has_24(desargues_count(base))) {
    throw std::invalid_argument("fan_family: witness does not have 24 embeddings");
  }
  const auto apex = base.apex_positions();

  const int n = 6 + 3 * (blocks - 1);
  Graph g(n);
  std::map<Edge, double> lengths;
  add_bar(g, lengths, 0, 1, base.mechanism.ground);
  add_bar(g, lengths, 0, 2, base.apex_a);
  add_bar(g, lengths, 1, 2, base.apex_b);

  GluedFramework out;
  out.kind = GlueKind::fan;
  for (int k = 0; k < blocks; ++k) {
    DesarguesBlock blk;
    blk.vertices = {0, 1, 2, 3 + 3 * k, 4 + 3 * k, 5 + 3 * k};
    bool found = false;
    if (k == 0) {
      blk.params = base;
      found = true;
    }
    for (int r = 0; !found && r < options.retries; ++r) {
      const auto s = split_seed(options.seed,
                                static_cast<std::uint64_t>(k) * 1000003u + static_cast<std::uint64_t>(r));
      DesarguesParams cand = base;
      cand.mechanism = perturb_mechanism(base.mechanism, options.epsilon, s);
      if (has_24(desargues_count(cand))) {
        blk.params = cand;
        found = true;
        break;
      }
      cand.radius = fit_radius(cand.mechanism, apex.front()).radius;
      if (cand.radius > 0.0 && has_24(desargues_count(cand))) {
        blk.params = cand;
        found = true;
      }
    }
    if (!found) {
      throw std::runtime_error("fan_family: block " + std::to_string(k) +
                               " lost its 24 embeddings under every perturbation draw");
    }
    const auto& m = blk.params.mechanism;
    const auto [a, b, c, p, q, x] = blk.vertices;
    add_bar(g, lengths, a, p, m.crank);
    add_bar(g, lengths, b, q, m.follower);
    add_bar(g, lengths, p, q, m.coupler);
    add_bar(g, lengths, p, x, m.coupler_side_p());
    add_bar(g, lengths, q, x, m.coupler_side_q());
    add_bar(g, lengths, c, x, blk.params.radius);
    out.blocks.push_back(blk);
  }
  out.framework = Framework(std::move(g), 2, std::move(lengths));
  return out;
}

std::vector<int> block_counts(const GluedFramework& glued) {
  std::vector<int> counts;
  counts.reserve(glued.blocks.size());
  for (const auto& b : glued.blocks) counts.push_back(desargues_count(b.params).total);
  return counts;
}

BigInt compositional_count(std::span<const int> per_block_counts) {
  BigInt out = 1;
  for (int c : per_block_counts) {
    if (c < 0) throw std::invalid_argument("compositional_count: negative count");
    out *= c;
  }
  return out;
}

std::vector<PinnedEmbedding> enumerate_glued_embeddings(const GluedFramework& glued) {
  const int n = glued.framework.graph().vertex_count();
  std::vector<std::vector<PinnedEmbedding>> local;
  local.reserve(glued.blocks.size());
  for (const auto& b : glued.blocks) {
    local.push_back(desargues_embeddings(b.params, desargues_count(b.params)));
  }

  std::vector<PinnedEmbedding> out;
  std::vector<Point2> pts(static_cast<std::size_t>(n));
  std::vector<char> placed(static_cast<std::size_t>(n), 0);
  const double scale = glued.framework.total_length();

  auto recurse = [&](auto&& self, std::size_t k) -> void {
    if (k == glued.blocks.size()) {
      out.push_back(PinnedEmbedding{pts, Pin{0, 1}});
      return;
    }
    const auto& vs = glued.blocks[k].vertices;
    for (const auto& e : local[k]) {
      Motion mv{};
      if (k == 0) {
        mv = Motion{{0.0, 0.0}, {0.0, 0.0}, 1.0, 0.0};
      } else {
        mv = motion_between(e.points[0], e.points[1], pts[vs[0]], pts[vs[1]]);
      }
      std::vector<int> fresh;
      bool consistent = true;
      for (int i = 0; i < 6 && consistent; ++i) {
        const Point2 p = mv(e.points[i]);
        if (placed[vs[i]]) {
          consistent = distance(p, pts[vs[i]]) <= kGlueTol * std::max(1.0, scale);
        } else {
          pts[vs[i]] = p;
          placed[vs[i]] = 1;
          fresh.push_back(vs[i]);
        }
      }
      if (consistent) self(self, k + 1);
      for (int v : fresh) placed[v] = 0;
    }
  };
  recurse(recurse, 0);
  return out;
}

BigInt fan_embedding_count(const GluedFramework& glued) {
  if (glued.kind != GlueKind::fan) {
    throw std::invalid_argument("fan_embedding_count: not a fan family");
  }
  BigInt above = 1;
  BigInt below = 1;
  for (const auto& b : glued.blocks) {
    const auto c = desargues_count(b.params);
    above *= c.above();
    below *= c.below();
  }
  return above + below;
}

Framework desargues_witness() {
  DesarguesParams p;
  p.mechanism.ground = 1.0;
  p.mechanism.crank = 1.4246700597798687;
  p.mechanism.follower = 2.2532066953732839;
  p.mechanism.coupler = 2.2481405410636133;
  p.mechanism.offset = {0.72127651268197557, -1.5563473599971667};
  p.apex_a = 1.1826794098168845;
  p.apex_b = 1.8853273802815771;
  p.radius = 1.8087261473809246;
  return desargues_framework(p);
}

}  // namespace rigidlab
