#include "rigidlab/solver.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "rigidlab/parallel.hpp"

namespace rigidlab {

Pin default_pin(const Graph& g) {
  if (g.edge_count() == 0) throw std::invalid_argument("cannot pin a graph without edges");
  const Edge e = g.sorted_edges().front();
  return {e.u, e.v};
}

std::string to_string(SolveMethod m) { return m == SolveMethod::branch ? "branch" : "newton"; }

void SolverConfig::validate() const {
  if (!(tol_res > 0.0)) throw std::invalid_argument("tol_res must be positive");
  if (!(tol_dedup > 0.0)) throw std::invalid_argument("tol_dedup must be positive");
  if (starts < 1) throw std::invalid_argument("starts must be positive");
  if (max_iter < 1) throw std::invalid_argument("max_iter must be positive");
}

PinnedEmbedding repin(const std::vector<Point2>& points, Pin pin) {
  const Point2 origin = points.at(pin.a);
  const Point2 axis = points.at(pin.b) - origin;
  const double len = norm(axis);
  if (len == 0.0) throw std::invalid_argument("pin vertices coincide");
  const double c = axis.x / len;
  const double s = axis.y / len;
  PinnedEmbedding out;
  out.pin = pin;
  out.points.reserve(points.size());
  for (const Point2& p : points) {
    const Point2 q = p - origin;
    out.points.push_back({c * q.x + s * q.y, -s * q.x + c * q.y});
  }
  out.points[pin.a] = {0.0, 0.0};
  out.points[pin.b] = {len, 0.0};
  return out;
}

double max_relative_residual(const Framework& fw, const std::vector<Point2>& points) {
  double worst = 0.0;
  for (const auto& [e, l] : fw.lengths()) {
    const Point2 diff = points.at(e.u) - points.at(e.v);
    const double target = l * l;
    worst = std::max(worst, std::abs(dot(diff, diff) - target) / std::max(1.0, target));
  }
  return worst;
}

double embedding_distance(const PinnedEmbedding& a, const PinnedEmbedding& b) {
  if (a.points.size() != b.points.size()) {
    throw std::invalid_argument("embeddings have different vertex counts");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    worst = std::max(worst, distance(a.points[i], b.points[i]));
  }
  return worst;
}

PinnedEmbedding mirrored(const PinnedEmbedding& e) {
  PinnedEmbedding out = e;
  for (Point2& p : out.points) p = mirror_x(p);
  return out;
}

std::vector<PinnedEmbedding> canonical_order(std::vector<PinnedEmbedding> sols, double tol_dedup) {
  const double grid = 10.0 * tol_dedup;
  struct Keyed {
    std::vector<long long> key;
    PinnedEmbedding sol;
  };
  std::vector<Keyed> keyed;
  keyed.reserve(sols.size());
  for (auto& s : sols) {
    Keyed k;
    for (const Point2& p : s.points) {
      k.key.push_back(std::llround(p.x / grid));
      k.key.push_back(std::llround(p.y / grid));
    }
    k.sol = std::move(s);
    keyed.push_back(std::move(k));
  }
  std::sort(keyed.begin(), keyed.end(), [](const Keyed& l, const Keyed& r) {
    if (l.key != r.key) return l.key < r.key;
    const auto& a = l.sol.points;
    const auto& b = r.sol.points;
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
      if (a[i].x != b[i].x) return a[i].x < b[i].x;
      if (a[i].y != b[i].y) return a[i].y < b[i].y;
    }
    return a.size() < b.size();
  });
  std::vector<PinnedEmbedding> out;
  out.reserve(keyed.size());
  for (auto& k : keyed) out.push_back(std::move(k.sol));
  return out;
}

std::vector<PinnedEmbedding> deduplicate(std::vector<PinnedEmbedding> sols, double tol_dedup) {
  std::vector<PinnedEmbedding> kept;
  for (auto& s : canonical_order(std::move(sols), tol_dedup)) {
    const bool seen = std::any_of(kept.begin(), kept.end(), [&](const PinnedEmbedding& k) {
      return embedding_distance(k, s) <= tol_dedup;
    });
    if (!seen) kept.push_back(std::move(s));
  }
  return kept;
}

bool same_solutions(const std::vector<PinnedEmbedding>& a, const std::vector<PinnedEmbedding>& b,
                    double tol) {
  if (a.size() != b.size()) return false;
  std::vector<bool> used(b.size(), false);
  for (const auto& x : a) {
    bool matched = false;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (!used[j] && embedding_distance(x, b[j]) <= tol) {
        used[j] = true;
        matched = true;
        break;
      }
    }
    if (!matched) return false;
  }
  return true;
}

namespace branch {

Extension place_base(int n, int x, int y, int z, double l_xy, double l_xz, double l_yz,
                     double tol) {
  Placement base(static_cast<std::size_t>(n));
  base[x] = {0.0, 0.0};
  base[y] = {l_xy, 0.0};
  return extend({base}, z, x, l_xz, y, l_yz, tol);
}

Extension extend(const std::vector<Placement>& current, int v, int a, double l_va, int b,
                 double l_vb, double tol) {
  Extension out;
  for (const Placement& p : current) {
    const auto hits = circle_circle(p[a], l_va, p[b], l_vb, tol);
    if (hits.size() == 1) out.degenerate = true;
    for (const Point2& h : hits) {
      Placement next = p;
      next[v] = h;
      out.placements.push_back(std::move(next));
    }
  }
  return out;
}

}  // namespace branch

SolutionSet solve_branch(const Framework& fw, const HennebergSequence& seq,
                         const SolverConfig& cfg) {
  cfg.validate();
  if (fw.dim() != 2) throw std::invalid_argument("branch solver is planar only");
  if (!seq.type_i_only()) throw std::invalid_argument("branch solver needs a type-I sequence");
  if (!replay(seq).same_edges(fw.graph())) {
    throw std::invalid_argument("sequence does not rebuild the framework graph");
  }
  const int n = fw.graph().vertex_count();
  const auto [x, y, z] = seq.base;
  auto ext = branch::place_base(n, x, y, z, fw.length(x, y), fw.length(x, z), fw.length(y, z),
                                cfg.tol_res);
  bool degenerate = ext.degenerate;
  std::vector<branch::Placement> placements = std::move(ext.placements);
  for (const HennebergStep& step : seq.steps) {
    const auto& s = std::get<TypeIStep>(step);
    ext = branch::extend(placements, s.vertex, s.a, fw.length(s.vertex, s.a), s.b,
                         fw.length(s.vertex, s.b), cfg.tol_res);
    degenerate = degenerate || ext.degenerate;
    placements = std::move(ext.placements);
    if (placements.empty()) break;
  }

  const Pin pin = cfg.pin.value_or(default_pin(fw.graph()));
  std::vector<PinnedEmbedding> sols;
  sols.reserve(placements.size());
  for (const auto& p : placements) sols.push_back(repin(p, pin));

  SolutionSet out;
  out.method = SolveMethod::branch;
  out.complete = true;
  out.degenerate = degenerate;
  out.solutions = deduplicate(std::move(sols), cfg.tol_dedup);
  return out;
}

namespace {

// Square system on the free coordinates: every edge except the pin edge,
// with the two pin vertices held fixed.
class PinnedSystem {
 public:
  PinnedSystem(const Framework& fw, Pin pin) : fw_(fw), pin_(pin) {
    const int n = fw.graph().vertex_count();
    slot_.assign(static_cast<std::size_t>(n), -1);
    int next = 0;
    for (int v = 0; v < n; ++v) {
      if (v != pin.a && v != pin.b) slot_[v] = next++;
    }
    unknowns_ = 2 * next;
    for (const auto& [e, l] : fw.lengths()) {
      if (e == Edge(pin.a, pin.b)) continue;
      edges_.push_back(e);
      targets_.push_back(l * l);
    }
    base_.assign(static_cast<std::size_t>(n), Point2{});
    base_[pin.b] = {fw.length(pin.a, pin.b), 0.0};
  }

  int unknowns() const { return unknowns_; }

  std::vector<Point2> points(const Eigen::VectorXd& x) const {
    std::vector<Point2> p = base_;
    for (std::size_t v = 0; v < slot_.size(); ++v) {
      if (slot_[v] >= 0) p[v] = {x[2 * slot_[v]], x[2 * slot_[v] + 1]};
    }
    return p;
  }

  Eigen::VectorXd residual(const Eigen::VectorXd& x) const {
    const auto p = points(x);
    Eigen::VectorXd f(static_cast<Eigen::Index>(edges_.size()));
    for (std::size_t k = 0; k < edges_.size(); ++k) {
      const Point2 d = p[edges_[k].u] - p[edges_[k].v];
      f[static_cast<Eigen::Index>(k)] = dot(d, d) - targets_[k];
    }
    return f;
  }

  double relative_residual(const Eigen::VectorXd& f) const {
    double worst = 0.0;
    for (std::size_t k = 0; k < targets_.size(); ++k) {
      worst = std::max(worst, std::abs(f[static_cast<Eigen::Index>(k)]) /
                                  std::max(1.0, targets_[k]));
    }
    return worst;
  }

  Eigen::MatrixXd jacobian(const Eigen::VectorXd& x) const {
    const auto p = points(x);
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(edges_.size()), unknowns_);
    for (std::size_t k = 0; k < edges_.size(); ++k) {
      const auto row = static_cast<Eigen::Index>(k);
      const Edge e = edges_[k];
      const Point2 d = p[e.u] - p[e.v];
      if (slot_[e.u] >= 0) {
        j(row, 2 * slot_[e.u]) = 2.0 * d.x;
        j(row, 2 * slot_[e.u] + 1) = 2.0 * d.y;
      }
      if (slot_[e.v] >= 0) {
        j(row, 2 * slot_[e.v]) = -2.0 * d.x;
        j(row, 2 * slot_[e.v] + 1) = -2.0 * d.y;
      }
    }
    return j;
  }

 private:
  const Framework& fw_;
  Pin pin_;
  std::vector<int> slot_;
  int unknowns_ = 0;
  std::vector<Edge> edges_;
  std::vector<double> targets_;
  std::vector<Point2> base_;
};

constexpr int kMaxHalvings = 30;
constexpr int kPolishSteps = 3;
constexpr double kSingularRatio = 1e-8;

struct NewtonOutcome {
  bool converged = false;
  bool singular = false;
  std::vector<Point2> points;
};

NewtonOutcome run_newton(const PinnedSystem& sys, Eigen::VectorXd x, const SolverConfig& cfg) {
  NewtonOutcome out;
  Eigen::VectorXd f = sys.residual(x);
  double fnorm = f.norm();
  bool converged = sys.relative_residual(f) <= cfg.tol_res;
  for (int it = 0; it < cfg.max_iter && !converged; ++it) {
    const Eigen::MatrixXd j = sys.jacobian(x);
    const Eigen::VectorXd step = j.colPivHouseholderQr().solve(-f);
    if (!step.allFinite()) return out;
    double t = 1.0;
    bool improved = false;
    for (int h = 0; h <= kMaxHalvings; ++h, t *= 0.5) {
      const Eigen::VectorXd trial = x + t * step;
      const Eigen::VectorXd ft = sys.residual(trial);
      const double tn = ft.norm();
      if (std::isfinite(tn) && tn < fnorm) {
        x = trial;
        f = ft;
        fnorm = tn;
        improved = true;
        break;
      }
    }
    if (!improved) return out;
    converged = sys.relative_residual(f) <= cfg.tol_res;
  }
  if (!converged) return out;

  for (int k = 0; k < kPolishSteps; ++k) {
    const Eigen::VectorXd step = sys.jacobian(x).colPivHouseholderQr().solve(-f);
    if (!step.allFinite()) break;
    const Eigen::VectorXd trial = x + step;
    const Eigen::VectorXd ft = sys.residual(trial);
    if (!(ft.norm() < fnorm)) break;
    x = trial;
    f = ft;
    fnorm = ft.norm();
  }

  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(sys.jacobian(x));
  const auto& sv = svd.singularValues();
  out.converged = true;
  out.singular = sv.size() > 0 && sv[sv.size() - 1] <= kSingularRatio * sv[0];
  out.points = sys.points(x);
  return out;
}

}  // namespace

SolutionSet solve_newton(const Framework& fw, const SolverConfig& cfg) {
  cfg.validate();
  if (fw.dim() != 2) throw std::invalid_argument("Newton solver is planar only");
  if (!laman_check(fw.graph())) throw std::invalid_argument("Newton solver needs a Laman graph");
  const Pin pin = cfg.pin.value_or(default_pin(fw.graph()));
  if (!fw.graph().has_edge(pin.a, pin.b)) throw std::invalid_argument("pin must be an edge");

  const PinnedSystem sys(fw, pin);
  const double box = fw.total_length();
  const auto starts = static_cast<std::size_t>(cfg.starts);
  std::vector<NewtonOutcome> outcomes(starts);

  parallel_for(starts, cfg.threads, [&](std::size_t i) {
    std::mt19937_64 rng(split_seed(cfg.seed, i));
    std::uniform_real_distribution<double> coord(-box, box);
    Eigen::VectorXd x(sys.unknowns());
    for (Eigen::Index k = 0; k < x.size(); ++k) x[k] = coord(rng);
    outcomes[i] = run_newton(sys, std::move(x), cfg);
  });

  std::vector<PinnedEmbedding> regular;
  std::vector<PinnedEmbedding> singular;
  for (auto& o : outcomes) {
    if (!o.converged) continue;
    PinnedEmbedding e{std::move(o.points), pin};
    if (max_relative_residual(fw, e.points) > cfg.tol_res) continue;
    (o.singular ? singular : regular).push_back(std::move(e));
  }

  SolutionSet out;
  out.method = SolveMethod::newton;
  out.complete = false;
  out.solutions = deduplicate(std::move(regular), cfg.tol_dedup);
  out.non_generic = deduplicate(std::move(singular), cfg.tol_dedup);
  return out;
}

}  // namespace rigidlab
