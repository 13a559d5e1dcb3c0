#include "rigidlab/coupler.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "rigidlab/parallel.hpp"

namespace rigidlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kAngleTol = 1e-12;
constexpr int kBisectIterations = 80;
constexpr std::size_t kCoincidentRun = 16;

}  // namespace

void FourBar::validate() const {
  if (!(ground > 0.0) || !(crank > 0.0) || !(follower > 0.0) || !(coupler > 0.0)) {
    throw std::invalid_argument("four-bar link lengths must be positive");
  }
  if (!std::isfinite(offset.x) || !std::isfinite(offset.y)) {
    throw std::invalid_argument("four-bar coupler offset must be finite");
  }
}

std::optional<CouplerPose> coupler_pose(const FourBar& fb, double theta, Branch branch) {
  const Point2 p{fb.crank * std::cos(theta), fb.crank * std::sin(theta)};
  const Point2 b{fb.ground, 0.0};
  const Point2 pb = b - p;
  const double d = norm(pb);
  if (d < 1e-15) return std::nullopt;
  const double c = fb.coupler;
  const double a = (d * d + c * c - fb.follower * fb.follower) / (2.0 * d);
  const double h2 = c * c - a * a;
  if (h2 < -1e-12 * std::max(1.0, c * c)) return std::nullopt;
  const double h = std::sqrt(std::max(h2, 0.0));
  const Point2 e = pb * (1.0 / d);
  const Point2 n = rotate90(e);
  const Point2 q = p + e * a + n * (branch == Branch::plus ? h : -h);
  const Point2 pq = q - p;
  const double len = norm(pq);
  if (len == 0.0) return std::nullopt;
  const Point2 ux = pq * (1.0 / len);
  const Point2 uy = rotate90(ux);
  return CouplerPose{p, q, p + ux * fb.offset.x + uy * fb.offset.y};
}

std::optional<Point2> coupler_point(const FourBar& fb, double theta, Branch branch) {
  if (auto pose = coupler_pose(fb, theta, branch)) return pose->point;
  return std::nullopt;
}

namespace {

// Signed slack of the dyad closure condition; >= 0 where the linkage
// assembles.
double closure_slack(const FourBar& fb, double theta) {
  const Point2 p{fb.crank * std::cos(theta), fb.crank * std::sin(theta)};
  const double d = distance(p, Point2{fb.ground, 0.0});
  return std::min(d - std::abs(fb.coupler - fb.follower), fb.coupler + fb.follower - d);
}

// Boundary between an infeasible angle `out` and a feasible angle `in`,
// returned on the feasible side.
double bisect_boundary(const FourBar& fb, double out, double in, double slack_tol) {
  for (int i = 0; i < kBisectIterations && std::abs(in - out) > kAngleTol; ++i) {
    const double mid = 0.5 * (in + out);
    if (closure_slack(fb, mid) >= -slack_tol) {
      in = mid;
    } else {
      out = mid;
    }
  }
  return in;
}

}  // namespace

std::vector<BranchArc> assembly_arcs(const FourBar& fb, int resolution) {
  fb.validate();
  if (resolution < 360) throw std::invalid_argument("assembly_arcs needs resolution >= 360");
  const double slack_tol = 1e-12 * std::max({1.0, fb.coupler, fb.follower, fb.ground});
  const int n = resolution;
  std::vector<bool> ok(static_cast<std::size_t>(n));
  int feasible = 0;
  for (int k = 0; k < n; ++k) {
    ok[k] = closure_slack(fb, kTwoPi * k / n) >= -slack_tol;
    feasible += ok[k] ? 1 : 0;
  }
  std::vector<BranchArc> arcs;
  if (feasible == 0) return arcs;
  if (feasible == n) {
    for (Branch br : {Branch::plus, Branch::minus}) arcs.push_back({br, 0.0, kTwoPi, true});
    return arcs;
  }
  int start = 0;
  while (ok[start]) ++start;  // an infeasible sample anchors the scan
  std::vector<std::pair<double, double>> intervals;
  for (int k = start + 1; k <= start + n; ++k) {
    if (!ok[k % n] || ok[(k - 1) % n]) continue;
    int end = k;
    while (ok[(end + 1) % n]) ++end;
    const double lo = bisect_boundary(fb, kTwoPi * (k - 1) / n, kTwoPi * k / n, slack_tol);
    const double hi = bisect_boundary(fb, kTwoPi * (end + 1) / n, kTwoPi * end / n, slack_tol);
    intervals.emplace_back(lo, hi);
    k = end;
  }
  for (Branch br : {Branch::plus, Branch::minus}) {
    for (const auto& [lo, hi] : intervals) arcs.push_back({br, lo, hi, false});
  }
  return arcs;
}

namespace {

struct Profile {
  std::vector<double> theta;
  std::vector<double> value;
  std::vector<bool> valid;
  bool closed = false;
};

template <typename F>
Profile sample_arc(const BranchArc& arc, int resolution, F&& f) {
  Profile prof;
  prof.closed = arc.full_turn;
  const int samples = arc.full_turn ? resolution : resolution + 1;
  prof.theta.resize(static_cast<std::size_t>(samples));
  prof.value.resize(static_cast<std::size_t>(samples));
  prof.valid.resize(static_cast<std::size_t>(samples));
  for (int k = 0; k < samples; ++k) {
    double t = arc.lo + (arc.hi - arc.lo) * k / resolution;
    auto v = f(t);
    // bisected arc ends can sit a rounding error outside assembly
    if (!v && !arc.full_turn && (k == 0 || k + 1 == samples)) {
      const double inward = k == 0 ? 1.0 : -1.0;
      for (double step = 1e-13; !v && step < 1e-6; step *= 10.0) {
        t = (k == 0 ? arc.lo : arc.hi) + inward * step * std::max(1.0, arc.hi - arc.lo);
        v = f(t);
      }
    }
    prof.theta[k] = t;
    prof.valid[k] = v.has_value();
    prof.value[k] = v.value_or(0.0);
  }
  return prof;
}

}  // namespace

CrossingSet circle_crossings(const FourBar& fb, Branch branch, const Circle& circle,
                             int resolution) {
  if (resolution < 3600) throw std::invalid_argument("circle_crossings needs resolution >= 3600");
  if (!(circle.radius > 0.0)) throw std::invalid_argument("circle radius must be positive");
  const double r2 = circle.radius * circle.radius;
  auto f = [&](double t) -> std::optional<double> {
    const auto x = coupler_point(fb, t, branch);
    if (!x) return std::nullopt;
    const Point2 d = *x - circle.center;
    return dot(d, d) - r2;
  };
  const double scale = std::max(1.0, r2);
  const double degenerate_tol = 1e-10 * scale;
  const double tangent_tol = 1e-9 * scale;

  CrossingSet out;
  for (const BranchArc& arc : assembly_arcs(fb, resolution)) {
    if (arc.branch != branch) continue;
    const Profile prof = sample_arc(arc, resolution, f);
    const auto samples = prof.value.size();

    // A transversal root or a tangency leaves at most a couple of samples
    // near zero; a long run means the curve runs along the circle.
    std::size_t run = 0;
    std::size_t longest = 0;
    for (std::size_t k = 0; k < samples; ++k) {
      run = prof.valid[k] && std::abs(prof.value[k]) <= degenerate_tol ? run + 1 : 0;
      longest = std::max(longest, run);
    }
    if (longest >= std::min(kCoincidentRun, samples)) {
      throw std::domain_error("coupler curve coincides with the circle along an arc");
    }

    auto positive = [](double v) { return v > 0.0; };
    auto bisect_root = [&](double lo, double hi, bool lo_positive) {
      for (int i = 0; i < kBisectIterations && std::abs(hi - lo) > kAngleTol; ++i) {
        const double mid = 0.5 * (lo + hi);
        const auto v = f(mid);
        if (!v) break;
        if (positive(*v) == lo_positive) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      return 0.5 * (lo + hi);
    };

    const std::size_t pairs = prof.closed ? samples : samples - 1;
    for (std::size_t k = 0; k < pairs; ++k) {
      const std::size_t j = (k + 1) % samples;
      if (!prof.valid[k] || !prof.valid[j]) continue;
      const double t0 = prof.theta[k];
      const double t1 = prof.closed && j == 0 ? prof.theta[0] + kTwoPi : prof.theta[j];
      const bool s0 = positive(prof.value[k]);
      if (s0 != positive(prof.value[j])) out.roots.push_back(bisect_root(t0, t1, s0));
    }

    // Local minima of |f| without a sign change: either a tangency or a
    // pair of roots that fell between two samples.
    for (std::size_t k = 0; k < samples; ++k) {
      if (!prof.closed && (k == 0 || k + 1 == samples)) continue;
      const std::size_t prev = (k + samples - 1) % samples;
      const std::size_t next = (k + 1) % samples;
      if (!prof.valid[k] || !prof.valid[prev] || !prof.valid[next]) continue;
      const double v = prof.value[k];
      const bool s = positive(v);
      if (positive(prof.value[prev]) != s || positive(prof.value[next]) != s) continue;
      if (std::abs(v) >= std::abs(prof.value[prev]) || std::abs(v) > std::abs(prof.value[next])) {
        continue;
      }
      const double sign = s ? 1.0 : -1.0;
      double lo = prof.theta[prev];
      double hi = prof.theta[next];
      if (prof.closed && next == 0) hi += kTwoPi;
      if (prof.closed && prev + 1 == samples && k == 0) lo -= kTwoPi;
      double a = lo;
      double b = hi;
      bool crossed = false;
      double crossing = 0.0;
      for (int i = 0; i < 100 && b - a > kAngleTol; ++i) {
        const double m1 = a + (b - a) / 3.0;
        const double m2 = b - (b - a) / 3.0;
        const auto f1 = f(m1);
        const auto f2 = f(m2);
        if (!f1 || !f2) break;
        if (positive(*f1) != s) {
          crossed = true;
          crossing = m1;
          break;
        }
        if (positive(*f2) != s) {
          crossed = true;
          crossing = m2;
          break;
        }
        if (sign * *f1 < sign * *f2) {
          b = m2;
        } else {
          a = m1;
        }
      }
      if (crossed) {
        out.roots.push_back(bisect_root(lo, crossing, s));
        out.roots.push_back(bisect_root(crossing, hi, !s));
        continue;
      }
      const auto fmin = f(0.5 * (a + b));
      if (fmin && std::abs(*fmin) <= tangent_tol) out.tangencies.push_back(0.5 * (a + b));
    }
  }
  std::sort(out.roots.begin(), out.roots.end());
  return out;
}

std::vector<std::vector<Point2>> coupler_curve(const FourBar& fb, Branch branch, int resolution) {
  std::vector<std::vector<Point2>> curves;
  for (const BranchArc& arc : assembly_arcs(fb, std::max(resolution, 360))) {
    if (arc.branch != branch) continue;
    std::vector<Point2> poly;
    const int samples = arc.full_turn ? resolution + 1 : resolution + 1;
    for (int k = 0; k < samples; ++k) {
      const double t = arc.lo + (arc.hi - arc.lo) * k / resolution;
      if (auto x = coupler_point(fb, t, branch)) poly.push_back(*x);
    }
    curves.push_back(std::move(poly));
  }
  return curves;
}

std::vector<Point2> DesarguesParams::apex_positions() const {
  try {
    return circle_circle({0.0, 0.0}, apex_a, {mechanism.ground, 0.0}, apex_b, 1e-12);
  } catch (const std::invalid_argument&) {
    return {};
  }
}

namespace {

// Bezout on a sextic and a conic.
constexpr int kMaxCrossingsPerCurve = 12;

struct CurveCounts {
  std::array<std::array<int, 2>, 2> per_curve{};
  int tangencies = 0;
  std::vector<DesarguesCrossing> crossings;
};

CurveCounts count_curves(const DesarguesParams& params, int resolution) {
  CurveCounts out;
  const auto apexes = params.apex_positions();
  for (std::size_t side = 0; side < apexes.size(); ++side) {
    const Circle circle{apexes[side], params.radius};
    for (int flip = 0; flip < 2; ++flip) {
      const FourBar fb = flip ? params.mechanism.flipped() : params.mechanism;
      int count = 0;
      for (Branch br : {Branch::plus, Branch::minus}) {
        const CrossingSet cs = circle_crossings(fb, br, circle, resolution);
        count += static_cast<int>(cs.roots.size());
        out.tangencies += static_cast<int>(cs.tangencies.size());
        for (double t : cs.roots) out.crossings.push_back({flip == 1, side == 0, br, t});
      }
      if (count > kMaxCrossingsPerCurve) {
        throw std::logic_error("coupler curve meets a circle in " + std::to_string(count) +
                               " points, more than a sextic allows");
      }
      out.per_curve[flip][side] = count;
    }
  }
  return out;
}

}  // namespace

DesarguesCount desargues_count(const DesarguesParams& params, int resolution) {
  params.mechanism.validate();
  if (!(params.radius > 0.0)) throw std::invalid_argument("circle radius must be positive");
  CurveCounts base = count_curves(params, resolution);
  const CurveCounts fine = count_curves(params, 2 * resolution);
  DesarguesCount out;
  out.per_curve = base.per_curve;
  out.tangencies = base.tangencies;
  out.crossings = std::move(base.crossings);
  out.resolution_stable = base.per_curve == fine.per_curve;
  for (const auto& row : out.per_curve) {
    for (int c : row) out.total += c;
  }
  return out;
}

std::vector<PinnedEmbedding> desargues_embeddings(const DesarguesParams& params,
                                                  const DesarguesCount& count) {
  const auto apexes = params.apex_positions();
  std::vector<PinnedEmbedding> out;
  for (const DesarguesCrossing& c : count.crossings) {
    const FourBar fb = c.flipped ? params.mechanism.flipped() : params.mechanism;
    const auto pose = coupler_pose(fb, c.theta, c.branch);
    if (!pose) continue;
    const Point2 apex = apexes.at(c.above ? 0 : 1);
    PinnedEmbedding e;
    e.pin = {0, 1};
    e.points = {{0.0, 0.0}, {fb.ground, 0.0}, apex, pose->crank_tip, pose->follower_tip,
                pose->point};
    out.push_back(std::move(e));
  }
  return out;
}

Graph desargues_graph() {
  return Graph(6, {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}, {0, 3}, {1, 4}, {2, 5}});
}

Framework desargues_framework(const DesarguesParams& params) {
  const FourBar& fb = params.mechanism;
  fb.validate();
  std::map<Edge, double> lengths{
      {Edge(0, 1), fb.ground},         {Edge(0, 2), params.apex_a},
      {Edge(1, 2), params.apex_b},     {Edge(0, 3), fb.crank},
      {Edge(1, 4), fb.follower},       {Edge(3, 4), fb.coupler},
      {Edge(3, 5), fb.coupler_side_p()}, {Edge(4, 5), fb.coupler_side_q()},
      {Edge(2, 5), params.radius},
  };
  return Framework(desargues_graph(), 2, std::move(lengths));
}

DesarguesParams desargues_params(const Framework& fw) {
  if (fw.dim() != 2 || !fw.graph().same_edges(desargues_graph())) {
    throw std::invalid_argument("framework is not in the Desargues vertex layout");
  }
  DesarguesParams p;
  p.mechanism.ground = fw.length(0, 1);
  p.mechanism.crank = fw.length(0, 3);
  p.mechanism.follower = fw.length(1, 4);
  p.mechanism.coupler = fw.length(3, 4);
  const double side_p = fw.length(3, 5);
  const double side_q = fw.length(4, 5);
  const double l = p.mechanism.coupler;
  const double u = (side_p * side_p - side_q * side_q + l * l) / (2.0 * l);
  p.mechanism.offset = {u, std::sqrt(std::max(side_p * side_p - u * u, 0.0))};
  p.apex_a = fw.length(0, 2);
  p.apex_b = fw.length(1, 2);
  p.radius = fw.length(2, 5);
  return p;
}

FourBar perturb_mechanism(const FourBar& fb, double epsilon, std::uint64_t seed) {
  if (!(epsilon >= 0.0)) throw std::invalid_argument("epsilon must be non-negative");
  if (epsilon == 0.0) return fb;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> factor(std::max(1.0 - epsilon, 1e-3), 1.0 + epsilon);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    FourBar out = fb;
    out.crank *= factor(rng);
    out.follower *= factor(rng);
    out.coupler *= factor(rng);
    const double side_p = fb.coupler_side_p() * factor(rng);
    const double side_q = fb.coupler_side_q() * factor(rng);
    const double l = out.coupler;
    const double u = (side_p * side_p - side_q * side_q + l * l) / (2.0 * l);
    const double v2 = side_p * side_p - u * u;
    if (v2 < 0.0) continue;
    out.offset = {u, std::copysign(std::sqrt(v2), fb.offset.y)};
    return out;
  }
  throw std::runtime_error("could not draw a valid coupler triangle");
}

RadiusFit fit_radius(const FourBar& fb, Point2 apex, int resolution) {
  struct Interval {
    double lo;
    double hi;
  };
  std::vector<Interval> spans;
  std::vector<double> critical;
  for (int flip = 0; flip < 2; ++flip) {
    const FourBar m = flip ? fb.flipped() : fb;
    for (const BranchArc& arc : assembly_arcs(m, std::max(resolution, 360))) {
      const Profile prof = sample_arc(arc, resolution, [&](double t) -> std::optional<double> {
        const auto x = coupler_point(m, t, arc.branch);
        if (!x) return std::nullopt;
        const Point2 d = *x - apex;
        return dot(d, d);
      });
      const std::size_t samples = prof.value.size();
      const std::size_t pairs = prof.closed ? samples : samples - 1;
      for (std::size_t k = 0; k < pairs; ++k) {
        const std::size_t j = (k + 1) % samples;
        if (!prof.valid[k] || !prof.valid[j]) continue;
        spans.push_back({std::min(prof.value[k], prof.value[j]),
                         std::max(prof.value[k], prof.value[j])});
      }
      for (std::size_t k = 0; k < samples; ++k) {
        if (!prof.valid[k]) continue;
        const bool end = !prof.closed && (k == 0 || k + 1 == samples);
        if (end) {
          critical.push_back(prof.value[k]);
          continue;
        }
        const double prev = prof.value[(k + samples - 1) % samples];
        const double next = prof.value[(k + 1) % samples];
        const double v = prof.value[k];
        if ((v >= prev && v >= next) || (v <= prev && v <= next)) critical.push_back(v);
      }
    }
  }
  RadiusFit best;
  if (spans.empty() || critical.size() < 2) return best;
  std::sort(critical.begin(), critical.end());
  critical.erase(std::unique(critical.begin(), critical.end()), critical.end());
  std::vector<double> lows;
  std::vector<double> highs;
  for (const auto& s : spans) {
    lows.push_back(s.lo);
    highs.push_back(s.hi);
  }
  std::sort(lows.begin(), lows.end());
  std::sort(highs.begin(), highs.end());
  for (std::size_t i = 0; i + 1 < critical.size(); ++i) {
    const double level = 0.5 * (critical[i] + critical[i + 1]);
    if (!(level > 0.0)) continue;
    const auto below_lo = std::lower_bound(lows.begin(), lows.end(), level) - lows.begin();
    const auto below_hi = std::lower_bound(highs.begin(), highs.end(), level) - highs.begin();
    const int count = static_cast<int>(below_lo - below_hi);
    const double margin = 0.5 * (critical[i + 1] - critical[i]) / level;
    if (count > best.crossings_above || (count == best.crossings_above && margin > best.margin)) {
      best.crossings_above = count;
      best.margin = margin;
      best.radius = std::sqrt(level);
    }
  }
  return best;
}

namespace {

constexpr int kCoarseResolution = 720;
constexpr int kRefineBudget = 600;
constexpr double kTargetMargin = 0.02;
constexpr int kFullCount = 24;

struct SearchPoint {
  std::array<double, 7> x{};  // crank, follower, coupler, u, v, apex x, apex y

  FourBar mechanism() const {
    FourBar fb;
    fb.ground = 1.0;
    fb.crank = x[0];
    fb.follower = x[1];
    fb.coupler = x[2];
    fb.offset = {x[3], x[4]};
    return fb;
  }
  Point2 apex() const { return {x[5], x[6]}; }
  bool feasible() const {
    return x[0] > 0.05 && x[1] > 0.05 && x[2] > 0.05 && x[6] > 0.02 &&
           std::hypot(x[3], x[4]) > 0.05;
  }
};

struct CandidateResult {
  int evaluations = 0;
  std::optional<DesarguesWitness> witness;
};

bool better(const RadiusFit& a, const RadiusFit& b) {
  return a.crossings_above > b.crossings_above ||
         (a.crossings_above == b.crossings_above && a.margin > b.margin);
}

CandidateResult evaluate_candidate(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> link(0.2, 2.5);
  std::uniform_real_distribution<double> along(-1.5, 2.5);
  std::uniform_real_distribution<double> across(-2.0, 2.0);
  std::uniform_real_distribution<double> height(0.05, 2.5);
  SearchPoint pt;
  pt.x = {link(rng), link(rng), link(rng), along(rng), across(rng), along(rng), height(rng)};

  CandidateResult res;
  RadiusFit fit = fit_radius(pt.mechanism(), pt.apex(), kCoarseResolution);
  res.evaluations = 1;
  if (fit.crossings_above < 10) return res;

  std::array<double, 7> step;
  step.fill(0.05);
  while (res.evaluations < kRefineBudget &&
         !(fit.crossings_above == 12 && fit.margin >= kTargetMargin)) {
    bool improved = false;
    for (std::size_t j = 0; j < pt.x.size() && res.evaluations < kRefineBudget; ++j) {
      for (double dir : {1.0, -1.0}) {
        SearchPoint trial = pt;
        trial.x[j] += dir * step[j];
        if (!trial.feasible()) continue;
        const RadiusFit tf = fit_radius(trial.mechanism(), trial.apex(), kCoarseResolution);
        ++res.evaluations;
        if (better(tf, fit)) {
          pt = trial;
          fit = tf;
          improved = true;
          break;
        }
      }
    }
    if (!improved) {
      for (double& s : step) s *= 0.5;
      if (step[0] < 1e-4) break;
    }
  }
  if (fit.crossings_above < 12) return res;

  DesarguesParams params;
  params.mechanism = pt.mechanism();
  params.apex_a = norm(pt.apex());
  params.apex_b = distance(pt.apex(), Point2{params.mechanism.ground, 0.0});
  params.radius = fit.radius;
  DesarguesCount count = desargues_count(params);
  ++res.evaluations;
  if (count.total != kFullCount || !count.resolution_stable || count.tangencies != 0) return res;
  res.witness = DesarguesWitness{params, desargues_framework(params), std::move(count),
                                 0, fit.margin};
  return res;
}

}  // namespace

std::optional<DesarguesWitness> search_desargues_lengths(const SearchOptions& options) {
  if (options.budget < 1000) throw std::invalid_argument("search budget must be at least 1000");
  const unsigned workers =
      options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : options.threads;
  const std::size_t batch = static_cast<std::size_t>(workers) * 4;
  long long used = 0;
  for (std::size_t first = 0;; first += batch) {
    std::vector<CandidateResult> results(batch);
    parallel_for(batch, workers, [&](std::size_t i) {
      results[i] = evaluate_candidate(split_seed(options.seed, first + i));
    });
    for (auto& r : results) {
      used += r.evaluations;
      if (used > options.budget) return std::nullopt;
      if (r.witness) {
        r.witness->evaluations = static_cast<int>(used);
        return std::move(r.witness);
      }
    }
  }
}

}  // namespace rigidlab
