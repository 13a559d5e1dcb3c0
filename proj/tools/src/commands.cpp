#include "rigidlab_cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "rigidlab/bounds.hpp"
#include "rigidlab/coupler.hpp"
#include "rigidlab/families.hpp"
#include "rigidlab/graph.hpp"
#include "rigidlab/henneberg.hpp"
#include "rigidlab/rigidity.hpp"
#include "rigidlab/solver.hpp"
#include "rigidlab_cli/framework_io.hpp"
#include "rigidlab_cli/svg.hpp"

namespace rigidlab::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Budget : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t env_seed() {
  const char* s = std::getenv("RIGIDLAB_SEED");
  if (s == nullptr || *s == '\0') return 0;
  try {
    std::size_t used = 0;
    const auto v = std::stoull(s, &used);
    if (used != std::string(s).size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw UsageError(std::string("RIGIDLAB_SEED is not an unsigned integer: ") + s);
  }
}

long long binom2(long long k) { return k * (k - 1) / 2; }

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + path + "'");
  f << text;
}

std::vector<std::vector<double>> as_rows(const std::vector<Point2>& pts) {
  std::vector<std::vector<double>> rows;
  for (const auto& p : pts) rows.push_back({p.x, p.y});
  return rows;
}

// ---- check ----------------------------------------------------------------

int cmd_check(const std::string& path, std::uint64_t seed, std::ostream& out) {
  const auto doc = read_document(path);
  const Graph& g = doc.framework.graph();
  const int d = doc.framework.dim();
  const long long n = g.vertex_count();
  const long long m = static_cast<long long>(g.edge_count());
  out << "n = " << n << ", m = " << m << ", dimension = " << d << "\n";
  if (d == 2) out << "Laman: " << (laman_check(g) ? "yes" : "no") << "\n";
  if (n < d + 1) {
    out << "minimal count: n/a (n < d+1)\nminimally rigid: no\n";
    return kNegative;
  }
  const long long target = d * n - binom2(d + 1);
  const bool count_ok = minimal_count_check(g, d);
  out << "minimal count: " << (count_ok ? "yes" : "no") << " (m = " << m << ", dn - C(d+1,2) = "
      << target << ")\n";
  const auto rank = static_cast<long long>(generic_rank(g, d, seed));
  out << "generic rank: " << rank << "\n";
  out << "DOF: " << target - rank << "\n";
  const bool rigid = count_ok && rank == target;
  out << "minimally rigid: " << (rigid ? "yes" : "no") << "\n";
  return rigid ? kOk : kNegative;
}

// ---- henneberg --------------------------------------------------------------

int cmd_henneberg(const std::string& path, bool classify_only, bool type_i_only, std::ostream& out) {
  const auto doc = read_document(path);
  const Graph& g = doc.framework.graph();
  if (classify_only) {
    out << to_string(classify(g)) << "\n";
    return kOk;
  }
  const auto seq = extract_sequence(g, ExtractOptions{.type_i_only = type_i_only});
  if (!seq) {
    out << (type_i_only && laman_check(g) ? "no type-I sequence: graph is Henneberg-II\n"
                                          : "no sequence: graph is not Laman\n");
    return kNegative;
  }
  out << "base " << seq->base[0] << " " << seq->base[1] << " " << seq->base[2] << "\n";
  for (const auto& step : seq->steps) {
    if (const auto* s = std::get_if<TypeIStep>(&step)) {
      out << "I " << s->vertex << " " << s->a << " " << s->b << "\n";
    } else {
      const auto& t = std::get<TypeIIStep>(step);
      out << "II " << t.vertex << " " << t.a << " " << t.b << " " << t.c << " remove " << t.a
          << "-" << t.b << "\n";
    }
  }
  return kOk;
}

// ---- bounds -------------------------------------------------------------------

int cmd_bounds(int d, int n, bool table, std::optional<int> to, std::ostream& out) {
  if (d < 1) throw UsageError("--dim must be >= 1");
  if (n < d + 1) throw UsageError("--n must be >= dim + 1");
  if (to && !table) throw UsageError("--to needs --table");
  if (table) {
    const int last = to.value_or(n);
    if (last < n) throw UsageError("--to must be >= --n");
    out << "n\tD\t2*D\topmt\n";
    for (int k = n; k <= last; ++k) {
      const auto r = bound_report(d, k);
      out << k << "\t" << r.cm_degree.get_str() << "\t" << r.embedding_bound.get_str() << "\t"
          << r.opmt.get_str() << "\n";
    }
    return kOk;
  }
  const auto r = bound_report(d, n);
  out << "d = " << d << ", n = " << n << "\n";
  out << "D = " << r.cm_degree.get_str() << "\n";
  out << "2*D = " << r.embedding_bound.get_str() << "\n";
  if (d == 2) out << "C(2n-4,n-2) = " << planar_bound(n).get_str() << "\n";
  if (d == 3 && n >= 4) {
    out << "(2^(n-3)/(n-2))*C(2n-6,n-3) = " << spatial_closed_form(n).get_str() << "\n";
  }
  out << "opmt 2*3^(dn-1) = " << r.opmt.get_str() << "\n";
  return kOk;
}

// ---- solve ----------------------------------------------------------------------

struct SolveArgs {
  std::string path;
  std::string method = "auto";
  std::uint64_t seed = 0;
  int starts = 10000;
  int max_iter = 100;
  double tol = 1e-9;
  double tol_dedup = 1e-6;
  std::string output;
};

int cmd_solve(const SolveArgs& a, unsigned threads, std::ostream& out) {
  auto doc = read_document(a.path);
  const Framework& fw = doc.framework;
  if (fw.dim() != 2) throw FileError(a.path + ": solve needs a planar framework (dimension 2)");
  SolverConfig cfg;
  cfg.tol_res = a.tol;
  cfg.tol_dedup = a.tol_dedup;
  cfg.starts = a.starts;
  cfg.max_iter = a.max_iter;
  cfg.seed = a.seed;
  cfg.threads = threads;
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  std::string method = a.method;
  const auto cls = classify(fw.graph());
  if (method == "auto") method = cls == HennebergClass::type_i ? "branch" : "newton";
  if (cls == HennebergClass::not_laman) {
    throw FileError(a.path + ": solve needs a Laman graph");
  }
  SolutionSet sols;
  if (method == "branch") {
    const auto seq = extract_sequence(fw.graph(), ExtractOptions{.type_i_only = true});
    if (!seq) throw UsageError("--method branch needs a Henneberg-I graph");
    sols = solve_branch(fw, *seq, cfg);
  } else {
    sols = solve_newton(fw, cfg);
  }

  out << "method = " << to_string(sols.method) << "\n";
  out << "count = " << sols.count() << ", complete = " << (sols.complete ? "true" : "false") << "\n";
  if (sols.degenerate) out << "degenerate = true\n";
  if (!sols.non_generic.empty()) out << "non-generic = " << sols.non_generic.size() << "\n";
  if (!a.output.empty()) {
    doc.solutions.clear();
    for (const auto& s : sols.solutions) doc.solutions.push_back(s.points);
    doc.points = sols.solutions.empty() ? std::vector<std::vector<double>>{}
                                        : as_rows(sols.solutions.front().points);
    write_document(a.output, doc);
  }
  return kOk;
}

// ---- family -----------------------------------------------------------------------

struct FamilyArgs {
  std::string name;
  int n = 5;
  int blocks = 2;
  int dim = 2;
  std::uint64_t seed = 0;
  double epsilon = 1e-3;
  std::string witness;
  std::string output;
};

FrameworkDocument glued_document(const GluedFramework& glued, std::ostream& out) {
  const Graph& g = glued.framework.graph();
  const auto counts = block_counts(glued);
  out << "n = " << g.vertex_count() << ", m = " << g.edge_count() << "\n";
  out << "laman: " << (laman_check(g) ? "yes" : "no") << "\n";
  out << "block counts:";
  for (int c : counts) out << " " << c;
  out << "\ncompositional count = " << compositional_count(counts).get_str() << "\n";
  if (glued.kind == GlueKind::fan) {
    out << "pinned embedding count = " << fan_embedding_count(glued).get_str() << "\n";
  }
  FrameworkDocument doc;
  doc.framework = glued.framework;
  return doc;
}

int cmd_family(const FamilyArgs& a, std::ostream& out) {
  FrameworkDocument doc;
  Framework witness = desargues_witness();
  if (!a.witness.empty()) witness = read_document(a.witness).framework;

  if (a.name == "fan-triangulation") {
    if (a.n < 3) throw UsageError("--n must be >= 3");
    doc.framework = fan_triangulation(a.n, a.seed);
    doc.points = as_rows(convex_polygon(a.n, a.seed));
  } else if (a.name == "k33") {
    std::mt19937_64 rng(a.seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<Point2> pts(6);
    for (auto& p : pts) p = {u(rng), u(rng)};
    doc.framework = framework_from_points(k33(), pts);
    doc.points = as_rows(pts);
  } else if (a.name == "desargues") {
    doc.framework = witness;
    const auto params = desargues_params(witness);
    const auto count = desargues_count(params);
    const auto emb = desargues_embeddings(params, count);
    doc.fourbar = params.mechanism;
    if (!emb.empty()) doc.points = as_rows(emb.front().points);
    out << "desargues count = " << count.total << "\n";
  } else if (a.name == "caterpillar") {
    if (a.blocks < 1) throw UsageError("--blocks must be >= 1");
    doc = glued_document(caterpillar(a.blocks, witness), out);
  } else if (a.name == "fan") {
    if (a.blocks < 1) throw UsageError("--blocks must be >= 1");
    FanOptions opt;
    opt.epsilon = a.epsilon;
    opt.seed = a.seed;
    doc = glued_document(fan_family(a.blocks, witness, opt), out);
  } else if (a.name == "simplex-chain") {
    if (a.dim < 1 || a.n < a.dim + 1) throw UsageError("need --dim >= 1 and --n >= dim + 1");
    const auto chain = simplex_chain(a.dim, a.n, a.seed);
    doc.framework = chain.framework;
    for (int i = 0; i < a.n; ++i) {
      std::vector<double> row;
      for (int k = 0; k < a.dim; ++k) row.push_back(chain.embedding.at(i, k).get_d());
      doc.points.push_back(std::move(row));
    }
    out << "infinitesimally rigid (exact): " << (chain.certified ? "yes" : "no") << "\n";
  } else if (a.name == "henneberg1") {
    if (a.n < 3) throw UsageError("--n must be >= 3");
    doc.framework = henneberg1_max_lengths(random_henneberg1_graph(a.n, a.seed), a.seed);
  } else {
    throw UsageError("unknown family '" + a.name + "'");
  }
  write_document(a.output, doc);
  return kOk;
}

// ---- search-desargues ---------------------------------------------------------------

int cmd_search(std::uint64_t seed, int budget, unsigned threads, const std::string& output,
               std::ostream& out) {
  if (budget < 1000) throw UsageError("--budget must be >= 1000");
  SearchOptions opt;
  opt.seed = seed;
  opt.budget = budget;
  opt.threads = threads;
  const auto w = search_desargues_lengths(opt);
  if (!w) throw Budget("search-desargues: no 24-embedding witness within the budget");
  const auto& c = w->count;
  out << "desargues count = " << c.total << " (above " << c.above() << ", below " << c.below()
      << ")\n";
  out << "evaluations = " << w->evaluations << "\n";
  out << "margin = " << w->margin << "\n";
  FrameworkDocument doc;
  doc.framework = w->framework;
  doc.fourbar = w->params.mechanism;
  const auto emb = desargues_embeddings(w->params, c);
  if (!emb.empty()) doc.points = as_rows(emb.front().points);
  write_document(output, doc);
  return kOk;
}

// ---- plot ---------------------------------------------------------------------------

struct PlotArgs {
  std::string path;
  std::string solutions;
  bool coupler = false;
  std::vector<std::string> circles;
  int resolution = kArcResolution;
  std::string output;
};

Circle parse_circle(const std::string& s) {
  std::stringstream ss(s);
  std::string part;
  std::vector<double> v;
  while (std::getline(ss, part, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(part, &used));
      if (used != part.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw UsageError("--circle expects cx,cy,r; got '" + s + "'");
    }
  }
  if (v.size() != 3 || !(v[2] > 0.0)) throw UsageError("--circle expects cx,cy,r with r > 0");
  return Circle{{v[0], v[1]}, v[2]};
}

void draw_embedding(SvgCanvas& svg, const Graph& g, const std::vector<Point2>& pts, Point2 shift) {
  for (const Edge& e : g.sorted_edges()) svg.line(pts[e.u] + shift, pts[e.v] + shift, "#555555");
  for (const auto& p : pts) svg.dot(p + shift, "black");
}

int cmd_plot(const PlotArgs& a, std::ostream& out) {
  const auto doc = read_document(a.path);
  const Framework& fw = doc.framework;
  if (fw.dim() != 2) throw FileError(a.path + ": plot needs a planar framework");
  SvgCanvas svg;

  if (a.coupler) {
    if (a.resolution < kArcResolution) {
      throw UsageError("--resolution must be >= " + std::to_string(kArcResolution));
    }
    std::vector<FourBar> curves;
    std::vector<Circle> circles;
    for (const auto& c : a.circles) circles.push_back(parse_circle(c));
    if (doc.fourbar) {
      curves.push_back(*doc.fourbar);
    }
    std::optional<DesarguesParams> params;
    try {
      params = desargues_params(fw);
    } catch (const std::invalid_argument&) {
    }
    if (params) {
      if (curves.empty()) curves.push_back(params->mechanism);
      curves.push_back(curves.front().flipped());
      if (circles.empty()) {
        for (const auto& c : params->apex_positions()) circles.push_back({c, params->radius});
      }
    }
    if (curves.empty()) {
      throw FileError(a.path + ": --coupler needs a \"fourbar\" entry or a Desargues framework");
    }
    const char* colors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728"};
    svg.dot({0.0, 0.0}, "black", 4.0);
    svg.dot({curves.front().ground, 0.0}, "black", 4.0);
    int crossings = 0;
    for (std::size_t k = 0; k < curves.size(); ++k) {
      for (Branch br : {Branch::plus, Branch::minus}) {
        const char* color = colors[(2 * k + (br == Branch::minus ? 1 : 0)) % 4];
        for (const auto& arc : coupler_curve(curves[k], br)) svg.polyline(arc, color);
        for (const auto& c : circles) {
          for (double th : circle_crossings(curves[k], br, c, a.resolution).roots) {
            if (auto p = coupler_point(curves[k], th, br)) {
              svg.dot(*p, "red", 3.5);
              ++crossings;
            }
          }
        }
      }
    }
    for (const auto& c : circles) {
      svg.circle(c.center, c.radius, "#888888");
      svg.dot(c.center, "#888888");
    }
    out << "curves = " << curves.size() << ", circles = " << circles.size()
        << ", crossings = " << crossings << "\n";
  } else {
    std::vector<std::vector<Point2>> panels;
    if (!a.solutions.empty()) {
      const auto sdoc = read_document(a.solutions);
      panels = sdoc.solutions;
      if (panels.empty() && !sdoc.points.empty()) panels.push_back(planar_points(sdoc));
    } else {
      panels = doc.solutions;
      if (panels.empty() && !doc.points.empty()) panels.push_back(planar_points(doc));
    }
    if (panels.empty()) throw FileError("plot: no points or solutions to draw");
    for (const auto& p : panels) {
      if (static_cast<int>(p.size()) != fw.graph().vertex_count()) {
        throw FileError("plot: solution size does not match the framework");
      }
    }
    // grid of panels sharing one cell size
    double w = 0.0;
    double h = 0.0;
    for (const auto& p : panels) {
      double x0 = p[0].x, x1 = p[0].x, y0 = p[0].y, y1 = p[0].y;
      for (const auto& q : p) {
        x0 = std::min(x0, q.x);
        x1 = std::max(x1, q.x);
        y0 = std::min(y0, q.y);
        y1 = std::max(y1, q.y);
      }
      w = std::max(w, x1 - x0);
      h = std::max(h, y1 - y0);
    }
    const double cell = 1.3 * std::max({w, h, 1e-6});
    const int cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(panels.size()))));
    for (std::size_t i = 0; i < panels.size(); ++i) {
      const Point2 shift{cell * static_cast<double>(static_cast<int>(i) % cols),
                         -cell * static_cast<double>(static_cast<int>(i) / cols)};
      draw_embedding(svg, fw.graph(), panels[i], shift);
    }
    out << "panels = " << panels.size() << "\n";
  }
  write_text(a.output, svg.str());
  return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Minimally rigid graphs, embedding bounds and planar embedding counts", "rigidlab"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_help_all_flag("--help-all", "Expand all help");

  std::uint64_t seed_default = 0;
  try {
    seed_default = env_seed();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  unsigned threads = 1;
  app.add_option("--threads", threads, "Worker threads for solve and search (0 = all cores)")
      ->capture_default_str();

  std::function<int()> action;

  // check
  std::string check_path;
  std::uint64_t check_seed = seed_default;
  auto* check = app.add_subcommand("check", "Laman and d-minimal rigidity verdicts");
  check->add_option("file", check_path, "Framework JSON")->required();
  check->add_option("--seed", check_seed, "Seed of the random rational embedding")->capture_default_str();
  check->callback([&] { action = [&] { return cmd_check(check_path, check_seed, out); }; });

  // henneberg
  std::string hb_path;
  bool hb_classify = false;
  bool hb_type_i = false;
  auto* hb = app.add_subcommand("henneberg", "Henneberg sequence or classification");
  hb->add_option("file", hb_path, "Framework JSON")->required();
  hb->add_flag("--classify", hb_classify, "Print I, II or not-laman");
  hb->add_flag("--type-i-only", hb_type_i, "Only reverse type-I steps");
  hb->callback([&] { action = [&] { return cmd_henneberg(hb_path, hb_classify, hb_type_i, out); }; });

  // bounds
  int b_dim = 2;
  int b_n = 3;
  bool b_table = false;
  std::optional<int> b_to;
  auto* bounds = app.add_subcommand("bounds", "Cayley-Menger degree and embedding bounds");
  bounds->add_option("--dim", b_dim, "Dimension d")->required();
  bounds->add_option("--n", b_n, "Vertex count")->required();
  bounds->add_flag("--table", b_table, "Print rows n..M");
  bounds->add_option("--to", b_to, "Last row of the table");
  bounds->callback([&] { action = [&] { return cmd_bounds(b_dim, b_n, b_table, b_to, out); }; });

  // solve
  SolveArgs sa;
  sa.seed = seed_default;
  auto* solve = app.add_subcommand("solve", "Count real planar embeddings");
  solve->add_option("file", sa.path, "Framework JSON")->required();
  solve->add_option("--method", sa.method, "branch, newton or auto")
      ->check(CLI::IsMember({"branch", "newton", "auto"}))
      ->capture_default_str();
  solve->add_option("--seed", sa.seed, "Newton seed")->capture_default_str();
  solve->add_option("--starts", sa.starts, "Newton starts")->capture_default_str();
  solve->add_option("--max-iter", sa.max_iter, "Newton iterations per start")->capture_default_str();
  solve->add_option("--tol", sa.tol, "Residual tolerance")->capture_default_str();
  solve->add_option("--tol-dedup", sa.tol_dedup, "Deduplication distance")->capture_default_str();
  solve->add_option("-o,--output", sa.output, "Write solutions to this JSON file");
  solve->callback([&] { action = [&] { return cmd_solve(sa, threads, out); }; });

  // family
  FamilyArgs fa;
  fa.seed = seed_default;
  auto* family = app.add_subcommand("family", "Generate a named framework family");
  family->add_option("name", fa.name, "Family name")
      ->required()
      ->check(CLI::IsMember({"fan-triangulation", "k33", "desargues", "caterpillar", "fan",
                             "simplex-chain", "henneberg1"}));
  family->add_option("--n", fa.n, "Vertex count")->capture_default_str();
  family->add_option("--blocks", fa.blocks, "Desargues blocks")->capture_default_str();
  family->add_option("--dim", fa.dim, "Dimension (simplex-chain)")->capture_default_str();
  family->add_option("--seed", fa.seed, "Seed")->capture_default_str();
  family->add_option("--epsilon", fa.epsilon, "Perturbation size (fan)")->capture_default_str();
  family->add_option("--witness", fa.witness, "Desargues witness JSON (default: built-in)");
  family->add_option("-o,--output", fa.output, "Output JSON")->required();
  family->callback([&] { action = [&] { return cmd_family(fa, out); }; });

  // search-desargues
  std::uint64_t s_seed = seed_default == 0 ? 1 : seed_default;
  int s_budget = 100000;
  std::string s_out;
  auto* search = app.add_subcommand("search-desargues", "Search lengths with 24 embeddings");
  search->add_option("--seed", s_seed, "Seed")->capture_default_str();
  search->add_option("--budget", s_budget, "Candidate evaluations")->capture_default_str();
  search->add_option("-o,--output", s_out, "Output JSON")->required();
  search->callback([&] { action = [&] { return cmd_search(s_seed, s_budget, threads, s_out, out); }; });

  // plot
  PlotArgs pa;
  auto* plot = app.add_subcommand("plot", "Draw embeddings or coupler curves as SVG");
  plot->add_option("framework", pa.path, "Framework JSON")->required();
  plot->add_option("--solutions", pa.solutions, "Solutions JSON written by solve");
  plot->add_flag("--coupler", pa.coupler, "Draw coupler curves, circles and crossings");
  plot->add_option("--circle", pa.circles, "Circle cx,cy,r (repeatable)");
  plot->add_option("--resolution", pa.resolution, "Samples per arc for crossings")->capture_default_str();
  plot->add_option("-o,--output", pa.output, "Output SVG")->required();
  plot->callback([&] { action = [&] { return cmd_plot(pa, out); }; });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    return action();
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const FileError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kBadInput;
  } catch (const Budget& e) {
    err << e.what() << "\n";
    return kBudgetExhausted;
  } catch (const std::exception& e) {
    err << "invalid input: " << e.what() << "\n";
    return kBadInput;
  }
}

}  // namespace rigidlab::cli
