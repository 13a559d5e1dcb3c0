// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "rigidlab/bounds.hpp"
#include "rigidlab/coupler.hpp"
#include "rigidlab/families.hpp"
#include "rigidlab/graph.hpp"
#include "rigidlab/henneberg.hpp"
#include "rigidlab/rigidity.hpp"
#include "rigidlab/solver.hpp"
#include "rigidlab_cli/framework_io.hpp"
#include "support.hpp"

using namespace rigidlab;
using namespace rigidlab::testing;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream note;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      note << what;
    }
  }
};

int failures = 0;

void criterion(int id, const std::string& name, double limit_s, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.ok = false;
    o.note << "exception: " << e.what();
  }
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.require(dt <= limit_s, "time limit exceeded");
  if (!o.ok) ++failures;
  std::cout << (o.ok ? "PASS" : "FAIL") << " criterion " << id << ": " << name << " ("
            << std::fixed;
  std::cout.precision(2);
  std::cout << dt << " s, limit " << limit_s << " s)";
  const auto note = o.note.str();
  if (!note.empty()) std::cout << " -- " << note;
  std::cout << std::endl;
}

std::size_t branch_count(const Framework& fw, const SolverConfig& cfg, double* worst_residual) {
  const auto seq = extract_sequence(fw.graph(), {.type_i_only = true});
  if (!seq) throw std::runtime_error("not Henneberg-I");
  const auto s = solve_branch(fw, *seq, cfg);
  for (const auto& e : s.solutions) {
    *worst_residual = std::max(*worst_residual, max_relative_residual(fw, e.points));
  }
  return s.count();
}

}  // namespace

int main() {
  criterion(1, "degree identities, planar and spatial, exact", 1.0, [](Outcome& o) {
    for (int n = 3; n <= 20; ++n) {
      o.require(BigInt(2 * cm_degree(2, n)) == binomial(2 * n - 4, n - 2), "planar n=" + std::to_string(n));
    }
    for (int n = 4; n <= 20; ++n) {
      BigInt p = 1;
      p <<= n - 3;
      const BigInt num = p * binomial(2 * n - 6, n - 3);
      o.require(num % (n - 2) == 0, "inexact division n=" + std::to_string(n));
      o.require(BigInt(2 * cm_degree(3, n)) == BigInt(num / (n - 2)), "spatial n=" + std::to_string(n));
    }
    o.note << "n=3..20 (d=2), n=4..20 (d=3)";
  });

  criterion(2, "CM bound below OPMT bound", 1.0, [](Outcome& o) {
    for (int n = 4; n <= 20; ++n) {
      o.require(BigInt(2 * cm_degree(2, n)) < opmt_bound(2, n), "n=" + std::to_string(n));
    }
    o.note << "n=4..20";
  });

  criterion(3, "fan triangulations have 2^(n-2) embeddings", 10.0, [](Outcome& o) {
    double worst = 0.0;
    for (int n = 3; n <= 9; ++n) {
      const auto c = branch_count(fan_triangulation(n, static_cast<std::uint64_t>(n)), {}, &worst);
      o.require(c == (std::size_t{1} << (n - 2)), "n=" + std::to_string(n) + " count " + std::to_string(c));
    }
    o.require(worst <= 1e-9, "residual");
    o.note << "max residual " << worst;
  });

  criterion(4, "Henneberg-I length synthesis gives 2^(n-2)", 60.0, [](Outcome& o) {
    double worst = 0.0;
    for (int k = 0; k < 5; ++k) {
      const int n = 4 + k;
      const auto seed = static_cast<std::uint64_t>(1000 + k);
      const auto fw = henneberg1_max_lengths(random_henneberg1_graph(n, seed), seed);
      const auto c = branch_count(fw, {}, &worst);
      o.require(c == (std::size_t{1} << (n - 2)), "n=" + std::to_string(n) + " count " + std::to_string(c));
    }
    o.require(worst <= 1e-9, "residual");
    o.note << "n=4..8, max residual " << worst;
  });

  criterion(5, "Desargues witness with 24 embeddings, Newton cross-check", 600.0, [](Outcome& o) {
    const auto doc = cli::read_document(fixture("desargues_witness.json"));
    const auto params = desargues_params(doc.framework);
    const auto count = desargues_count(params);
    o.require(count.total == 24 && count.resolution_stable && count.tangencies == 0, "fixture count");
    SearchOptions opt;
    opt.seed = 1;
    opt.budget = 100000;
    opt.threads = 0;
    const auto found = search_desargues_lengths(opt);
    o.require(found.has_value(), "search exhausted its budget");
    if (found) {
      o.require(found->count.total == 24, "search count");
      for (const auto& [e, l] : doc.framework.lengths()) {
        o.require(std::abs(found->framework.length(e.u, e.v) - l) <= 1e-15 * std::max(1.0, l),
                  "search does not reproduce the fixture");
      }
    }
    SolverConfig cfg;
    cfg.starts = 10000;
    cfg.seed = 1;
    cfg.threads = 0;
    const auto newton = solve_newton(doc.framework, cfg);
    const auto built = deduplicate(desargues_embeddings(params, count), cfg.tol_dedup);
    double worst = 0.0;
    for (const auto& e : newton.solutions) worst = std::max(worst, max_relative_residual(doc.framework, e.points));
    o.require(newton.count() == 24, "newton found " + std::to_string(newton.count()));
    o.require(built.size() == 24, "crossings give " + std::to_string(built.size()) + " distinct embeddings");
    o.require(same_solutions(newton.solutions, built, 1e-6), "solution sets differ");
    o.require(worst <= cfg.tol_res, "residual");
    o.require(BigInt(24) <= planar_bound(6), "planar bound");
    o.note << "search evaluations " << (found ? found->evaluations : -1) << ", newton " << newton.count()
           << " of " << cfg.starts << " starts, bound " << planar_bound(6).get_str();
  });

  criterion(6, "Newton equals branch on Henneberg-I fixtures (n <= 6)", 60.0, [](Outcome& o) {
    int files = 0;
    for (const auto& entry : std::filesystem::directory_iterator(RIGIDLAB_FIXTURE_DIR)) {
      const auto path = entry.path().string();
      const auto fname = entry.path().filename().string();
      if (fname.rfind("hi_", 0) != 0) continue;
      const auto doc = cli::read_document(path);
      const auto& fw = doc.framework;
      if (fw.graph().vertex_count() > 6) continue;
      const auto seq = extract_sequence(fw.graph(), {.type_i_only = true});
      o.require(seq.has_value(), fname + " is not Henneberg-I");
      if (!seq) continue;
      SolverConfig cfg;
      cfg.threads = 0;
      const auto b = solve_branch(fw, *seq, cfg);
      const auto n = solve_newton(fw, cfg);
      o.require(same_solutions(b.solutions, n.solutions, cfg.tol_dedup), fname);
      ++files;
    }
    o.require(files >= 5, "too few fixtures");
    o.note << files << " fixtures";
  });

  criterion(7, "pebble game agrees with subset enumeration", 60.0, [](Outcome& o) {
    long exhaustive = 0;
    for (int n = 2; n <= 6; ++n) {
      for_each_graph(n, 2 * n - 3, [&](const Graph& g) {
        o.require(laman_check(g) == laman_check_bruteforce(g), "exhaustive n=" + std::to_string(n));
        ++exhaustive;
      });
    }
    std::mt19937_64 rng(7);
    int laman = 0;
    for (int t = 0; t < 1000; ++t) {
      const Graph g = t % 2 == 0 ? random_graph_m(7, 11, rng) : random_graph(7, 0.5, rng);
      const bool a = laman_check(g);
      o.require(a == laman_check_bruteforce(g), "random graph " + std::to_string(t));
      laman += a;
    }
    o.note << exhaustive << " labelled graphs, 1000 random n=7 (" << laman << " Laman)";
  });

  criterion(8, "fan family compositional growth", 60.0, [](Outcome& o) {
    const auto w = desargues_witness();
    const double rate = std::log(24.0) / 3.0;
    double prev_log = 0.0;
    int prev_n = 0;
    for (int blocks = 1; blocks <= 3; ++blocks) {
      const auto fam = fan_family(blocks, w);
      o.require(laman_check(fam.framework.graph()), "not Laman");
      for (const auto& blk : fam.blocks) {
        const auto c = desargues_count(blk.params);
        o.require(c.total == 24 && c.resolution_stable && c.tangencies == 0, "block lost its 24 count");
      }
      const auto total = compositional_count(block_counts(fam));
      BigInt expect = 1;
      for (int k = 0; k < blocks; ++k) expect *= 24;
      o.require(total == expect, "blocks=" + std::to_string(blocks) + " gives " + total.get_str());
      const int n = fam.framework.graph().vertex_count();
      const double lc = std::log(total.get_d());
      if (blocks > 1) o.require(std::abs((lc - prev_log) / (n - prev_n) - rate) < 1e-12, "growth rate");
      if (blocks >= 2) o.note << "blocks=" << blocks << ": " << total.get_str() << "; ";
      prev_log = lc;
      prev_n = n;
    }
    o.note << "log-rate per added vertex " << rate;
  });

  criterion(9, "rank certificates", 60.0, [](Outcome& o) {
    for (int d = 2; d <= 3; ++d) {
      for (int n = d + 1; n <= 8; ++n) {
        const auto c = simplex_chain(d, n, static_cast<std::uint64_t>(10 * d + n));
        o.require(c.certified, "simplex chain d=" + std::to_string(d) + " n=" + std::to_string(n));
      }
    }
    std::mt19937_64 rng(9);
    for (int t = 0; t < 1000; ++t) {
      const int d = 1 + static_cast<int>(rng() % 3);
      const int n = 2 + static_cast<int>(rng() % 7);
      const auto r = cayley_menger_rank_check(random_rational_embedding(n, d, rng()));
      o.require(r.ok, "Cayley-Menger check failed");
    }
    o.note << "simplex chains d=2,3 n<=8; 1000 Cayley-Menger checks";
  });

  return failures == 0 ? 0 : 1;
}
