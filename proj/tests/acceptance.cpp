// Prints one PASS/FAIL line per acceptance criterion; details follow on
// indented lines. Exit status is nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bench.hpp"
#include "cifly/catalog.hpp"
#include "cifly/causal.hpp"
#include "cifly/engine.hpp"
#include "cifly/error.hpp"
#include "cifly/oracle.hpp"
#include "cifly/reductions.hpp"
#include "suites.hpp"

using namespace cifly;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

class Criterion {
 public:
  explicit Criterion(std::string name) : name_(std::move(name)) {}

  void check(bool ok, const std::string& what) {
    notes_.push_back((ok ? "  ok    " : "  FAIL  ") + what);
    ok_ = ok_ && ok;
  }
  void note(const std::string& what) { notes_.push_back("        " + what); }
  bool report() const {
    std::cout << (ok_ ? "PASS " : "FAIL ") << name_ << '\n';
    for (const auto& n : notes_) std::cout << n << '\n';
    std::cout.flush();
    return ok_;
  }

 private:
  std::string name_;
  bool ok_ = true;
  std::vector<std::string> notes_;
};

std::string summary(const testkit::Outcome& o) {
  std::ostringstream s;
  s << o.cases << " cases, " << o.positives << " non-trivial";
  if (!o.ok) s << "; " << o.detail;
  return s.str();
}

// Running maxima of the work-counter ratios over every instance checked.
double g_visit_ratio = 0;
double g_eval_ratio = 0;
std::size_t g_counted = 0;

void record(const Graph& g, const CompiledTable& t, const ReachStats& st) {
  double types = static_cast<double>(t.num_types());
  double colors = static_cast<double>(t.num_colors());
  g_visit_ratio = std::max(
      g_visit_ratio, static_cast<double>(st.visits) /
                         (static_cast<double>(g.num_nodes()) * types * colors));
  double eval_bound =
      2.0 * static_cast<double>(g.num_edges()) * types * colors * colors;
  if (eval_bound > 0) {
    g_eval_ratio = std::max(
        g_eval_ratio, static_cast<double>(st.evaluations) / eval_bound);
  }
  ++g_counted;
}

bool engine_equivalence() {
  Criterion c("engine matches explicit state-space reachability on every bundled table (1000 instances each, under 60 s)");
  auto tables = catalog::entries();
  c.check(tables.size() >= 15, std::to_string(tables.size()) + " bundled tables");
  auto start = Clock::now();
  std::uint64_t seed = 1;
  for (const catalog::Entry& e : tables) {
    auto o = testkit::engine_vs_state_space(e.name, 1000, seed++);
    c.check(o.ok, std::string(e.name) + ": " + summary(o));
    g_visit_ratio = std::max(g_visit_ratio, o.max_visit_ratio);
    g_eval_ratio = std::max(g_eval_ratio, o.max_eval_ratio);
    g_counted += o.cases;
  }
  double took = seconds_since(start);
  c.check(took < 60.0, "total " + std::to_string(took) + " s");
  return c.report();
}

bool golden_examples() {
  Criterion c("worked examples reproduce exactly");
  // v1..v5 = 0..4.
  Graph collider = make_admg(5, {{0, 1}, {2, 1}, {2, 3}, {1, 4}});
  c.check(contains(dconnected_admg(collider, {0}, {4}), 3),
          "v4 d-connected to v1 given v5");

  // x, m, y, z, w = 0..4.
  Graph civ = make_admg(5, {{0, 1}, {1, 2}, {3, 0}, {4, 3}, {4, 2}}, {{0, 2}});
  c.check(iv_verify_all(civ, 0, {3}, {4}) == NodeSet{1, 2},
          "({z},{w}) valid for exactly {m, y}");

  // x, d, y, f, a, b, c = 0..6.
  Graph opt_graph = make_admg(
      7, {{0, 1}, {1, 2}, {2, 3}, {4, 0}, {4, 5}, {5, 6}, {6, 3}},
      {{0, 2}, {6, 2}});
  auto opt = iv_optimal(opt_graph, 0, 2);
  c.check(opt && opt->z == NodeSet{4} && opt->w == NodeSet{5, 6} && opt->optimal,
          "optimal instrument ({a}, {b, c}) flagged optimal");

  // x, m, y, z, w = 0..4.
  Graph no_civ = make_admg(5, {{0, 1}, {1, 2}, {0, 3}, {1, 4}, {4, 3}});
  c.check(iv_find(no_civ, 0, 2).empty() && iv_find(no_civ, 0, 2, true).empty(),
          "no conditional instrument in the counterexample graph");
  c.check(!contains(iv_verify_all(no_civ, 0, {3}, {4}), 2),
          "({z},{w}) not valid for y in the counterexample graph");

  BooleanMatrix x = BooleanMatrix::from_rows({{1, 1}, {0, 1}, {0, 1}});
  BooleanMatrix y = BooleanMatrix::from_rows({{1, 0, 1, 0}, {0, 0, 0, 1}});
  BooleanMatrix z =
      BooleanMatrix::from_rows({{1, 0, 1, 1}, {0, 0, 0, 1}, {0, 0, 0, 1}});
  c.check(bmm_via_moralize(x, y) == z && bmm_naive(x, y) == z,
          "Boolean product through moralization");

  // v1 -> v2 -> v3 <- v4.
  Graph chain = make_dag(4, {{0, 1}, {1, 2}, {3, 2}});
  std::vector<Edge> closure{{0, 1}, {0, 2}, {1, 2}, {3, 2}};
  c.check(transitive_closure(chain).edges("-->") == closure &&
              tc_via_latent_projection(chain).edges("-->") == closure,
          "transitive closure adds v1 -> v3");

  // v^s = 0..3, v = 4..7, v^t = 8..11.
  std::vector<Edge> lifted;
  for (NodeId v = 0; v < 4; ++v) {
    lifted.emplace_back(v, 4 + v);
    lifted.emplace_back(4 + v, 8 + v);
  }
  for (const Edge& e : chain.edges("-->"))
    lifted.emplace_back(4 + e.first, 4 + e.second);
  Graph projected = latent_projection(make_dag(12, lifted), {4, 5, 6, 7});
  std::vector<Edge> dir{{0, 8},  {0, 9},  {0, 10}, {1, 9},
                        {1, 10}, {2, 10}, {3, 10}, {3, 11}};
  std::vector<Edge> bidir{{8, 9}, {8, 10}, {9, 10}, {10, 11}};
  c.check(projected.edges("-->") == dir && projected.edges("<->") == bidir,
          "latent projection of the lifted chain");
  return c.report();
}

bool definition_oracles() {
  Criterion c("composite algorithms agree with definition-level oracles");
  auto run = [&](const std::string& name, const testkit::Outcome& o,
                 std::size_t need) {
    c.check(o.ok && o.cases >= need, name + ": " + summary(o));
  };
  run("test_dsep vs path enumeration", testkit::dsep_suite(1000, 101), 500);
  run("adjustment_check_cpdag vs path conditions",
      testkit::adjustment_suite(1000, 102), 500);
  run("path conditions vs validity in every member DAG",
      testkit::adjustment_oracles_agree(500, 103), 500);
  run("iv_verify_all vs per-outcome conditions",
      testkit::iv_verify_suite(1000, 104), 500);
  run("iv_optimal vs projection and district formulas",
      testkit::iv_optimal_suite(1000, 105), 500);
  run("latent_projection vs path search",
      testkit::latent_projection_suite(1000, 106), 500);
  run("bmm_via_moralize vs cubic product", testkit::bmm_suite(1000, 107), 500);
  run("tc_via_latent_projection vs transitive_closure",
      testkit::tc_suite(1000, 108), 500);
  run("parent_aid vs per-pair count (CPDAG pairs, p <= 7)",
      testkit::parent_aid_suite(200, 109), 200);
  run("closure vs path enumeration", testkit::closure_suite(1000, 110), 500);
  run("nearest_separator separates and is never missed",
      testkit::nearest_separator_suite(1000, 111), 500);
  return c.report();
}

bool iv_find_completeness() {
  Criterion c("iv_find is complete and sound against exhaustive enumeration (ADMGs, p <= 7)");
  auto o = testkit::iv_find_suite(500, 201);
  c.check(o.ok && o.cases >= 500, summary(o));
  return c.report();
}

double time_reach(const Graph& g, const SetAssignment& sets,
                  const CompiledTable& t) {
  std::vector<double> runs;
  for (int i = 0; i < 3; ++i) {
    ReachStats st;
    auto start = Clock::now();
    NodeSet r = reach(g, sets, t, &st);
    runs.push_back(seconds_since(start));
    record(g, t, st);
  }
  std::sort(runs.begin(), runs.end());
  return runs[1];
}

bool linearity() {
  Criterion c("traversal time scales linearly and stays within the runtime envelopes");
  const CompiledTable& t = catalog::get(catalog::kAdmgDsep);
  std::vector<double> times;
  for (std::size_t p : {250000u, 500000u, 1000000u}) {
    oracle::GenConfig cfg;
    cfg.p = p;
    cfg.degree = 4;
    cfg.seed = 7 + p;
    Graph g = with_signature(oracle::random_instance(cfg), admg_signature());
    std::mt19937_64 rng(p);
    std::bernoulli_distribution in_z(0.1);
    NodeSet x;
    NodeSet z;
    for (NodeId v = 0; v < p; ++v) {
      if (v % 10000 == 0) {
        x.push_back(v);
      } else if (in_z(rng)) {
        z.push_back(v);
      }
    }
    SetAssignment sets(t.table(), p, {{"X", x}, {"Z", z}});
    double took = time_reach(g, sets, t);
    times.push_back(took);
    c.note("p=" + std::to_string(p) + " m=" + std::to_string(g.num_edges()) +
           ": " + std::to_string(took) + " s");
  }
  c.check(times[1] / times[0] <= 3.0,
          "t(500k)/t(250k) = " + std::to_string(times[1] / times[0]));
  c.check(times[2] / times[1] <= 3.0,
          "t(1M)/t(500k) = " + std::to_string(times[2] / times[1]));
  c.check(times[2] < 10.0, "p=1M single-threaded under 10 s");

  cli::BenchOptions adjust{"adjust", 500, 4.0, 20, 1, 1};
  double adjust_mean = cli::run_bench(adjust)["mean_s"].get<double>();
  c.check(adjust_mean < 0.05,
          "adjust p=500 d=4 mean " + std::to_string(adjust_mean) + " s < 0.05 s");
  cli::BenchOptions aid{"parent-aid", 100, 4.0, 20, 1, 1};
  double aid_mean = cli::run_bench(aid)["mean_s"].get<double>();
  c.check(aid_mean < 0.5,
          "parent-aid p=100 d=4 mean " + std::to_string(aid_mean) + " s < 0.5 s");
  return c.report();
}

bool counter_bounds() {
  Criterion c("work counters stay within p|N||C| visits and 2m|N||C|^2 evaluations");
  c.check(g_counted > 0, std::to_string(g_counted) + " traversals counted");
  c.check(g_visit_ratio <= 1.0,
          "max visits / bound = " + std::to_string(g_visit_ratio));
  c.check(g_eval_ratio <= 1.0,
          "max evaluations / bound = " + std::to_string(g_eval_ratio));
  return c.report();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

bool parser() {
  Criterion c("bundled tables round-trip and malformed tables are rejected with the right error and line");
  for (const catalog::Entry& e : catalog::entries()) {
    RuleTable first = parse_rule_table(e.text);
    RuleTable second = parse_rule_table(format_rule_table(first));
    std::string from_disk = slurp(std::string(CIFLY_TABLES_DIR) + "/" +
                                  std::string(e.graph_class) + "/" +
                                  std::string(e.name) + ".txt");
    c.check(first == second && parse_rule_table(from_disk) == first &&
                validate_rule_table(first).empty(),
            std::string(e.name) + " round-trips and lints clean");
  }
  const std::string dir = std::string(CIFLY_TEST_DATA) + "/malformed";
  std::istringstream manifest(slurp(dir + "/expected.txt"));
  std::string line;
  std::size_t fixtures = 0;
  while (std::getline(manifest, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    std::string file;
    std::string code;
    std::size_t want_line = 0;
    fields >> file >> code >> want_line;
    ++fixtures;
    std::string got = "parsed";
    std::size_t got_line = 0;
    try {
      parse_rule_table(slurp(dir + "/" + file));
    } catch (const ParseError& e) {
      got = std::string(error_code_name(e.code()));
      got_line = e.line();
    }
    c.check(got == code && got_line == want_line,
            file + ": " + got + " at line " + std::to_string(got_line));
  }
  c.check(fixtures >= 25, std::to_string(fixtures) + " malformed fixtures");
  return c.report();
}

}  // namespace

int main() {
  bool ok = true;
  ok &= engine_equivalence();
  ok &= golden_examples();
  ok &= definition_oracles();
  ok &= iv_find_completeness();
  ok &= linearity();
  ok &= counter_bounds();
  ok &= parser();
  return ok ? 0 : 1;
}
