#include "bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <thread>

#include "cifly/catalog.hpp"
#include "cifly/causal.hpp"
#include "cifly/engine.hpp"
#include "cifly/error.hpp"
#include "cifly/oracle.hpp"
#include "cifly/reductions.hpp"

namespace cifly::cli {

namespace {

using oracle::GraphKind;

struct Instance {
  Graph g;
  Graph other;
  NodeId x = 0;
  NodeId y = 0;
  NodeSet w;
};

struct Algo {
  GraphKind kind;
  bool needs_pair;
  bool admg_view;  // DAG instances traversed with ADMG tables
  std::function<void(const Instance&, unsigned threads)> run;
};

const std::map<std::string, Algo>& registry() {
  static const std::map<std::string, Algo> algos = {
      {"reach-dsep",
       {GraphKind::kDag, false, true,
        [](const Instance& in, unsigned) {
          const CompiledTable& t = catalog::get(catalog::kAdmgDsep);
          reach(in.g,
                SetAssignment(t.table(), in.g.num_nodes(),
                              {{"X", {in.x}}, {"Z", in.w}}),
                t);
        }}},
      {"dsep",
       {GraphKind::kAdmg, false, false,
        [](const Instance& in, unsigned) {
          test_dsep(in.g, {in.x}, {in.y}, in.w);
        }}},
      {"adjust",
       {GraphKind::kCpdag, false, false,
        [](const Instance& in, unsigned) {
          adjustment_check_cpdag(in.g, {in.x}, {in.y}, in.w);
        }}},
      {"parent-aid",
       {GraphKind::kCpdag, true, false,
        [](const Instance& in, unsigned threads) {
          parent_aid(in.g, in.other, threads);
        }}},
      {"iv-verify",
       {GraphKind::kAdmg, false, false,
        [](const Instance& in, unsigned) {
          iv_verify_all(in.g, in.x, {in.y}, in.w);
        }}},
      {"iv-optimal",
       {GraphKind::kAdmg, false, false,
        [](const Instance& in, unsigned) { iv_optimal(in.g, in.x, in.y); }}},
      {"iv-find",
       {GraphKind::kAdmg, false, false,
        [](const Instance& in, unsigned) { iv_find(in.g, in.x, in.y); }}},
      {"moralize",
       {GraphKind::kDag, false, false,
        [](const Instance& in, unsigned) { moralize(in.g); }}},
      {"tc",
       {GraphKind::kDag, false, false,
        [](const Instance& in, unsigned) { tc_via_latent_projection(in.g); }}},
      {"project",
       {GraphKind::kDag, false, false,
        [](const Instance& in, unsigned) { latent_projection(in.g, in.w); }}},
  };
  return algos;
}

Instance make_instance(const Algo& algo, const BenchOptions& opt,
                       std::uint64_t seed) {
  oracle::GenConfig cfg;
  cfg.p = opt.p;
  cfg.degree = opt.degree;
  cfg.seed = seed;
  cfg.kind = algo.kind;
  Instance in{oracle::random_instance(cfg), Graph{}, 0, 0, {}};
  if (algo.admg_view) in.g = with_signature(in.g, admg_signature());
  if (algo.needs_pair) {
    cfg.seed = seed ^ 0x9e3779b97f4a7c15ULL;
    in.other = oracle::random_instance(cfg);
  }
  std::mt19937_64 rng(seed + 1);
  std::vector<NodeId> order(opt.p);
  std::iota(order.begin(), order.end(), NodeId{0});
  std::shuffle(order.begin(), order.end(), rng);
  in.x = order[0];
  in.y = order[1];
  std::size_t k = std::min<std::size_t>(5, opt.p - 2);
  in.w = make_node_set({order.begin() + 2, order.begin() + 2 + k});
  return in;
}

}  // namespace

std::vector<std::string> bench_algorithms() {
  std::vector<std::string> out;
  for (const auto& [name, algo] : registry()) out.push_back(name);
  return out;
}

nlohmann::json run_bench(const BenchOptions& opt) {
  auto it = registry().find(opt.algo);
  if (it == registry().end()) {
    throw Error(ErrorCode::kUnknownAlgo, "unknown algorithm '" + opt.algo + "'");
  }
  if (opt.p < 2) {
    throw Error(ErrorCode::kInvalidInput, "--p must be at least 2");
  }
  const Algo& algo = it->second;
  std::mt19937_64 seeds(opt.seed);
  std::vector<std::uint64_t> instance_seeds(opt.reps);
  for (auto& s : instance_seeds) s = seeds();

  std::vector<double> times(opt.reps, 0.0);
  auto one = [&](std::size_t rep, unsigned inner_threads) {
    Instance in = make_instance(algo, opt, instance_seeds[rep]);
    auto start = std::chrono::steady_clock::now();
    algo.run(in, inner_threads);
    std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
    times[rep] = took.count();
  };
  if (opt.algo == "parent-aid" || opt.threads <= 1) {
    for (std::size_t r = 0; r < opt.reps; ++r) one(r, opt.threads);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    for (unsigned t = 0; t < opt.threads; ++t) {
      pool.emplace_back([&] {
        try {
          for (std::size_t r = next++; r < opt.reps; r = next++) one(r, 1);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
  }

  std::vector<double> sorted = times;
  std::sort(sorted.begin(), sorted.end());
  double median = sorted.size() % 2 == 1
                      ? sorted[sorted.size() / 2]
                      : (sorted[sorted.size() / 2 - 1] + sorted[sorted.size() / 2]) / 2;
  nlohmann::json doc;
  doc["algo"] = opt.algo;
  doc["p"] = opt.p;
  doc["deg"] = opt.degree;
  doc["reps"] = opt.reps;
  doc["seed"] = opt.seed;
  doc["threads"] = opt.threads;
  doc["mean_s"] = std::accumulate(times.begin(), times.end(), 0.0) /
                  static_cast<double>(times.size());
  doc["median_s"] = median;
  doc["times_s"] = times;
  return doc;
}

}  // namespace cifly::cli
