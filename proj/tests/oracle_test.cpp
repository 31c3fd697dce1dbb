#include <gtest/gtest.h>

#include <random>
#include <set>

#include "cifly/error.hpp"
#include "cifly/oracle.hpp"
#include "suites.hpp"

namespace cifly::oracle {
namespace {

TEST(Generators, SeedsAreReproducible) {
  GenConfig cfg{40, 3.0, 12, GraphKind::kAdmg, 1.0};
  Graph a = random_instance(cfg);
  Graph b = random_instance(cfg);
  EXPECT_EQ(a.input().edges, b.input().edges);
  cfg.seed = 13;
  EXPECT_NE(random_instance(cfg).input().edges, a.input().edges);
}

TEST(Generators, DagIsAcyclicWithExpectedDegree) {
  GenConfig cfg{2000, 4.0, 1, GraphKind::kDag, 0};
  Graph g = random_instance(cfg);
  EXPECT_EQ(g.signature(), dag_signature());
  double degree = 2.0 * g.num_edges() / 2000.0;
  EXPECT_NEAR(degree, 4.0, 0.3);
  EXPECT_FALSE(g.edges("-->").empty());
}

TEST(Generators, SkeletonHasNoDuplicates) {
  std::mt19937_64 rng(2);
  auto edges = random_skeleton(50, 5.0, rng);
  std::set<Edge> seen(edges.begin(), edges.end());
  EXPECT_EQ(seen.size(), edges.size());
  for (const Edge& e : edges) EXPECT_LT(e.first, e.second);
}

TEST(Generators, CpdagInstancesAreCompelledLabelings) {
  auto o = testkit::cpdag_construction_suite(80, 41);
  EXPECT_TRUE(o.ok) << o.detail;
}

TEST(Generators, MarkovEquivalentDags) {
  // Chain 0 -> 1 -> 2 has three members; the collider has one.
  Graph chain = make_dag(3, {{0, 1}, {1, 2}});
  EXPECT_EQ(markov_equivalent_dags(chain).size(), 3u);
  Graph collider = make_dag(3, {{0, 1}, {2, 1}});
  EXPECT_EQ(markov_equivalent_dags(collider).size(), 1u);
  Graph cp = cpdag_of(chain);
  EXPECT_EQ(cp.edges("---").size(), 2u);
  EXPECT_TRUE(cpdag_of(collider).edges("---").empty());
  EXPECT_EQ(enumerate_cpdag(chain).input().edges, cp.input().edges);
}

TEST(Oracles, DsepBruteforceBasics) {
  Graph g = make_admg(3, {{0, 1}, {2, 1}});
  EXPECT_TRUE(dsep_bruteforce(g, {0}, {2}, {}));
  EXPECT_FALSE(dsep_bruteforce(g, {0}, {2}, {1}));
}

TEST(Oracles, IvExhaustiveSmallGraph) {
  Graph g = make_admg(5, {{0, 1}, {1, 2}, {3, 0}, {4, 3}, {4, 2}}, {{0, 2}});
  auto all = iv_exhaustive(g, 0, 2);
  ASSERT_FALSE(all.empty());
  EXPECT_EQ(all.front(), (IvPair{3, {4}}));
  EXPECT_TRUE(iv_valid_oracle(g, 0, 2, {3}, {4}));
  EXPECT_FALSE(iv_valid_oracle(g, 0, 2, {3}, {}));
}

TEST(Oracles, ExplicitReachMatchesEngine) {
  auto o = testkit::engine_vs_state_space("admg_dsep", 100, 42);
  EXPECT_TRUE(o.ok) << o.detail;
  EXPECT_GT(o.positives, 0u);
}

TEST(Oracles, RefuseLargeGraphs) {
  Graph g = make_admg(kMaxOracleNodes + 1, {});
  EXPECT_THROW(dsep_bruteforce(g, {0}, {1}, {}), Error);
}

TEST(Oracles, ProjectionOfLiftedChain) {
  // v^s, v, v^t copies of 0 -> 1 -> 2 <- 3.
  std::vector<Edge> edges;
  for (NodeId v = 0; v < 4; ++v) {
    edges.emplace_back(v, 4 + v);
    edges.emplace_back(4 + v, 8 + v);
  }
  for (Edge e : std::vector<Edge>{{0, 1}, {1, 2}, {3, 2}})
    edges.emplace_back(4 + e.first, 4 + e.second);
  Graph r = latent_projection_oracle(make_dag(12, edges), {4, 5, 6, 7});
  EXPECT_EQ(r.edges("<->"),
            (std::vector<Edge>{{8, 9}, {8, 10}, {9, 10}, {10, 11}}));
}

}  // namespace
}  // namespace cifly::oracle
