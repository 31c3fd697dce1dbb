#pragma once

// Brute-force reference implementations and random instance generators for
// tests and benchmarks. Nothing here shares code with the traversal engine.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cifly/causal.hpp"
#include "cifly/engine.hpp"
#include "cifly/graph.hpp"
#include "cifly/ruletable.hpp"

namespace cifly::oracle {

inline constexpr std::size_t kMaxOracleNodes = 12;
inline constexpr std::size_t kMaxEnumerationNodes = 7;

using SetMap = std::map<std::string, NodeSet>;

struct StateSpace {
  std::size_t num_types = 0;
  std::size_t num_colors = 0;
  std::vector<State> states;  // state id -> (node, type, color)
  std::vector<std::vector<std::size_t>> successors;
  std::vector<std::size_t> starts;

  std::size_t id(NodeId v, std::size_t n, std::size_t c) const {
    return (v * num_types + n) * num_colors + c;
  }
};

StateSpace explicit_state_space(const Graph& g, const SetMap& sets,
                                const RuleTable& table);
// Breadth-first reachability on the state space, filtered by the outputs.
NodeSet explicit_reach(const Graph& g, const SetMap& sets,
                       const RuleTable& table);

bool dsep_bruteforce(const Graph& g, const NodeSet& x, const NodeSet& y,
                     const NodeSet& z);

// CPDAG adjustment validity from the three path conditions.
bool adjustment_oracle(const Graph& g, const NodeSet& x, const NodeSet& y,
                       const NodeSet& w);
// CPDAG adjustment validity as validity in every DAG of the class.
bool adjustment_mec_oracle(const Graph& g, const NodeSet& x, const NodeSet& y,
                           const NodeSet& w);
bool amenable_oracle(const Graph& g, NodeId x, NodeId y);
NodeSet possible_descendants_oracle(const Graph& g, NodeId x);
std::size_t parent_aid_oracle(const Graph& g_true, const Graph& g_guess);

bool iv_valid_oracle(const Graph& g, NodeId x, NodeId y, const NodeSet& z,
                     const NodeSet& w);
// All valid (z, W) with a single instrument z, W ranging over all subsets.
std::vector<IvPair> iv_exhaustive(const Graph& g, NodeId x, NodeId y);

// DAG input; result uses original indices, latent nodes stay isolated.
Graph latent_projection_oracle(const Graph& g, const NodeSet& latent);
// ADMG input, paths with non-collider interior nodes in L.
Graph admg_projection_oracle(const Graph& g, const NodeSet& latent);
NodeSet dis_plus(const Graph& g, const NodeSet& w, NodeId u);
std::optional<IvResult> optimal_iv_oracle(const Graph& g, NodeId x, NodeId y);

// Nodes reachable from X by a path inside A with no non-collider in Z.
NodeSet closure_oracle(const Graph& g, const NodeSet& x, const NodeSet& z,
                       const NodeSet& a);

enum class GraphKind { kDag, kAdmg, kCpdag };

struct GenConfig {
  std::size_t p = 10;
  double degree = 3.0;
  std::uint64_t seed = 0;
  GraphKind kind = GraphKind::kDag;
  double bidirected_degree = 1.0;  // ADMG only
};

Graph random_instance(const GenConfig& cfg);
// Erdos-Renyi pairs u < v with edge probability degree / (p - 1).
std::vector<Edge> random_skeleton(std::size_t p, double degree,
                                  std::mt19937_64& rng);
// Random edges for an arbitrary signature, self-loops and duplicates
// included.
Graph random_signature_graph(const EdgeSignature& sig, std::size_t p,
                             double degree, std::mt19937_64& rng);
SetMap random_sets(const RuleTable& table, std::size_t p, double density,
                   std::mt19937_64& rng);

// DAGs (as "-->" edge lists) Markov equivalent to a DAG or CPDAG g.
std::vector<std::vector<Edge>> markov_equivalent_dags(const Graph& g);
Graph enumerate_cpdag(const Graph& dag);
// Compelled-edge labeling; no size limit.
Graph cpdag_of(const Graph& dag);

}  // namespace cifly::oracle
