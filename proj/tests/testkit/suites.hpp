#pragma once

// Randomized agreement checks between the library and the brute-force
// oracles. Shared by the unit tests (small counts) and the acceptance
// runner (full counts).

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

namespace cifly::testkit {

struct Outcome {
  bool ok = true;
  std::size_t cases = 0;
  std::size_t positives = 0;  // cases with a non-trivial answer
  std::string detail;  // first disagreement, if any

  void fail(std::string what) {
    if (ok) detail = std::move(what);
    ok = false;
  }
};

struct EngineOutcome : Outcome {
  // Largest observed visits / (p |N| |C|) and evaluations / (2m |N| |C|^2).
  double max_visit_ratio = 0;
  double max_eval_ratio = 0;
};

EngineOutcome engine_vs_state_space(std::string_view table, std::size_t n,
                                    std::uint64_t seed);
Outcome dsep_suite(std::size_t n, std::uint64_t seed);
Outcome adjustment_suite(std::size_t n, std::uint64_t seed);
// adjustment_oracle against validity in every DAG of the class.
Outcome adjustment_oracles_agree(std::size_t n, std::uint64_t seed);
Outcome iv_verify_suite(std::size_t n, std::uint64_t seed);
Outcome iv_optimal_suite(std::size_t n, std::uint64_t seed);
Outcome latent_projection_suite(std::size_t n, std::uint64_t seed);
Outcome bmm_suite(std::size_t n, std::uint64_t seed);
Outcome tc_suite(std::size_t n, std::uint64_t seed);
Outcome parent_aid_suite(std::size_t n, std::uint64_t seed);
Outcome iv_find_suite(std::size_t n, std::uint64_t seed);
Outcome closure_suite(std::size_t n, std::uint64_t seed);
Outcome nearest_separator_suite(std::size_t n, std::uint64_t seed);
Outcome cpdag_construction_suite(std::size_t n, std::uint64_t seed);


}  // namespace cifly::testkit
