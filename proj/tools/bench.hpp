#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace cifly::cli {

struct BenchOptions {
  std::string algo;
  std::size_t p = 100;
  double degree = 4.0;
  std::size_t reps = 20;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

std::vector<std::string> bench_algorithms();
nlohmann::json run_bench(const BenchOptions& opt);

}  // namespace cifly::cli
