#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace cifly::cli {

enum ExitCode { kOk = 0, kInputError = 1, kUsageError = 2 };

// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view data);

}  // namespace cifly::cli
