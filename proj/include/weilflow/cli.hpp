#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "weilflow/test_functions.hpp"

namespace weilflow::cli {

enum class OutputFormat { Json, Text, Csv };

struct RunConfig {
  std::string subcommand;  // validate | zeta | count | orbits | spectrum | verify
  std::string input_path;
  std::vector<Bump> alpha;
  double tolerance = 1e-8;
  std::int64_t nu_cap = 10'000'000;
  OutputFormat format = OutputFormat::Json;
  bool allow_non_ordinary = false;
  int count_range = 12;
  double window = 10.0;
  int max_dimension = 8;
  int threads = 1;
  bool timing = false;
};

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitVerificationFailed = 2;

// Runs one subcommand, writing the report to out and diagnostics to err.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses argv (including WEILFLOW_THREADS from the environment) and runs.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace weilflow::cli
