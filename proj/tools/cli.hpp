#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "egse/exploration.hpp"

namespace egse::cli {

enum class Format { csv, json };

struct ExperimentSpec {
  std::string command;
  Algorithm algorithm = Algorithm::egse_b;
  std::size_t n = 10'000;
  std::size_t m = 100;
  double epsilon = 0.1;
  std::uint64_t seed = 0;
  std::size_t trials = 5000;
  std::vector<std::uint64_t> max_steps;
  std::optional<std::uint64_t> within;
  double boost_delta = 0.02;
  double penalty_delta = 0.01;
  double target_boost = 0.05;
  std::uint64_t max_queries = 100'000;
  bool worst_case = true;
  Exclusion exclusion = Exclusion::all_presented;
  unsigned threads = 0;
  bool summary = false;
  std::string out;
  std::string hist_prefix;
  std::optional<Format> format;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitInvalidConfig = 2;

// Parses `args` (without the program name), runs the subcommand and returns the
// process exit code. Primary output goes to `out` unless --out names a file.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Formats with 6 significant digits.
std::string format_number(double value);

}  // namespace egse::cli
