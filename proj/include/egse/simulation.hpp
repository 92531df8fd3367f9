#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "egse/exploration.hpp"

namespace egse {

// Discovery time of one trial. Only the exploration draw is simulated: the
// hidden object sits in a pool of N - K objects (the exploitation block never
// holds it), EGSE-A redraws r from the full pool each presentation and EGSE-B
// draws from whatever has not been explored yet.
std::uint64_t run_trial(Algorithm algorithm, const ExplorationConfig& config, std::uint64_t seed);

struct TrialBatch {
  Algorithm algorithm = Algorithm::egse_a;
  ExplorationConfig config;
  std::size_t trials = 1;
  std::uint64_t base_seed = 0;
  // Step caps for the time-constrained discovery probability.
  std::vector<std::uint64_t> max_steps;
};

// Trial t runs with derive_seed(base_seed, t). Results are in trial order and do
// not depend on `threads` (0 picks the hardware concurrency).
std::vector<std::uint64_t> run_batch(const TrialBatch& batch, unsigned threads = 0);

struct CappedDiscovery {
  std::uint64_t max_steps = 0;
  double empirical = 0.0;
  double analytic = 0.0;
};

struct ConvergenceTrace {
  Algorithm algorithm = Algorithm::egse_a;
  ExplorationConfig config;
  std::vector<std::uint64_t> discovery_times;
  std::vector<double> running_mean;  // running_mean[t] averages the first t + 1 outcomes
  double final_mean = 0.0;
  double analytic_mean = 0.0;
  double rel_error = 0.0;  // |final_mean - analytic_mean| / analytic_mean
  std::vector<CappedDiscovery> capped;
};

// Expected discovery time the sample mean should approach: mean_u for EGSE-A,
// the exact (remainder-adjusted) mean of pmf_v for EGSE-B.
double analytic_mean(Algorithm algorithm, const ExplorationConfig& config);

ConvergenceTrace run_convergence(const TrialBatch& batch, unsigned threads = 0);

enum class Case { I, II, III, IV };

Case parse_case(std::string_view text);
std::string_view to_string(Case c) noexcept;

struct CaseParams {
  std::uint64_t base_seed = 0;
  // 0 keeps the default: 5000 for Cases I-III, 1000 for Case IV.
  std::size_t trials = 0;
  unsigned threads = 0;
};

// Case I: EGSE-A mean at N=10000, M=100, eps=0.1.
// Case II: EGSE-B, same settings.
// Case III: EGSE-B at eps = 0.12 and 0.13 (one trace each).
// Case IV: EGSE-B, P(discovery within 750 / 800 / 850 presentations).
std::vector<ConvergenceTrace> run_case(Case c, const CaseParams& params);

}  // namespace egse
