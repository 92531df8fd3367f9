#include "egse/simulation.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>
#include <thread>

#include "egse/analytics.hpp"
#include "egse/errors.hpp"
#include "egse/rng.hpp"

namespace egse {

namespace {

// Position 0 of the pool is the hidden object; the other N - K - 1 slots stand
// for the remaining candidates. Only positions matter, so the pool stores them.
std::uint64_t trial_egse_a(const ExplorationConfig& config, Rng& rng) {
  const std::size_t pool_size = config.explore_pool();
  std::vector<std::uint32_t> pool(pool_size);
  for (std::size_t i = 0; i < pool_size; ++i) pool[i] = static_cast<std::uint32_t>(i);

  for (std::uint64_t presentation = 1;; ++presentation) {
    // Fresh uniform r-subset of the whole pool; the array stays a permutation.
    for (std::size_t i = 0; i < config.r; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, pool_size - 1);
      std::swap(pool[i], pool[pick(rng)]);
      if (pool[i] == 0) return presentation;
    }
  }
}

std::uint64_t trial_egse_b(const ExplorationConfig& config, Rng& rng) {
  const std::size_t pool_size = config.explore_pool();
  std::vector<std::uint32_t> pool(pool_size);
  for (std::size_t i = 0; i < pool_size; ++i) pool[i] = static_cast<std::uint32_t>(i);

  // Positions [0, next) have been explored; each presentation draws from the rest.
  std::size_t next = 0;
  for (std::uint64_t presentation = 1;; ++presentation) {
    const std::size_t batch_end = std::min(next + config.r, pool_size);
    for (; next < batch_end; ++next) {
      std::uniform_int_distribution<std::size_t> pick(next, pool_size - 1);
      std::swap(pool[next], pool[pick(rng)]);
      if (pool[next] == 0) return presentation;
    }
  }
}

}  // namespace

std::uint64_t run_trial(Algorithm algorithm, const ExplorationConfig& config, std::uint64_t seed) {
  Rng rng{seed};
  return algorithm == Algorithm::egse_a ? trial_egse_a(config, rng) : trial_egse_b(config, rng);
}

std::vector<std::uint64_t> run_batch(const TrialBatch& batch, unsigned threads) {
  if (batch.trials == 0) {
    throw InvalidConfig("a batch needs at least one trial");
  }
  if (threads == 0) {
    threads = std::max(1u, std::thread::hardware_concurrency());
  }
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, batch.trials));

  std::vector<std::uint64_t> times(batch.trials);
  const auto worker = [&](unsigned id) {
    for (std::size_t t = id; t < batch.trials; t += threads) {
      times[t] = run_trial(batch.algorithm, batch.config, derive_seed(batch.base_seed, t));
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (unsigned id = 0; id < threads; ++id) pool.emplace_back(worker, id);
  pool.clear();
  return times;
}

double analytic_mean(Algorithm algorithm, const ExplorationConfig& config) {
  if (algorithm == Algorithm::egse_a) {
    return to_double(mean_u(config.n, config.m, config.r));
  }
  return to_double(exact_moments_v(config.n, config.m, config.r).mean);
}

ConvergenceTrace run_convergence(const TrialBatch& batch, unsigned threads) {
  ConvergenceTrace trace;
  trace.algorithm = batch.algorithm;
  trace.config = batch.config;
  trace.discovery_times = run_batch(batch, threads);
  trace.analytic_mean = analytic_mean(batch.algorithm, batch.config);

  trace.running_mean.reserve(trace.discovery_times.size());
  std::uint64_t sum = 0;
  for (std::size_t t = 0; t < trace.discovery_times.size(); ++t) {
    sum += trace.discovery_times[t];
    trace.running_mean.push_back(static_cast<double>(sum) / static_cast<double>(t + 1));
  }
  trace.final_mean = trace.running_mean.back();
  trace.rel_error = std::abs(trace.final_mean - trace.analytic_mean) / trace.analytic_mean;

  for (std::uint64_t cap : batch.max_steps) {
    const auto hits = std::count_if(trace.discovery_times.begin(), trace.discovery_times.end(),
                                    [cap](std::uint64_t k) { return k <= cap; });
    trace.capped.push_back(
        {cap, static_cast<double>(hits) / static_cast<double>(trace.discovery_times.size()),
         discovery_within(batch.algorithm, batch.config.n, batch.config.m, batch.config.r, cap)});
  }
  return trace;
}

Case parse_case(std::string_view text) {
  std::string upper(text);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  if (upper == "I" || upper == "1") return Case::I;
  if (upper == "II" || upper == "2") return Case::II;
  if (upper == "III" || upper == "3") return Case::III;
  if (upper == "IV" || upper == "4") return Case::IV;
  throw InvalidConfig("unknown case '" + std::string(text) + "'");
}

std::string_view to_string(Case c) noexcept {
  switch (c) {
    case Case::I: return "I";
    case Case::II: return "II";
    case Case::III: return "III";
    case Case::IV: return "IV";
  }
  return "?";
}

std::vector<ConvergenceTrace> run_case(Case c, const CaseParams& params) {
  constexpr std::size_t kN = 10'000;
  constexpr std::size_t kM = 100;
  const std::size_t trials = params.trials != 0 ? params.trials : (c == Case::IV ? 1000 : 5000);

  const auto batch = [&](Algorithm algorithm, double epsilon) {
    TrialBatch b;
    b.algorithm = algorithm;
    b.config = ExplorationConfig::make(kN, kM, epsilon);
    b.trials = trials;
    b.base_seed = params.base_seed;
    return b;
  };

  switch (c) {
    case Case::I:
      return {run_convergence(batch(Algorithm::egse_a, 0.1), params.threads)};
    case Case::II:
      return {run_convergence(batch(Algorithm::egse_b, 0.1), params.threads)};
    case Case::III:
      return {run_convergence(batch(Algorithm::egse_b, 0.12), params.threads),
              run_convergence(batch(Algorithm::egse_b, 0.13), params.threads)};
    case Case::IV: {
      TrialBatch b = batch(Algorithm::egse_b, 0.1);
      b.max_steps = {750, 800, 850};
      return {run_convergence(b, params.threads)};
    }
  }
  throw InvalidConfig("unknown case");
}

}  // namespace egse
