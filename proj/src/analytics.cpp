#include "egse/analytics.hpp"

#include <cmath>
#include <string>

#include "egse/errors.hpp"

namespace egse {

namespace {

using boost::multiprecision::pow;

// Preconditions shared by every (n, m, r) entry point: n > m >= r >= 1.
void validate(std::uint64_t n, std::uint64_t m, std::uint64_t r) {
  if (r < 1 || m < r || n <= m) {
    throw InvalidConfig("need n > m >= r >= 1 (got n=" + std::to_string(n) +
                        ", m=" + std::to_string(m) + ", r=" + std::to_string(r) + ")");
  }
}

// Exploration pool when the K exploitation slots are fixed: N - K = n - m + r.
std::uint64_t pool_size(std::uint64_t n, std::uint64_t m, std::uint64_t r) { return n - m + r; }

Rational binomial_ratio(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  return Rational(binomial(a, b), binomial(c, d));
}

std::int64_t as_signed(std::uint64_t v) { return static_cast<std::int64_t>(v); }

}  // namespace

double to_double(const Rational& value) { return value.convert_to<double>(); }

BigInt binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) {
    return 0;
  }
  k = std::min(k, n - k);
  BigInt result = 1;
  // After step i the accumulator holds C(n - k + i, i), so each division is exact.
  for (std::int64_t i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

DiscoveryDistribution make_distribution(Algorithm algorithm, std::uint64_t n, std::uint64_t m,
                                        std::uint64_t r) {
  validate(n, m, r);
  DiscoveryDistribution d;
  d.algorithm = algorithm;
  d.alpha = Rational(r, pool_size(n, m, r));
  d.beta = 1 - d.alpha;
  if (algorithm == Algorithm::egse_b) {
    d.support_max = support_max_v(n, m, r);
    d.c = d.alpha;
  }
  return d;
}

Rational inclusion_prob_a_binomial(std::uint64_t n, std::uint64_t m, std::uint64_t r) {
  validate(n, m, r);
  const auto pool = as_signed(pool_size(n, m, r));
  const auto draws = as_signed(r);
  return binomial_ratio(pool - 1, draws - 1, pool, draws);
}

Rational inclusion_prob_a(std::uint64_t n, std::uint64_t m, std::uint64_t r) {
  validate(n, m, r);
  Rational alpha(r, pool_size(n, m, r));
  if (pool_size(n, m, r) <= kBinomialCheckLimit && alpha != inclusion_prob_a_binomial(n, m, r)) {
    throw AnalyticInconsistency(1, "inclusion probability disagrees with its binomial form");
  }
  return alpha;
}

Rational pmf_u(std::uint64_t n, std::uint64_t m, std::uint64_t r, std::uint64_t k) {
  validate(n, m, r);
  if (k == 0) {
    throw DomainError("discovery time starts at presentation 1");
  }
  const std::uint64_t pool = pool_size(n, m, r);
  const auto exponent = static_cast<unsigned>(k - 1);
  // alpha * beta^(k-1) = r (pool - r)^(k-1) / pool^k
  return Rational(BigInt(r) * pow(BigInt(pool - r), exponent), pow(BigInt(pool), exponent + 1));
}

Rational mean_u(std::uint64_t n, std::uint64_t m, std::uint64_t r) {
  validate(n, m, r);
  return Rational(pool_size(n, m, r), r);
}

Rational var_u(std::uint64_t n, std::uint64_t m, std::uint64_t r) {
  const Rational mean = mean_u(n, m, r);
  return mean * mean * Rational(n - m, pool_size(n, m, r));
}

Rational mean_u_binomial(std::uint64_t n, std::uint64_t m, std::uint64_t r) {
  validate(n, m, r);
  const auto pool = as_signed(pool_size(n, m, r));
  const auto draws = as_signed(r);
  return binomial_ratio(pool, draws, pool - 1, draws - 1);
}

Rational var_u_binomial(std::uint64_t n, std::uint64_t m, std::uint64_t r) {
  validate(n, m, r);
  const auto pool = as_signed(pool_size(n, m, r));
  const auto draws = as_signed(r);
  const BigInt all = binomial(pool, draws);
  const BigInt with_x = binomial(pool - 1, draws - 1);
  const Rational mean(all, with_x);
  return mean * mean * Rational(all - with_x, all);
}

std::uint64_t support_max_v(std::uint64_t n, std::uint64_t m, std::uint64_t r) {
  validate(n, m, r);
  return (pool_size(n, m, r) + r - 1) / r;
}

bool divides_evenly(std::uint64_t n, std::uint64_t m, std::uint64_t r) {
  validate(n, m, r);
  return pool_size(n, m, r) % r == 0;
}

Rational pmf_v(std::uint64_t n, std::uint64_t m, std::uint64_t r, std::uint64_t k) {
  const std::uint64_t support = support_max_v(n, m, r);
  const std::uint64_t pool = pool_size(n, m, r);
  if (k == 0 || k > support) {
    return 0;
  }
  if (k < support) {
    return Rational(r, pool);
  }
  return Rational(pool - r * (support - 1), pool);
}

Rational cdf_v(std::uint64_t n, std::uint64_t m, std::uint64_t r, std::uint64_t t) {
  const std::uint64_t support = support_max_v(n, m, r);
  if (t >= support) {
    return 1;
  }
  return Rational(t * r, pool_size(n, m, r));
}

RecurrenceTrace verify_recurrence(std::uint64_t n, std::uint64_t m, std::uint64_t r,
                                  std::uint64_t k_max) {
  const std::uint64_t support = support_max_v(n, m, r);
  if (k_max == 0 || k_max > support) {
    throw InvalidConfig("k_max must lie in 1..support_max (" + std::to_string(support) + ")");
  }
  const auto total = as_signed(pool_size(n, m, r));  // N - K
  const auto step = as_signed(r);
  const Rational constant(r, pool_size(n, m, r));

  RecurrenceTrace trace;
  trace.first_passage.reserve(k_max);

  // Chain of conditional factors. Before presentation k the pool holds
  // N - K - (k-1) r objects, X among them; a partial last batch takes them all.
  Rational survive = 1;
  for (std::uint64_t k = 1; k <= k_max; ++k) {
    const std::int64_t pool = total - (as_signed(k) - 1) * step;
    const std::int64_t draws = std::min(step, pool);
    trace.first_passage.push_back(survive * binomial_ratio(pool - 1, draws - 1, pool, draws));
    survive *= binomial_ratio(pool - 1, draws, pool, draws);
  }

  if (trace.first_passage.front() != inclusion_prob_a(n, m, r)) {
    throw AnalyticInconsistency(1, "first presentation differs from the inclusion probability");
  }

  if (k_max >= 3 && total - 2 * step >= step) {
    // Miss, miss, hit, written with N - M rather than N - K.
    const auto nm = as_signed(n) - as_signed(m);
    const Rational f3 = binomial_ratio(nm + step - 1, step, nm + step, step) *
                        binomial_ratio(nm - 1, step, nm, step) *
                        binomial_ratio(nm - step - 1, step - 1, nm - step, step);
    if (f3 != trace.first_passage[2]) {
      throw AnalyticInconsistency(3, "three-factor product disagrees with the chain");
    }
  }

  // Four-factor recurrence as printed: remove the hit at step k, replace it by
  // a miss, then multiply in the hit at step k+1. Defined while the last
  // binomial's pool N - K - (k+1) r still holds r objects.
  Rational literal = trace.first_passage.front();
  trace.literal_steps = 1;
  for (std::uint64_t k = 1; k + 1 <= k_max; ++k) {
    const std::int64_t ks = as_signed(k);
    const std::int64_t a = total - ks * step;
    const std::int64_t b = total - (ks + 1) * step;
    if (b < step) {
      break;
    }
    literal *= binomial_ratio(a, step, a - 1, step - 1);
    literal *= binomial_ratio(a - 1, step, a, step);
    literal *= binomial_ratio(b - 1, step - 1, b, step);
    if (literal != trace.first_passage[k]) {
      throw AnalyticInconsistency(k + 1, "printed recurrence disagrees with the chain");
    }
    trace.literal_steps = k + 1;
  }

  for (std::uint64_t k = 1; k <= k_max; ++k) {
    const Rational& f = trace.first_passage[k - 1];
    if (f != pmf_v(n, m, r, k)) {
      throw AnalyticInconsistency(k, "first-passage probability differs from pmf_v");
    }
    const bool full = k < support || divides_evenly(n, m, r);
    if (full && f != constant) {
      throw AnalyticInconsistency(k, "first-passage probability is not r / (N - K)");
    }
  }
  trace.consistent = true;
  return trace;
}

Rational mean_v(std::uint64_t n, std::uint64_t m, std::uint64_t r) {
  validate(n, m, r);
  return Rational(n - m + 2 * r, 2 * r);
}

Rational var_v(std::uint64_t n, std::uint64_t m, std::uint64_t r) {
  validate(n, m, r);
  const Rational ratio(pool_size(n, m, r), r);
  return (ratio * ratio - 1) / 12;
}

Rational second_moment_v(std::uint64_t n, std::uint64_t m, std::uint64_t r) {
  validate(n, m, r);
  const Rational presentations(pool_size(n, m, r), r);  // (N - K) / r
  return (1 + presentations) * (1 + 2 * presentations) / 6;
}

Moments exact_moments_v(std::uint64_t n, std::uint64_t m, std::uint64_t r) {
  const std::uint64_t support = support_max_v(n, m, r);
  const std::uint64_t pool = pool_size(n, m, r);
  const std::uint64_t full = divides_evenly(n, m, r) ? support : support - 1;
  const BigInt leftover = BigInt(pool) - BigInt(r) * full;
  const BigInt f = full;

  // Sums of k and k^2 over the full presentations, plus the partial last one.
  const BigInt sum_k = f * (f + 1) / 2;
  const BigInt sum_k2 = f * (f + 1) * (2 * f + 1) / 6;
  const BigInt last = support;

  Moments out;
  out.mean = Rational(BigInt(r) * sum_k + leftover * last, BigInt(pool));
  out.second_moment = Rational(BigInt(r) * sum_k2 + leftover * last * last, BigInt(pool));
  out.variance = out.second_moment - out.mean * out.mean;
  return out;
}

double discovery_within(Algorithm algorithm, std::uint64_t n, std::uint64_t m, std::uint64_t r,
                        std::uint64_t t) {
  validate(n, m, r);
  if (t == 0) {
    return 0.0;
  }
  if (algorithm == Algorithm::egse_b) {
    return to_double(cdf_v(n, m, r, t));
  }
  const double alpha = static_cast<double>(r) / static_cast<double>(pool_size(n, m, r));
  if (alpha >= 1.0) {
    return 1.0;
  }
  return -std::expm1(static_cast<double>(t) * std::log1p(-alpha));
}

Rational prob_finite_discovery(Algorithm algorithm, std::uint64_t n, std::uint64_t m,
                               std::uint64_t r) {
  if (algorithm == Algorithm::egse_a) {
    const DiscoveryDistribution d = make_distribution(algorithm, n, m, r);
    return d.alpha / (1 - d.beta);
  }
  Rational total = 0;
  const std::uint64_t support = support_max_v(n, m, r);
  for (std::uint64_t k = 1; k <= support; ++k) {
    total += pmf_v(n, m, r, k);
  }
  return total;
}

}  // namespace egse
