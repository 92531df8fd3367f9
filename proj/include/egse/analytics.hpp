#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "egse/exploration.hpp"

// Discovery-time laws of the hidden object.
//
// U is the first presentation that contains the hidden object under EGSE-A:
// every presentation draws r objects from the same N - M + r pool, so U is
// geometric with success probability alpha = r / (N - M + r).
//
// V is the same quantity under EGSE-B: the pool shrinks by r each time, and
// the first-passage probability is the constant r / (N - K) over the
// ceil((N - K) / r) presentations it takes to exhaust the pool. When r does
// not divide N - K the last, partial, presentation carries the leftover mass.
//
// Everything here is exact. Floating point appears only in discovery_within
// and in to_double.
namespace egse {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

double to_double(const Rational& value);

// C(n, k) by multiplicative accumulation. Zero when k < 0 or k > n; n must be >= 0.
BigInt binomial(std::int64_t n, std::int64_t k);

struct DiscoveryDistribution {
  Algorithm algorithm = Algorithm::egse_a;
  Rational alpha;                            // per-presentation success probability (EGSE-A)
  Rational beta;                             // 1 - alpha
  std::optional<std::uint64_t> support_max;  // EGSE-B only; EGSE-A is unbounded
  Rational c;                                // EGSE-B constant first-passage probability
};

DiscoveryDistribution make_distribution(Algorithm algorithm, std::uint64_t n, std::uint64_t m,
                                        std::uint64_t r);

// --- EGSE-A ---------------------------------------------------------------

// r / (n - m + r). Cross-checked against C(n-m+r-1, r-1) / C(n-m+r, r) when
// n - m + r <= kBinomialCheckLimit.
Rational inclusion_prob_a(std::uint64_t n, std::uint64_t m, std::uint64_t r);
// The binomial-ratio form on its own.
Rational inclusion_prob_a_binomial(std::uint64_t n, std::uint64_t m, std::uint64_t r);

inline constexpr std::uint64_t kBinomialCheckLimit = 10'000;

// alpha * beta^(k-1); DomainError for k == 0.
Rational pmf_u(std::uint64_t n, std::uint64_t m, std::uint64_t r, std::uint64_t k);
// (n - m + r) / r
Rational mean_u(std::uint64_t n, std::uint64_t m, std::uint64_t r);
// mean^2 (n - m) / (n - m + r)
Rational var_u(std::uint64_t n, std::uint64_t m, std::uint64_t r);
// Mean and variance written as binomial ratios, evaluated literally.
Rational mean_u_binomial(std::uint64_t n, std::uint64_t m, std::uint64_t r);
Rational var_u_binomial(std::uint64_t n, std::uint64_t m, std::uint64_t r);

// --- EGSE-B ---------------------------------------------------------------

// ceil((n - k) / r) with k = m - r.
std::uint64_t support_max_v(std::uint64_t n, std::uint64_t m, std::uint64_t r);
// True when r divides n - k, i.e. every presentation is full.
bool divides_evenly(std::uint64_t n, std::uint64_t m, std::uint64_t r);

// r / (n - k) on full presentations, leftover / (n - k) on a partial last one,
// zero outside 1..support_max.
Rational pmf_v(std::uint64_t n, std::uint64_t m, std::uint64_t r, std::uint64_t k);
// P(V <= t)
Rational cdf_v(std::uint64_t n, std::uint64_t m, std::uint64_t r, std::uint64_t t);

struct RecurrenceTrace {
  bool consistent = false;
  std::vector<Rational> first_passage;  // first_passage[k-1] = f_k
  std::uint64_t literal_steps = 0;      // presentations reached by the literal recurrence
};

// Evaluates the first-passage probabilities three ways in exact arithmetic and
// checks they agree with each other and with pmf_v for k = 1..k_max:
//  - the chain of "missed, missed, ..., hit" binomial factors (the three-factor
//    product for k = 3 is also checked on its own);
//  - the four-factor recurrence as printed, for every step whose binomials are
//    defined (it needs N - K - (k+1) r >= r, so it stops before the last step);
//  - the constant r / (N - K).
// Throws AnalyticInconsistency naming the first offending k.
RecurrenceTrace verify_recurrence(std::uint64_t n, std::uint64_t m, std::uint64_t r,
                                  std::uint64_t k_max);

// Closed forms. Exact when divides_evenly(); otherwise approximations of the
// remainder-adjusted law (see exact_moments_v).
Rational mean_v(std::uint64_t n, std::uint64_t m, std::uint64_t r);           // (n-m+2r)/(2r)
Rational var_v(std::uint64_t n, std::uint64_t m, std::uint64_t r);            // (((n-m+r)/r)^2-1)/12
Rational second_moment_v(std::uint64_t n, std::uint64_t m, std::uint64_t r);  // (1+L)(1+2L)/6

struct Moments {
  Rational mean;
  Rational second_moment;
  Rational variance;
};

// Moments of pmf_v itself, valid whether or not r divides n - k.
Moments exact_moments_v(std::uint64_t n, std::uint64_t m, std::uint64_t r);

// --- both -----------------------------------------------------------------

// P(discovery at or before presentation t). EGSE-A: 1 - beta^t; EGSE-B: cdf_v.
double discovery_within(Algorithm algorithm, std::uint64_t n, std::uint64_t m, std::uint64_t r,
                        std::uint64_t t);

// Total probability of eventual discovery. EGSE-A as alpha / (1 - beta), the
// limit of the geometric series; EGSE-B as the exact sum of pmf_v.
Rational prob_finite_discovery(Algorithm algorithm, std::uint64_t n, std::uint64_t m,
                               std::uint64_t r);

}  // namespace egse
