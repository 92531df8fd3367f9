#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "egse/catalog.hpp"
#include "egse/exploration.hpp"
#include "egse/rng.hpp"

namespace egse {

struct ClickModel {
  std::size_t max_clicks = 5;
  double boost_delta = 0.02;
  double penalty_delta = 0.01;

  void validate() const;
};

// One round of simulated user feedback on `list`:
//  - c ~ uniform{0..max_clicks} distinct exploitation objects are clicked (implicit feedback);
//  - every exploration object is judged (explicit feedback).
// A judged object gains boost_delta under `query` when its true label is
// `query` and loses penalty_delta otherwise; values are clamped to [0, 1].
// Returns the clicked exploitation objects.
std::vector<ObjectId> simulate_feedback(const MList& list, const Catalog& catalog, RivStore& store,
                                        Label query, const ClickModel& model, Rng& rng);

// Fraction of the list whose true label is `query`. DomainError on an empty list.
double precision(const MList& list, const Catalog& catalog, Label query);

struct EvolutionParams {
  Algorithm algorithm = Algorithm::egse_b;
  std::size_t n = 1000;
  std::size_t m = 50;
  double epsilon = 0.1;
  std::vector<std::string> labels = default_labels();
  Label target = 0;

  double riv_mean = kDefaultRivMean;
  double riv_sigma = kDefaultRivSigma;
  // Initial head start for objects that truly carry the target label, in (0, riv_sigma].
  double target_boost = 0.05;

  ClickModel clicks;
  // Keep the hidden object out of every exploitation block.
  bool worst_case = true;
  Exclusion exclusion = Exclusion::all_presented;
  std::uint64_t max_queries = 100'000;
  std::uint64_t seed = 0;
};

struct QueryRecord {
  std::uint64_t query = 0;
  double precision = 0.0;
  std::vector<ObjectId> clicked;
  bool discovered = false;
  bool hidden_in_exploit = false;
};

struct EvolutionTrace {
  Catalog catalog;
  ObjectId hidden{};
  std::vector<QueryRecord> queries;
  std::optional<std::uint64_t> discovery_query;
  RivStore initial;
  RivStore final;  // at discovery, or when the session ended without one
};

// Builds the catalog and index, plants the hidden object and runs
// present + feedback until the hidden object appears on a list or the session
// terminates.
EvolutionTrace run_evolution(const EvolutionParams& params);

struct CategorySummary {
  std::string label;
  std::size_t count = 0;
  double mean = 0.0;
  std::array<double, 11> deciles{};  // 0%, 10%, ..., 100%
};

// Distribution of RIVs under `query`, grouped by each object's true label.
std::vector<CategorySummary> summarize_categories(const RivStore& store, const Catalog& catalog,
                                                  Label query);

}  // namespace egse
