#include "egse/feedback.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>

#include "egse/errors.hpp"

namespace egse {

namespace {

void judge(ObjectId id, const Catalog& catalog, RivStore& store, Label query,
           const ClickModel& model) {
  double& v = store.at(query, id);
  if (catalog.true_label[index_of(id)] == query) {
    v = std::min(1.0, v + model.boost_delta);
  } else {
    v = std::max(0.0, v - model.penalty_delta);
  }
}

// Linear interpolation between order statistics.
double quantile(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

}  // namespace

void ClickModel::validate() const {
  if (!(boost_delta > 0.0) || !(penalty_delta > 0.0)) {
    throw InvalidConfig("click model deltas must be positive");
  }
}

std::vector<ObjectId> simulate_feedback(const MList& list, const Catalog& catalog, RivStore& store,
                                        Label query, const ClickModel& model, Rng& rng) {
  const std::size_t clicks = std::min(
      std::uniform_int_distribution<std::size_t>(0, model.max_clicks)(rng), list.exploit.size());
  std::vector<ObjectId> clicked;
  clicked.reserve(clicks);
  std::sample(list.exploit.begin(), list.exploit.end(), std::back_inserter(clicked), clicks, rng);

  for (ObjectId id : clicked) judge(id, catalog, store, query, model);
  for (ObjectId id : list.explore) judge(id, catalog, store, query, model);
  return clicked;
}

double precision(const MList& list, const Catalog& catalog, Label query) {
  if (list.size() == 0) {
    throw DomainError("precision of an empty list");
  }
  std::size_t hits = 0;
  for (const auto* part : {&list.exploit, &list.explore}) {
    for (ObjectId id : *part) {
      hits += catalog.true_label[index_of(id)] == query ? 1 : 0;
    }
  }
  return static_cast<double>(hits) / static_cast<double>(list.size());
}

EvolutionTrace run_evolution(const EvolutionParams& params) {
  const auto config = ExplorationConfig::make(params.n, params.m, params.epsilon);
  params.clicks.validate();
  if (params.target >= params.labels.size()) {
    throw InvalidConfig("target label out of range");
  }

  EvolutionTrace trace;
  trace.catalog = build_catalog(params.n, params.labels, params.seed);
  RivStore store = draw_rivs(trace.catalog, params.riv_mean, params.riv_sigma, params.seed);
  store = boost_target_rivs(std::move(store), trace.catalog, params.target, params.target_boost,
                            params.riv_sigma);
  store = normalize(std::move(store));
  trace.hidden = plant_hidden_object(trace.catalog, store, params.target, params.seed);
  trace.initial = store;

  SessionState state(config.n, params.max_queries, params.exclusion);
  Rng explore_rng = make_rng(params.seed, Stream::explore);
  Rng click_rng = make_rng(params.seed, Stream::clicks);
  const std::vector<ObjectId> barred =
      params.worst_case ? std::vector<ObjectId>{trace.hidden} : std::vector<ObjectId>{};

  while (!state.terminated()) {
    const MList list =
        present(config, store, params.target, state, params.algorithm, explore_rng, barred);

    QueryRecord record;
    record.query = list.index;
    record.precision = precision(list, trace.catalog, params.target);
    record.discovered = list.contains(trace.hidden);
    record.hidden_in_exploit =
        std::find(list.exploit.begin(), list.exploit.end(), trace.hidden) != list.exploit.end();
    record.clicked =
        simulate_feedback(list, trace.catalog, store, params.target, params.clicks, click_rng);
    trace.queries.push_back(std::move(record));

    if (trace.queries.back().discovered) {
      trace.discovery_query = list.index;
      break;
    }
  }
  trace.final = std::move(store);
  return trace;
}

std::vector<CategorySummary> summarize_categories(const RivStore& store, const Catalog& catalog,
                                                  Label query) {
  std::vector<std::vector<double>> groups(catalog.label_count());
  const auto rivs = store.row(query);
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    groups[catalog.true_label[i]].push_back(rivs[i]);
  }

  std::vector<CategorySummary> out;
  out.reserve(groups.size());
  for (Label label = 0; label < groups.size(); ++label) {
    auto& values = groups[label];
    CategorySummary summary;
    summary.label = catalog.labels[label];
    summary.count = values.size();
    if (!values.empty()) {
      std::sort(values.begin(), values.end());
      double total = 0.0;
      for (double v : values) total += v;
      summary.mean = total / static_cast<double>(values.size());
      for (std::size_t d = 0; d <= 10; ++d) {
        summary.deciles[d] = quantile(values, static_cast<double>(d) / 10.0);
      }
    }
    out.push_back(std::move(summary));
  }
  return out;
}

}  // namespace egse
