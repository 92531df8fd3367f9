#include "egse/catalog.hpp"

#include <algorithm>
#include <random>

#include "egse/errors.hpp"
#include "egse/rng.hpp"

namespace egse {

const std::vector<std::string>& default_labels() {
  static const std::vector<std::string> labels{"grand piano", "upright piano", "classical guitar",
                                               "harp"};
  return labels;
}

std::size_t Catalog::count_with_true_label(Label label) const {
  return static_cast<std::size_t>(std::count(true_label.begin(), true_label.end(), label));
}

Label Catalog::label_index(std::string_view name) const {
  auto it = std::find(labels.begin(), labels.end(), name);
  if (it == labels.end()) {
    throw InvalidConfig("unknown label '" + std::string(name) + "'");
  }
  return static_cast<Label>(it - labels.begin());
}

RivStore::RivStore(std::size_t label_count, std::size_t object_count, double fill)
    : labels_(label_count), objects_(object_count), values_(label_count * object_count, fill) {}

std::span<const double> RivStore::row(Label label) const {
  return std::span<const double>(values_).subspan(label * objects_, objects_);
}

std::span<double> RivStore::row(Label label) {
  return std::span<double>(values_).subspan(label * objects_, objects_);
}

Catalog build_catalog(std::size_t n, std::vector<std::string> labels, std::uint64_t seed) {
  if (n == 0) {
    throw InvalidConfig("catalog needs at least one object");
  }
  if (labels.empty()) {
    throw InvalidConfig("catalog needs at least one label");
  }

  Catalog catalog;
  catalog.labels = std::move(labels);
  catalog.true_label.reserve(n);

  const std::size_t per_label = n / catalog.labels.size();
  const std::size_t remainder = n % catalog.labels.size();
  for (Label label = 0; label < catalog.labels.size(); ++label) {
    const std::size_t count = per_label + (label < remainder ? 1 : 0);
    catalog.true_label.insert(catalog.true_label.end(), count, label);
  }

  Rng rng = make_rng(seed, Stream::catalog_layout);
  std::shuffle(catalog.true_label.begin(), catalog.true_label.end(), rng);
  catalog.stored_label = catalog.true_label;
  return catalog;
}

RivStore draw_rivs(const Catalog& catalog, double mu, double sigma, std::uint64_t seed) {
  if (!(sigma > 0.0)) {
    throw InvalidConfig("RIV sigma must be positive");
  }
  RivStore store(catalog.label_count(), catalog.size());
  Rng rng = make_rng(seed, Stream::riv_init);
  std::normal_distribution<double> gaussian(mu, sigma);
  for (double& v : store.values()) {
    v = gaussian(rng);
  }
  return store;
}

RivStore init_rivs(const Catalog& catalog, double mu, double sigma, std::uint64_t seed) {
  return normalize(draw_rivs(catalog, mu, sigma, seed));
}

RivStore boost_target_rivs(RivStore store, const Catalog& catalog, Label target, double delta,
                           double sigma) {
  if (!(delta > 0.0) || delta > sigma) {
    throw InvalidConfig("target boost must lie in (0, sigma]");
  }
  if (target >= store.label_count()) {
    throw InvalidConfig("target label out of range");
  }
  auto row = store.row(target);
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    if (catalog.true_label[i] == target) {
      row[i] += delta;
    }
  }
  return store;
}

RivStore normalize(RivStore store) {
  auto values = store.values();
  if (values.empty()) {
    throw InvalidConfig("cannot normalize an empty store");
  }
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  if (!(hi > lo)) {
    throw DegenerateRange("all RIVs are equal; min-max range is zero");
  }
  const double span = hi - lo;
  for (double& v : values) {
    v = (v - lo) / span;
  }
  return store;
}

ObjectId plant_hidden_object(Catalog& catalog, RivStore& store, Label target, std::uint64_t seed) {
  if (catalog.label_count() < 2) {
    throw InvalidConfig("a misleading label needs at least two labels");
  }
  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    if (catalog.true_label[i] == target) {
      candidates.push_back(i);
    }
  }
  if (candidates.empty()) {
    throw InvalidConfig("no object carries the target label");
  }

  Rng rng = make_rng(seed, Stream::planting);
  const std::size_t pick =
      candidates[std::uniform_int_distribution<std::size_t>(0, candidates.size() - 1)(rng)];
  // Uniform over the other labels: draw from L-1 slots and skip the target.
  Label misleading =
      std::uniform_int_distribution<Label>(0, catalog.label_count() - 2)(rng);
  if (misleading >= target) {
    ++misleading;
  }
  catalog.stored_label[pick] = misleading;

  const auto values = store.values();
  store.at(target, object_id(pick)) = *std::min_element(values.begin(), values.end());
  return object_id(pick);
}

}  // namespace egse
