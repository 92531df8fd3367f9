#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace egse {

// Dense object identifier in [0, N).
enum class ObjectId : std::uint32_t {};

constexpr std::size_t index_of(ObjectId id) noexcept { return static_cast<std::size_t>(id); }
constexpr ObjectId object_id(std::size_t index) noexcept {
  return static_cast<ObjectId>(static_cast<std::uint32_t>(index));
}

// Index into Catalog::labels.
using Label = std::size_t;

// The four categories of the image experiment. Label 0 is the usual query target.
const std::vector<std::string>& default_labels();

struct Catalog {
  std::vector<std::string> labels;
  std::vector<Label> true_label;
  // What the index believes. Equal to true_label except for a planted hidden object.
  std::vector<Label> stored_label;

  std::size_t size() const noexcept { return true_label.size(); }
  std::size_t label_count() const noexcept { return labels.size(); }
  std::size_t count_with_true_label(Label label) const;
  // Throws InvalidConfig for an unknown name.
  Label label_index(std::string_view name) const;
};

// Relevance index values, one per (label, object), stored label-major.
class RivStore {
 public:
  RivStore() = default;
  RivStore(std::size_t label_count, std::size_t object_count, double fill = 0.0);

  std::size_t label_count() const noexcept { return labels_; }
  std::size_t object_count() const noexcept { return objects_; }

  double at(Label label, ObjectId id) const { return values_[offset(label, id)]; }
  double& at(Label label, ObjectId id) { return values_[offset(label, id)]; }

  std::span<const double> row(Label label) const;
  std::span<double> row(Label label);
  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }

  bool operator==(const RivStore&) const = default;

 private:
  std::size_t offset(Label label, ObjectId id) const noexcept {
    return label * objects_ + index_of(id);
  }

  std::size_t labels_ = 0;
  std::size_t objects_ = 0;
  std::vector<double> values_;
};

// Assigns true labels in equal blocks (remainder to the first labels), then
// shuffles the assignment with the catalog-layout sub-stream of `seed`.
Catalog build_catalog(std::size_t n, std::vector<std::string> labels, std::uint64_t seed);

inline constexpr double kDefaultRivMean = 0.5;
inline constexpr double kDefaultRivSigma = 0.15;

// Raw Gaussian(mu, sigma) draws, not normalized.
RivStore draw_rivs(const Catalog& catalog, double mu, double sigma, std::uint64_t seed);

// draw_rivs followed by normalize.
RivStore init_rivs(const Catalog& catalog, double mu, double sigma, std::uint64_t seed);

// Adds delta to every RIV under `target` whose object truly carries `target`.
// Meant for raw (pre-normalization) stores; requires 0 < delta <= sigma.
RivStore boost_target_rivs(RivStore store, const Catalog& catalog, Label target, double delta,
                           double sigma);

// Global min-max map onto [0, 1]. Throws DegenerateRange when max == min.
RivStore normalize(RivStore store);

// Picks one object of true label `target`, gives it a different stored label and
// drops its RIV under `target` to the store minimum. Returns the chosen object.
ObjectId plant_hidden_object(Catalog& catalog, RivStore& store, Label target, std::uint64_t seed);

}  // namespace egse
