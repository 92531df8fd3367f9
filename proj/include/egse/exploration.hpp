#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "egse/catalog.hpp"
#include "egse/rng.hpp"

namespace egse {

enum class Algorithm {
  egse_a,  // exploration with re-selection
  egse_b,  // exploration without re-selection
};

std::string_view to_string(Algorithm algorithm) noexcept;
// Accepts "a"/"b" (any case) and "egse-a"/"egse-b". Throws InvalidConfig otherwise.
Algorithm parse_algorithm(std::string_view text);

// Which objects an EGSE-B session keeps out of later exploration slots.
enum class Exclusion {
  // Only objects that were drawn for exploration. Matches the first-passage
  // analysis, where the exploitation block is treated as fixed.
  explored_only,
  // Everything ever shown, exploitation block included (S_i <- S_i u S_1 u S_2).
  all_presented,
};

struct Split {
  std::size_t explore = 0;  // r
  std::size_t exploit = 0;  // K
};

// r = max(1, floor(epsilon * m + 1/2)), K = m - r.
Split derive_split(std::size_t m, double epsilon);

struct ExplorationConfig {
  std::size_t n = 0;
  std::size_t m = 0;
  double epsilon = 0.0;
  std::size_t r = 0;
  std::size_t k = 0;

  // Validates n > m >= 1 and epsilon in (0, 1).
  static ExplorationConfig make(std::size_t n, std::size_t m, double epsilon);

  // Objects eligible for exploration when the exploitation block is fixed: N - K.
  std::size_t explore_pool() const noexcept { return n - k; }
};

struct MList {
  std::vector<ObjectId> exploit;
  std::vector<ObjectId> explore;
  std::uint64_t index = 0;  // 1-based presentation number

  std::size_t size() const noexcept { return exploit.size() + explore.size(); }
  bool contains(ObjectId id) const;
  bool explores(ObjectId id) const;
};

class SessionState {
 public:
  SessionState(std::size_t n, std::uint64_t max_queries,
               Exclusion mode = Exclusion::explored_only);

  bool presented(ObjectId id) const { return presented_[index_of(id)]; }
  std::size_t presented_count() const noexcept { return presented_count_; }
  void mark_presented(ObjectId id);

  std::size_t object_count() const noexcept { return presented_.size(); }
  std::uint64_t query_count() const noexcept { return query_count_; }
  std::uint64_t max_queries() const noexcept { return max_queries_; }
  Exclusion mode() const noexcept { return mode_; }
  bool terminated() const noexcept { return terminated_; }

  // Advances the query counter; terminates when it reaches max_queries.
  void count_query();
  void terminate() noexcept { terminated_ = true; }

 private:
  std::vector<bool> presented_;
  std::size_t presented_count_ = 0;
  std::uint64_t query_count_ = 0;
  std::uint64_t max_queries_;
  Exclusion mode_;
  bool terminated_ = false;
};

// The k highest RIVs under `query`, ties to the lower id. Objects in `barred`
// are never selected. Result is ordered best first.
std::vector<ObjectId> select_exploit(const RivStore& store, Label query, std::size_t k,
                                     std::span<const ObjectId> barred = {});

// r objects uniformly without replacement from all n objects minus `exploit`.
std::vector<ObjectId> select_explore_a(std::span<const ObjectId> exploit, std::size_t n,
                                       std::size_t r, Rng& rng);

// min(r, pool) objects uniformly without replacement from everything outside
// `exploit` and not yet presented in `state`; records them in `state`.
// Throws SessionExhausted when the pool is empty.
std::vector<ObjectId> select_explore_b(std::span<const ObjectId> exploit, SessionState& state,
                                       std::size_t r, Rng& rng);

// Builds one M-list and advances the session. For EGSE-B the session is
// terminated once nothing is left to explore. `barred` objects are kept out of
// the exploitation block (worst-case scenario runs).
MList present(const ExplorationConfig& config, const RivStore& store, Label query,
              SessionState& state, Algorithm algorithm, Rng& rng,
              std::span<const ObjectId> barred = {});

}  // namespace egse
