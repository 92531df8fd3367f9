#include "egse/exploration.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <string>

#include "egse/errors.hpp"

namespace egse {

namespace {

// Partial Fisher-Yates: moves a uniform `count`-subset of `pool` to its front.
void draw_prefix(std::vector<ObjectId>& pool, std::size_t count, Rng& rng) {
  for (std::size_t i = 0; i < count; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, pool.size() - 1);
    std::swap(pool[i], pool[pick(rng)]);
  }
}

std::vector<bool> membership(std::span<const ObjectId> ids, std::size_t n) {
  std::vector<bool> in(n, false);
  for (ObjectId id : ids) {
    in[index_of(id)] = true;
  }
  return in;
}

}  // namespace

std::string_view to_string(Algorithm algorithm) noexcept {
  return algorithm == Algorithm::egse_a ? "EGSE-A" : "EGSE-B";
}

Algorithm parse_algorithm(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "a" || lower == "egse-a") return Algorithm::egse_a;
  if (lower == "b" || lower == "egse-b") return Algorithm::egse_b;
  throw InvalidConfig("unknown algorithm '" + std::string(text) + "'");
}

Split derive_split(std::size_t m, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw InvalidConfig("epsilon must lie in (0, 1)");
  }
  if (m == 0) {
    throw InvalidConfig("list length must be at least 1");
  }
  const auto rounded = static_cast<std::size_t>(std::floor(epsilon * static_cast<double>(m) + 0.5));
  const std::size_t r = std::clamp<std::size_t>(rounded, 1, m);
  return {r, m - r};
}

ExplorationConfig ExplorationConfig::make(std::size_t n, std::size_t m, double epsilon) {
  const Split split = derive_split(m, epsilon);
  if (n <= m) {
    throw InvalidConfig("catalog size must exceed list length (n > m)");
  }
  return {n, m, epsilon, split.explore, split.exploit};
}

bool MList::contains(ObjectId id) const {
  return std::find(exploit.begin(), exploit.end(), id) != exploit.end() || explores(id);
}

bool MList::explores(ObjectId id) const {
  return std::find(explore.begin(), explore.end(), id) != explore.end();
}

SessionState::SessionState(std::size_t n, std::uint64_t max_queries, Exclusion mode)
    : presented_(n, false), max_queries_(max_queries), mode_(mode) {
  if (max_queries == 0) {
    throw InvalidConfig("max queries must be at least 1");
  }
}

void SessionState::mark_presented(ObjectId id) {
  if (!presented_[index_of(id)]) {
    presented_[index_of(id)] = true;
    ++presented_count_;
  }
}

void SessionState::count_query() {
  ++query_count_;
  if (query_count_ >= max_queries_) {
    terminated_ = true;
  }
}

std::vector<ObjectId> select_exploit(const RivStore& store, Label query, std::size_t k,
                                     std::span<const ObjectId> barred) {
  const std::size_t n = store.object_count();
  const auto rivs = store.row(query);
  const std::vector<bool> is_barred = membership(barred, n);

  std::vector<ObjectId> candidates;
  candidates.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!is_barred[i]) candidates.push_back(object_id(i));
  }
  k = std::min(k, candidates.size());

  const auto better = [&](ObjectId a, ObjectId b) {
    const double va = rivs[index_of(a)];
    const double vb = rivs[index_of(b)];
    return va != vb ? va > vb : a < b;
  };
  std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(k),
                    candidates.end(), better);
  candidates.resize(k);
  return candidates;
}

std::vector<ObjectId> select_explore_a(std::span<const ObjectId> exploit, std::size_t n,
                                       std::size_t r, Rng& rng) {
  const std::vector<bool> taken = membership(exploit, n);
  std::vector<ObjectId> pool;
  pool.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!taken[i]) pool.push_back(object_id(i));
  }
  if (pool.size() < r) {
    throw InvalidConfig("exploration pool is smaller than r");
  }
  draw_prefix(pool, r, rng);
  pool.resize(r);
  return pool;
}

std::vector<ObjectId> select_explore_b(std::span<const ObjectId> exploit, SessionState& state,
                                       std::size_t r, Rng& rng) {
  const std::size_t n = state.object_count();
  const std::vector<bool> taken = membership(exploit, n);
  std::vector<ObjectId> pool;
  for (std::size_t i = 0; i < n; ++i) {
    if (!taken[i] && !state.presented(object_id(i))) pool.push_back(object_id(i));
  }
  if (pool.empty()) {
    throw SessionExhausted("no unexplored objects remain for this query");
  }
  const std::size_t count = std::min(r, pool.size());
  draw_prefix(pool, count, rng);
  pool.resize(count);

  for (ObjectId id : pool) state.mark_presented(id);
  if (state.mode() == Exclusion::all_presented) {
    for (ObjectId id : exploit) state.mark_presented(id);
  }
  return pool;
}

MList present(const ExplorationConfig& config, const RivStore& store, Label query,
              SessionState& state, Algorithm algorithm, Rng& rng,
              std::span<const ObjectId> barred) {
  if (state.terminated()) {
    throw SessionExhausted("session already terminated");
  }
  MList list;
  list.exploit = select_exploit(store, query, config.k, barred);
  if (algorithm == Algorithm::egse_a) {
    list.explore = select_explore_a(list.exploit, config.n, config.r, rng);
  } else {
    list.explore = select_explore_b(list.exploit, state, config.r, rng);
  }
  state.count_query();
  list.index = state.query_count();

  if (algorithm == Algorithm::egse_b) {
    // (S_1 u S_i)^c == {} against the block just shown.
    const std::vector<bool> taken = membership(list.exploit, config.n);
    bool remaining = false;
    for (std::size_t i = 0; i < config.n && !remaining; ++i) {
      remaining = !taken[i] && !state.presented(object_id(i));
    }
    if (!remaining) state.terminate();
  }
  return list;
}

}  // namespace egse
