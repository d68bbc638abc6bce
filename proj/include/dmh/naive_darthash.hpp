#pragma once

#include <cstdint>
#include <vector>

#include "dmh/darthash.hpp"
#include "dmh/hash_family.hpp"
#include "dmh/weighted_set.hpp"

namespace dmh {

/// Reference DartHash: the region/area loops written out directly, with
/// powers recomputed in place and every draw taken through the full-key
/// hash API. Slow; exists to cross-check DartHasher.
[[nodiscard]] std::vector<Dart> naive_darts(const HashFamily& hashes, std::uint64_t t, const WeightedSet& x,
                                            double phi);

[[nodiscard]] std::vector<Dart> naive_darts_below_rank(const HashFamily& hashes, std::uint64_t t,
                                                       const WeightedSet& x, double rank_limit);

} // namespace dmh
