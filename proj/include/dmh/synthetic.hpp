#pragma once

#include <cstddef>
#include <cstdint>

#include "dmh/weighted_set.hpp"

namespace dmh {

/// splitmix64 step over (seed, a, b); used to derive per-trial seeds.
[[nodiscard]] std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) noexcept;

/// Random set with l0 distinct uniform 64-bit ids and weights drawn
/// uniformly from the simplex (normalized i.i.d. exponentials), scaled to sum l1.
[[nodiscard]] WeightedSet gen_set(std::size_t l0, double l1, std::uint64_t seed);

/// Scale b with J = b / (2 - b), i.e. b = 2J / (1 + J).
[[nodiscard]] double pair_scale(double target_j);

/// y = b * x plus one fresh element of weight (1 - b) |x|_1, so that
/// J(x, y) = target_j and |y|_1 = |x|_1.
[[nodiscard]] WeightedSet gen_pair(const WeightedSet& x, double target_j, std::uint64_t seed);

} // namespace dmh
