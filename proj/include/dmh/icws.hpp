#pragma once

#include <cstdint>
#include <vector>

#include "dmh/hash_family.hpp"
#include "dmh/weighted_set.hpp"

namespace dmh {

/// One ICWS sample: the chosen element and its quantized log-weight level.
/// Two sets collide on a coordinate when both fields are equal.
struct IcwsHashValue {
    ElementId element = 0;
    std::int64_t tick = 0;

    friend bool operator==(const IcwsHashValue&, const IcwsHashValue&) = default;
};

/// Improved consistent weighted sampling (Ioffe 2010). For coordinate j and
/// element i, with r, c ~ Gamma(2, 1) and beta ~ U(0, 1) drawn from the hash
/// family at key (i, j):
///
///   tick = floor(ln(x_i) / r + beta)
///   y    = exp(r * (tick - beta))
///   a    = c / (y * exp(r))
///
/// and the coordinate's value is (argmin_i a, tick). O(k * |x|_0).
class IcwsSketcher {
public:
    IcwsSketcher(const HashFamily& hashes, std::uint32_t k);

    [[nodiscard]] std::uint32_t k() const noexcept { return k_; }

    /// Straight transcription: ln(x_i) recomputed for every coordinate.
    [[nodiscard]] std::vector<IcwsHashValue> sketch(const WeightedSet& x) const;

    /// Same output; takes each ln(x_i) once per set.
    [[nodiscard]] std::vector<IcwsHashValue> sketch_fast(const WeightedSet& x) const;

private:
    const HashFamily* hashes_;
    std::uint32_t k_;
};

[[nodiscard]] std::vector<IcwsHashValue> icws_minhash(const HashFamily& hashes, const WeightedSet& x,
                                                      std::uint32_t k);

[[nodiscard]] double estimate_jaccard(const std::vector<IcwsHashValue>& a, const std::vector<IcwsHashValue>& b);

} // namespace dmh
