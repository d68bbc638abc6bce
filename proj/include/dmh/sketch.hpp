#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "dmh/darthash.hpp"
#include "dmh/hash_family.hpp"
#include "dmh/weighted_set.hpp"

namespace dmh {

/// k independent weighted minhashes; value j is the fingerprint of the
/// minimum-rank dart in bucket j.
struct MinHashSketch {
    std::vector<std::uint64_t> values;
    std::uint64_t seed = 0;

    [[nodiscard]] std::size_t k() const noexcept { return values.size(); }
    friend bool operator==(const MinHashSketch&, const MinHashSketch&) = default;
};

/// The k smallest-rank darts hitting a set, ascending by rank.
struct BottomKSketch {
    std::vector<Dart> darts;
    std::uint64_t seed = 0;

    [[nodiscard]] std::size_t k() const noexcept { return darts.size(); }
    friend bool operator==(const BottomKSketch&, const BottomKSketch&) = default;
};

/// One bit per minhash value, packed 64 to a word (bit j in word j / 64).
struct OneBitSketch {
    std::vector<std::uint64_t> words;
    std::size_t k = 0;
    std::uint64_t seed = 0;

    [[nodiscard]] bool bit(std::size_t j) const noexcept { return (words[j / 64] >> (j % 64)) & 1U; }
    friend bool operator==(const OneBitSketch&, const OneBitSketch&) = default;
};

struct SketchStats {
    std::uint32_t steps = 0;  // phi values evaluated
    std::size_t darts = 0;    // darts seen in the final step
};

/// Dart density used for k minhashes: ceil(k ln k) + k, and 1 for k = 1.
[[nodiscard]] std::uint64_t minhash_density(std::uint32_t k);

/// DartMinHash: evaluates DartHash at phi = 1, 2, ... and hashes darts into
/// k buckets until every bucket holds a dart.
class DartMinHash {
public:
    DartMinHash(const HashFamily& hashes, std::uint32_t k);

    [[nodiscard]] std::uint32_t k() const noexcept { return k_; }
    [[nodiscard]] std::uint64_t t() const noexcept { return hasher_.t(); }

    [[nodiscard]] MinHashSketch sketch(const WeightedSet& x, SketchStats* stats = nullptr) const;
    [[nodiscard]] MinHashSketch operator()(const WeightedSet& x) const { return sketch(x); }

private:
    std::uint32_t k_;
    DartHasher hasher_;
};

/// Bottom-k sketching with t = k: phi grows until at least k darts hit.
class BottomK {
public:
    BottomK(const HashFamily& hashes, std::uint32_t k);

    [[nodiscard]] std::uint32_t k() const noexcept { return k_; }

    [[nodiscard]] BottomKSketch sketch(const WeightedSet& x, SketchStats* stats = nullptr) const;
    [[nodiscard]] BottomKSketch operator()(const WeightedSet& x) const { return sketch(x); }

private:
    std::uint32_t k_;
    DartHasher hasher_;
};

[[nodiscard]] MinHashSketch dart_minhash(const HashFamily& hashes, const WeightedSet& x, std::uint32_t k);
[[nodiscard]] BottomKSketch bottom_k(const HashFamily& hashes, const WeightedSet& x, std::uint32_t k);

/// Sorts darts ascending by rank_less. Darts must have ranks in [0, limit];
/// bucket sort on rank, expected linear time for uniformly spread ranks.
void sort_by_rank(std::vector<Dart>& darts, double limit);

/// Keeps the lowest bit of every minhash value.
[[nodiscard]] OneBitSketch one_bit(const MinHashSketch& s);

/// Fraction of coordinates with equal values. Throws on length mismatch.
[[nodiscard]] double estimate_jaccard(const MinHashSketch& a, const MinHashSketch& b);

/// 2 * (bit agreement) - 1, unclamped; can be negative.
[[nodiscard]] double estimate_jaccard_1bit_raw(const OneBitSketch& a, const OneBitSketch& b);

/// estimate_jaccard_1bit_raw clamped to [0, 1].
[[nodiscard]] double estimate_jaccard_1bit(const OneBitSketch& a, const OneBitSketch& b);

/// Fraction of the k smallest darts of the union that hit both sets.
[[nodiscard]] double estimate_jaccard_bottom_k(const BottomKSketch& a, const BottomKSketch& b);

} // namespace dmh
