#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

#include "dmh/weighted_set.hpp"

namespace dmh {

/// Index of one area of weight-rank space, optionally narrowed to one dart.
/// Packed into 22 fixed-width bytes before hashing: element (8), nu (1),
/// rho (1), w (4), r (4), j (2), stream (2).
struct DartKey {
    ElementId element = 0;
    std::uint8_t nu = 0;
    std::uint8_t rho = 0;
    std::uint32_t w = 0;
    std::uint32_t r = 0;
    std::uint16_t j = 0;

    friend auto operator<=>(const DartKey&, const DartKey&) = default;
};

/// Distinguishes independent draws taken at the same key.
enum class Stream : std::uint16_t {
    poisson = 0,
    weight = 1,
    rank = 2,
    fingerprint = 3,
    icws_r1 = 16,
    icws_r2 = 17,
    icws_c1 = 18,
    icws_c2 = 19,
    icws_beta = 20,
};

/// Seeded pseudo-random function family. Tabulation hashing over the packed
/// key bytes, followed by a 64-bit finalizer so that draws at the same key
/// under different streams are not linearly related.
///
/// Identical seeds give bit-identical outputs on every platform. Immutable
/// after construction and safe to share between threads.
class HashFamily {
public:
    static constexpr std::size_t key_bytes = 22;
    static constexpr std::size_t poisson_table_size = 64;

    explicit HashFamily(std::uint64_t seed);

    [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }

    /// Raw 64-bit hash of (key, stream).
    [[nodiscard]] std::uint64_t hash(const DartKey& key, Stream stream) const noexcept;

    /// Uniform on [0, 1) with 53 bits of resolution.
    [[nodiscard]] double uniform(const DartKey& key, Stream stream) const noexcept {
        return to_unit(hash(key, stream));
    }

    /// Poisson(1) count for an area (the key's j is ignored). Capped at 63.
    [[nodiscard]] std::uint32_t poisson1(const DartKey& key) const noexcept;

    /// Dart identity used as the minhash value.
    [[nodiscard]] std::uint64_t fingerprint(const DartKey& key) const noexcept {
        return hash(key, Stream::fingerprint);
    }

    /// Maps a fingerprint to one of k buckets, uniformly.
    [[nodiscard]] std::uint32_t bucket(std::uint64_t fp, std::uint32_t k) const noexcept;

    /// Upper tail masses Pr[X > n] of Poisson(1) for n = 0..63, strictly
    /// decreasing. The CDF is 1 - tail; keeping the tail preserves resolution
    /// where the CDF itself would round to 1.
    [[nodiscard]] static const std::array<double, poisson_table_size>& poisson_tail() noexcept;

    // Incremental hashing for the DartHash inner loops. Tabulation is a XOR
    // of per-byte table entries, so the element and area contributions can
    // be computed once and reused across the darts of an area.

    [[nodiscard]] std::uint64_t element_part(ElementId element) const noexcept;
    [[nodiscard]] std::uint64_t area_part(std::uint8_t nu, std::uint8_t rho, std::uint32_t w,
                                          std::uint32_t r) const noexcept;
    [[nodiscard]] std::uint64_t finish(std::uint64_t partial, std::uint16_t j, Stream stream) const noexcept;
    [[nodiscard]] std::uint32_t poisson_from_hash(std::uint64_t h) const noexcept;

    [[nodiscard]] static double to_unit(std::uint64_t h) noexcept {
        return static_cast<double>(h >> 11) * 0x1.0p-53;
    }

private:
    std::uint64_t seed_;
    std::uint64_t bucket_salt_;
    std::array<std::array<std::uint64_t, 256>, key_bytes> tables_{};
};

/// 64-bit finalizer (murmur3 fmix64).
[[nodiscard]] constexpr std::uint64_t mix64(std::uint64_t h) noexcept {
    h ^= h >> 33;
    h *= 0xff51afd7ed558ccdULL;
    h ^= h >> 33;
    h *= 0xc4ceb9fe1a85ec53ULL;
    h ^= h >> 33;
    return h;
}

} // namespace dmh
