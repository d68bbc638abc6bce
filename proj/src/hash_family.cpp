#include "dmh/hash_family.hpp"

#include <cmath>
#include <random>

namespace dmh {

namespace {

__extension__ using uint128 = unsigned __int128;

constexpr std::size_t element_offset = 0;
constexpr std::size_t nu_offset = 8;
constexpr std::size_t rho_offset = 9;
constexpr std::size_t w_offset = 10;
constexpr std::size_t r_offset = 14;
constexpr std::size_t j_offset = 18;
constexpr std::size_t stream_offset = 20;

std::array<double, HashFamily::poisson_table_size> build_poisson_tail() {
    // Pr[X > n] = sum_{m > n} e^-1 / m!, summed from the far end so small
    // terms are not swallowed by large ones.
    constexpr std::size_t n = HashFamily::poisson_table_size;
    constexpr std::size_t extra = 40;
    std::array<double, n + extra> pmf{};
    double term = std::exp(-1.0);
    for (std::size_t m = 0; m < pmf.size(); ++m) {
        if (m > 0) {
            term /= static_cast<double>(m);
        }
        pmf[m] = term;
    }
    std::array<double, n> tail{};
    double acc = 0.0;
    for (std::size_t m = pmf.size() - 1; m > 0; --m) {
        acc += pmf[m];
        if (m - 1 < n) {
            tail[m - 1] = acc;
        }
    }
    return tail;
}

} // namespace

HashFamily::HashFamily(std::uint64_t seed) : seed_(seed) {
    std::mt19937_64 gen(seed);
    for (auto& table : tables_) {
        for (auto& entry : table) {
            entry = gen();
        }
    }
    bucket_salt_ = gen();
}

const std::array<double, HashFamily::poisson_table_size>& HashFamily::poisson_tail() noexcept {
    static const auto tail = build_poisson_tail();
    return tail;
}

std::uint64_t HashFamily::element_part(ElementId element) const noexcept {
    std::uint64_t h = 0;
    for (std::size_t b = 0; b < 8; ++b) {
        h ^= tables_[element_offset + b][(element >> (8 * b)) & 0xff];
    }
    return h;
}

std::uint64_t HashFamily::area_part(std::uint8_t nu, std::uint8_t rho, std::uint32_t w,
                                    std::uint32_t r) const noexcept {
    std::uint64_t h = tables_[nu_offset][nu] ^ tables_[rho_offset][rho];
    for (std::size_t b = 0; b < 4; ++b) {
        h ^= tables_[w_offset + b][(w >> (8 * b)) & 0xff];
        h ^= tables_[r_offset + b][(r >> (8 * b)) & 0xff];
    }
    return h;
}

std::uint64_t HashFamily::finish(std::uint64_t partial, std::uint16_t j, Stream stream) const noexcept {
    const auto s = static_cast<std::uint16_t>(stream);
    partial ^= tables_[j_offset][j & 0xff] ^ tables_[j_offset + 1][j >> 8];
    partial ^= tables_[stream_offset][s & 0xff] ^ tables_[stream_offset + 1][s >> 8];
    return mix64(partial);
}

std::uint64_t HashFamily::hash(const DartKey& key, Stream stream) const noexcept {
    return finish(element_part(key.element) ^ area_part(key.nu, key.rho, key.w, key.r), key.j, stream);
}

std::uint32_t HashFamily::poisson_from_hash(std::uint64_t h) const noexcept {
    // v is uniform on (0, 1]; X > n exactly when v <= Pr[X > n].
    const double v = 1.0 - to_unit(h);
    const auto& tail = poisson_tail();
    std::uint32_t n = 0;
    while (n < poisson_table_size - 1 && v <= tail[n]) {
        ++n;
    }
    return n;
}

std::uint32_t HashFamily::poisson1(const DartKey& key) const noexcept {
    DartKey area = key;
    area.j = 0;
    return poisson_from_hash(hash(area, Stream::poisson));
}

std::uint32_t HashFamily::bucket(std::uint64_t fp, std::uint32_t k) const noexcept {
    const std::uint64_t h = mix64(fp ^ bucket_salt_);
    return static_cast<std::uint32_t>((static_cast<uint128>(h) * k) >> 64);
}

} // namespace dmh
