#include <doctest.h>

#include <algorithm>
#include <cmath>

#include <boost/math/distributions/poisson.hpp>

#include "dmh/hash_family.hpp"
#include "support/stats.hpp"

using namespace dmh;

namespace {

DartKey key_for(std::uint64_t i) {
    // spread a counter over several key fields
    return DartKey{i * 0x9e3779b97f4a7c15ULL, static_cast<std::uint8_t>(i % 7), static_cast<std::uint8_t>(i % 5),
                   static_cast<std::uint32_t>(i % 1000), static_cast<std::uint32_t>(i / 1000), 0};
}

} // namespace

TEST_CASE("outputs are deterministic in the seed") {
    const HashFamily a(123);
    const HashFamily b(123);
    const HashFamily c(124);
    const DartKey key{5, 1, 2, 3, 4, 5};
    CHECK(a.hash(key, Stream::weight) == b.hash(key, Stream::weight));
    CHECK(a.uniform(key, Stream::rank) == b.uniform(key, Stream::rank));
    CHECK(a.poisson1(key) == b.poisson1(key));
    CHECK(a.fingerprint(key) == b.fingerprint(key));
    CHECK(a.bucket(99, 17) == b.bucket(99, 17));
    CHECK(a.hash(key, Stream::weight) != c.hash(key, Stream::weight));
}

TEST_CASE("pinned output for seed 1") {
    // std::mt19937_64 is fully specified, so these hold on every platform.
    const HashFamily h(1);
    CHECK(h.hash(DartKey{1, 2, 3, 4, 5, 6}, Stream::poisson) == 0xbebe612463bcf78dULL);
    CHECK(h.fingerprint(DartKey{0, 0, 0, 0, 0, 0}) == 0x376eb15a4855cb2dULL);
}

TEST_CASE("incremental hashing matches the full key") {
    const HashFamily h(9);
    for (std::uint64_t i = 0; i < 1000; ++i) {
        DartKey key = key_for(i);
        key.j = static_cast<std::uint16_t>(i % 63);
        const auto partial = h.element_part(key.element) ^ h.area_part(key.nu, key.rho, key.w, key.r);
        for (auto s : {Stream::poisson, Stream::weight, Stream::rank, Stream::fingerprint, Stream::icws_beta}) {
            CHECK(h.finish(partial, key.j, s) == h.hash(key, s));
        }
    }
}

TEST_CASE("uniform: range and mean") {
    const HashFamily h(2024);
    double sum = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        const double u = h.uniform(key_for(i), Stream::weight);
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        sum += u;
    }
    CHECK(std::abs(sum / n - 0.5) <= 0.005);
    CHECK(HashFamily::to_unit(~0ULL) < 1.0);
    CHECK(HashFamily::to_unit(0) == 0.0);
}

TEST_CASE("draws at one key and at neighbouring keys are uncorrelated") {
    const HashFamily h(77);
    const int n = 100000;
    std::vector<double> v(n), u(n), next(n);
    for (int i = 0; i < n; ++i) {
        DartKey key{static_cast<std::uint64_t>(i), 0, 0, 0, 0, 0};
        v[i] = h.uniform(key, Stream::weight);
        u[i] = h.uniform(key, Stream::rank);
        key.element += 1;
        next[i] = h.uniform(key, Stream::weight);
    }
    auto corr = [&](const std::vector<double>& a, const std::vector<double>& b) {
        const auto ma = test::moments(a);
        const auto mb = test::moments(b);
        double c = 0.0;
        for (int i = 0; i < n; ++i) c += (a[i] - ma.mean) * (b[i] - mb.mean);
        return c / (n - 1) / std::sqrt(ma.variance * mb.variance);
    };
    CHECK(std::abs(corr(v, u)) <= 0.01);
    CHECK(std::abs(corr(v, next)) <= 0.01);
}

TEST_CASE("poisson tail table") {
    const auto& tail = HashFamily::poisson_tail();
    const boost::math::poisson_distribution<double> dist(1.0);
    for (std::size_t n = 0; n < 10; ++n) {
        const double expected = boost::math::cdf(boost::math::complement(dist, static_cast<double>(n)));
        CHECK(tail[n] == doctest::Approx(expected).epsilon(1e-13));
    }
    for (std::size_t n = 1; n < tail.size(); ++n) {
        CHECK(tail[n] < tail[n - 1]);
        CHECK(tail[n] > 0.0);
    }
    CHECK(tail.back() <= std::ldexp(1.0, -64));
}

TEST_CASE("poisson1: mean and zero mass over 1e6 keys") {
    const HashFamily h(31337);
    const int n = 1000000;
    double sum = 0.0;
    int zeros = 0;
    for (int i = 0; i < n; ++i) {
        const auto x = h.poisson1(key_for(i));
        sum += x;
        zeros += x == 0 ? 1 : 0;
    }
    CHECK(std::abs(sum / n - 1.0) <= 0.004);
    CHECK(std::abs(static_cast<double>(zeros) / n - std::exp(-1.0)) <= 0.002);
}

TEST_CASE("poisson1 ignores the dart ordinal") {
    const HashFamily h(5);
    DartKey key{3, 1, 1, 0, 1, 0};
    const auto base = h.poisson1(key);
    key.j = 17;
    CHECK(h.poisson1(key) == base);
}

TEST_CASE("poisson_from_hash inverts the tail table") {
    const HashFamily h(0);
    CHECK(h.poisson_from_hash(0) == 0);  // v = 1
    CHECK(h.poisson_from_hash(~0ULL) == 17);  // smallest v = 2^-53 lies below tail[16]
}

TEST_CASE("fingerprints: no collisions over 1e6 distinct tuples") {
    const HashFamily h(8);
    CHECK(h.fingerprint({1, 0, 0, 0, 0, 0}) != h.fingerprint({2, 0, 0, 0, 0, 0}));
    std::vector<std::uint64_t> fps;
    fps.reserve(2000000);
    for (std::uint64_t i = 0; i < 1000000; ++i) {
        fps.push_back(h.fingerprint({i + 1, 0, 0, 0, 0, 0}));
        fps.push_back(h.fingerprint({1, 0, 0, static_cast<std::uint32_t>(i % 1000), static_cast<std::uint32_t>(i / 1000),
                                     static_cast<std::uint16_t>(i % 3 + 1)}));
    }
    std::sort(fps.begin(), fps.end());
    CHECK(std::adjacent_find(fps.begin(), fps.end()) == fps.end());
}

TEST_CASE("bucket: trivial, deterministic and uniform") {
    const HashFamily h(11);
    for (std::uint64_t fp = 0; fp < 1000; ++fp) {
        REQUIRE(h.bucket(fp * 0x12345, 1) == 0);
    }
    CHECK(h.bucket(42, 256) == h.bucket(42, 256));

    std::vector<std::uint64_t> counts(256, 0);
    for (std::uint64_t i = 0; i < 1000000; ++i) {
        const auto b = h.bucket(h.fingerprint(key_for(i)), 256);
        REQUIRE(b < 256);
        ++counts[b];
    }
    CHECK(test::chi_square_uniform(counts).p_value > 0.001);

    // sequential inputs as well, not only hashed ones
    std::fill(counts.begin(), counts.end(), 0);
    for (std::uint64_t i = 0; i < 1000000; ++i) ++counts[h.bucket(i, 256)];
    CHECK(test::chi_square_uniform(counts).p_value > 0.001);
}
