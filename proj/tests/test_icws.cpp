#include <doctest.h>

#include <cmath>

#include "dmh/icws.hpp"
#include "dmh/synthetic.hpp"
#include "support/stats.hpp"

using namespace dmh;

TEST_CASE("fast variant reproduces the reference output") {
    for (std::uint64_t s = 0; s < 100; ++s) {
        const HashFamily h(s);
        const auto x = gen_set(1 + s % 50, std::ldexp(1.0, static_cast<int>(s % 41) - 20), s + 7);
        const IcwsSketcher icws(h, 32);
        CHECK(icws.sketch(x) == icws.sketch_fast(x));
    }
}

TEST_CASE("values point at elements of the set") {
    const HashFamily h(1);
    const auto x = gen_set(20, 1.0, 2);
    for (const auto& v : icws_minhash(h, x, 64)) {
        bool found = false;
        for (const auto& e : x.entries()) found = found || e.id == v.element;
        CHECK(found);
    }
}

TEST_CASE("determinism, scale behaviour and errors") {
    const HashFamily h(4);
    const auto x = gen_set(30, 1.0, 4);
    CHECK(icws_minhash(h, x, 16) == icws_minhash(h, x, 16));
    CHECK(estimate_jaccard(icws_minhash(h, x, 16), icws_minhash(h, x, 16)) == 1.0);
    CHECK_THROWS_AS((void)icws_minhash(h, WeightedSet{}, 4), validation_error);
    CHECK_THROWS_AS(IcwsSketcher(h, 0), validation_error);
    CHECK_THROWS_AS((void)estimate_jaccard(icws_minhash(h, x, 4), icws_minhash(h, x, 5)), validation_error);
}

TEST_CASE("collision probability equals J") {
    const std::uint32_t k = 64;
    const int pairs = 500;
    std::uint64_t hits = 0;
    for (int i = 0; i < pairs; ++i) {
        const auto x = gen_set(20, 1.0, derive_seed(50, i));
        const auto y = gen_pair(x, 0.5, derive_seed(51, i));
        const HashFamily h(derive_seed(52, i));
        const IcwsSketcher s(h, k);
        hits += static_cast<std::uint64_t>(std::lround(estimate_jaccard(s.sketch_fast(x), s.sketch_fast(y)) * k));
    }
    const double n = static_cast<double>(k) * pairs;
    CHECK(std::abs(static_cast<double>(hits) / n - 0.5) <= 3.0 * test::binomial_se(0.5, n));
}
