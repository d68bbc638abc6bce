#include <doctest.h>

#include <cmath>
#include <set>

#include "dmh/lsh_index.hpp"
#include "dmh/sketch.hpp"
#include "dmh/synthetic.hpp"
#include "support/stats.hpp"

using namespace dmh;

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS((LshParams{0, 1, 0.5}.validate()), validation_error);
    CHECK_THROWS_AS((LshParams{1, 0, 0.5}.validate()), validation_error);
    CHECK_THROWS_AS((LshParams{1, 1, 0.0}.validate()), validation_error);
    CHECK_THROWS_AS((LshParams{1, 1, 1.5}.validate()), validation_error);
    CHECK_NOTHROW(LshParams{4, 3, 1.0}.validate());
}

TEST_CASE("keys: shape, order and determinism") {
    const HashFamily h(3);
    const LshParams p{8, 5, 0.5};
    const auto x = gen_set(40, 1.5, 3);
    const auto keys = lsh_keys(h, x, p);
    REQUIRE(keys.size() == 8);
    for (const auto& key : keys) CHECK(key.size() == 5);
    CHECK(keys == lsh_keys(h, x, p));
}

TEST_CASE("L = K = 1 gives the k = 1 minhash value") {
    for (std::uint64_t s = 0; s < 30; ++s) {
        const HashFamily h(s);
        const auto x = gen_set(10, 1.0, 200 + s);
        CHECK(lsh_keys(h, x, {1, 1, 0.5})[0][0] == dart_minhash(h, x, 1).values[0]);
    }
}

TEST_CASE("key agreement rate is J^K") {
    const LshParams p{16, 2, 0.5};
    const int pairs = 400;
    std::uint64_t agree = 0;
    for (int i = 0; i < pairs; ++i) {
        const auto x = gen_set(30, 1.0, derive_seed(60, i));
        const auto y = gen_pair(x, 0.6, derive_seed(61, i));
        const HashFamily h(derive_seed(62, i));
        const LshKeyer keyer(h, p);
        const auto a = keyer.keys(x);
        const auto b = keyer.keys(y);
        for (std::uint32_t l = 0; l < p.L; ++l) agree += a[l] == b[l] ? 1 : 0;
    }
    const double n = static_cast<double>(p.L) * pairs;
    CHECK(std::abs(static_cast<double>(agree) / n - 0.36) <= 3.0 * test::binomial_se(0.36, n));
}

TEST_CASE("cell_key is order sensitive") {
    const std::vector<std::uint64_t> a{1, 2};
    const std::vector<std::uint64_t> b{2, 1};
    CHECK(cell_key(a) != cell_key(b));
    CHECK(cell_key(a) == cell_key(std::vector<std::uint64_t>{1, 2}));
}

TEST_CASE("weight classes") {
    CHECK(weight_class(1.0) == 0);
    CHECK(weight_class(1.999) == 0);
    CHECK(weight_class(3.0) == 1);
    CHECK(weight_class(0.5) == -1);
    CHECK(weight_class(std::ldexp(1.0, -64)) == -64);
    CHECK_THROWS_AS((void)weight_class(0.0), validation_error);

    LshIndex index({2, 2, 0.5}, 1);
    index.insert(7, WeightedSet::make({{1, 1.0}, {2, 2.0}}));
    CHECK(index.class_of(7) == 1);
    CHECK(!index.class_of(8).has_value());
}

TEST_CASE("probe_classes matches a brute-force scan") {
    const double norms[] = {1.0, 1.5, 0.3, 3.0, 4.0, 1e-5, 12345.0};
    const double thresholds[] = {1.0, 0.9, 0.5, 0.25, 0.1, 0.7};
    for (double q : norms) {
        for (double j1 : thresholds) {
            int first = 1000;
            int last = -1000;
            for (int c = -80; c <= 80; ++c) {
                // class c holds [2^c, 2^(c+1)); intersect with [j1 q, q / j1)
                const double lo = std::max(std::ldexp(1.0, c), j1 * q);
                const double hi = std::min(std::ldexp(1.0, c + 1), q / j1);
                if (lo < hi) {
                    first = std::min(first, c);
                    last = std::max(last, c);
                }
            }
            if (first > last) first = last = weight_class(q);
            const auto r = probe_classes(q, j1);
            CHECK(r.first == first);
            CHECK(r.last == last);
            CHECK(r.first <= weight_class(q));
            CHECK(weight_class(q) <= r.last);
        }
    }
    CHECK(probe_classes(1.0, 0.5).first == -1);
    CHECK(probe_classes(1.0, 0.5).last == 0);
}

TEST_CASE("insert and query") {
    LshIndex index({10, 2, 0.5}, 9);
    CHECK(index.query(gen_set(5, 1.0, 1)).empty());

    const auto x = gen_set(50, 1.0, 10);
    index.insert(1, x);
    index.insert(2, gen_pair(x, 0.9, 11));
    index.insert(3, gen_set(50, 1.0, 12));
    index.insert(4, x.scaled_by_pow2(10));
    CHECK(index.size() == 4);
    CHECK(index.cells_containing(1) == 10);
    const auto y = gen_pair(x, 0.9, 11);
    const auto z = gen_set(50, 1.0, 12);
    std::set<int> expected{weight_class(x.l1()), weight_class(y.l1()), weight_class(z.l1()), weight_class(x.l1()) + 10};
    CHECK(index.classes() == std::vector<int>(expected.begin(), expected.end()));
    CHECK(index.class_of(4) == weight_class(x.l1()) + 10);
    CHECK_THROWS_AS(index.insert(1, x), validation_error);
    CHECK_THROWS_AS(index.insert(5, WeightedSet{}), validation_error);

    const auto found = index.query(x);
    REQUIRE(!found.empty());
    CHECK(found[0] == Candidate{1, 1.0});
    for (std::size_t i = 1; i < found.size(); ++i) CHECK(found[i - 1].similarity >= found[i].similarity);
    for (const auto& c : found) CHECK(c.id != 4);  // ten classes up is out of range

    const auto scaled = index.query(x.scaled_by_pow2(10));
    REQUIRE(!scaled.empty());
    CHECK(scaled[0] == Candidate{4, 1.0});
}

TEST_CASE("recall of a near neighbour across a class boundary") {
    // |x|_1 just below 2 and its neighbour just above, in adjacent classes
    int hits = 0;
    const int trials = 50;
    for (int i = 0; i < trials; ++i) {
        const auto x = gen_set(30, 1.95, derive_seed(70, i));
        std::vector<WeightedEntry> more(x.entries().begin(), x.entries().end());
        more.push_back({derive_seed(71, i), 0.1});
        LshIndex index({20, 1, 0.5}, derive_seed(72, i));
        index.insert(1, WeightedSet::make(more));
        const auto found = index.query(x);
        hits += !found.empty() && found[0].id == 1 ? 1 : 0;
    }
    CHECK(hits >= 48);
}
