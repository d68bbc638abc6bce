#include "dmh/synthetic.hpp"

#include <cmath>
#include <random>
#include <unordered_set>
#include <vector>

namespace dmh {

namespace {

// Open interval (0, 1), independent of the standard library's distributions
// so generated data is the same on every platform.
double open_unit(std::mt19937_64& gen) {
    return (static_cast<double>(gen() >> 11) + 0.5) * 0x1.0p-53;
}

} // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) noexcept {
    auto step = [](std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    return step(step(step(seed) ^ a) ^ b);
}

WeightedSet gen_set(std::size_t l0, double l1, std::uint64_t seed) {
    if (l0 == 0) {
        throw validation_error("gen_set: l0 must be at least 1");
    }
    if (!(l1 > 0.0) || !std::isfinite(l1)) {
        throw validation_error("gen_set: l1 must be positive and finite");
    }
    std::mt19937_64 gen(seed);
    std::vector<WeightedEntry> entries;
    entries.reserve(l0);
    std::unordered_set<ElementId> ids;
    ids.reserve(l0);
    double total = 0.0;
    while (entries.size() < l0) {
        const ElementId id = gen();
        if (!ids.insert(id).second) {
            continue;
        }
        const double e = -std::log(open_unit(gen));
        entries.push_back({id, e});
        total += e;
    }
    for (auto& e : entries) {
        e.weight = e.weight / total * l1;
    }
    return WeightedSet::make(entries);
}

double pair_scale(double target_j) {
    if (!(target_j > 0.0 && target_j < 1.0)) {
        throw validation_error("target Jaccard similarity must lie in (0, 1)");
    }
    return 2.0 * target_j / (1.0 + target_j);
}

WeightedSet gen_pair(const WeightedSet& x, double target_j, std::uint64_t seed) {
    require_nonempty(x, "gen_pair");
    const double b = pair_scale(target_j);
    std::unordered_set<ElementId> used;
    std::vector<WeightedEntry> entries;
    entries.reserve(x.l0() + 1);
    for (const auto& e : x.entries()) {
        used.insert(e.id);
        entries.push_back({e.id, b * e.weight});
    }
    std::mt19937_64 gen(seed);
    ElementId extra = gen();
    while (used.contains(extra)) {
        extra = gen();
    }
    entries.push_back({extra, (1.0 - b) * x.l1()});
    return WeightedSet::make(entries);
}

} // namespace dmh
