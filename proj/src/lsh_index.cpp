#include "dmh/lsh_index.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <string>
#include <unordered_set>

namespace dmh {

void LshParams::validate() const {
    if (L == 0 || K == 0) {
        throw validation_error("LSH parameters L and K must be at least 1");
    }
    if (!(j1 > 0.0 && j1 <= 1.0)) {
        throw validation_error("LSH threshold j1 must lie in (0, 1]");
    }
    if (static_cast<std::uint64_t>(L) * K > 0xffffffffULL) {
        throw validation_error("LSH parameters: L * K too large");
    }
}

LshKeyer::LshKeyer(const HashFamily& hashes, const LshParams& params)
    : params_((params.validate(), params)), hasher_(hashes, static_cast<std::uint64_t>(params.L) * params.K) {}

std::vector<LshKey> LshKeyer::keys(const WeightedSet& x) const {
    require_nonempty(x, "lsh_key");
    const HashFamily& h = hasher_.hashes();
    const std::uint32_t L = params_.L;
    const std::uint32_t K = params_.K;

    std::vector<std::vector<Dart>> buckets(L);
    for (std::uint32_t phi = 1;; ++phi) {
        for (auto& b : buckets) {
            b.clear();
        }
        hasher_.visit_darts_below_rank(x, phi / x.l1(),
                                       [&](const Dart& d) { buckets[h.bucket(d.fingerprint, L)].push_back(d); });
        const bool full = std::all_of(buckets.begin(), buckets.end(), [&](const auto& b) { return b.size() >= K; });
        if (full) {
            break;
        }
    }

    std::vector<LshKey> out(L);
    for (std::uint32_t l = 0; l < L; ++l) {
        auto& b = buckets[l];
        std::partial_sort(b.begin(), b.begin() + K, b.end(), rank_less);
        out[l].reserve(K);
        for (std::uint32_t i = 0; i < K; ++i) {
            out[l].push_back(b[i].fingerprint);
        }
    }
    return out;
}

std::vector<LshKey> lsh_keys(const HashFamily& hashes, const WeightedSet& x, const LshParams& params) {
    return LshKeyer(hashes, params).keys(x);
}

std::uint64_t cell_key(std::span<const std::uint64_t> fingerprints) noexcept {
    std::uint64_t h = 0x243f6a8885a308d3ULL;
    for (auto fp : fingerprints) {
        h = mix64(h + 0x9e3779b97f4a7c15ULL + fp);
    }
    return h;
}

int weight_class(double l1) {
    if (!(l1 > 0.0) || !std::isfinite(l1)) {
        throw validation_error("weight_class: norm must be positive and finite");
    }
    return std::ilogb(l1);
}

ClassRange probe_classes(double query_l1, double j1) {
    const double lo = j1 * query_l1;
    const double hi = query_l1 / j1;
    const int first = weight_class(lo);
    int last = weight_class(hi);
    int exponent = 0;
    if (std::frexp(hi, &exponent) == 0.5) {
        // hi is exactly 2^last; the half-open interval stops short of it
        --last;
    }
    return {first, std::max(first, last)};
}

LshIndex::LshIndex(const LshParams& params, std::uint64_t seed)
    : params_((params.validate(), params)), hashes_(seed), keyer_(hashes_, params_) {}

void LshIndex::insert(std::uint64_t id, WeightedSet x) {
    require_nonempty(x, "LshIndex::insert");
    if (points_.contains(id)) {
        throw validation_error("LshIndex::insert: duplicate id " + std::to_string(id));
    }
    const int c = weight_class(x.l1());
    auto keys = keyer_.keys(x.scaled_by_pow2(-c));
    auto [slot, inserted] = classes_.try_emplace(c);
    if (inserted) {
        slot->second.resize(params_.L);
    }
    for (std::uint32_t l = 0; l < params_.L; ++l) {
        slot->second[l][cell_key(keys[l])].push_back(id);
    }
#ifndef NDEBUG
    points_.emplace(id, StoredPoint{std::move(x), c, std::move(keys)});
#else
    points_.emplace(id, StoredPoint{std::move(x), c});
#endif
}

std::vector<Candidate> LshIndex::query(const WeightedSet& q) const {
    require_nonempty(q, "LshIndex::query");
    const ClassRange range = probe_classes(q.l1(), params_.j1);
    std::unordered_set<std::uint64_t> seen;
    std::vector<Candidate> out;

    for (auto it = classes_.lower_bound(range.first); it != classes_.end() && it->first <= range.last; ++it) {
        const auto keys = keyer_.keys(q.scaled_by_pow2(-it->first));
        for (std::uint32_t l = 0; l < params_.L; ++l) {
            const auto cell = it->second[l].find(cell_key(keys[l]));
            if (cell == it->second[l].end()) {
                continue;
            }
            for (auto id : cell->second) {
                const StoredPoint& p = points_.at(id);
#ifndef NDEBUG
                if (p.keys[l] != keys[l]) {
                    continue;  // digest collision between distinct keys
                }
#endif
                if (seen.insert(id).second) {
                    out.push_back({id, exact_jaccard(q, p.set)});
                }
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) {
        return a.similarity != b.similarity ? a.similarity > b.similarity : a.id < b.id;
    });
    return out;
}

std::optional<int> LshIndex::class_of(std::uint64_t id) const {
    const auto it = points_.find(id);
    if (it == points_.end()) {
        return std::nullopt;
    }
    return it->second.weight_class;
}

std::size_t LshIndex::cells_containing(std::uint64_t id) const {
    std::size_t n = 0;
    for (const auto& [c, tables] : classes_) {
        for (const auto& table : tables) {
            for (const auto& [key, ids] : table) {
                n += static_cast<std::size_t>(std::count(ids.begin(), ids.end(), id));
            }
        }
    }
    return n;
}

std::vector<int> LshIndex::classes() const {
    std::vector<int> out;
    for (const auto& [c, tables] : classes_) {
        out.push_back(c);
    }
    return out;
}

} // namespace dmh
