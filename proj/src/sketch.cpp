#include "dmh/sketch.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

namespace dmh {

std::uint64_t minhash_density(std::uint32_t k) {
    if (k == 0) {
        throw validation_error("sketch length k must be at least 1");
    }
    if (k == 1) {
        return 1;
    }
    const double kd = static_cast<double>(k);
    return static_cast<std::uint64_t>(std::ceil(kd * std::log(kd))) + k;
}

DartMinHash::DartMinHash(const HashFamily& hashes, std::uint32_t k)
    : k_(k), hasher_(hashes, minhash_density(k)) {}

MinHashSketch DartMinHash::sketch(const WeightedSet& x, SketchStats* stats) const {
    require_nonempty(x, "dart_minhash");
    const HashFamily& h = hasher_.hashes();
    constexpr double inf = std::numeric_limits<double>::infinity();

    Dart empty;
    empty.rank = inf;
    std::vector<Dart> best(k_);
    std::uint32_t steps = 0;
    std::size_t seen = 0;
    for (std::uint32_t phi = 1;; ++phi) {
        ++steps;
        seen = 0;
        std::fill(best.begin(), best.end(), empty);
        std::uint32_t filled = 0;
        hasher_.visit_darts_below_rank(x, phi / x.l1(), [&](const Dart& d) {
            ++seen;
            Dart& slot = best[h.bucket(d.fingerprint, k_)];
            if (slot.rank == inf) {
                ++filled;
                slot = d;
            } else if (rank_less(d, slot)) {
                slot = d;
            }
        });
        if (filled == k_) {
            break;
        }
    }
    if (stats != nullptr) {
        stats->steps = steps;
        stats->darts = seen;
    }
    MinHashSketch out;
    out.seed = h.seed();
    out.values.reserve(k_);
    for (const auto& d : best) {
        out.values.push_back(d.fingerprint);
    }
    return out;
}

BottomK::BottomK(const HashFamily& hashes, std::uint32_t k) : k_(k), hasher_(hashes, k) {
    if (k == 0) {
        throw validation_error("sketch length k must be at least 1");
    }
}

BottomKSketch BottomK::sketch(const WeightedSet& x, SketchStats* stats) const {
    require_nonempty(x, "bottom_k");
    std::vector<Dart> found;
    std::uint32_t steps = 0;
    double limit = 0.0;
    for (std::uint32_t phi = 1;; ++phi) {
        ++steps;
        found.clear();
        limit = phi / x.l1();
        hasher_.visit_darts_below_rank(x, limit, [&](const Dart& d) { found.push_back(d); });
        if (found.size() >= k_) {
            break;
        }
    }
    if (stats != nullptr) {
        stats->steps = steps;
        stats->darts = found.size();
    }
    sort_by_rank(found, limit);
    found.resize(k_);
    return BottomKSketch{std::move(found), hasher_.hashes().seed()};
}

MinHashSketch dart_minhash(const HashFamily& hashes, const WeightedSet& x, std::uint32_t k) {
    return DartMinHash(hashes, k).sketch(x);
}

BottomKSketch bottom_k(const HashFamily& hashes, const WeightedSet& x, std::uint32_t k) {
    return BottomK(hashes, k).sketch(x);
}

void sort_by_rank(std::vector<Dart>& darts, double limit) {
    const std::size_t n = darts.size();
    if (n < 2) {
        return;
    }
    const double scale = static_cast<double>(n) / limit;
    std::vector<std::uint32_t> slot(n);
    std::vector<std::size_t> start(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
        const double pos = darts[i].rank * scale;
        const auto b = pos >= static_cast<double>(n) ? n - 1 : static_cast<std::size_t>(pos);
        slot[i] = static_cast<std::uint32_t>(b);
        ++start[b + 1];
    }
    for (std::size_t b = 0; b < n; ++b) {
        start[b + 1] += start[b];
    }
    std::vector<Dart> sorted(n);
    std::vector<std::size_t> next(start.begin(), start.end() - 1);
    for (std::size_t i = 0; i < n; ++i) {
        sorted[next[slot[i]]++] = darts[i];
    }
    for (std::size_t b = 0; b < n; ++b) {
        // buckets hold O(1) darts in expectation
        for (std::size_t i = start[b] + 1; i < start[b + 1]; ++i) {
            Dart d = sorted[i];
            std::size_t j = i;
            while (j > start[b] && rank_less(d, sorted[j - 1])) {
                sorted[j] = sorted[j - 1];
                --j;
            }
            sorted[j] = d;
        }
    }
    darts = std::move(sorted);
}

OneBitSketch one_bit(const MinHashSketch& s) {
    OneBitSketch out;
    out.k = s.k();
    out.seed = s.seed;
    out.words.assign((s.k() + 63) / 64, 0);
    for (std::size_t j = 0; j < s.k(); ++j) {
        out.words[j / 64] |= (s.values[j] & 1U) << (j % 64);
    }
    return out;
}

double estimate_jaccard(const MinHashSketch& a, const MinHashSketch& b) {
    if (a.k() != b.k()) {
        throw validation_error("estimate_jaccard: sketch lengths differ");
    }
    if (a.k() == 0) {
        throw validation_error("estimate_jaccard: empty sketches");
    }
    std::size_t equal = 0;
    for (std::size_t j = 0; j < a.k(); ++j) {
        equal += a.values[j] == b.values[j] ? 1 : 0;
    }
    return static_cast<double>(equal) / static_cast<double>(a.k());
}

double estimate_jaccard_1bit_raw(const OneBitSketch& a, const OneBitSketch& b) {
    if (a.k != b.k) {
        throw validation_error("estimate_jaccard_1bit: sketch lengths differ");
    }
    if (a.k == 0) {
        throw validation_error("estimate_jaccard_1bit: empty sketches");
    }
    std::size_t differ = 0;
    for (std::size_t i = 0; i < a.words.size(); ++i) {
        differ += static_cast<std::size_t>(std::popcount(a.words[i] ^ b.words[i]));
    }
    const double agree = 1.0 - static_cast<double>(differ) / static_cast<double>(a.k);
    return 2.0 * agree - 1.0;
}

double estimate_jaccard_1bit(const OneBitSketch& a, const OneBitSketch& b) {
    return std::clamp(estimate_jaccard_1bit_raw(a, b), 0.0, 1.0);
}

double estimate_jaccard_bottom_k(const BottomKSketch& a, const BottomKSketch& b) {
    if (a.k() != b.k()) {
        throw validation_error("estimate_jaccard_bottom_k: sketch lengths differ");
    }
    const std::size_t k = a.k();
    if (k == 0) {
        throw validation_error("estimate_jaccard_bottom_k: empty sketches");
    }
    std::size_t i = 0;
    std::size_t j = 0;
    std::size_t shared = 0;
    for (std::size_t taken = 0; taken < k; ++taken) {
        if (i < k && j < k && a.darts[i].index == b.darts[j].index) {
            ++shared;
            ++i;
            ++j;
        } else if (j >= k || (i < k && rank_less(a.darts[i], b.darts[j]))) {
            ++i;
        } else {
            ++j;
        }
    }
    return static_cast<double>(shared) / static_cast<double>(k);
}

} // namespace dmh
