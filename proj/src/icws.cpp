#include "dmh/icws.hpp"

#include <cmath>
#include <limits>

namespace dmh {

namespace {

struct Draws {
    double r;
    double c;
    double beta;
};

// Gamma(2, 1) as a sum of two standard exponentials; 1 - u lies in (0, 1].
Draws draw(const HashFamily& h, ElementId element, std::uint32_t coordinate) {
    const DartKey key{element, 0, 0, coordinate, 0, 0};
    const double r = -std::log(1.0 - h.uniform(key, Stream::icws_r1)) - std::log(1.0 - h.uniform(key, Stream::icws_r2));
    const double c = -std::log(1.0 - h.uniform(key, Stream::icws_c1)) - std::log(1.0 - h.uniform(key, Stream::icws_c2));
    return {r, c, h.uniform(key, Stream::icws_beta)};
}

struct Candidate {
    double a;
    std::int64_t tick;
};

Candidate evaluate(const Draws& d, double log_weight) {
    const double tick = std::floor(log_weight / d.r + d.beta);
    const double y = std::exp(d.r * (tick - d.beta));
    const double a = d.c / (y * std::exp(d.r));
    return {a, static_cast<std::int64_t>(tick)};
}

} // namespace

IcwsSketcher::IcwsSketcher(const HashFamily& hashes, std::uint32_t k) : hashes_(&hashes), k_(k) {
    if (k == 0) {
        throw validation_error("sketch length k must be at least 1");
    }
}

std::vector<IcwsHashValue> IcwsSketcher::sketch(const WeightedSet& x) const {
    require_nonempty(x, "icws_minhash");
    std::vector<IcwsHashValue> out(k_);
    for (std::uint32_t j = 0; j < k_; ++j) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& e : x.entries()) {
            const Candidate c = evaluate(draw(*hashes_, e.id, j), std::log(e.weight));
            if (c.a < best) {
                best = c.a;
                out[j] = {e.id, c.tick};
            }
        }
    }
    return out;
}

std::vector<IcwsHashValue> IcwsSketcher::sketch_fast(const WeightedSet& x) const {
    require_nonempty(x, "icws_minhash");
    const auto entries = x.entries();
    std::vector<double> log_weight;
    log_weight.reserve(entries.size());
    for (const auto& e : entries) {
        log_weight.push_back(std::log(e.weight));
    }
    std::vector<IcwsHashValue> out(k_);
    for (std::uint32_t j = 0; j < k_; ++j) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < entries.size(); ++i) {
            const Candidate c = evaluate(draw(*hashes_, entries[i].id, j), log_weight[i]);
            if (c.a < best) {
                best = c.a;
                out[j] = {entries[i].id, c.tick};
            }
        }
    }
    return out;
}

std::vector<IcwsHashValue> icws_minhash(const HashFamily& hashes, const WeightedSet& x, std::uint32_t k) {
    return IcwsSketcher(hashes, k).sketch(x);
}

double estimate_jaccard(const std::vector<IcwsHashValue>& a, const std::vector<IcwsHashValue>& b) {
    if (a.size() != b.size()) {
        throw validation_error("estimate_jaccard: sketch lengths differ");
    }
    if (a.empty()) {
        throw validation_error("estimate_jaccard: empty sketches");
    }
    std::size_t equal = 0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        equal += a[j] == b[j] ? 1 : 0;
    }
    return static_cast<double>(equal) / static_cast<double>(a.size());
}

} // namespace dmh
