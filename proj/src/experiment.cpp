#include "dmh/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "dmh/icws.hpp"
#include "dmh/sketch.hpp"
#include "dmh/synthetic.hpp"

namespace dmh {

namespace {

constexpr std::uint64_t data_stream = 1;
constexpr std::uint64_t pair_stream = 2;
constexpr std::uint64_t hash_stream = 3;

std::uint64_t digest(std::uint64_t acc, std::uint64_t v) noexcept {
    return mix64(acc ^ (v + 0x9e3779b97f4a7c15ULL + (acc << 6) + (acc >> 2)));
}

template <class Sketcher>
std::uint64_t time_sketcher(const Sketcher& sketcher, std::span<const WeightedSet> sets, const TimingOptions& options,
                            std::vector<double>& rep_means) {
    using clock = std::chrono::steady_clock;
    using Result = decltype(sketcher(sets.front()));
    for (std::size_t i = 0; i < std::min(options.warmup, sets.size()); ++i) {
        [[maybe_unused]] volatile auto n = sketcher(sets[i]).size();
    }
    std::vector<Result> results(sets.size());
    for (std::size_t rep = 0; rep < options.repetitions; ++rep) {
        const auto start = clock::now();
        for (std::size_t i = 0; i < sets.size(); ++i) {
            results[i] = sketcher(sets[i]);
        }
        const std::chrono::duration<double, std::milli> elapsed = clock::now() - start;
        rep_means.push_back(elapsed.count() / static_cast<double>(sets.size()));
    }
    std::uint64_t acc = 0;
    for (const auto& r : results) {
        acc = digest(acc, r.size());
        for (const auto& v : r) {
            acc = digest(acc, v);
        }
    }
    return acc;
}

// Adapters giving each algorithm a sketch -> range-of-u64 interface.

struct MinHashAdapter {
    DartMinHash inner;
    std::vector<std::uint64_t> operator()(const WeightedSet& x) const { return inner.sketch(x).values; }
};

struct BottomKAdapter {
    BottomK inner;
    std::vector<std::uint64_t> operator()(const WeightedSet& x) const {
        std::vector<std::uint64_t> out;
        for (const auto& d : inner.sketch(x).darts) {
            out.push_back(d.fingerprint);
        }
        return out;
    }
};

struct IcwsAdapter {
    IcwsSketcher inner;
    bool fast;
    std::vector<std::uint64_t> operator()(const WeightedSet& x) const {
        const auto values = fast ? inner.sketch_fast(x) : inner.sketch(x);
        std::vector<std::uint64_t> out;
        out.reserve(values.size());
        for (const auto& v : values) {
            out.push_back(digest(v.element, static_cast<std::uint64_t>(v.tick)));
        }
        return out;
    }
};

} // namespace

Algorithm parse_algorithm(std::string_view name) {
    if (name == "dartminhash") return Algorithm::dartminhash;
    if (name == "icws") return Algorithm::icws;
    if (name == "icws-fast") return Algorithm::icws_fast;
    if (name == "bottomk") return Algorithm::bottomk;
    throw validation_error("unknown algorithm '" + std::string(name) +
                           "' (expected dartminhash, icws, icws-fast or bottomk)");
}

std::string_view algorithm_name(Algorithm a) noexcept {
    switch (a) {
    case Algorithm::dartminhash: return "dartminhash";
    case Algorithm::icws: return "icws";
    case Algorithm::icws_fast: return "icws-fast";
    case Algorithm::bottomk: return "bottomk";
    }
    return "unknown";
}

void ExperimentConfig::validate() const {
    if (k == 0 || l0 == 0 || pairs == 0) {
        throw validation_error("k, l0 and pair count must be positive");
    }
    if (!(l1 > 0.0) || !std::isfinite(l1)) {
        throw validation_error("l1 must be positive and finite");
    }
    if (!(target_j > 0.0 && target_j < 1.0)) {
        throw validation_error("target J must lie in (0, 1)");
    }
}

double estimate_pair(Algorithm algorithm, const HashFamily& hashes, std::uint32_t k, const WeightedSet& x,
                     const WeightedSet& y) {
    switch (algorithm) {
    case Algorithm::dartminhash: {
        const DartMinHash s(hashes, k);
        return estimate_jaccard(s(x), s(y));
    }
    case Algorithm::bottomk: {
        const BottomK s(hashes, k);
        return estimate_jaccard_bottom_k(s(x), s(y));
    }
    case Algorithm::icws: {
        const IcwsSketcher s(hashes, k);
        return estimate_jaccard(s.sketch(x), s.sketch(y));
    }
    case Algorithm::icws_fast: {
        const IcwsSketcher s(hashes, k);
        return estimate_jaccard(s.sketch_fast(x), s.sketch_fast(y));
    }
    }
    throw validation_error("unknown algorithm");
}

double ci95_half_width(double j, std::uint32_t k) {
    return 1.96 * std::sqrt(j * (1.0 - j) / static_cast<double>(k));
}

std::vector<EstimationRow> run_estimation_experiment(const ExperimentConfig& config) {
    config.validate();
    const double half_width = ci95_half_width(config.target_j, config.k);
    std::vector<EstimationRow> rows;
    rows.reserve(config.pairs);
    for (std::size_t trial = 0; trial < config.pairs; ++trial) {
        const auto x = gen_set(config.l0, config.l1, derive_seed(config.seed, data_stream, trial));
        const auto y = gen_pair(x, config.target_j, derive_seed(config.seed, pair_stream, trial));
        const HashFamily hashes(derive_seed(config.seed, hash_stream, trial));
        const double est = estimate_pair(config.algorithm, hashes, config.k, x, y);
        rows.push_back({config.k, config.target_j, est, std::abs(est - config.target_j) <= half_width});
    }
    return rows;
}

void write_estimation_csv(std::ostream& out, const ExperimentConfig& config, std::span<const EstimationRow> rows) {
    out << "# seed=" << config.seed << " algo=" << algorithm_name(config.algorithm) << " l0=" << config.l0
        << " l1=" << config.l1 << '\n';
    out << "k,target_j,estimate,in_ci\n";
    char buf[128];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%u,%.17g,%.17g,%d\n", r.k, r.target_j, r.estimate, r.in_ci ? 1 : 0);
        out << buf;
    }
}

std::vector<TimingRow> run_timing_experiment(std::span<const TimingCell> cells, const TimingOptions& options) {
    if (options.sets == 0 || options.repetitions == 0) {
        throw validation_error("timing needs at least one set and one repetition");
    }
    std::vector<TimingRow> rows;
    for (std::size_t c = 0; c < cells.size(); ++c) {
        const TimingCell& cell = cells[c];
        if (cell.k == 0 || cell.l0 == 0) {
            throw validation_error("timing cell needs positive k and l0");
        }
        std::vector<WeightedSet> sets;
        sets.reserve(options.sets);
        for (std::size_t i = 0; i < options.sets; ++i) {
            sets.push_back(gen_set(cell.l0, cell.l1, derive_seed(options.seed, data_stream, i)));
        }
        const HashFamily hashes(derive_seed(options.seed, hash_stream));
        std::vector<double> means;
        std::uint64_t checksum = 0;
        switch (cell.algorithm) {
        case Algorithm::dartminhash:
            checksum = time_sketcher(MinHashAdapter{DartMinHash(hashes, cell.k)}, sets, options, means);
            break;
        case Algorithm::bottomk:
            checksum = time_sketcher(BottomKAdapter{BottomK(hashes, cell.k)}, sets, options, means);
            break;
        case Algorithm::icws:
            checksum = time_sketcher(IcwsAdapter{IcwsSketcher(hashes, cell.k), false}, sets, options, means);
            break;
        case Algorithm::icws_fast:
            checksum = time_sketcher(IcwsAdapter{IcwsSketcher(hashes, cell.k), true}, sets, options, means);
            break;
        }
        std::sort(means.begin(), means.end());
        const std::size_t n = means.size();
        const double median = n % 2 == 1 ? means[n / 2] : 0.5 * (means[n / 2 - 1] + means[n / 2]);
        rows.push_back({cell, median, checksum});
    }
    return rows;
}

std::vector<TimingCell> standard_timing_grid(std::span<const Algorithm> algorithms) {
    struct Shape {
        std::uint32_t k;
        std::size_t l0;
        double l1;
    };
    const Shape shapes[] = {
        {1, 256, 1.0},        {256, 256, 1.0},      {4096, 256, 1.0},  {1, 4096, 1.0},
        {256, 4096, 1.0},     {4096, 4096, 1.0},    {64, 64, 1.0},     {64, 1024, 1.0},
        {64, 16384, 1.0},     {1024, 64, 1.0},      {1024, 1024, 1.0}, {1024, 16384, 1.0},
        {256, 1024, 1.0},     {256, 1024, 0x1p64},  {256, 1024, 0x1p-64},
    };
    std::vector<TimingCell> cells;
    for (const auto& s : shapes) {
        for (auto a : algorithms) {
            cells.push_back({a, s.k, s.l0, s.l1});
        }
    }
    return cells;
}

std::string format_sig3(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

void write_timing_csv(std::ostream& out, const TimingOptions& options, std::span<const TimingRow> rows) {
    out << "# seed=" << options.seed << " sets=" << options.sets << " repetitions=" << options.repetitions << '\n';
    out << "algorithm,k,l0,l1,mean_ms,checksum\n";
    char l1[64];
    for (const auto& r : rows) {
        std::snprintf(l1, sizeof l1, "%.17g", r.cell.l1);
        out << algorithm_name(r.cell.algorithm) << ',' << r.cell.k << ',' << r.cell.l0 << ',' << l1 << ','
            << format_sig3(r.mean_ms) << ',' << std::hex << r.checksum << std::dec << '\n';
    }
}

} // namespace dmh
