#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dmh/hash_family.hpp"
#include "dmh/weighted_set.hpp"

namespace dmh {

enum class Algorithm { dartminhash, icws, icws_fast, bottomk };

[[nodiscard]] Algorithm parse_algorithm(std::string_view name);
[[nodiscard]] std::string_view algorithm_name(Algorithm a) noexcept;

struct ExperimentConfig {
    Algorithm algorithm = Algorithm::dartminhash;
    std::uint32_t k = 256;
    std::size_t l0 = 256;
    double l1 = 1.0;
    std::size_t pairs = 100;
    double target_j = 0.5;
    std::uint64_t seed = 1;

    /// Throws validation_error for nonpositive counts or target_j outside (0, 1).
    void validate() const;
};

/// Sketches x and y with the chosen algorithm under `hashes` and returns
/// the Jaccard estimate.
[[nodiscard]] double estimate_pair(Algorithm algorithm, const HashFamily& hashes, std::uint32_t k,
                                   const WeightedSet& x, const WeightedSet& y);

/// Half-width of the 95% normal interval for a k-sample binomial estimate.
[[nodiscard]] double ci95_half_width(double j, std::uint32_t k);

struct EstimationRow {
    std::uint32_t k;
    double target_j;
    double estimate;
    bool in_ci;
};

/// One row per pair: fresh pair and fresh hash seed per trial.
[[nodiscard]] std::vector<EstimationRow> run_estimation_experiment(const ExperimentConfig& config);

void write_estimation_csv(std::ostream& out, const ExperimentConfig& config, std::span<const EstimationRow> rows);

struct TimingCell {
    Algorithm algorithm;
    std::uint32_t k;
    std::size_t l0;
    double l1;
};

struct TimingOptions {
    std::size_t sets = 100;
    std::size_t repetitions = 5;
    std::size_t warmup = 3;
    std::uint64_t seed = 1;
};

struct TimingRow {
    TimingCell cell;
    double mean_ms;          // median over repetitions of the per-sketch mean
    std::uint64_t checksum;  // digest of every sketch produced; seed-deterministic
};

/// Times each cell sequentially. Sets are generated before timing starts;
/// warm-up sketches are not timed.
[[nodiscard]] std::vector<TimingRow> run_timing_experiment(std::span<const TimingCell> cells,
                                                           const TimingOptions& options);

/// Fifteen k / l0 / l1 shapes spanning small to large sketches and sets, with
/// l1 limited to 2^-64 ... 2^64, for each of the given algorithms.
[[nodiscard]] std::vector<TimingCell> standard_timing_grid(std::span<const Algorithm> algorithms);

void write_timing_csv(std::ostream& out, const TimingOptions& options, std::span<const TimingRow> rows);

/// Three significant digits, as printed in timing tables.
[[nodiscard]] std::string format_sig3(double v);

} // namespace dmh
