#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dmh {

using ElementId = std::uint64_t;

/// Raised for malformed inputs: negative weights, duplicate ids, empty sets
/// handed to sketching operations, mismatched sketch lengths.
class validation_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct WeightedEntry {
    ElementId id;
    double weight;

    friend bool operator==(const WeightedEntry&, const WeightedEntry&) = default;
};

/// Sparse nonnegative vector. Zero weights are stripped on construction, so
/// every stored weight is strictly positive. Immutable once built.
class WeightedSet {
public:
    WeightedSet() = default;

    /// Validates and builds a set. Throws validation_error on negative or
    /// non-finite weights and on duplicate ids.
    static WeightedSet make(std::span<const WeightedEntry> entries);
    static WeightedSet make(std::initializer_list<WeightedEntry> entries) {
        return make(std::span<const WeightedEntry>(entries.begin(), entries.size()));
    }

    [[nodiscard]] std::span<const WeightedEntry> entries() const noexcept { return entries_; }
    [[nodiscard]] std::size_t l0() const noexcept { return entries_.size(); }
    [[nodiscard]] double l1() const noexcept { return l1_; }
    [[nodiscard]] bool empty() const noexcept { return entries_.empty(); }

    /// Every weight multiplied by 2^exponent. Exact in floating point as long
    /// as no weight leaves the normal range.
    [[nodiscard]] WeightedSet scaled_by_pow2(int exponent) const;

    friend bool operator==(const WeightedSet&, const WeightedSet&) = default;

private:
    std::vector<WeightedEntry> entries_;
    double l1_ = 0.0;
};

inline WeightedSet make_weighted_set(std::span<const WeightedEntry> entries) {
    return WeightedSet::make(entries);
}

/// Weighted Jaccard similarity: sum of minima over sum of maxima. Throws
/// validation_error when both sets are empty.
double exact_jaccard(const WeightedSet& x, const WeightedSet& y);

/// Throws validation_error if x is empty. `what` names the calling operation.
void require_nonempty(const WeightedSet& x, std::string_view what);

// Text format: one set per line, space separated `id:weight` tokens.

WeightedSet parse_set_line(std::string_view line);
std::string format_set_line(const WeightedSet& x);

/// Reads every line of the stream (blank lines become empty sets).
std::vector<WeightedSet> read_sets(std::istream& in);
void write_sets(std::ostream& out, std::span<const WeightedSet> sets);

} // namespace dmh
