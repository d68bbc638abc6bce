#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "dmh/darthash.hpp"
#include "dmh/hash_family.hpp"
#include "dmh/weighted_set.hpp"

namespace dmh {

struct LshParams {
    std::uint32_t L = 1;  // tables
    std::uint32_t K = 1;  // hash values per table key
    double j1 = 0.5;      // similarity threshold used to pick weight classes

    void validate() const;
};

/// K dart fingerprints in ascending rank order.
using LshKey = std::vector<std::uint64_t>;

/// Builds the L table keys of a set: DartHash with t = L * K, darts hashed
/// into L buckets, phi stepped until each bucket holds K darts. Key l is the
/// bottom-K of bucket l. Two sets agree on a key with probability J^K.
class LshKeyer {
public:
    LshKeyer(const HashFamily& hashes, const LshParams& params);

    [[nodiscard]] std::vector<LshKey> keys(const WeightedSet& x) const;

private:
    LshParams params_;
    DartHasher hasher_;
};

[[nodiscard]] std::vector<LshKey> lsh_keys(const HashFamily& hashes, const WeightedSet& x, const LshParams& params);

/// Order-sensitive 64-bit digest of a key, used as the table cell address.
[[nodiscard]] std::uint64_t cell_key(std::span<const std::uint64_t> fingerprints) noexcept;

/// floor(log2 |x|_1): the class holding sets with |x|_1 in [2^c, 2^(c+1)).
[[nodiscard]] int weight_class(double l1);

/// Inclusive range of classes whose interval meets [j1 |q|_1, |q|_1 / j1).
/// Never empty: the class of |q|_1 is always included.
struct ClassRange {
    int first;
    int last;
};
[[nodiscard]] ClassRange probe_classes(double query_l1, double j1);

struct Candidate {
    std::uint64_t id;
    double similarity;

    friend bool operator==(const Candidate&, const Candidate&) = default;
};

/// (L, K) LSH index for weighted Jaccard similarity. Points are split into
/// weight classes and normalized to |x|_1 in [1, 2) inside their class.
/// Single writer; concurrent queries are fine between writes.
class LshIndex {
public:
    LshIndex(const LshParams& params, std::uint64_t seed);
    // keyer_ points into hashes_
    LshIndex(const LshIndex&) = delete;
    LshIndex& operator=(const LshIndex&) = delete;

    /// Throws validation_error for an empty set or an id already present.
    void insert(std::uint64_t id, WeightedSet x);

    /// Candidates from every probed class, scored by exact Jaccard against
    /// the stored (unnormalized) sets, highest similarity first.
    [[nodiscard]] std::vector<Candidate> query(const WeightedSet& q) const;

    [[nodiscard]] const LshParams& params() const noexcept { return params_; }
    [[nodiscard]] std::size_t size() const noexcept { return points_.size(); }
    [[nodiscard]] std::optional<int> class_of(std::uint64_t id) const;
    /// Number of table cells holding id, over all classes and tables.
    [[nodiscard]] std::size_t cells_containing(std::uint64_t id) const;
    [[nodiscard]] std::vector<int> classes() const;

private:
    using Table = std::unordered_map<std::uint64_t, std::vector<std::uint64_t>>;

    struct StoredPoint {
        WeightedSet set;
        int weight_class;
#ifndef NDEBUG
        std::vector<LshKey> keys;
#endif
    };

    LshParams params_;
    HashFamily hashes_;
    LshKeyer keyer_;
    std::map<int, std::vector<Table>> classes_;
    std::unordered_map<std::uint64_t, StoredPoint> points_;
};

} // namespace dmh
