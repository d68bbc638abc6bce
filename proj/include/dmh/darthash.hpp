#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "dmh/hash_family.hpp"
#include "dmh/weighted_set.hpp"

namespace dmh {

/// One dart hitting a weighted set. `index` identifies the area and the
/// ordinal of the dart inside it; `weight` and `rank` are its coordinates.
/// Ranks are normalized so that t darts per unit of rank hit a unit of weight.
struct Dart {
    DartKey index;
    double weight = 0.0;
    double rank = 0.0;
    std::uint64_t fingerprint = 0;

    friend bool operator==(const Dart&, const Dart&) = default;
};

/// Order by rank, ties broken by the index tuple.
[[nodiscard]] inline bool rank_less(const Dart& a, const Dart& b) noexcept {
    if (a.rank != b.rank) {
        return a.rank < b.rank;
    }
    return a.index < b.index;
}

/// Enumerates the darts of rank below a threshold that hit a weighted set.
///
/// Each element's weight-rank space is cut into dyadic regions (nu, rho)
/// covering weights [(2^nu - 1)/t, (2^(nu+1) - 1)/t) and ranks
/// [2^rho - 1, 2^(rho+1) - 1). A region is split into 2^rho weight columns and
/// 2^nu rank rows, giving areas of size 1/t that hold Poisson(1) darts each.
/// Only areas that can intersect [0, x_i] x [0, limit] are visited.
///
/// The hasher keeps a pointer to `hashes`, which must outlive it.
class DartHasher {
public:
    /// Largest region level representable in the packed key.
    static constexpr int max_level = 255;

    DartHasher(const HashFamily& hashes, std::uint64_t t);

    [[nodiscard]] std::uint64_t t() const noexcept { return t_; }
    [[nodiscard]] const HashFamily& hashes() const noexcept { return *hashes_; }

    /// Darts with rank <= phi / |x|_1; phi * t of them in expectation.
    [[nodiscard]] std::vector<Dart> darts(const WeightedSet& x, double phi) const;

    /// Darts with rank <= rank_limit.
    [[nodiscard]] std::vector<Dart> darts_below_rank(const WeightedSet& x, double rank_limit) const;

    /// Calls visit(const Dart&) for every dart with rank <= rank_limit, in
    /// enumeration order (element, nu, rho, w, r, j).
    template <class Visitor>
    void visit_darts_below_rank(const WeightedSet& x, double rank_limit, Visitor&& visit) const;

    /// floor(log2(1 + v)) for v >= 0; throws validation_error above max_level.
    [[nodiscard]] static int level_bound(double v, const char* what);

    /// Throws validation_error unless x is nonempty and limit is positive and finite.
    static void check_arguments(const WeightedSet& x, double limit, const char* op);

private:
    const HashFamily* hashes_;
    std::uint64_t t_;
    std::vector<double> pow2_;         // 2^e
    std::vector<double> region_start_; // (2^nu - 1) / t
    std::vector<double> region_width_; // 2^nu / t
};

template <class Visitor>
void DartHasher::visit_darts_below_rank(const WeightedSet& x, double rank_limit, Visitor&& visit) const {
    check_arguments(x, rank_limit, "darts_below_rank");
    const double t = static_cast<double>(t_);
    const int max_rho = level_bound(rank_limit, "rank limit");
    const HashFamily& h = *hashes_;

    for (const auto& e : x.entries()) {
        const double xi = e.weight;
        const int max_nu = level_bound(t * xi, "t * weight");
        const std::uint64_t element_hash = h.element_part(e.id);

        for (int nu = 0; nu <= max_nu; ++nu) {
            const double W = region_start_[nu];
            const double width = region_width_[nu];
            const double rank_rows = pow2_[nu];

            for (int rho = 0; rho <= max_rho; ++rho) {
                const double R = pow2_[rho] - 1.0;
                const double weight_step = std::ldexp(width, -rho);
                const double rank_step = std::ldexp(1.0, rho - nu);
                const double weight_cols = pow2_[rho];

                for (std::uint64_t w = 0; static_cast<double>(w) < weight_cols; ++w) {
                    if (xi < W + static_cast<double>(w) * weight_step) {
                        break;
                    }
                    for (std::uint64_t r = 0; static_cast<double>(r) < rank_rows; ++r) {
                        if (rank_limit < R + static_cast<double>(r) * rank_step) {
                            break;
                        }
                        if (w > std::numeric_limits<std::uint32_t>::max() ||
                            r > std::numeric_limits<std::uint32_t>::max()) {
                            throw validation_error("darts_below_rank: area coordinate exceeds 32 bits; "
                                                   "rank limit too large for t");
                        }
                        const auto w32 = static_cast<std::uint32_t>(w);
                        const auto r32 = static_cast<std::uint32_t>(r);
                        const auto nu8 = static_cast<std::uint8_t>(nu);
                        const auto rho8 = static_cast<std::uint8_t>(rho);
                        const std::uint64_t area_hash = element_hash ^ h.area_part(nu8, rho8, w32, r32);
                        const std::uint32_t count = h.poisson_from_hash(h.finish(area_hash, 0, Stream::poisson));

                        for (std::uint32_t j = 0; j < count; ++j) {
                            const auto j16 = static_cast<std::uint16_t>(j);
                            const double V = HashFamily::to_unit(h.finish(area_hash, j16, Stream::weight));
                            const double U = HashFamily::to_unit(h.finish(area_hash, j16, Stream::rank));
                            const double weight = W + (static_cast<double>(w) + V) * weight_step;
                            const double rank = R + (static_cast<double>(r) + U) * rank_step;
                            if (weight <= xi && rank <= rank_limit) {
                                Dart d;
                                d.index = DartKey{e.id, nu8, rho8, w32, r32, j16};
                                d.weight = weight;
                                d.rank = rank;
                                d.fingerprint = h.finish(area_hash, j16, Stream::fingerprint);
                                visit(d);
                            }
                        }
                    }
                }
            }
        }
    }
}

} // namespace dmh
