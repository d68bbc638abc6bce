#include "dmh/naive_darthash.hpp"

#include <cmath>

namespace dmh {

std::vector<Dart> naive_darts(const HashFamily& hashes, std::uint64_t t, const WeightedSet& x, double phi) {
    require_nonempty(x, "naive_darts");
    if (!(phi > 0.0) || !std::isfinite(phi)) {
        throw validation_error("naive_darts: phi must be positive and finite");
    }
    return naive_darts_below_rank(hashes, t, x, phi / x.l1());
}

std::vector<Dart> naive_darts_below_rank(const HashFamily& hashes, std::uint64_t t, const WeightedSet& x,
                                         double rank_limit) {
    DartHasher::check_arguments(x, rank_limit, "naive_darts");
    if (t == 0) {
        throw validation_error("naive_darts: t must be at least 1");
    }
    const double td = static_cast<double>(t);
    std::vector<Dart> out;

    for (const auto& e : x.entries()) {
        const double xi = e.weight;
        const int nu_max = static_cast<int>(std::floor(std::log2(1.0 + td * xi)));
        const int rho_max = static_cast<int>(std::floor(std::log2(1.0 + rank_limit)));
        if (nu_max > DartHasher::max_level || rho_max > DartHasher::max_level) {
            throw validation_error("naive_darts: region level out of range");
        }
        for (int nu = 0; nu <= nu_max; ++nu) {
            for (int rho = 0; rho <= rho_max; ++rho) {
                const double W = (std::pow(2.0, nu) - 1.0) / td;
                const double R = std::pow(2.0, rho) - 1.0;
                const double delta_nu = std::pow(2.0, nu) / (td * std::pow(2.0, rho));
                const double delta_rho = std::pow(2.0, rho) / std::pow(2.0, nu);

                for (std::uint64_t w = 0; static_cast<double>(w) <= std::pow(2.0, rho) - 1.0; ++w) {
                    if (xi < W + static_cast<double>(w) * delta_nu) {
                        break;
                    }
                    for (std::uint64_t r = 0; static_cast<double>(r) <= std::pow(2.0, nu) - 1.0; ++r) {
                        if (rank_limit < R + static_cast<double>(r) * delta_rho) {
                            break;
                        }
                        DartKey key{e.id,
                                    static_cast<std::uint8_t>(nu),
                                    static_cast<std::uint8_t>(rho),
                                    static_cast<std::uint32_t>(w),
                                    static_cast<std::uint32_t>(r),
                                    0};
                        const std::uint32_t count = hashes.poisson1(key);
                        for (std::uint32_t j = 0; j < count; ++j) {
                            key.j = static_cast<std::uint16_t>(j);
                            const double V = hashes.uniform(key, Stream::weight);
                            const double U = hashes.uniform(key, Stream::rank);
                            const double weight = W + (static_cast<double>(w) + V) * delta_nu;
                            const double rank = R + (static_cast<double>(r) + U) * delta_rho;
                            if (weight <= xi && rank <= rank_limit) {
                                out.push_back(Dart{key, weight, rank, hashes.fingerprint(key)});
                            }
                        }
                    }
                }
            }
        }
    }
    return out;
}

} // namespace dmh
