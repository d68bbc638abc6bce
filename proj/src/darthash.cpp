#include "dmh/darthash.hpp"

namespace dmh {

DartHasher::DartHasher(const HashFamily& hashes, std::uint64_t t) : hashes_(&hashes), t_(t) {
    if (t == 0) {
        throw validation_error("DartHasher: t must be at least 1");
    }
    const double td = static_cast<double>(t);
    pow2_.resize(max_level + 1);
    region_start_.resize(max_level + 1);
    region_width_.resize(max_level + 1);
    for (int e = 0; e <= max_level; ++e) {
        pow2_[e] = std::ldexp(1.0, e);
        region_start_[e] = (pow2_[e] - 1.0) / td;
        region_width_[e] = pow2_[e] / td;
    }
}

int DartHasher::level_bound(double v, const char* what) {
    const double s = 1.0 + v;
    if (!(s < std::ldexp(1.0, max_level + 1))) {
        throw validation_error(std::string(what) + " too large: region level would exceed " +
                               std::to_string(max_level));
    }
    return std::ilogb(s);
}

void DartHasher::check_arguments(const WeightedSet& x, double limit, const char* op) {
    require_nonempty(x, op);
    if (!(limit > 0.0) || !std::isfinite(limit)) {
        throw validation_error(std::string(op) + ": threshold must be positive and finite");
    }
}

std::vector<Dart> DartHasher::darts(const WeightedSet& x, double phi) const {
    require_nonempty(x, "darts");
    if (!(phi > 0.0) || !std::isfinite(phi)) {
        throw validation_error("darts: phi must be positive and finite");
    }
    return darts_below_rank(x, phi / x.l1());
}

std::vector<Dart> DartHasher::darts_below_rank(const WeightedSet& x, double rank_limit) const {
    std::vector<Dart> out;
    visit_darts_below_rank(x, rank_limit, [&](const Dart& d) { out.push_back(d); });
    return out;
}

} // namespace dmh
