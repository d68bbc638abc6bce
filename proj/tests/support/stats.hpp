#pragma once

// Statistical oracles for the test suites. Independent of the library: all
// reference distributions come from Boost.Math.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/poisson.hpp>
#include <boost/math/special_functions/gamma.hpp>

namespace dmh::test {

struct ChiSquare {
    double statistic = 0.0;
    std::size_t dof = 0;
    double p_value = 1.0;
};

/// Pearson goodness of fit of integer observations against a pmf on
/// [0, support). Adjacent cells are pooled until each expects >= 5 counts.
inline ChiSquare chi_square_fit(const std::vector<std::uint64_t>& observations, std::size_t support,
                                const std::function<double(std::size_t)>& pmf) {
    std::vector<double> observed(support, 0.0);
    for (auto v : observations) {
        observed[std::min<std::size_t>(v, support - 1)] += 1.0;
    }
    const double n = static_cast<double>(observations.size());
    std::vector<double> expected(support);
    double mass = 0.0;
    for (std::size_t i = 0; i < support; ++i) {
        expected[i] = pmf(i) * n;
        mass += pmf(i);
    }
    // the last cell absorbs the tail
    expected[support - 1] += (1.0 - mass) * n;

    std::vector<double> obs_pooled;
    std::vector<double> exp_pooled;
    double acc_o = 0.0;
    double acc_e = 0.0;
    for (std::size_t i = 0; i < support; ++i) {
        acc_o += observed[i];
        acc_e += expected[i];
        if (acc_e >= 5.0) {
            obs_pooled.push_back(acc_o);
            exp_pooled.push_back(acc_e);
            acc_o = acc_e = 0.0;
        }
    }
    if (!exp_pooled.empty()) {
        obs_pooled.back() += acc_o;
        exp_pooled.back() += acc_e;
    }
    ChiSquare out;
    for (std::size_t i = 0; i < exp_pooled.size(); ++i) {
        const double d = obs_pooled[i] - exp_pooled[i];
        out.statistic += d * d / exp_pooled[i];
    }
    out.dof = exp_pooled.size() > 1 ? exp_pooled.size() - 1 : 1;
    out.p_value = boost::math::gamma_q(static_cast<double>(out.dof) / 2.0, out.statistic / 2.0);
    return out;
}

inline ChiSquare chi_square_binomial(const std::vector<std::uint64_t>& observations, std::uint64_t trials,
                                     double p) {
    const boost::math::binomial_distribution<double> dist(static_cast<double>(trials), p);
    return chi_square_fit(observations, trials + 1,
                          [&](std::size_t i) { return boost::math::pdf(dist, static_cast<double>(i)); });
}

inline ChiSquare chi_square_poisson(const std::vector<std::uint64_t>& observations, double mean) {
    const boost::math::poisson_distribution<double> dist(mean);
    const auto support = static_cast<std::size_t>(mean + 12.0 * std::sqrt(mean) + 20.0);
    return chi_square_fit(observations, support,
                          [&](std::size_t i) { return boost::math::pdf(dist, static_cast<double>(i)); });
}

/// Uniformity of bucket counts.
inline ChiSquare chi_square_uniform(const std::vector<std::uint64_t>& counts) {
    const double total = std::accumulate(counts.begin(), counts.end(), 0.0);
    const double e = total / static_cast<double>(counts.size());
    ChiSquare out;
    for (auto c : counts) {
        const double d = static_cast<double>(c) - e;
        out.statistic += d * d / e;
    }
    out.dof = counts.size() - 1;
    out.p_value = boost::math::gamma_q(static_cast<double>(out.dof) / 2.0, out.statistic / 2.0);
    return out;
}

struct Moments {
    double mean = 0.0;
    double variance = 0.0;  // unbiased
};

template <class Range>
Moments moments(const Range& values) {
    Moments m;
    double n = 0.0;
    for (auto v : values) {
        n += 1.0;
        m.mean += static_cast<double>(v);
    }
    m.mean /= n;
    for (auto v : values) {
        const double d = static_cast<double>(v) - m.mean;
        m.variance += d * d;
    }
    m.variance /= (n - 1.0);
    return m;
}

/// Standard error of a binomial proportion estimated from n trials.
inline double binomial_se(double p, double n) { return std::sqrt(p * (1.0 - p) / n); }

/// Exact Pr[|X/k - p| <= half_width] for X ~ Binomial(k, p).
inline double binomial_interval_mass(std::uint32_t k, double p, double half_width) {
    const boost::math::binomial_distribution<double> dist(k, p);
    double mass = 0.0;
    for (std::uint32_t x = 0; x <= k; ++x) {
        if (std::abs(static_cast<double>(x) / k - p) <= half_width) {
            mass += boost::math::pdf(dist, x);
        }
    }
    return mass;
}

} // namespace dmh::test
