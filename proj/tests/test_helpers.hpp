#ifndef TRUNCSTAT_TEST_HELPERS_HPP
#define TRUNCSTAT_TEST_HELPERS_HPP

#include <utility>
#include <vector>

#include "truncstat/random.hpp"
#include "truncstat/sample.hpp"

namespace truncstat::testing {

// small discrete sample with ties: lifetimes on an integer grid, truncators
// integer below or equal
inline std::vector<std::pair<double, double>> random_discrete_pairs(RandomStream& rng, int n,
                                                                    int grid = 6) {
    std::vector<std::pair<double, double>> pairs;
    pairs.reserve(n);
    for (int i = 0; i < n; ++i) {
        const int x = 1 + static_cast<int>(rng.uniform01() * grid);
        const int y = static_cast<int>(rng.uniform01() * (x + 1));
        pairs.emplace_back(static_cast<double>(x), static_cast<double>(y));
    }
    return pairs;
}

// continuous tie-free sample
inline std::vector<std::pair<double, double>> random_continuous_pairs(RandomStream& rng, int n) {
    std::vector<std::pair<double, double>> pairs;
    pairs.reserve(n);
    for (int i = 0; i < n; ++i) {
        const double x = 1.0 + rng.uniform01();
        const double y = x * rng.uniform01();
        pairs.emplace_back(x, y);
    }
    return pairs;
}

// reference product-limit cdf for tie-free samples, computed directly from
// the risk-count ratio product (independent of the estimator module's
// incremental accumulation)
inline std::vector<double> tie_free_product_cdf(const SortedSample& s) {
    std::vector<double> cdf(s.m());
    double surv = 1.0;
    for (int i = 0; i < s.m(); ++i) {
        const int c = risk_count(s, s.distinct_x[i]);
        surv *= static_cast<double>(c - 1) / c;
        cdf[i] = 1.0 - surv;
    }
    return cdf;
}

}  // namespace truncstat::testing

#endif
