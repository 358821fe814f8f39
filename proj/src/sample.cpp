#include "truncstat/sample.hpp"

#include <algorithm>
#include <cmath>

#include "truncstat/error.hpp"

namespace truncstat {

SortedSample validate_and_sort(const std::vector<std::pair<double, double>>& raw) {
    if (raw.empty()) {
        throw Error("sample_model", "EmptySample", "need at least one observation");
    }
    std::vector<std::size_t> violations;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (!std::isfinite(raw[i].first) || !std::isfinite(raw[i].second)) {
            throw Error("sample_model", "NonFinite", "row " + std::to_string(i));
        }
        if (raw[i].second > raw[i].first) {
            violations.push_back(i);
        }
    }
    if (!violations.empty()) {
        throw Error("sample_model", "TruncationViolated",
                    "y > x at rows " + join_indices(violations));
    }

    const int n = static_cast<int>(raw.size());
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (raw[a].first != raw[b].first) return raw[a].first < raw[b].first;
        return a < b;  // ties keep original row order
    });

    SortedSample s;
    s.x_values.resize(n);
    s.y_values.resize(n);
    for (int i = 0; i < n; ++i) {
        s.x_values[i] = raw[i].first;
        s.y_values[i] = raw[i].second;
    }
    for (int k = 0; k < n; ++k) {
        const double x = raw[order[k]].first;
        if (s.distinct_x.empty() || s.distinct_x.back() != x) {
            s.distinct_x.push_back(x);
            s.mult.push_back(0);
            s.rows.emplace_back();
        }
        s.mult.back() += 1;
        s.rows.back().push_back(order[k]);
    }
    s.sorted_x = s.x_values;
    std::sort(s.sorted_x.begin(), s.sorted_x.end());
    s.sorted_y = s.y_values;
    std::sort(s.sorted_y.begin(), s.sorted_y.end());
    return s;
}

SortedSample validate_and_sort(const TruncatedSample& sample) {
    return validate_and_sort(sample.pairs);
}

TruncatedSample reconstruct(const SortedSample& sample) {
    TruncatedSample out;
    out.pairs.resize(sample.x_values.size());
    for (std::size_t i = 0; i < sample.x_values.size(); ++i) {
        out.pairs[i] = {sample.x_values[i], sample.y_values[i]};
    }
    return out;
}

int risk_count(const SortedSample& sample, double z) {
    // #{y_i <= z} - #{x_i < z}: every pair with x_i < z also has y_i <= z,
    // so the difference counts exactly the pairs with y_i <= z <= x_i.
    const auto y_le = std::upper_bound(sample.sorted_y.begin(), sample.sorted_y.end(), z) -
                      sample.sorted_y.begin();
    const auto x_lt = std::lower_bound(sample.sorted_x.begin(), sample.sorted_x.end(), z) -
                      sample.sorted_x.begin();
    return static_cast<int>(y_le - x_lt);
}

double risk_fraction(const SortedSample& sample, double z) {
    return static_cast<double>(risk_count(sample, z)) / sample.n();
}

double observed_cdf(const SortedSample& sample, double x) {
    const auto le = std::upper_bound(sample.sorted_x.begin(), sample.sorted_x.end(), x) -
                    sample.sorted_x.begin();
    return static_cast<double>(le) / sample.n();
}

double observed_cdf_left(const SortedSample& sample, double x) {
    const auto lt = std::lower_bound(sample.sorted_x.begin(), sample.sorted_x.end(), x) -
                    sample.sorted_x.begin();
    return static_cast<double>(lt) / sample.n();
}

double observed_mass(const SortedSample& sample, double x) {
    const auto it = std::lower_bound(sample.distinct_x.begin(), sample.distinct_x.end(), x);
    if (it == sample.distinct_x.end() || *it != x) return 0.0;
    const auto k = it - sample.distinct_x.begin();
    return static_cast<double>(sample.mult[k]) / sample.n();
}

}  // namespace truncstat
