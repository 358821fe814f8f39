#include "truncstat/estimator.hpp"

#include <algorithm>
#include <cmath>

#include "truncstat/error.hpp"

namespace truncstat {

namespace {

// integer risk counts at the distinct points
std::vector<int> risk_counts(const SortedSample& sample) {
    std::vector<int> c(sample.m());
    for (int i = 0; i < sample.m(); ++i) {
        c[i] = risk_count(sample, sample.distinct_x[i]);
    }
    return c;
}

}  // namespace

StepFunction LBEstimate::cdf_function() const {
    return StepFunction(points, cdf, 0.0);
}

LBEstimate lynden_bell(const SortedSample& sample) {
    const int m = sample.m();
    const auto c = risk_counts(sample);

    LBEstimate est;
    est.n = sample.n();
    est.points = sample.distinct_x;
    est.weights.resize(m);
    est.cdf.resize(m);
    est.hazard.resize(m);

    // Survival products accumulate in log space while every factor is
    // strictly positive; a zero factor (risk count equal to the multiplicity)
    // switches to exact-zero survival so hole semantics stay bit-exact.
    double surv = 1.0;
    double log_surv = 0.0;
    bool absorbed = false;
    double hazard = 0.0;
    for (int i = 0; i < m; ++i) {
        const int d = sample.mult[i];
        hazard += static_cast<double>(d) / c[i];
        est.hazard[i] = hazard;
        if (absorbed) {
            est.weights[i] = 0.0;
            est.cdf[i] = 1.0;
            continue;
        }
        if (d == c[i]) {
            // all remaining mass lands on this point
            est.weights[i] = surv;
            est.cdf[i] = 1.0;
            surv = 0.0;
            absorbed = true;
            continue;
        }
        const double prev = surv;
        log_surv += std::log1p(-static_cast<double>(d) / c[i]);
        surv = std::min(prev, std::exp(log_surv));
        est.weights[i] = prev - surv;
        est.cdf[i] = 1.0 - surv;
    }

    est.holes = detect_holes(sample);
    est.left_support_warning = sample.sorted_y.front() >= sample.sorted_x.front();
    return est;
}

ModifiedEstimate modified_weights(const SortedSample& sample) {
    const int m = sample.m();
    const auto c = risk_counts(sample);

    ModifiedEstimate est;
    est.n = sample.n();
    est.points = sample.distinct_x;
    est.weights.resize(m);

    // every prefix factor 1 - d/(c+1) lies in (0, 1], so log space is always valid
    double log_prefix = 0.0;
    for (int i = 0; i < m; ++i) {
        const double d = sample.mult[i];
        est.weights[i] = d / c[i] * std::exp(log_prefix);
        log_prefix += std::log1p(-d / (c[i] + 1.0));
    }
    return est;
}

double modified_survival(const SortedSample& sample, double x) {
    if (sample.m() != sample.n()) {
        throw Error("estimator", "TiesPresent",
                    "modified survival product is defined for tie-free samples");
    }
    double log_prod = 0.0;
    for (int i = 0; i < sample.m(); ++i) {
        if (sample.distinct_x[i] >= x) break;
        const int c = risk_count(sample, sample.distinct_x[i]);
        log_prod += std::log1p(-1.0 / (c + 1.0));
    }
    return std::exp(log_prod);
}

double cumulative_hazard(const SortedSample& sample, double x) {
    double hazard = 0.0;
    for (int i = 0; i < sample.m(); ++i) {
        if (sample.distinct_x[i] > x) break;
        hazard += static_cast<double>(sample.mult[i]) / risk_count(sample, sample.distinct_x[i]);
    }
    return hazard;
}

HoleReport detect_holes(const SortedSample& sample) {
    const int m = sample.m();
    HoleReport report;
    for (int i = 0; i < m - 1; ++i) {
        if (risk_count(sample, sample.distinct_x[i]) == sample.mult[i]) {
            report.inner_hole_indices.push_back(i + 1);
        }
    }
    if (!report.inner_hole_indices.empty()) {
        report.first_inner_hole = report.inner_hole_indices.front();
        for (int j = report.first_inner_hole + 1; j <= m; ++j) {
            report.zeroed_mass_points.push_back(j);
        }
    }
    return report;
}

}  // namespace truncstat
