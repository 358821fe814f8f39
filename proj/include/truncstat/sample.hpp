#ifndef TRUNCSTAT_SAMPLE_HPP
#define TRUNCSTAT_SAMPLE_HPP

#include <cstddef>
#include <utility>
#include <vector>

namespace truncstat {

// Raw left-truncated observations: pairs (x, y) with y <= x, where x is the
// lifetime and y the truncation value that let it be observed.
struct TruncatedSample {
    std::vector<std::pair<double, double>> pairs;

    std::size_t size() const { return pairs.size(); }
};

// Canonically ordered sample: distinct lifetimes with multiplicities plus the
// mapping back to the original rows. All estimator code works on this form.
struct SortedSample {
    std::vector<double> distinct_x;        // strictly increasing
    std::vector<int> mult;                 // multiplicity per distinct value, sums to n
    std::vector<std::vector<int>> rows;    // original row indices per distinct value
    std::vector<double> x_values;          // per original row
    std::vector<double> y_values;          // per original row

    // sorted copies kept for O(log n) risk-set counting
    std::vector<double> sorted_x;
    std::vector<double> sorted_y;

    int n() const { return static_cast<int>(x_values.size()); }
    int m() const { return static_cast<int>(distinct_x.size()); }
};

// Validates raw pairs (finite, y <= x, nonempty) and builds the sorted form.
// Throws sample_model.EmptySample / NonFinite / TruncationViolated; the
// TruncationViolated message lists all offending 0-based row indices.
SortedSample validate_and_sort(const std::vector<std::pair<double, double>>& raw);

SortedSample validate_and_sort(const TruncatedSample& sample);

// Recovers the original multiset of pairs (row order preserved).
TruncatedSample reconstruct(const SortedSample& sample);

// #{i : y_i <= z <= x_i}, the number of pairs whose risk interval covers z.
int risk_count(const SortedSample& sample, double z);

// risk_count / n
double risk_fraction(const SortedSample& sample, double z);

// Right-continuous empirical cdf of the lifetimes, and the point mass at x
// (multiplicity / n; zero off the support).
double observed_cdf(const SortedSample& sample, double x);
double observed_cdf_left(const SortedSample& sample, double x);
double observed_mass(const SortedSample& sample, double x);

}  // namespace truncstat

#endif
