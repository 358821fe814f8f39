#ifndef TRUNCSTAT_ESTIMATOR_HPP
#define TRUNCSTAT_ESTIMATOR_HPP

#include <vector>

#include "truncstat/sample.hpp"
#include "truncstat/step_function.hpp"

namespace truncstat {

// Empty inner risk sets. An inner hole at position j (1-based among the
// distinct lifetimes, j < m) means the point is covered by no other pair:
// its risk count equals its own multiplicity. The product-limit estimator
// then assigns zero mass to every point strictly to the right of the first
// such hole.
struct HoleReport {
    std::vector<int> inner_hole_indices;  // 1-based positions, each < m
    int first_inner_hole = 0;             // smallest such position, 0 if none
    std::vector<int> zeroed_mass_points;  // 1-based positions right of the first hole
};

// Product-limit (Lynden-Bell) estimate over the distinct lifetimes.
struct LBEstimate {
    std::vector<double> points;    // distinct lifetimes, increasing
    std::vector<double> weights;   // point masses, >= 0, sum <= 1
    std::vector<double> cdf;       // right-continuous cdf value at each point
    std::vector<double> hazard;    // cumulative hazard at each point
    HoleReport holes;
    int n = 0;

    // empirical hint that the truncation support may not reach below the
    // lifetime support (min y >= min x); reported, never blocking
    bool left_support_warning = false;

    StepFunction cdf_function() const;

    double cdf_at(double x) const { return cdf_function()(x); }
};

// Weights of the modified estimator: risk denominators are shifted by one so
// that every factor stays strictly positive and mass can pass inner holes.
// The weights are nonnegative but their total may exceed 1; the estimate is
// meaningful only through its integrals, never as a cdf.
struct ModifiedEstimate {
    std::vector<double> points;
    std::vector<double> weights;
    int n = 0;
};

LBEstimate lynden_bell(const SortedSample& sample);

ModifiedEstimate modified_weights(const SortedSample& sample);

// Survival-like product of the modified estimator over points strictly below
// x. Defined for tie-free samples only (throws estimator.TiesPresent); used to
// cross-check the modified weights against their integral form.
double modified_survival(const SortedSample& sample, double x);

// Plug-in cumulative hazard: sum of mass/risk ratios over points <= x.
double cumulative_hazard(const SortedSample& sample, double x);

HoleReport detect_holes(const SortedSample& sample);

}  // namespace truncstat

#endif
