#ifndef TRUNCSTAT_SIMULATION_HPP
#define TRUNCSTAT_SIMULATION_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "truncstat/model.hpp"
#include "truncstat/sample.hpp"
#include "truncstat/score.hpp"

namespace truncstat {

struct DrawStats {
    std::uint64_t attempts = 0;  // candidate pairs drawn, accepted ones included
};

// One aggregate cell of a Monte Carlo study. Fields not meaningful for a
// given study kind stay NaN and are omitted from its CSV rendering.
struct StudyRow {
    std::size_t n = 0;
    std::string estimator;  // "lynden-bell", "modified", or "-"
    std::size_t replications = 0;
    std::uint64_t seed = 0;

    double mse = 0.0;
    double bias = 0.0;
    double variance = 0.0;
    double mc_se = 0.0;  // Monte Carlo standard error of the headline statistic

    double level = 0.0;
    double coverage = 0.0;

    double median_abs_remainder = 0.0;
    double q90_abs_remainder = 0.0;
};

struct StudyReport {
    std::string study;  // "mse", "coverage", "remainder"
    std::string model;
    std::string phi;
    std::vector<StudyRow> rows;
};

// n i.i.d. observed pairs from the conditional law of (X, Y) given Y <= X,
// via rejection sampling; bit-identical for a fixed seed. Throws
// simulation.RejectionBudgetExceeded if a single pair needs more than
// 1000/alpha attempts.
TruncatedSample draw_observed_sample(const TruncationModel& model, std::size_t n,
                                     std::uint64_t seed, DrawStats* stats = nullptr);

// Monte Carlo comparison of the product-limit and modified integrals against
// the true value; one pair of rows per requested sample size. Replications
// run in parallel (threads = 0 picks TRUNCSTAT_THREADS or the hardware
// count); reports are bit-identical at any parallelism level.
StudyReport mse_study(const TruncationModel& model, const ScoreFunction& phi,
                      const std::vector<std::size_t>& n_list, std::size_t reps,
                      std::uint64_t seed, int threads = 0);

// Fraction of replications whose plug-in confidence interval covers the true
// integral.
StudyReport coverage_study(const TruncationModel& model, const ScoreFunction& phi, std::size_t n,
                           std::size_t reps, double level, std::uint64_t seed, int threads = 0);

// Median and 0.9 quantile of the absolute representation remainder per
// sample size.
StudyReport remainder_decay_study(const TruncationModel& model, const ScoreFunction& phi,
                                  const std::vector<std::size_t>& n_list, std::size_t reps,
                                  std::uint64_t seed, int threads = 0);

// effective worker count: explicit request, else TRUNCSTAT_THREADS, else
// hardware concurrency
int resolve_threads(int requested);

}  // namespace truncstat

#endif
