#include "truncstat/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <thread>

#include "truncstat/error.hpp"
#include "truncstat/estimator.hpp"
#include "truncstat/inference.hpp"
#include "truncstat/random.hpp"

namespace truncstat {

namespace {

// Runs body(r) for r in [0, count) on contiguous chunks. Each index owns its
// seed, so the results are identical at any worker count; aggregation happens
// afterwards in index order.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body) {
    const int workers = std::max(1, std::min<int>(threads, static_cast<int>(count)));
    if (workers == 1) {
        for (std::size_t r = 0; r < count; ++r) body(r);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::exception_ptr first_error;
    std::mutex error_mutex;
    const std::size_t chunk = (count + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(count, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi]() {
            try {
                for (std::size_t r = lo; r < hi; ++r) body(r);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

// median / quantile with a fixed deterministic convention
double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t k = v.size() / 2;
    if (v.size() % 2 == 1) return v[k];
    return 0.5 * (v[k - 1] + v[k]);
}

double quantile_of(std::vector<double> v, double q) {
    std::sort(v.begin(), v.end());
    const auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(v.size())));
    return v[std::min(v.size() - 1, std::max<std::size_t>(rank, 1) - 1)];
}

StudyRow error_summary(std::size_t n, const std::string& estimator,
                       const std::vector<double>& estimates, double truth, std::uint64_t seed) {
    StudyRow row;
    row.n = n;
    row.estimator = estimator;
    row.replications = estimates.size();
    row.seed = seed;
    const double mean = mean_of(estimates);
    row.bias = mean - truth;
    double mse = 0.0, var = 0.0;
    for (double t : estimates) {
        mse += (t - truth) * (t - truth);
        var += (t - mean) * (t - mean);
    }
    mse /= static_cast<double>(estimates.size());
    var /= static_cast<double>(estimates.size());
    row.mse = mse;
    row.variance = var;
    double spread = 0.0;
    for (double t : estimates) {
        const double sq = (t - truth) * (t - truth);
        spread += (sq - mse) * (sq - mse);
    }
    row.mc_se = std::sqrt(spread / static_cast<double>(estimates.size())) /
                std::sqrt(static_cast<double>(estimates.size()));
    return row;
}

}  // namespace

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("TRUNCSTAT_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

TruncatedSample draw_observed_sample(const TruncationModel& model, std::size_t n,
                                     std::uint64_t seed, DrawStats* stats) {
    if (n < 1) {
        throw Error("simulation", "InvalidParameters", "sample size must be at least 1");
    }
    if (!(model.alpha > 0.0)) {
        throw Error("simulation", "InvalidParameters", "observation probability is zero");
    }
    const auto budget = static_cast<std::uint64_t>(std::ceil(1000.0 / model.alpha));
    RandomStream rng(seed);
    TruncatedSample out;
    out.pairs.reserve(n);
    std::uint64_t attempts_total = 0;
    for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t attempts = 0;
        for (;;) {
            if (++attempts > budget) {
                throw Error("simulation", "RejectionBudgetExceeded",
                            "no acceptance within " + std::to_string(budget) + " attempts");
            }
            const double x = model.draw_x(rng);
            const double y = model.draw_y(rng);
            if (y <= x) {
                out.pairs.emplace_back(x, y);
                break;
            }
        }
        attempts_total += attempts;
    }
    if (stats) stats->attempts = attempts_total;
    return out;
}

StudyReport mse_study(const TruncationModel& model, const ScoreFunction& phi,
                      const std::vector<std::size_t>& n_list, std::size_t reps,
                      std::uint64_t seed, int threads) {
    if (reps < 1) {
        throw Error("simulation", "InvalidParameters", "need at least one replication");
    }
    const int workers = resolve_threads(threads);
    const double truth = model.mean_score(phi);

    StudyReport report;
    report.study = "mse";
    report.model = model.name;
    report.phi = phi.describe();
    for (const std::size_t n : n_list) {
        const std::uint64_t cell = cell_seed(seed, n);
        std::vector<double> t_lb(reps);
        std::vector<double> t_mod(reps);
        parallel_for(reps, workers, [&](std::size_t r) {
            const auto sample = validate_and_sort(
                draw_observed_sample(model, n, replication_seed(cell, r)));
            t_lb[r] = lb_integral(lynden_bell(sample), phi);
            t_mod[r] = modified_integral(modified_weights(sample), phi);
        });
        report.rows.push_back(error_summary(n, "lynden-bell", t_lb, truth, seed));
        report.rows.push_back(error_summary(n, "modified", t_mod, truth, seed));
    }
    return report;
}

StudyReport coverage_study(const TruncationModel& model, const ScoreFunction& phi, std::size_t n,
                           std::size_t reps, double level, std::uint64_t seed, int threads) {
    if (reps < 1) {
        throw Error("simulation", "InvalidParameters", "need at least one replication");
    }
    const int workers = resolve_threads(threads);
    const double truth = model.mean_score(phi);
    const std::uint64_t cell = cell_seed(seed, n);

    std::vector<char> covered(reps, 0);
    parallel_for(reps, workers, [&](std::size_t r) {
        const auto sample =
            validate_and_sort(draw_observed_sample(model, n, replication_seed(cell, r)));
        const InferenceResult ci = confidence_interval(sample, phi, level);
        covered[r] = (ci.lo <= truth && truth <= ci.hi) ? 1 : 0;
    });

    std::size_t hits = 0;
    for (char c : covered) hits += c;
    StudyRow row;
    row.n = n;
    row.estimator = "lynden-bell";
    row.replications = reps;
    row.seed = seed;
    row.level = level;
    row.coverage = static_cast<double>(hits) / static_cast<double>(reps);
    row.mc_se = std::sqrt(row.coverage * (1.0 - row.coverage) / static_cast<double>(reps));

    StudyReport report;
    report.study = "coverage";
    report.model = model.name;
    report.phi = phi.describe();
    report.rows.push_back(row);
    return report;
}

StudyReport remainder_decay_study(const TruncationModel& model, const ScoreFunction& phi,
                                  const std::vector<std::size_t>& n_list, std::size_t reps,
                                  std::uint64_t seed, int threads) {
    if (reps < 1) {
        throw Error("simulation", "InvalidParameters", "need at least one replication");
    }
    const int workers = resolve_threads(threads);

    StudyReport report;
    report.study = "remainder";
    report.model = model.name;
    report.phi = phi.describe();
    for (const std::size_t n : n_list) {
        const std::uint64_t cell = cell_seed(seed, n);
        std::vector<double> abs_rem(reps);
        parallel_for(reps, workers, [&](std::size_t r) {
            const auto sample =
                validate_and_sort(draw_observed_sample(model, n, replication_seed(cell, r)));
            abs_rem[r] = std::abs(representation_terms(sample, model, phi).remainder);
        });
        StudyRow row;
        row.n = n;
        row.estimator = "-";
        row.replications = reps;
        row.seed = seed;
        row.median_abs_remainder = median_of(abs_rem);
        row.q90_abs_remainder = quantile_of(abs_rem, 0.9);
        report.rows.push_back(row);
    }
    return report;
}

}  // namespace truncstat
