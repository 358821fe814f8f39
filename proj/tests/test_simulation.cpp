#include <cmath>

#include <doctest.h>

#include "truncstat/error.hpp"
#include "truncstat/report.hpp"
#include "truncstat/sample.hpp"
#include "truncstat/simulation.hpp"

using namespace truncstat;

TEST_CASE("observed-sample draws respect the truncation rule and the seed") {
    const TruncationModel model = make_model("exp-exp");
    const TruncatedSample a = draw_observed_sample(model, 200, 42);
    const TruncatedSample b = draw_observed_sample(model, 200, 42);
    CHECK(a.pairs == b.pairs);  // bit-identical for a fixed seed
    for (const auto& [x, y] : a.pairs) {
        CHECK(y <= x);
        CHECK(x >= 0.0);
    }
    const TruncatedSample c = draw_observed_sample(model, 200, 43);
    CHECK(a.pairs != c.pairs);
}

TEST_CASE("acceptance rate approaches the observation probability") {
    const TruncationModel model = make_model("exp-exp");
    DrawStats stats;
    const std::size_t n = 20000;
    draw_observed_sample(model, n, 7, &stats);
    const double rate = static_cast<double>(n) / static_cast<double>(stats.attempts);
    const double se = std::sqrt(model.alpha * (1.0 - model.alpha) /
                                static_cast<double>(stats.attempts));
    CHECK(std::abs(rate - model.alpha) <= 3.0 * se + 1e-3);

    // no truncation: every candidate pair is accepted
    DrawStats nt_stats;
    draw_observed_sample(make_model("no-trunc:exp,1"), 500, 7, &nt_stats);
    CHECK(nt_stats.attempts == 500);
}

TEST_CASE("sampled lifetimes follow the observed-lifetime law") {
    // KS distance against the model's observed cdf, 1% critical value
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL, 4ULL, 5ULL}) {
        const TruncationModel model = make_model("exp-exp");
        const std::size_t n = 10000;
        const SortedSample s = validate_and_sort(draw_observed_sample(model, n, seed));
        double ks = 0.0;
        for (int i = 0; i < s.n(); ++i) {
            const double fx = model.observed_cdf(s.sorted_x[i]);
            ks = std::max(ks, std::abs((i + 1.0) / n - fx));
            ks = std::max(ks, std::abs(fx - static_cast<double>(i) / n));
        }
        CHECK(ks < 1.63 / std::sqrt(static_cast<double>(n)));
    }
}

TEST_CASE("mse study matches the classical rate without truncation") {
    const TruncationModel model = make_model("no-trunc:uniform,1,2");
    const StudyReport report =
        mse_study(model, ScoreFunction::identity(), {50}, 4000, 11, 2);
    REQUIRE(report.rows.size() == 2);
    const StudyRow& lb = report.rows[0];
    CHECK(lb.estimator == "lynden-bell");
    // integral = sample mean, so MSE should be Var(X)/n = 1/(12*50)
    CHECK(std::abs(lb.mse - 1.0 / 600) <= 1.5e-4);
    CHECK(std::abs(lb.bias) <= 3e-3);
    CHECK(lb.mse == doctest::Approx(lb.bias * lb.bias + lb.variance).epsilon(1e-12));
}

TEST_CASE("study reports are identical at any parallelism level") {
    const TruncationModel model = make_model("exp-exp");
    const ScoreFunction id = ScoreFunction::identity();

    const StudyReport serial = mse_study(model, id, {10, 25}, 400, 3, 1);
    const StudyReport parallel = mse_study(model, id, {10, 25}, 400, 3, 7);
    REQUIRE(serial.rows.size() == parallel.rows.size());
    for (std::size_t i = 0; i < serial.rows.size(); ++i) {
        CHECK(serial.rows[i].mse == parallel.rows[i].mse);        // bit-exact
        CHECK(serial.rows[i].bias == parallel.rows[i].bias);
        CHECK(serial.rows[i].variance == parallel.rows[i].variance);
        CHECK(serial.rows[i].mc_se == parallel.rows[i].mc_se);
    }
    CHECK(render_study_csv(serial) == render_study_csv(parallel));

    const TruncationModel uu = make_model("uniform:1,2,0,2");
    const StudyReport cov1 = coverage_study(uu, id, 60, 200, 0.9, 5, 1);
    const StudyReport cov4 = coverage_study(uu, id, 60, 200, 0.9, 5, 4);
    CHECK(cov1.rows[0].coverage == cov4.rows[0].coverage);

    const StudyReport rem1 = remainder_decay_study(uu, id, {40, 80}, 60, 9, 1);
    const StudyReport rem4 = remainder_decay_study(uu, id, {40, 80}, 60, 9, 4);
    CHECK(rem1.rows[0].median_abs_remainder == rem4.rows[0].median_abs_remainder);
    CHECK(rem1.rows[1].q90_abs_remainder == rem4.rows[1].q90_abs_remainder);
}

TEST_CASE("coverage is roughly calibrated at the 50 percent level") {
    const TruncationModel model = make_model("no-trunc:uniform,1,2");
    const StudyReport report = coverage_study(model, ScoreFunction::identity(), 200, 400, 0.5, 2);
    const double se = std::sqrt(0.5 * 0.5 / 400.0);
    CHECK(std::abs(report.rows[0].coverage - 0.5) <= 3.0 * se);
}

TEST_CASE("remainder study is deterministic for one replication") {
    const TruncationModel model = make_model("uniform:1,2,0,2");
    const StudyReport a = remainder_decay_study(model, ScoreFunction::identity(), {30}, 1, 4);
    const StudyReport b = remainder_decay_study(model, ScoreFunction::identity(), {30}, 1, 4);
    CHECK(a.rows[0].median_abs_remainder == b.rows[0].median_abs_remainder);
    CHECK(a.rows[0].median_abs_remainder == a.rows[0].q90_abs_remainder);  // single draw
}

TEST_CASE("study parameter validation") {
    const TruncationModel model = make_model("exp-exp");
    CHECK_THROWS_AS(draw_observed_sample(model, 0, 1), Error);
    CHECK_THROWS_AS(mse_study(model, ScoreFunction::identity(), {10}, 0, 1), Error);
}
