#include <cmath>
#include <vector>

#include <doctest.h>

#include "truncstat/error.hpp"
#include "truncstat/estimator.hpp"
#include "truncstat/sample.hpp"
#include "truncstat/step_function.hpp"
#include "test_helpers.hpp"

using namespace truncstat;

namespace {

const std::vector<std::pair<double, double>> kMicro = {{1, 0.5}, {2, 0.4}, {3, 2.5}};

}  // namespace

TEST_CASE("step function evaluation and left limits") {
    const StepFunction f({1.0, 2.0, 3.0}, {0.5, 1.0, 1.0}, 0.0);
    CHECK(f(0.9) == 0.0);
    CHECK(f(1.0) == 0.5);
    CHECK(f(1.5) == 0.5);
    CHECK(f(2.0) == 1.0);
    CHECK(f(9.0) == 1.0);
    CHECK(f.left_limit(1.0) == 0.0);
    CHECK(f.left_limit(2.0) == 0.5);
    CHECK(f.left_limit(2.5) == 1.0);
    CHECK_THROWS_AS(StepFunction({2.0, 1.0}, {0.1, 0.2}), Error);
}

TEST_CASE("product-limit weights on the micro sample") {
    const LBEstimate est = lynden_bell(validate_and_sort(kMicro));
    REQUIRE(est.points == std::vector<double>{1, 2, 3});
    CHECK(est.weights[0] == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(est.weights[1] == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(est.weights[2] == 0.0);
    CHECK(est.cdf[0] == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(est.cdf[1] == 1.0);
    CHECK(est.cdf[2] == 1.0);
}

TEST_CASE("product-limit telescopes to the ecdf when truncation does not bite") {
    const LBEstimate est = lynden_bell(validate_and_sort({{1, 0.5}, {2, 0.4}, {3, 0.1}}));
    for (int i = 0; i < 3; ++i) {
        CHECK(est.weights[i] == doctest::Approx(1.0 / 3).epsilon(1e-13));
        CHECK(est.cdf[i] == doctest::Approx((i + 1) / 3.0).epsilon(1e-13));
    }

    RandomStream rng(17);
    for (int trial = 0; trial < 30; ++trial) {
        auto pairs = testing::random_discrete_pairs(rng, 2 + trial % 12);
        for (auto& p : pairs) p.second = 0.0;  // every truncator below every lifetime
        const SortedSample s = validate_and_sort(pairs);
        const LBEstimate est2 = lynden_bell(s);
        double cum = 0.0;
        for (int k = 0; k < s.m(); ++k) {
            cum += static_cast<double>(s.mult[k]) / s.n();
            CHECK(est2.cdf[k] == doctest::Approx(cum).epsilon(1e-12));
        }
        // cumulative hazard reduces to the classical sum over order statistics
        double expected = 0.0;
        int remaining = s.n();
        for (int k = 0; k < s.m(); ++k) {
            expected += static_cast<double>(s.mult[k]) / remaining;
            remaining -= s.mult[k];
            CHECK(est2.hazard[k] == doctest::Approx(expected).epsilon(1e-12));
        }
    }
}

TEST_CASE("self-consistency of the weights") {
    RandomStream rng(99);
    for (int trial = 0; trial < 40; ++trial) {
        const SortedSample s =
            validate_and_sort(testing::random_discrete_pairs(rng, 1 + trial % 15));
        const LBEstimate est = lynden_bell(s);
        for (int k = 0; k < s.m(); ++k) {
            const double prev_cdf = k == 0 ? 0.0 : est.cdf[k - 1];
            const double expected = (1.0 - prev_cdf) * observed_mass(s, s.distinct_x[k]) /
                                    risk_fraction(s, s.distinct_x[k]);
            CHECK(est.weights[k] == doctest::Approx(expected).epsilon(1e-12));
        }
        // mass accounting
        double total = 0.0;
        for (double w : est.weights) {
            CHECK(w >= 0.0);
            total += w;
        }
        CHECK(total <= 1.0 + 1e-12);
        CHECK(est.cdf.back() == doctest::Approx(total).epsilon(1e-12));
    }
}

TEST_CASE("tie-free product forms agree") {
    RandomStream rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        const SortedSample s =
            validate_and_sort(testing::random_continuous_pairs(rng, 2 + trial % 20));
        REQUIRE(s.m() == s.n());
        const LBEstimate est = lynden_bell(s);
        const auto reference = testing::tie_free_product_cdf(s);
        for (int k = 0; k < s.m(); ++k) {
            CHECK(est.cdf[k] == doctest::Approx(reference[k]).epsilon(1e-12));
        }
    }
}

TEST_CASE("modified weights on the micro sample") {
    const ModifiedEstimate mod = modified_weights(validate_and_sort(kMicro));
    CHECK(mod.weights[0] == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(mod.weights[1] == doctest::Approx(2.0 / 3).epsilon(1e-13));
    CHECK(mod.weights[2] == doctest::Approx(1.0 / 3).epsilon(1e-13));
}

TEST_CASE("modified weights without truncation bite") {
    // tie-free, truncators below everything: risk counts are n-i+1 and the
    // prefix factors become (n-j+1)/(n-j+2)
    const int n = 7;
    std::vector<std::pair<double, double>> pairs;
    for (int i = 0; i < n; ++i) pairs.emplace_back(1.0 + i, 0.0);
    const ModifiedEstimate mod = modified_weights(validate_and_sort(pairs));
    for (int i = 1; i <= n; ++i) {
        double expected = 1.0 / (n - i + 1);
        for (int j = 1; j < i; ++j) {
            expected *= static_cast<double>(n - j + 1) / (n - j + 2);
        }
        CHECK(mod.weights[i - 1] > 0.0);
        CHECK(mod.weights[i - 1] == doctest::Approx(expected).epsilon(1e-12));
    }

    const ModifiedEstimate single = modified_weights(validate_and_sort({{2.5, 1.0}}));
    CHECK(single.weights == std::vector<double>{1.0});
}

TEST_CASE("modified survival product") {
    const SortedSample s = validate_and_sort(kMicro);
    CHECK(modified_survival(s, 0.5) == 1.0);  // empty product
    CHECK(modified_survival(s, 1.0) == 1.0);  // strictly-below convention
    CHECK(modified_survival(s, 2.0) == doctest::Approx(2.0 / 3).epsilon(1e-13));
    CHECK(modified_survival(s, 3.0) == doctest::Approx(1.0 / 3).epsilon(1e-13));

    const SortedSample tied = validate_and_sort({{2, 1}, {2, 0}, {5, 2}});
    CHECK_THROWS_AS(modified_survival(tied, 3.0), Error);
}

TEST_CASE("cumulative hazard") {
    const SortedSample s = validate_and_sort(kMicro);
    CHECK(cumulative_hazard(s, 0.5) == 0.0);
    CHECK(cumulative_hazard(s, 1.0) == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(cumulative_hazard(s, 3.0) == doctest::Approx(2.5).epsilon(1e-13));
}

TEST_CASE("hole detection") {
    const HoleReport micro = detect_holes(validate_and_sort(kMicro));
    CHECK(micro.inner_hole_indices == std::vector<int>{2});
    CHECK(micro.first_inner_hole == 2);
    CHECK(micro.zeroed_mass_points == std::vector<int>{3});

    const HoleReport none = detect_holes(validate_and_sort({{1, 0.5}, {2, 0.4}, {3, 0.1}}));
    CHECK(none.inner_hole_indices.empty());
    CHECK(none.first_inner_hole == 0);

    const HoleReport single = detect_holes(validate_and_sort({{1, 0.5}}));
    CHECK(single.inner_hole_indices.empty());
}

TEST_CASE("mass right of the first inner hole is zero") {
    RandomStream rng(123);
    int holes_seen = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const SortedSample s =
            validate_and_sort(testing::random_discrete_pairs(rng, 2 + trial % 10, 9));
        const LBEstimate est = lynden_bell(s);
        if (est.holes.first_inner_hole == 0) continue;
        ++holes_seen;
        for (int j = est.holes.first_inner_hole; j < s.m(); ++j) {
            CHECK(est.weights[j] == 0.0);
        }
        CHECK(est.cdf[est.holes.first_inner_hole - 1] == 1.0);
    }
    CHECK(holes_seen > 0);  // the generator must actually exercise holes
}

TEST_CASE("adding an observation never decreases risk counts") {
    RandomStream rng(77);
    for (int trial = 0; trial < 30; ++trial) {
        auto pairs = testing::random_discrete_pairs(rng, 2 + trial % 10);
        const SortedSample before = validate_and_sort(pairs);
        auto extra = testing::random_discrete_pairs(rng, 1);
        pairs.push_back(extra.front());
        const SortedSample after = validate_and_sort(pairs);
        for (double z : before.distinct_x) {
            CHECK(risk_count(after, z) >= risk_count(before, z));
        }
    }
}

TEST_CASE("left support warning flag") {
    CHECK_FALSE(lynden_bell(validate_and_sort(kMicro)).left_support_warning);
    // every truncator at or above the smallest lifetime
    CHECK(lynden_bell(validate_and_sort({{1, 1}, {2, 1.5}})).left_support_warning);
}
