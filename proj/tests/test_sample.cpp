#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include <doctest.h>

#include "truncstat/error.hpp"
#include "truncstat/estimator.hpp"
#include "truncstat/inference.hpp"
#include "truncstat/pseudo.hpp"
#include "truncstat/sample.hpp"
#include "test_helpers.hpp"

using namespace truncstat;

namespace {

const std::vector<std::pair<double, double>> kMicro = {{1, 0.5}, {2, 0.4}, {3, 2.5}};

std::string code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.module() + "." + e.code();
    }
    return "";
}

}  // namespace

TEST_CASE("validate_and_sort orders and collapses ties") {
    const SortedSample s = validate_and_sort(kMicro);
    CHECK(s.m() == 3);
    CHECK(s.distinct_x == std::vector<double>{1, 2, 3});
    CHECK(s.mult == std::vector<int>{1, 1, 1});

    const SortedSample tied = validate_and_sort({{2, 1}, {2, 0}, {5, 2}});
    CHECK(tied.m() == 2);
    CHECK(tied.distinct_x == std::vector<double>{2, 5});
    CHECK(tied.mult == std::vector<int>{2, 1});
    CHECK(tied.rows[0] == std::vector<int>{0, 1});  // tie group keeps row order
}

TEST_CASE("validate_and_sort error taxonomy") {
    CHECK(code_of([] { validate_and_sort(std::vector<std::pair<double, double>>{}); }) ==
          "sample_model.EmptySample");
    CHECK(code_of([] { validate_and_sort({{1, 2}}); }) == "sample_model.TruncationViolated");
    CHECK(code_of([] { validate_and_sort({{std::nan(""), 0}}); }) == "sample_model.NonFinite");
    // all offending rows are listed
    try {
        validate_and_sort({{1, 2}, {3, 1}, {2, 5}});
        CHECK(false);
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("0,2") != std::string::npos);
    }
}

TEST_CASE("validate_and_sort is a bijection on rows") {
    RandomStream rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        const auto pairs = testing::random_discrete_pairs(rng, 1 + trial % 17);
        const auto s = validate_and_sort(pairs);
        CHECK(reconstruct(s).pairs == pairs);  // row order preserved

        // every original row appears exactly once across the tie groups
        std::vector<int> seen(pairs.size(), 0);
        for (const auto& group : s.rows) {
            for (int r : group) seen[r] += 1;
        }
        CHECK(std::count(seen.begin(), seen.end(), 1) == static_cast<long>(pairs.size()));
    }
}

TEST_CASE("risk counts and observed cdf") {
    const SortedSample s = validate_and_sort(kMicro);
    CHECK(risk_fraction(s, 1.0) == doctest::Approx(2.0 / 3).epsilon(1e-15));
    CHECK(risk_fraction(s, 1.5) == doctest::Approx(1.0 / 3).epsilon(1e-15));
    CHECK(risk_fraction(s, 0.2) == 0.0);  // below every truncator

    CHECK(observed_cdf(s, 2.0) == doctest::Approx(2.0 / 3).epsilon(1e-15));
    CHECK(observed_cdf(s, 0.5) == 0.0);
    const SortedSample tied = validate_and_sort({{2, 1}, {2, 0}, {5, 2}});
    CHECK(observed_mass(tied, 2.0) == doctest::Approx(2.0 / 3).epsilon(1e-15));
    CHECK(observed_mass(tied, 3.0) == 0.0);
}

TEST_CASE("pseudo sample with identity oracle keeps uniform data unchanged") {
    const auto pairs = std::vector<std::pair<double, double>>{{0.4, 0.1}, {0.7, 0.3}, {0.9, 0.6}};
    const SortedSample s = validate_and_sort(pairs);
    RandomStream rng(1);
    const PseudoSample p = build_pseudo_sample(s, identity_oracle(), rng);
    for (int i = 0; i < 3; ++i) {
        CHECK(p.x_uniform[i] == pairs[i].first);
        CHECK(p.y_uniform[i] == pairs[i].second);
    }
}

TEST_CASE("tied atoms map strictly inside their jump interval") {
    // two observations at an atom whose jump interval is (0.2, 0.6]
    std::map<double, std::pair<double, double>> jumps = {{1.0, {0.0, 0.2}}, {2.0, {0.2, 0.6}},
                                                         {3.0, {0.6, 1.0}}};
    CdfOracle oracle;
    oracle.cdf = [jumps](double x) {
        double v = 0.0;
        for (const auto& [atom, iv] : jumps) {
            if (x >= atom) v = iv.second;
        }
        return v;
    };
    oracle.left = [jumps](double x) {
        double v = 0.0;
        for (const auto& [atom, iv] : jumps) {
            if (x > atom) v = iv.second;
            else if (x == atom) v = iv.first;
        }
        return v;
    };

    const SortedSample s = validate_and_sort({{2, 0}, {2, 1}, {1, 0}, {3, 1}});
    for (const TiePlacement placement : {TiePlacement::random, TiePlacement::evenly_spaced}) {
        RandomStream rng(7);
        const PseudoSample p = build_pseudo_sample(s, oracle, rng, placement);
        CHECK(p.x_uniform[0] > 0.2);
        CHECK(p.x_uniform[0] < 0.6);
        CHECK(p.x_uniform[1] > 0.2);
        CHECK(p.x_uniform[1] < 0.6);
        CHECK(p.x_uniform[0] != p.x_uniform[1]);
        CHECK(p.x_uniform[0] < p.x_uniform[1]);  // tie group ordered by row index

        // successive tied values decrement the pseudo risk count by exactly one
        const SortedSample ps = validate_and_sort(p.as_pairs());
        const int first = risk_count(ps, p.x_uniform[0]);
        const int second = risk_count(ps, p.x_uniform[1]);
        CHECK(first == risk_count(s, 2.0));
        CHECK(second == first - 1);
    }
}

TEST_CASE("pseudo sample rejects a zero-width atom carrying ties") {
    CdfOracle flat;  // cdf constant across the tied atom
    flat.cdf = [](double x) { return x >= 1.0 ? 1.0 : 0.5; };
    flat.left = [](double x) { return x >= 1.0 ? 1.0 : 0.5; };
    const SortedSample s = validate_and_sort({{0.5, 0}, {0.5, 0}});
    RandomStream rng(3);
    CHECK_THROWS_WITH_AS(build_pseudo_sample(s, flat, rng),
                         doctest::Contains("zero-width jump interval"), Error);
}

TEST_CASE("pseudo-sample integrals reproduce the product-limit integrals") {
    // discrete observed-lifetime law with atoms of mass 1/2 at 1 and 2
    const SortedSample s = validate_and_sort({{1, 0}, {1, 0}, {2, 0}});
    RandomStream rng(11);
    const PseudoSample p = build_pseudo_sample(s, empirical_oracle(s), rng);
    const SortedSample ps = validate_and_sort(p.as_pairs());

    // hand values: weights (2/3, 1/3) at points (1, 2)
    const LBEstimate direct = lynden_bell(s);
    CHECK(direct.weights[0] == doctest::Approx(2.0 / 3).epsilon(1e-13));
    const double direct_integral = lb_integral(direct, ScoreFunction::identity());
    CHECK(direct_integral == doctest::Approx(4.0 / 3).epsilon(1e-13));

    std::map<double, double> table;
    for (int i = 0; i < s.n(); ++i) table[p.x_uniform[i]] = s.x_values[i];
    const double pseudo_integral =
        lb_integral(lynden_bell(ps), ScoreFunction::tabulated(table));
    CHECK(pseudo_integral == doctest::Approx(direct_integral).epsilon(1e-12));
}

TEST_CASE("tie reduction identities hold on random discrete samples") {
    RandomStream rng(2025);
    for (int trial = 0; trial < 40; ++trial) {
        const auto pairs = testing::random_discrete_pairs(rng, 2 + trial % 14);
        const SortedSample s = validate_and_sort(pairs);
        const PseudoSample p = build_pseudo_sample(s, empirical_oracle(s), rng);
        const SortedSample ps = validate_and_sort(p.as_pairs());
        const LBEstimate est = lynden_bell(s);
        const LBEstimate pest = lynden_bell(ps);
        const StepFunction pseudo_cdf = pest.cdf_function();

        for (int k = 0; k < s.m(); ++k) {
            const int c_orig = risk_count(s, s.distinct_x[k]);
            const double rhs_prev_cdf = k == 0 ? 0.0 : est.cdf[k - 1];
            for (int j = 0; j < s.mult[k]; ++j) {
                const double u = p.x_uniform[s.rows[k][j]];
                const int c_pseudo = risk_count(ps, u);
                if (j == 0) CHECK(c_pseudo == c_orig);  // group entry matches
                // each tied value: (1 - F(u-)) / count equals (1 - F(prev)) / count
                const double lhs = (1.0 - pseudo_cdf.left_limit(u)) / c_pseudo;
                const double rhs = (1.0 - rhs_prev_cdf) / c_orig;
                CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
            }
        }
        // the pseudo product-limit cdf agrees with the direct one at the atoms
        for (int k = 0; k < s.m(); ++k) {
            const double u_last = p.x_uniform[s.rows[k][s.mult[k] - 1]];
            CHECK(pseudo_cdf(u_last) == doctest::Approx(est.cdf[k]).epsilon(1e-12));
        }
    }
}
