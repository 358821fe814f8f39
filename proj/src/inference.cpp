#include "truncstat/inference.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "truncstat/error.hpp"

namespace truncstat {

double lb_integral(const LBEstimate& est, const ScoreFunction& phi) {
    double sum = 0.0;
    for (std::size_t i = 0; i < est.points.size(); ++i) {
        sum += est.weights[i] * phi(est.points[i]);
    }
    return sum;
}

double modified_integral(const ModifiedEstimate& est, const ScoreFunction& phi) {
    double sum = 0.0;
    for (std::size_t i = 0; i < est.points.size(); ++i) {
        sum += est.weights[i] * phi(est.points[i]);
    }
    return sum;
}

double influence_plugin(const LBEstimate& est, const ScoreFunction& phi, double y) {
    const double phi_y = phi(y);
    double sum = 0.0;
    for (std::size_t i = 0; i < est.points.size(); ++i) {
        if (est.points[i] > y) {
            sum += est.weights[i] * (phi_y - phi(est.points[i]));
        }
    }
    return sum;
}

double influence_model(const TruncationModel& model, const ScoreFunction& phi, double y) {
    return model.influence(phi, y);
}

double plugin_variance(const SortedSample& sample, const ScoreFunction& phi) {
    const int n = sample.n();
    if (n < 2) {
        throw Error("inference", "DegenerateSample", "need at least two observations");
    }
    const int m = sample.m();
    const LBEstimate est = lynden_bell(sample);

    // phi and estimated influence at the distinct points, via suffix sums
    std::vector<double> phi_at(m);
    for (int k = 0; k < m; ++k) phi_at[k] = phi(est.points[k]);
    std::vector<double> infl(m);
    double tail_w = 0.0, tail_wphi = 0.0;
    for (int k = m - 1; k >= 0; --k) {
        infl[k] = phi_at[k] * tail_w - tail_wphi;
        tail_w += est.weights[k];
        tail_wphi += est.weights[k] * phi_at[k];
    }

    // prefix sums of multiplicity * influence / risk_fraction^2 over distinct points
    std::vector<double> risk_frac(m);
    std::vector<double> prefix(m + 1, 0.0);
    for (int k = 0; k < m; ++k) {
        risk_frac[k] = risk_fraction(sample, sample.distinct_x[k]);
        prefix[k + 1] = prefix[k] + sample.mult[k] * infl[k] / (risk_frac[k] * risk_frac[k]);
    }
    const auto prefix_upto = [&](double z) {
        const auto le = std::upper_bound(sample.distinct_x.begin(), sample.distinct_x.end(), z) -
                        sample.distinct_x.begin();
        return prefix[le];
    };

    // per-observation summand: influence/risk at the lifetime, minus the mean
    // of influence/risk^2 over observed lifetimes inside (y_i, x_i]
    std::vector<double> eta(n);
    for (int i = 0; i < n; ++i) {
        const double x = sample.x_values[i];
        const auto k = std::lower_bound(sample.distinct_x.begin(), sample.distinct_x.end(), x) -
                       sample.distinct_x.begin();
        const double inner = (prefix_upto(x) - prefix_upto(sample.y_values[i])) / n;
        eta[i] = infl[k] / risk_frac[k] - inner;
    }

    double mean = 0.0;
    for (double e : eta) mean += e;
    mean /= n;
    double var = 0.0;
    for (double e : eta) var += (e - mean) * (e - mean);
    return var / n;
}

InferenceResult interval_from(double estimate, double sigma2, int n, double level) {
    if (!(level > 0.0 && level < 1.0)) {
        throw Error("inference", "InvalidLevel", "confidence level must be inside (0, 1)");
    }
    InferenceResult r;
    r.estimate = estimate;
    r.sigma2 = sigma2;
    r.level = level;
    r.n = n;
    const double hw = normal_quantile(0.5 * (1.0 + level)) * std::sqrt(sigma2 / n);
    r.lo = estimate - hw;
    r.hi = estimate + hw;
    return r;
}

InferenceResult confidence_interval(const SortedSample& sample, const ScoreFunction& phi,
                                    double level) {
    const double estimate = lb_integral(lynden_bell(sample), phi);
    return interval_from(estimate, plugin_variance(sample, phi), sample.n(), level);
}

RepresentationTerms representation_terms(const SortedSample& sample, const TruncationModel& model,
                                         const ScoreFunction& phi) {
    const int n = sample.n();
    const double f_lo = model.f_lower();
    const double f_hi = model.f_upper();
    for (int i = 0; i < n; ++i) {
        const double x = sample.x_values[i];
        if (x < f_lo || x > f_hi || !(model.risk(x) > 0.0)) {
            std::ostringstream os;
            os.precision(17);
            os << "lifetime " << x << " outside the model support";
            throw Error("inference", "ModelSampleMismatch", os.str());
        }
    }

    RepresentationTerms terms;
    const LBEstimate est = lynden_bell(sample);
    const double truth = model.mean_score(phi);
    const double sqrt_n = std::sqrt(static_cast<double>(n));
    terms.scaled_error = sqrt_n * (lb_integral(est, phi) - truth);

    const double j_full = model.influence_over_risk_integral(phi);

    // marginal term: mean of influence/risk over the sample minus its model mean
    double mean_ratio = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = sample.x_values[i];
        mean_ratio += model.influence(phi, x) / model.risk(x);
    }
    mean_ratio /= n;
    terms.marginal_term = mean_ratio - j_full;

    // risk term: the empirical risk function is piecewise constant between
    // the pooled sample values, so integrate influence/risk^2 piece by piece
    const double x_max = sample.sorted_x.back();
    std::vector<double> breaks;
    breaks.push_back(f_lo);
    for (double v : sample.sorted_y) {
        if (v > f_lo && v < x_max) breaks.push_back(v);
    }
    for (double v : sample.sorted_x) {
        if (v > f_lo && v < x_max) breaks.push_back(v);
    }
    breaks.push_back(x_max);
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

    double risk_term = 0.0;
    for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
        const double lo = breaks[k];
        const double hi = breaks[k + 1];
        const int cover = risk_count(sample, 0.5 * (lo + hi));
        if (cover > 0) {
            risk_term +=
                (static_cast<double>(cover) / n) * model.influence_over_risk2_integral(phi, lo, hi);
        }
    }
    terms.risk_term = risk_term - j_full;

    terms.remainder = terms.scaled_error - sqrt_n * (terms.marginal_term - terms.risk_term);

    terms.per_obs.resize(n);
    for (int i = 0; i < n; ++i) {
        const double x = sample.x_values[i];
        const double y = sample.y_values[i];
        terms.per_obs[i] = model.influence(phi, x) / model.risk(x) -
                           model.influence_over_risk2_integral(phi, y, x);
    }
    return terms;
}

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw Error("inference", "InvalidLevel", "quantile argument must be inside (0, 1)");
    }
    // rational approximation (Acklam), then one Halley refinement via erfc
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double p_low = 0.02425;
    double x;
    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - p_low) {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    const double e = 0.5 * std::erfc(-x / std::numbers::sqrt2) - p;
    const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
    return x - u / (1.0 + 0.5 * x * u);
}

}  // namespace truncstat
