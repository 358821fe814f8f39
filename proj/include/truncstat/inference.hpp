#ifndef TRUNCSTAT_INFERENCE_HPP
#define TRUNCSTAT_INFERENCE_HPP

#include <vector>

#include "truncstat/estimator.hpp"
#include "truncstat/model.hpp"
#include "truncstat/sample.hpp"
#include "truncstat/score.hpp"

namespace truncstat {

struct InferenceResult {
    double estimate = 0.0;
    double sigma2 = 0.0;  // plug-in asymptotic variance
    double lo = 0.0;
    double hi = 0.0;
    double level = 0.0;
    int n = 0;
};

// Decomposition of the scaled estimation error of a product-limit integral
// against a fully known model:
//   scaled_error   sqrt(n) * (integral under the estimate - integral under F)
//   marginal_term  fluctuation of the observed-lifetime marginal, weighted by
//                  influence/risk
//   risk_term      fluctuation of the empirical risk function, weighted by
//                  influence/risk^2
//   remainder      scaled_error - sqrt(n) * (marginal_term - risk_term)
//   per_obs        the n i.i.d. summands whose mean is marginal_term - risk_term
//                  (up to centering); their variance estimates the asymptotic
//                  variance of the scaled error
struct RepresentationTerms {
    double scaled_error = 0.0;
    double marginal_term = 0.0;
    double risk_term = 0.0;
    double remainder = 0.0;
    std::vector<double> per_obs;
};

// weighted sums of the score over the estimate's support
double lb_integral(const LBEstimate& est, const ScoreFunction& phi);
double modified_integral(const ModifiedEstimate& est, const ScoreFunction& phi);

// influence function with the estimated distribution plugged in:
// sum over support points above y of weight * (phi(y) - phi(point))
double influence_plugin(const LBEstimate& est, const ScoreFunction& phi, double y);

// influence function under the true model law
double influence_model(const TruncationModel& model, const ScoreFunction& phi, double y);

// Plug-in asymptotic variance of sqrt(n) * (lb_integral - truth): the
// empirical variance (n divisor) of the estimated per-observation summands.
// Throws inference.DegenerateSample for n < 2.
double plugin_variance(const SortedSample& sample, const ScoreFunction& phi);

// two-sided normal-approximation interval for the product-limit integral
InferenceResult confidence_interval(const SortedSample& sample, const ScoreFunction& phi,
                                    double level);

// interval arithmetic shared with confidence_interval, exposed for testing
InferenceResult interval_from(double estimate, double sigma2, int n, double level);

RepresentationTerms representation_terms(const SortedSample& sample, const TruncationModel& model,
                                         const ScoreFunction& phi);

// standard normal quantile, accurate to full double precision
double normal_quantile(double p);

}  // namespace truncstat

#endif
