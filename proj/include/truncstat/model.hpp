#ifndef TRUNCSTAT_MODEL_HPP
#define TRUNCSTAT_MODEL_HPP

#include <functional>
#include <string>

#include "truncstat/pseudo.hpp"
#include "truncstat/random.hpp"
#include "truncstat/score.hpp"

namespace truncstat {

// Adaptive Simpson integration with an absolute tolerance. Throws
// inference.QuadratureFailure on non-finite integrand values or when the
// subdivision depth is exhausted.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol = 1e-9);

// Scalar distribution used for lifetimes and truncators.
struct Dist {
    enum class Family { exponential, uniform, point_mass };

    Family family = Family::exponential;
    double p1 = 1.0;  // exp: rate; uniform: lower; point_mass: location
    double p2 = 0.0;  // uniform: upper

    double cdf(double x) const;
    double left_limit(double x) const;  // cdf(x-)
    double density(double x) const;
    double quantile(double u) const;  // u in [0, 1)
    double mean() const;
    double lower() const;  // support infimum
    double upper() const;  // support supremum (may be +infinity)

    // finite integration cutoff covering all but ~1e-18 of the mass
    double integration_upper() const;
};

// Fully known truncation model: lifetime law F, truncator law G, the
// probability alpha that a pair is observed, and the induced observed-data
// quantities (observed-lifetime cdf and the risk function). Exponential and
// uniform families carry closed forms for the identity-score influence
// integrals; everything else falls back to quadrature.
class TruncationModel {
public:
    std::string name;
    Dist f;  // lifetime distribution
    Dist g;  // truncator distribution
    double alpha = 1.0;

    bool support_condition_ok = true;  // truncators reach below the lifetime support
    bool integrability_ok = true;      // integral of dF/G is finite

    double f_lower() const { return f.lower(); }
    double f_upper() const { return f.upper(); }
    double g_lower() const { return g.lower(); }

    // marginal cdf of an observed lifetime (closed form)
    double observed_cdf(double x) const;

    // risk function: probability that an observed pair covers z (closed form)
    double risk(double z) const;

    // the defining identity alpha^{-1} G(z) (1 - F(z-)); used to cross-check risk()
    double risk_from_definition(double z) const;

    // quadrature route to alpha * observed_cdf(x); used to cross-check closed forms
    double observed_cdf_unnormalized_by_quadrature(double x) const;

    CdfOracle observed_oracle() const;

    // integral of the score under the true lifetime law
    double mean_score(const ScoreFunction& phi) const;

    // influence function: integral of [phi(y) - phi(x)] over lifetimes x > y
    double influence(const ScoreFunction& phi, double y) const;

    // integral of influence/risk against the observed-lifetime law
    double influence_over_risk_integral(const ScoreFunction& phi) const;

    // integral of influence/risk^2 against the observed-lifetime law over (a, b]
    double influence_over_risk2_integral(const ScoreFunction& phi, double a, double b) const;

    double draw_x(RandomStream& rng) const { return f.quantile(rng.uniform01()); }
    double draw_y(RandomStream& rng) const { return g.quantile(rng.uniform01()); }
};

// Built-in families:
//   "exp-exp[:rate_x,rate_y]"    exponential lifetimes and truncators
//   "uniform:a,b,c,d"            X ~ Uniform(a,b), Y ~ Uniform(c,d), c <= a <= b <= d
//   "no-trunc:exp,rate"          every pair observed (truncator below the support)
//   "no-trunc:uniform,a,b"
TruncationModel make_model(const std::string& spec);

}  // namespace truncstat

#endif
