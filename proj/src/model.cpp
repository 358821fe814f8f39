#include "truncstat/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "truncstat/error.hpp"

namespace truncstat {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double simpson(const std::function<double(double)>& f, double a, double fa, double b, double fb,
               double m, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive(const std::function<double(double)>& f, double a, double fa, double b, double fb,
                double m, double fm, double whole, double tol, int depth) {
    if (depth > 60) {
        std::ostringstream os;
        os.precision(17);
        os << "subdivision depth exhausted on [" << a << ", " << b << "]";
        throw Error("inference", "QuadratureFailure", os.str());
    }
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    if (!std::isfinite(flm) || !std::isfinite(frm)) {
        std::ostringstream os;
        os.precision(17);
        os << "non-finite integrand near [" << a << ", " << b << "]";
        throw Error("inference", "QuadratureFailure", os.str());
    }
    const double left = simpson(f, a, fa, m, fm, lm, flm);
    const double right = simpson(f, m, fm, b, fb, rm, frm);
    if (std::abs(left + right - whole) <= 15.0 * tol) {
        return left + right + (left + right - whole) / 15.0;
    }
    return adaptive(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth + 1) +
           adaptive(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth + 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    if (!(a < b)) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(m);
    if (!std::isfinite(fa) || !std::isfinite(fb) || !std::isfinite(fm)) {
        std::ostringstream os;
        os.precision(17);
        os << "non-finite integrand on [" << a << ", " << b << "]";
        throw Error("inference", "QuadratureFailure", os.str());
    }
    return adaptive(f, a, fa, b, fb, m, fm, simpson(f, a, fa, b, fb, m, fm), tol, 0);
}

// ---------------------------------------------------------------------------
// Dist

double Dist::cdf(double x) const {
    switch (family) {
        case Family::exponential:
            return x <= 0.0 ? 0.0 : -std::expm1(-p1 * x);
        case Family::uniform:
            if (x <= p1) return 0.0;
            if (x >= p2) return 1.0;
            return (x - p1) / (p2 - p1);
        case Family::point_mass:
            return x >= p1 ? 1.0 : 0.0;
    }
    return 0.0;
}

double Dist::left_limit(double x) const {
    if (family == Family::point_mass) return x > p1 ? 1.0 : 0.0;
    return cdf(x);  // continuous families
}

double Dist::density(double x) const {
    switch (family) {
        case Family::exponential:
            return x < 0.0 ? 0.0 : p1 * std::exp(-p1 * x);
        case Family::uniform:
            return (x < p1 || x > p2) ? 0.0 : 1.0 / (p2 - p1);
        case Family::point_mass:
            return 0.0;
    }
    return 0.0;
}

double Dist::quantile(double u) const {
    switch (family) {
        case Family::exponential:
            return -std::log1p(-u) / p1;
        case Family::uniform:
            return p1 + (p2 - p1) * u;
        case Family::point_mass:
            return p1;
    }
    return 0.0;
}

double Dist::mean() const {
    switch (family) {
        case Family::exponential:
            return 1.0 / p1;
        case Family::uniform:
            return 0.5 * (p1 + p2);
        case Family::point_mass:
            return p1;
    }
    return 0.0;
}

double Dist::lower() const {
    switch (family) {
        case Family::exponential:
            return 0.0;
        case Family::uniform:
        case Family::point_mass:
            return p1;
    }
    return 0.0;
}

double Dist::upper() const {
    switch (family) {
        case Family::exponential:
            return kInf;
        case Family::uniform:
            return p2;
        case Family::point_mass:
            return p1;
    }
    return 0.0;
}

double Dist::integration_upper() const {
    if (family == Family::exponential) return 42.0 / p1;  // exp(-42) < 1e-18
    return upper();
}

// ---------------------------------------------------------------------------
// TruncationModel

double TruncationModel::observed_cdf(double x) const {
    const double lo = f.lower();
    if (x <= lo) return 0.0;
    if (g.family == Dist::Family::point_mass) {
        return f.cdf(x);  // no truncation bite
    }
    if (f.family == Dist::Family::exponential && g.family == Dist::Family::exponential) {
        const double lx = f.p1;
        const double ly = g.p1;
        return (-std::expm1(-lx * x) + lx / (lx + ly) * std::expm1(-(lx + ly) * x)) / alpha;
    }
    if (f.family == Dist::Family::uniform && g.family == Dist::Family::uniform) {
        const double xa = f.p1, xb = f.p2, ya = g.p1, yb = g.p2;
        const double xc = std::min(x, xb);
        const double v = ((xc - ya) * (xc - ya) - (xa - ya) * (xa - ya)) /
                         (2.0 * (yb - ya) * (xb - xa));
        return std::min(v / alpha, 1.0);
    }
    return observed_cdf_unnormalized_by_quadrature(x) / alpha;
}

double TruncationModel::risk(double z) const {
    return risk_from_definition(z);
}

double TruncationModel::risk_from_definition(double z) const {
    return g.cdf(z) * (1.0 - f.left_limit(z)) / alpha;
}

double TruncationModel::observed_cdf_unnormalized_by_quadrature(double x) const {
    const double lo = f.lower();
    const double hi = std::min(x, f.integration_upper());
    if (hi <= lo) return 0.0;
    return integrate([this](double z) { return g.cdf(z) * f.density(z); }, lo, hi);
}

CdfOracle TruncationModel::observed_oracle() const {
    const TruncationModel self = *this;
    CdfOracle oracle;
    oracle.cdf = [self](double x) { return self.observed_cdf(x); };
    oracle.left = [self](double x) { return self.observed_cdf(x); };  // continuous lifetimes
    return oracle;
}

double TruncationModel::mean_score(const ScoreFunction& phi) const {
    if (!phi.analytic()) {
        throw Error("inference", "TabulatedScoreUnsupported",
                    "model integrals need a score defined off the sample support");
    }
    switch (phi.kind()) {
        case ScoreFunction::Kind::identity:
            return f.mean();
        case ScoreFunction::Kind::indicator:
            return f.cdf(phi.parameter());
        case ScoreFunction::Kind::power: {
            const double k = phi.parameter();
            if (f.family == Dist::Family::exponential) {
                if (k <= -1.0) {
                    throw Error("inference", "QuadratureFailure",
                                "divergent moment: exponent <= -1");
                }
                return std::tgamma(k + 1.0) / std::pow(f.p1, k);
            }
            if (f.family == Dist::Family::uniform) {
                const double a = f.p1, b = f.p2;
                if (k == -1.0) return (std::log(b) - std::log(a)) / (b - a);
                return (std::pow(b, k + 1.0) - std::pow(a, k + 1.0)) / ((k + 1.0) * (b - a));
            }
            break;
        }
        default:
            break;
    }
    return integrate([&](double x) { return phi(x) * f.density(x); }, f.lower(),
                     f.integration_upper());
}

double TruncationModel::influence(const ScoreFunction& phi, double y) const {
    if (!phi.analytic()) {
        throw Error("inference", "TabulatedScoreUnsupported",
                    "model integrals need a score defined off the sample support");
    }
    const double hi = f.upper();
    if (y >= hi) return 0.0;

    if (phi.kind() == ScoreFunction::Kind::identity) {
        // -(expected exceedance of y): -integral of (1 - F) over (y, inf)
        if (f.family == Dist::Family::exponential) {
            const double lx = f.p1;
            if (y <= 0.0) return y - 1.0 / lx;
            return -std::exp(-lx * y) / lx;
        }
        if (f.family == Dist::Family::uniform) {
            const double a = f.p1, b = f.p2;
            if (y <= a) return -((a - y) + 0.5 * (b - a));
            return -(b - y) * (b - y) / (2.0 * (b - a));
        }
    }
    if (phi.kind() == ScoreFunction::Kind::indicator) {
        const double t = phi.parameter();
        return y <= t ? 1.0 - f.cdf(t) : 0.0;
    }
    // generic: phi(y)(1 - F(y)) - integral of phi over lifetimes above y
    const double lo = std::max(y, f.lower());
    const double up = f.integration_upper();
    double tail = 0.0;
    if (lo < up) {
        tail = integrate([&](double x) { return phi(x) * f.density(x); }, lo, up);
    }
    return phi(y) * (1.0 - f.cdf(y)) - tail;
}

// The two integrals below use the reductions
//   influence/risk   d(observed cdf) = influence/(1 - F) dF
//   influence/risk^2 d(observed cdf) = alpha * influence/(G (1 - F)^2) dF,
// valid wherever G > 0 on the lifetime support.

double TruncationModel::influence_over_risk_integral(const ScoreFunction& phi) const {
    if (phi.kind() == ScoreFunction::Kind::identity) {
        if (f.family == Dist::Family::exponential) return -1.0 / f.p1;
        if (f.family == Dist::Family::uniform) return -(f.p2 - f.p1) / 4.0;
    }
    if (phi.kind() == ScoreFunction::Kind::indicator) {
        const double s = 1.0 - f.cdf(phi.parameter());
        if (s <= 0.0) return 0.0;
        return -s * std::log(s);
    }
    return integrate(
        [&](double y) {
            const double surv = 1.0 - f.cdf(y);
            if (surv <= 0.0) return 0.0;
            return influence(phi, y) / surv * f.density(y);
        },
        f.lower(), f.integration_upper(), 1e-7);
}

double TruncationModel::influence_over_risk2_integral(const ScoreFunction& phi, double a,
                                                      double b) const {
    if (!std::isfinite(b)) {
        throw Error("inference", "QuadratureFailure",
                    "influence/risk^2 integral needs a bounded interval");
    }
    const double lo = std::max(a, f.lower());
    const double hi = std::min(b, f.integration_upper());
    if (hi <= lo) return 0.0;

    if (phi.kind() == ScoreFunction::Kind::identity) {
        if (g.family == Dist::Family::point_mass) {
            if (f.family == Dist::Family::exponential) return -(hi - lo);
            if (f.family == Dist::Family::uniform) return -0.5 * (hi - lo);
        }
        if (f.family == Dist::Family::exponential && g.family == Dist::Family::exponential) {
            const double ly = g.p1;
            if (lo <= 0.0) {
                throw Error("inference", "QuadratureFailure",
                            "influence/risk^2 integral diverges at the left support end");
            }
            const auto t = [ly](double y) { return y + std::log(-std::expm1(-ly * y)) / ly; };
            return -alpha * (t(hi) - t(lo));
        }
        if (f.family == Dist::Family::uniform && g.family == Dist::Family::uniform) {
            const double ya = g.p1, yb = g.p2;
            if (lo <= ya) {
                throw Error("inference", "QuadratureFailure",
                            "influence/risk^2 integral diverges at the left support end");
            }
            return -0.5 * alpha * (yb - ya) * (std::log(hi - ya) - std::log(lo - ya));
        }
    }
    // generic quadrature in lifetime space
    return integrate(
        [&](double y) {
            const double gy = g.cdf(y);
            const double surv = 1.0 - f.cdf(y);
            if (gy <= 0.0 || surv <= 0.0) return 0.0;
            return alpha * influence(phi, y) / (gy * surv * surv) * f.density(y);
        },
        lo, hi, 1e-7);
}

// ---------------------------------------------------------------------------
// make_model

namespace {

std::vector<double> parse_params(const std::string& s, const std::string& spec) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        const std::size_t comma = s.find(',', start);
        const std::string tok =
            comma == std::string::npos ? s.substr(start) : s.substr(start, comma - start);
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(tok, &used);
        } catch (const std::exception&) {
            throw Error("simulation", "InvalidParameters", "bad number in model spec: " + spec);
        }
        if (used != tok.size()) {
            throw Error("simulation", "InvalidParameters", "bad number in model spec: " + spec);
        }
        out.push_back(v);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

TruncationModel exp_exp(double lx, double ly, const std::string& spec) {
    if (!(lx > 0.0) || !(ly > 0.0)) {
        throw Error("simulation", "InvalidParameters", "rates must be positive: " + spec);
    }
    TruncationModel m;
    m.name = spec;
    m.f = {Dist::Family::exponential, lx, 0.0};
    m.g = {Dist::Family::exponential, ly, 0.0};
    m.alpha = ly / (lx + ly);
    m.support_condition_ok = true;  // both supports start at zero, F has no atom there
    m.integrability_ok = false;     // dF/G blows up at the shared left end
    return m;
}

TruncationModel uniform_uniform(double xa, double xb, double ya, double yb,
                                const std::string& spec) {
    if (!(xb > xa) || !(yb > ya)) {
        throw Error("simulation", "InvalidParameters", "empty uniform support: " + spec);
    }
    if (!(ya <= xa) || !(xb <= yb)) {
        throw Error("simulation", "InvalidParameters",
                    "need truncator support to contain the lifetime support (c <= a <= b <= d): " +
                        spec);
    }
    TruncationModel m;
    m.name = spec;
    m.f = {Dist::Family::uniform, xa, xb};
    m.g = {Dist::Family::uniform, ya, yb};
    m.alpha = (0.5 * (xa + xb) - ya) / (yb - ya);
    m.support_condition_ok = true;
    m.integrability_ok = ya < xa;  // at ya == xa the integral of dF/G diverges
    return m;
}

TruncationModel no_trunc(const Dist& f, const std::string& spec) {
    TruncationModel m;
    m.name = spec;
    m.f = f;
    m.g = {Dist::Family::point_mass, f.lower() - 1.0, 0.0};
    m.alpha = 1.0;
    m.support_condition_ok = true;
    m.integrability_ok = true;
    return m;
}

}  // namespace

TruncationModel make_model(const std::string& spec) {
    const std::size_t colon = spec.find(':');
    const std::string family = spec.substr(0, colon);
    const std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);

    if (family == "exp-exp") {
        if (rest.empty()) return exp_exp(1.0, 1.0, spec);
        const auto p = parse_params(rest, spec);
        if (p.size() != 2) {
            throw Error("simulation", "InvalidParameters", "exp-exp takes two rates: " + spec);
        }
        return exp_exp(p[0], p[1], spec);
    }
    if (family == "uniform") {
        const auto p = rest.empty() ? std::vector<double>{} : parse_params(rest, spec);
        if (p.size() != 4) {
            throw Error("simulation", "InvalidParameters",
                        "uniform takes four bounds a,b,c,d: " + spec);
        }
        return uniform_uniform(p[0], p[1], p[2], p[3], spec);
    }
    if (family == "no-trunc") {
        const std::size_t comma = rest.find(',');
        const std::string base = rest.substr(0, comma);
        const std::string params = comma == std::string::npos ? "" : rest.substr(comma + 1);
        if (base == "exp") {
            const auto p = params.empty() ? std::vector<double>{} : parse_params(params, spec);
            if (p.size() != 1 || !(p[0] > 0.0)) {
                throw Error("simulation", "InvalidParameters", "no-trunc:exp takes a rate: " + spec);
            }
            return no_trunc({Dist::Family::exponential, p[0], 0.0}, spec);
        }
        if (base == "uniform") {
            const auto p = params.empty() ? std::vector<double>{} : parse_params(params, spec);
            if (p.size() != 2 || !(p[1] > p[0])) {
                throw Error("simulation", "InvalidParameters",
                            "no-trunc:uniform takes bounds a,b: " + spec);
            }
            return no_trunc({Dist::Family::uniform, p[0], p[1]}, spec);
        }
        throw Error("simulation", "UnknownFamily", "no-trunc base must be exp or uniform: " + spec);
    }
    throw Error("simulation", "UnknownFamily", spec);
}

}  // namespace truncstat
