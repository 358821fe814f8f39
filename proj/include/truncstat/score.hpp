#ifndef TRUNCSTAT_SCORE_HPP
#define TRUNCSTAT_SCORE_HPP

#include <map>
#include <string>

namespace truncstat {

// Score function for linear functionals of an estimated distribution.
// Supported shapes: identity, indicator (1 iff argument <= threshold), power,
// and a tabulated point -> value map over a sample's support.
class ScoreFunction {
public:
    enum class Kind { identity, indicator, power, tabulated };

    static ScoreFunction identity();
    static ScoreFunction indicator(double threshold);
    static ScoreFunction power(double exponent);
    static ScoreFunction tabulated(std::map<double, double> table);

    // value at x; a tabulated score throws inference.ScoreUndefinedAt when x
    // is not one of its table points
    double operator()(double x) const;

    Kind kind() const { return kind_; }
    double parameter() const { return param_; }
    const std::map<double, double>& table() const { return table_; }

    // true for shapes a model can integrate analytically or by quadrature
    bool analytic() const { return kind_ != Kind::tabulated; }

    std::string describe() const;

private:
    ScoreFunction(Kind kind, double param) : kind_(kind), param_(param) {}

    Kind kind_;
    double param_ = 0.0;
    std::map<double, double> table_;
};

}  // namespace truncstat

#endif
