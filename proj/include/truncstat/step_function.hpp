#ifndef TRUNCSTAT_STEP_FUNCTION_HPP
#define TRUNCSTAT_STEP_FUNCTION_HPP

#include <vector>

namespace truncstat {

// Right-continuous step function with retrievable left limits. Evaluation at z
// returns the value at the largest knot <= z; left of the first knot it
// returns the baseline.
class StepFunction {
public:
    StepFunction() = default;
    StepFunction(std::vector<double> knots, std::vector<double> values, double baseline = 0.0);

    double operator()(double z) const;
    double left_limit(double z) const;

    const std::vector<double>& knots() const { return knots_; }
    const std::vector<double>& values() const { return values_; }
    double baseline() const { return baseline_; }

private:
    std::vector<double> knots_;   // strictly increasing
    std::vector<double> values_;  // value at each knot
    double baseline_ = 0.0;
};

}  // namespace truncstat

#endif
