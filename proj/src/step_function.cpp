#include "truncstat/step_function.hpp"

#include <algorithm>
#include <utility>

#include "truncstat/error.hpp"

namespace truncstat {

StepFunction::StepFunction(std::vector<double> knots, std::vector<double> values, double baseline)
    : knots_(std::move(knots)), values_(std::move(values)), baseline_(baseline) {
    if (knots_.size() != values_.size()) {
        throw Error("estimator", "InvalidStepFunction", "knots/values length mismatch");
    }
    for (std::size_t i = 1; i < knots_.size(); ++i) {
        if (!(knots_[i - 1] < knots_[i])) {
            throw Error("estimator", "InvalidStepFunction", "knots not strictly increasing");
        }
    }
}

double StepFunction::operator()(double z) const {
    // largest knot <= z
    const auto it = std::upper_bound(knots_.begin(), knots_.end(), z);
    if (it == knots_.begin()) return baseline_;
    return values_[(it - knots_.begin()) - 1];
}

double StepFunction::left_limit(double z) const {
    // largest knot < z
    const auto it = std::lower_bound(knots_.begin(), knots_.end(), z);
    if (it == knots_.begin()) return baseline_;
    return values_[(it - knots_.begin()) - 1];
}

}  // namespace truncstat
