#include "truncstat/score.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "truncstat/error.hpp"

namespace truncstat {

ScoreFunction ScoreFunction::identity() { return {Kind::identity, 0.0}; }

ScoreFunction ScoreFunction::indicator(double threshold) { return {Kind::indicator, threshold}; }

ScoreFunction ScoreFunction::power(double exponent) { return {Kind::power, exponent}; }

ScoreFunction ScoreFunction::tabulated(std::map<double, double> table) {
    ScoreFunction s{Kind::tabulated, 0.0};
    s.table_ = std::move(table);
    return s;
}

double ScoreFunction::operator()(double x) const {
    switch (kind_) {
        case Kind::identity:
            return x;
        case Kind::indicator:
            return x <= param_ ? 1.0 : 0.0;
        case Kind::power:
            return std::pow(x, param_);
        case Kind::tabulated: {
            const auto it = table_.find(x);
            if (it == table_.end()) {
                std::ostringstream os;
                os.precision(17);
                os << "tabulated score has no value at " << x;
                throw Error("inference", "ScoreUndefinedAt", os.str());
            }
            return it->second;
        }
    }
    return 0.0;  // unreachable
}

std::string ScoreFunction::describe() const {
    std::ostringstream os;
    os.precision(17);
    switch (kind_) {
        case Kind::identity:
            return "identity";
        case Kind::indicator:
            os << "indicator:" << param_;
            return os.str();
        case Kind::power:
            os << "power:" << param_;
            return os.str();
        case Kind::tabulated:
            os << "table[" << table_.size() << "]";
            return os.str();
    }
    return "";
}

}  // namespace truncstat
