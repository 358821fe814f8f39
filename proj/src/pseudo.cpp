#include "truncstat/pseudo.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "truncstat/error.hpp"

namespace truncstat {

CdfOracle empirical_oracle(const SortedSample& sample) {
    // copy the sample by value so the oracle owns its data
    const SortedSample s = sample;
    CdfOracle oracle;
    oracle.cdf = [s](double x) { return observed_cdf(s, x); };
    oracle.left = [s](double x) { return observed_cdf_left(s, x); };
    return oracle;
}

CdfOracle identity_oracle() {
    const auto clamp01 = [](double x) { return std::min(std::max(x, 0.0), 1.0); };
    return CdfOracle{clamp01, clamp01};
}

TruncatedSample PseudoSample::as_pairs() const {
    TruncatedSample out;
    out.pairs.resize(x_uniform.size());
    for (std::size_t i = 0; i < x_uniform.size(); ++i) {
        out.pairs[i] = {x_uniform[i], y_uniform[i]};
    }
    return out;
}

PseudoSample build_pseudo_sample(const SortedSample& sample, const CdfOracle& oracle,
                                 RandomStream& rng, TiePlacement placement) {
    const int n = sample.n();
    PseudoSample out;
    out.x_uniform.resize(n);
    out.y_uniform.resize(n);

    for (int k = 0; k < sample.m(); ++k) {
        const double x = sample.distinct_x[k];
        const double lo = oracle.left(x);
        const double hi = oracle.cdf(x);
        const int d = sample.mult[k];
        if (hi < lo) {
            throw Error("sample_model", "OracleInconsistent", "cdf below its left limit");
        }
        if (hi == lo) {
            // continuity point: only a single observation can sit here
            if (d >= 2) {
                std::ostringstream os;
                os.precision(17);
                os << "zero-width jump interval at atom " << x << " carrying " << d
                   << " observations";
                throw Error("sample_model", "OracleInconsistent", os.str());
            }
            out.x_uniform[sample.rows[k][0]] = hi;
            continue;
        }
        // atom: place all d values strictly inside (lo, hi), assigned to the
        // tied rows in increasing original row index
        std::vector<double> u(d);
        if (placement == TiePlacement::evenly_spaced) {
            for (int j = 0; j < d; ++j) {
                u[j] = lo + (hi - lo) * (j + 1) / (d + 1);
            }
        } else {
            bool distinct = false;
            while (!distinct) {
                for (int j = 0; j < d; ++j) {
                    double v;
                    do {
                        v = lo + (hi - lo) * rng.uniform01();
                    } while (v <= lo || v >= hi);
                    u[j] = v;
                }
                std::sort(u.begin(), u.end());
                distinct = std::adjacent_find(u.begin(), u.end()) == u.end();
            }
        }
        for (int j = 0; j < d; ++j) {
            out.x_uniform[sample.rows[k][j]] = u[j];
        }
    }

    for (int i = 0; i < n; ++i) {
        out.y_uniform[i] = oracle.left(sample.y_values[i]);
    }

    out.rows_by_u.resize(n);
    for (int i = 0; i < n; ++i) out.rows_by_u[i] = i;
    std::sort(out.rows_by_u.begin(), out.rows_by_u.end(),
              [&](int a, int b) { return out.x_uniform[a] < out.x_uniform[b]; });
    for (int i = 0; i + 1 < n; ++i) {
        if (out.x_uniform[out.rows_by_u[i]] >= out.x_uniform[out.rows_by_u[i + 1]]) {
            throw Error("sample_model", "OracleInconsistent",
                        "constructed pseudo-observations are not pairwise distinct");
        }
    }
    for (int i = 0; i < n; ++i) {
        const double u = out.x_uniform[i];
        if (!(u > 0.0 && u <= 1.0)) {
            throw Error("sample_model", "OracleInconsistent",
                        "pseudo-observation outside (0, 1]");
        }
    }
    return out;
}

}  // namespace truncstat
