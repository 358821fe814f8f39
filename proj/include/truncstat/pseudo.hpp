#ifndef TRUNCSTAT_PSEUDO_HPP
#define TRUNCSTAT_PSEUDO_HPP

#include <functional>
#include <vector>

#include "truncstat/random.hpp"
#include "truncstat/sample.hpp"

namespace truncstat {

// Minimal distribution oracle: a cdf together with its left limits. The jump
// interval of an atom x is (left(x), cdf(x)]; at continuity points the two
// coincide.
struct CdfOracle {
    std::function<double(double)> cdf;
    std::function<double(double)> left;
};

// Oracle backed by the empirical lifetime cdf of a sample.
CdfOracle empirical_oracle(const SortedSample& sample);

// Identity cdf on (0, 1), for data that is already uniform.
CdfOracle identity_oracle();

// Tie-free pseudo-observations obtained by mapping each lifetime into the
// jump interval of its atom under the oracle cdf (continuity points map to
// the cdf value itself) and each truncator to its left-limit cdf value.
// All x_uniform values are pairwise distinct, so the pseudo sample has no
// ties while preserving every risk-set count of the original sample.
struct PseudoSample {
    std::vector<double> x_uniform;  // one per original row, in (0, 1]
    std::vector<double> y_uniform;  // left-limit cdf of each truncator
    std::vector<int> rows_by_u;     // original row indices in increasing x_uniform order

    // pseudo pairs (x_uniform, y_uniform) as a plain truncated sample
    TruncatedSample as_pairs() const;
};

enum class TiePlacement {
    random,        // i.i.d. uniform draws inside the open jump interval
    evenly_spaced  // deterministic equispaced placement, for reproducible tests
};

// Throws sample_model.OracleInconsistent when an atom carrying two or more
// observations has a zero-width jump interval, or when the constructed
// values fail to be pairwise distinct. Within a tie group, values are
// assigned in increasing order of original row index.
PseudoSample build_pseudo_sample(const SortedSample& sample, const CdfOracle& oracle,
                                 RandomStream& rng,
                                 TiePlacement placement = TiePlacement::random);

}  // namespace truncstat

#endif
