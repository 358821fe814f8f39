#ifndef TRUNCSTAT_RANDOM_HPP
#define TRUNCSTAT_RANDOM_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace truncstat {

// 64-bit mixing step; used to derive independent per-cell seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Seed for one study cell (e.g. one sample size within a study).
inline std::uint64_t cell_seed(std::uint64_t master, std::uint64_t tag) {
    return splitmix64(master ^ splitmix64(tag));
}

// Counter-based per-replication seed: replication r owns cell ^ r, so a
// replication's stream does not depend on execution order or thread count.
inline std::uint64_t replication_seed(std::uint64_t cell, std::uint64_t replication) {
    return cell ^ replication;
}

// Explicit value-passed random stream. The engine is std::mt19937_64 (fully
// specified by the standard); doubles are produced from the raw 64-bit output
// so results do not depend on the standard library's distribution internals.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // uniform on [0, 1), 53-bit resolution
    double uniform01() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    double exponential(double rate) {
        // inverse transform; 1 - u is in (0, 1]
        return -std::log(1.0 - uniform01()) / rate;
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace truncstat

#endif
