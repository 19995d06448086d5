#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace mtvrp {

// Seeded 64-bit generator with hand-rolled draw helpers so that the produced
// streams do not depend on the standard library's distribution
// implementations.
class Rng {
public:
    explicit Rng(uint64_t seed) : eng_(seed) {}

    uint64_t next() { return eng_(); }

    // Uniform integer in [lo, hi], inclusive, via rejection sampling.
    int uniform_int(int lo, int hi) {
        uint64_t span = static_cast<uint64_t>(hi) - lo + 1;
        uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        uint64_t r;
        do {
            r = eng_();
        } while (r >= limit);
        return lo + static_cast<int>(r % span);
    }

    // Uniform real in [0, 1) with 53-bit resolution.
    double uniform01() { return (eng_() >> 11) * 0x1.0p-53; }

    // Uniform value on the 1e-6 grid in [lo, hi]; exact to write and re-read
    // with six decimal places.
    double uniform_micro(double lo, double hi) {
        long long lo_u = static_cast<long long>(lo * 1e6);
        long long hi_u = static_cast<long long>(hi * 1e6);
        uint64_t span = static_cast<uint64_t>(hi_u - lo_u) + 1;
        uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        uint64_t r;
        do {
            r = eng_();
        } while (r >= limit);
        return static_cast<double>(lo_u + static_cast<long long>(r % span)) / 1e6;
    }

    // First k entries of a Fisher-Yates shuffle of `pool`.
    std::vector<int> sample_without_replacement(std::vector<int> pool, int k) {
        std::vector<int> out;
        out.reserve(k);
        int m = static_cast<int>(pool.size());
        for (int t = 0; t < k && t < m; ++t) {
            int idx = uniform_int(t, m - 1);
            std::swap(pool[t], pool[idx]);
            out.push_back(pool[t]);
        }
        return out;
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace mtvrp
