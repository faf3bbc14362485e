#pragma once

// Seeded generator with explicitly defined derived draws. The standard
// distribution classes are implementation-defined, so draws are built from
// the raw 64-bit output to stay identical across standard libraries.

#include <cstdint>
#include <random>
#include <vector>

namespace sigreg {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n), by rejection. n must be positive.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v;
        do {
            v = engine_();
        } while (v >= limit);
        return v % n;
    }

    /// Sorted uniform m-subset of {0, ..., n-1} (Floyd's algorithm).
    std::vector<std::size_t> subset(std::size_t n, std::size_t m) {
        std::vector<char> taken(n, 0);
        for (std::size_t j = n - m; j < n; ++j) {
            const std::size_t t = static_cast<std::size_t>(below(j + 1));
            taken[taken[t] ? j : t] = 1;
        }
        std::vector<std::size_t> out;
        out.reserve(m);
        for (std::size_t i = 0; i < n; ++i) {
            if (taken[i]) out.push_back(i);
        }
        return out;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace sigreg
