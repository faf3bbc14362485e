#pragma once

// Hand-rolled random generators shared by the property tests and the
// acceptance suite.

#include <algorithm>
#include <cmath>
#include <vector>

#include "sigreg/rng.hpp"

namespace sigreg::testgen {

/// Length n, at most `max_changes` sign changes, occasional exact zeros.
inline std::vector<double> few_sign_changes(Rng& rng, std::size_t n, std::size_t max_changes) {
    const std::size_t changes = static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(std::min(max_changes, n - 1) + 1)));
    std::vector<std::size_t> cuts = rng.subset(n - 1, changes);  // sign flips after these indices
    double sign = rng.below(2) ? 1.0 : -1.0;
    std::vector<double> v(n);
    std::size_t next = 0;
    for (std::size_t i = 0; i < n; ++i) {
        v[i] = sign * rng.uniform(0.1, 2.0);
        if (rng.below(8) == 0) v[i] = 0.0;
        if (next < cuts.size() && cuts[next] == i) {
            sign = -sign;
            ++next;
        }
    }
    return v;
}

enum class Shape { increasing, decreasing, up_down, down_up };

/// Strictly shaped sequence of length n (n >= 3 for the two-sided shapes).
inline std::vector<double> shaped_sequence(Rng& rng, std::size_t n, Shape shape) {
    std::vector<double> steps(n - 1);
    for (double& s : steps) s = rng.uniform(0.05, 1.0);
    std::vector<double> v(n);
    v[0] = rng.uniform(-1.0, 1.0);
    std::size_t peak = n - 1;
    if (shape == Shape::up_down || shape == Shape::down_up) peak = 1 + static_cast<std::size_t>(rng.below(n - 2));
    for (std::size_t i = 1; i < n; ++i) {
        double dir = 1.0;
        switch (shape) {
            case Shape::increasing: dir = 1.0; break;
            case Shape::decreasing: dir = -1.0; break;
            case Shape::up_down: dir = i <= peak ? 1.0 : -1.0; break;
            case Shape::down_up: dir = i <= peak ? -1.0 : 1.0; break;
        }
        v[i] = v[i - 1] + dir * steps[i - 1];
    }
    return v;
}

inline Shape random_shape(Rng& rng, std::size_t n) {
    if (n < 3) return rng.below(2) ? Shape::increasing : Shape::decreasing;
    return static_cast<Shape>(rng.below(4));
}

inline std::vector<double> sorted_uniform(Rng& rng, std::size_t n, double lo, double hi) {
    std::vector<double> v(n);
    for (double& e : v) e = rng.uniform(lo, hi);
    std::sort(v.begin(), v.end());
    for (std::size_t i = 1; i < n; ++i) {
        if (v[i] <= v[i - 1]) v[i] = v[i - 1] + 1e-3;
    }
    return v;
}

inline std::vector<double> geometric_grid(double lo, double hi, std::size_t n) {
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i) {
        g[i] = lo * std::pow(hi / lo, static_cast<double>(i) / static_cast<double>(n - 1));
    }
    g.front() = lo;
    g.back() = hi;
    return g;
}

inline std::vector<double> uniform_grid(double lo, double hi, std::size_t n) {
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    g.back() = hi;
    return g;
}

}  // namespace sigreg::testgen
