#include "sigreg/signs.hpp"

#include <algorithm>
#include <cmath>

#include "sigreg/errors.hpp"

namespace sigreg {

namespace {

Sign classify_sign(double v, double zero_tol) {
    if (std::abs(v) <= zero_tol || std::isnan(v)) return Sign::zero;
    return v > 0.0 ? Sign::positive : Sign::negative;
}

SignChangeSummary shifted_sign_changes(std::span<const double> s, double shift, double zero_tol) {
    SignChangeSummary out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const Sign sg = classify_sign(s[i] - shift, zero_tol);
        if (sg == Sign::zero) continue;
        if (!out.first_nonzero_index) out.first_nonzero_index = i;
        if (out.pattern.empty() || out.pattern.back() != sg) out.pattern.push_back(sg);
    }
    out.count = out.pattern.empty() ? 0 : out.pattern.size() - 1;
    return out;
}

// Four indices p<q<r<s whose values alternate with steps larger than tol,
// found by a longest-alternating-subsequence dynamic program.
std::vector<std::size_t> alternating_quadruple(std::span<const double> d, double tol) {
    const std::size_t n = d.size();
    constexpr std::size_t none = static_cast<std::size_t>(-1);
    // len_up[i]: longest alternating chain ending at i with a final rise.
    std::vector<std::size_t> len_up(n, 1), len_down(n, 1), prev_up(n, none), prev_down(n, none);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (d[i] - d[j] > tol && len_down[j] + 1 > len_up[i]) {
                len_up[i] = len_down[j] + 1;
                prev_up[i] = j;
            }
            if (d[j] - d[i] > tol && len_up[j] + 1 > len_down[i]) {
                len_down[i] = len_up[j] + 1;
                prev_down[i] = j;
            }
        }
        const bool up_end = len_up[i] >= 4;
        if (up_end || len_down[i] >= 4) {
            std::vector<std::size_t> chain;
            std::size_t k = i;
            bool rising = up_end;
            while (chain.size() < 4 && k != none) {
                chain.push_back(k);
                k = rising ? prev_up[k] : prev_down[k];
                rising = !rising;
            }
            if (chain.size() == 4) {
                std::reverse(chain.begin(), chain.end());
                return chain;
            }
        }
    }
    return {};
}

UnimodalityVerdict classify_impl(std::span<const double> d, std::span<const double> xs,
                                 double zero_tol) {
    if (d.empty()) throw InputError("unimodality classification needs at least one value");
    auto abscissa = [&](std::size_t i) {
        return xs.empty() ? static_cast<double>(i) : xs[i];
    };

    std::vector<double> values(d.begin(), d.end());
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());

    const double spread = 1.0 + std::abs(values.back() - values.front());
    std::vector<double> levels;
    levels.reserve(values.size() + 1);
    levels.push_back(values.front() - spread);
    for (std::size_t i = 0; i + 1 < values.size(); ++i) {
        levels.push_back(0.5 * (values[i] + values[i + 1]));
    }
    levels.push_back(values.back() + spread);

    UnimodalityVerdict v;
    bool excess_changes = false;
    bool conflicting = false;
    bool seen_two = false;
    Sign two_first = Sign::zero;
    bool rising = false;
    bool falling = false;
    for (double lambda : levels) {
        const SignChangeSummary s = shifted_sign_changes(d, lambda, zero_tol);
        if (s.count > 2) {
            excess_changes = true;
            break;
        }
        if (s.count == 2) {
            v.lambda_witnesses.push_back(lambda);
            if (!seen_two) {
                seen_two = true;
                two_first = s.pattern.front();
            } else if (s.pattern.front() != two_first) {
                conflicting = true;
            }
        } else if (s.count == 1) {
            (s.pattern.front() == Sign::negative ? rising : falling) = true;
        }
    }

    const bool suspicious = excess_changes || conflicting || (!seen_two && rising && falling);
    if (suspicious) {
        std::vector<std::size_t> w = alternating_quadruple(d, zero_tol);
        if (w.empty()) w = alternating_quadruple(d, 0.0);
        if (!w.empty()) {
            v.cls = UnimodalityClass::not_unimodal;
            v.violation_indices = w;
            for (std::size_t i : w) v.violation_witness.push_back(abscissa(i));
            v.lambda_witnesses.clear();
            return v;
        }
        // The sweep disagreed only through tolerance effects; fall through to
        // the endpoint comparison below.
    }

    if (seen_two && !conflicting) {
        const bool up_down = two_first == Sign::negative;
        v.cls = up_down ? UnimodalityClass::up_down : UnimodalityClass::down_up;
        const auto it = up_down ? std::max_element(d.begin(), d.end())
                                : std::min_element(d.begin(), d.end());
        v.mode_index = static_cast<std::size_t>(it - d.begin());
        v.mode_witness = abscissa(*v.mode_index);
    } else if (rising && !falling) {
        v.cls = UnimodalityClass::increasing;
    } else if (falling && !rising) {
        v.cls = UnimodalityClass::decreasing;
    } else if (rising && falling) {
        v.cls = d.back() >= d.front() ? UnimodalityClass::increasing
                                      : UnimodalityClass::decreasing;
    } else {
        v.cls = UnimodalityClass::constant;
    }
    return v;
}

}  // namespace

char sign_char(Sign s) {
    switch (s) {
        case Sign::negative: return '-';
        case Sign::positive: return '+';
        case Sign::zero: break;
    }
    return '0';
}

int sign_value(Sign s) { return static_cast<int>(s); }

std::string SignChangeSummary::pattern_string() const {
    std::string out = "(";
    for (std::size_t i = 0; i < pattern.size(); ++i) {
        if (i > 0) out.push_back(',');
        out.push_back(sign_char(pattern[i]));
    }
    return out + ")";
}

void require_strictly_increasing(std::span<const double> xs, const char* what) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!std::isfinite(xs[i])) throw InputError(std::string(what) + ": non-finite abscissa");
        if (i > 0 && !(xs[i] > xs[i - 1])) {
            throw InputError(std::string(what) + ": abscissae must be strictly increasing");
        }
    }
}

SignChangeSummary sign_changes_sequence(std::span<const double> s, double zero_tol) {
    return shifted_sign_changes(s, 0.0, zero_tol);
}

SignChangeSummary sign_changes_samples(std::span<const double> xs, std::span<const double> ys,
                                       double zero_tol) {
    if (xs.size() != ys.size()) throw InputError("sign_changes_samples: length mismatch");
    require_strictly_increasing(xs, "sign_changes_samples");
    return sign_changes_sequence(ys, zero_tol);
}

std::string to_string(UnimodalityClass c) {
    switch (c) {
        case UnimodalityClass::constant: return "constant";
        case UnimodalityClass::increasing: return "increasing";
        case UnimodalityClass::decreasing: return "decreasing";
        case UnimodalityClass::up_down: return "up_down";
        case UnimodalityClass::down_up: return "down_up";
        case UnimodalityClass::not_unimodal: return "not_unimodal";
    }
    return "unknown";
}

UnimodalityClass unimodality_class_from_string(const std::string& s) {
    for (auto c : {UnimodalityClass::constant, UnimodalityClass::increasing,
                   UnimodalityClass::decreasing, UnimodalityClass::up_down,
                   UnimodalityClass::down_up, UnimodalityClass::not_unimodal}) {
        if (to_string(c) == s) return c;
    }
    throw InputError("unknown unimodality class '" + s + "'");
}

UnimodalityVerdict classify_unimodality_sequence(std::span<const double> d, double zero_tol) {
    return classify_impl(d, {}, zero_tol);
}

UnimodalityVerdict classify_unimodality_samples(std::span<const double> xs,
                                                std::span<const double> ys, double zero_tol) {
    if (xs.size() != ys.size()) throw InputError("classify_unimodality_samples: length mismatch");
    require_strictly_increasing(xs, "classify_unimodality_samples");
    return classify_impl(ys, xs, zero_tol);
}

}  // namespace sigreg
