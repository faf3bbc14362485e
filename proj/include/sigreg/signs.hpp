#pragma once

// Sign-change counting and the lambda-sweep unimodality classifier.
//
// A sequence d is unimodal iff for every level lambda the shifted sequence
// d - lambda has at most two sign changes, and every level producing exactly
// two changes produces the same pattern. Sign patterns of d - lambda only
// change when lambda crosses a value of d, so checking one level below the
// minimum, one above the maximum and the midpoints between consecutive
// distinct values decides the question exactly.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sigreg {

enum class Sign : int { negative = -1, zero = 0, positive = 1 };

char sign_char(Sign s);
int sign_value(Sign s);

struct SignChangeSummary {
    std::size_t count = 0;
    std::vector<Sign> pattern;  ///< signs after zero removal, runs collapsed
    std::optional<std::size_t> first_nonzero_index;

    std::string pattern_string() const;
};

/// S^- of s: entries with |s_i| <= zero_tol are dropped before counting.
SignChangeSummary sign_changes_sequence(std::span<const double> s, double zero_tol = 0.0);

/// Sampled lower bound on S^-(f). xs must be strictly increasing.
SignChangeSummary sign_changes_samples(std::span<const double> xs, std::span<const double> ys,
                                       double zero_tol = 0.0);

enum class UnimodalityClass { constant, increasing, decreasing, up_down, down_up, not_unimodal };

std::string to_string(UnimodalityClass c);
UnimodalityClass unimodality_class_from_string(const std::string& s);

struct UnimodalityVerdict {
    UnimodalityClass cls = UnimodalityClass::constant;
    std::optional<std::size_t> mode_index;
    std::optional<double> mode_witness;      ///< abscissa of the extremum (index for sequences)
    std::vector<double> lambda_witnesses;    ///< levels that gave exactly two sign changes
    std::vector<std::size_t> violation_indices;
    std::vector<double> violation_witness;   ///< four alternating points, abscissae

    bool unimodal() const { return cls != UnimodalityClass::not_unimodal; }
    bool monotone() const {
        return cls == UnimodalityClass::constant || cls == UnimodalityClass::increasing ||
               cls == UnimodalityClass::decreasing;
    }
};

UnimodalityVerdict classify_unimodality_sequence(std::span<const double> d, double zero_tol = 0.0);

/// Same sweep on samples of a function. The verdict certifies the sampled
/// sequence only; behaviour between grid points is not examined.
UnimodalityVerdict classify_unimodality_samples(std::span<const double> xs,
                                                std::span<const double> ys, double zero_tol = 0.0);

/// Throws InputError unless xs is strictly increasing and finite.
void require_strictly_increasing(std::span<const double> xs, const char* what);

}  // namespace sigreg
