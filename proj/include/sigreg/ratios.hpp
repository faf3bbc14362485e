#pragma once

// Ratios of functional series sum a_k phi_k(x) / sum b_k phi_k(x) and of
// integral transforms, with unimodality classification on grids.

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sigreg/kernel.hpp"
#include "sigreg/quadrature.hpp"
#include "sigreg/signs.hpp"
#include "sigreg/specfun.hpp"

namespace sigreg {

enum class SeriesFamily {
    power,                ///< x^k
    dirichlet,            ///< e^{lambda_k x}, lambda strictly increasing
    factorial,            ///< (x)_k
    inverse_factorial,    ///< 1/(x)_k
    q_factorial,          ///< (q^x; q)_k
    inverse_q_factorial,  ///< 1/(q^x; q)_k
    stieltjes,            ///< (x+k)^{-alpha}
    gamma_ratio,          ///< prod (x+c_i)_k/(x+d_i)_k
};

std::string to_string(SeriesFamily f);
SeriesFamily series_family_from_string(const std::string& s);

/// Kernel whose rows are phi_k(x) for this family (index columns), for
/// certification and signature lookup. Dirichlet maps to exponential with
/// the exponents as columns.
KernelDescriptor family_kernel(SeriesFamily f, double q = 0.5, double alpha = 1.0,
                               std::vector<double> c = {}, std::vector<double> d = {});

struct TruncationPolicy {
    std::size_t max_terms = 5000;
    double tol = kDefaultSeriesTol;
};

struct Interval {
    double lo = 0.0;
    double hi = std::numeric_limits<double>::infinity();
    bool contains(double x) const { return x > lo && x < hi; }
};

using CoefficientFn = std::function<double(std::size_t)>;

struct SeriesRatioSpec {
    SeriesFamily family = SeriesFamily::power;
    /// Finite specs: a and b share the active length and are summed exactly.
    std::vector<double> a, b;
    /// Generated specs (used when a and b are empty): summed with the
    /// three-small-terms stopping rule up to truncation.max_terms.
    CoefficientFn a_gen, b_gen;
    std::vector<double> lambdas;  ///< dirichlet exponents (finite specs)
    CoefficientFn lambda_gen;     ///< dirichlet exponents (generated specs)
    double q = 0.5;
    double alpha = 1.0;
    std::vector<double> c, d;
    TruncationPolicy truncation;
    Interval interval;

    bool generated() const { return a.empty(); }
    double coeff_a(std::size_t k) const;
    double coeff_b(std::size_t k) const;
    double lambda(std::size_t k) const;
    /// Number of coefficient pairs for finite specs; the cap otherwise.
    std::size_t active_length() const;
    /// Throws InputError / DomainError on invariant violations.
    void validate() const;
};

SeriesRatioSpec finite_series_spec(SeriesFamily f, std::vector<double> a, std::vector<double> b,
                                   Interval interval = {});

enum class SeriesPart { numerator, denominator };

/// sum c_k phi_k(x) with the family's phi_k. For dirichlet specs the value is
/// exact (no shift). Throws TruncationError when a generated series does not
/// settle within the cap, DomainError outside the interval.
SeriesValue eval_series(const SeriesRatioSpec& spec, SeriesPart which, double x);

struct RatioPoint {
    double x = 0.0;
    double numerator = 0.0;    ///< possibly in shifted units (dirichlet)
    double denominator = 0.0;
    double value = 0.0;
};

/// Numerator and denominator in one pass. Throws DegeneracyError (with x)
/// when |denominator| < 1e-300 * sum |b_k phi_k(x)|.
RatioPoint eval_ratio_point(const SeriesRatioSpec& spec, double x);
double eval_ratio(const SeriesRatioSpec& spec, double x);

/// Sequence a_k / b_k over the active length (generated specs: until the
/// cap or until the limit argument, whichever is smaller).
std::vector<double> coefficient_quotients(const SeriesRatioSpec& spec,
                                          std::size_t limit = std::numeric_limits<std::size_t>::max());

inline constexpr double kDefaultRelativeZeroTol = 1e-11;
inline constexpr double kBoundaryInconclusiveTol = 1e-9;

struct RatioClassification {
    UnimodalityVerdict verdict;              ///< of F on the grid
    UnimodalityVerdict coefficient_verdict;  ///< of a_k/b_k (or A/B on quadrature nodes)
    std::vector<RatioPoint> points;
    std::optional<Signature3> signature;
    std::optional<int> orientation;          ///< eps_2 eps_3
    std::optional<int> monotone_orientation; ///< eps_1 eps_2
    /// F not_unimodal although a_k/b_k is unimodal and the kernel is
    /// catalog SR_3: a contradiction event.
    bool theorem_consistent = true;
    /// Observed pattern or direction matches the one the signature predicts.
    bool orientation_consistent = true;
    std::optional<double> endpoint_derivative;  ///< F'(0+) where a closed formula exists
    bool boundary_inconclusive = false;
    bool exploratory = false;
    std::string note;
};

struct ClassifyOptions {
    double zero_tol_rel = kDefaultRelativeZeroTol;  ///< times max |F| on the grid
    double coefficient_tol_rel = 1e-13;
};

RatioClassification classify_ratio(const SeriesRatioSpec& spec, std::span<const double> grid,
                                   const ClassifyOptions& opts = {});

/// F'(0+) = (1/b_0) sum_{k>=1} b_k (k-1)! (a_k/b_k - a_0/b_0).
double factorial_endpoint_derivative(const SeriesRatioSpec& spec);

/// F'(0+) for inverse factorial series from the harmonic-number double sum.
/// Throws InputError when every b_k with k >= 1 vanishes.
double inverse_factorial_endpoint_derivative(const SeriesRatioSpec& spec);

/// Leading large-x slope (b_1/b_0)(a_0/b_0 - a_1/b_1)/x^2.
double inverse_factorial_tail_slope(const SeriesRatioSpec& spec, double x);

/// F(x+1) - F(x).
double factorial_shift_difference(const SeriesRatioSpec& spec, double x);

/// Smallest grid point X0 such that factorial_shift_difference has sign
/// `sign` at every grid point >= X0 (empty if it fails at the last point).
std::optional<double> shift_difference_threshold(const SeriesRatioSpec& spec,
                                                 std::span<const double> grid, int sign);

using Profile = std::function<double(double)>;

struct IntegralRatioSpec {
    KernelDescriptor kernel;  ///< K(x, t): x is the output variable
    Profile A, B, w;
    double j_lo = 0.0;
    double j_hi = std::numeric_limits<double>::infinity();
    QuadratureSpec quadrature;
};

struct IntegralRatioValue {
    double numerator = 0.0;
    double denominator = 0.0;
    double value = 0.0;
    double error = 0.0;  ///< combined quadrature error estimate, relative
};

IntegralRatioValue eval_integral_ratio_full(const IntegralRatioSpec& spec, double x);
double eval_integral_ratio(const IntegralRatioSpec& spec, double x);

/// Grid classification of F plus the A/B verdict on the quadrature nodes of
/// the first grid point, where B > 0 and w > 0 are spot-checked.
RatioClassification classify_integral_ratio(const IntegralRatioSpec& spec, std::span<const double> grid,
                                            const ClassifyOptions& opts = {});

}  // namespace sigreg
