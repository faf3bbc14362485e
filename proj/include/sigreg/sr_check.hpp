#pragma once

// Grid certification of sign regularity and variation-diminishing checks.
// A finite grid can only refute sign regularity or offer evidence for it;
// reports never claim more than "all tested minors of order m share a sign".

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sigreg/kernel.hpp"
#include "sigreg/signs.hpp"

namespace sigreg {

/// Determinant of an m x m row-major matrix by partially pivoted Gaussian
/// elimination, accumulated in double or in double-double.
double determinant(std::vector<double> a, std::size_t m, bool extended = false);

/// det K(xs_i, ys_j). Throws InputError unless both grids are strictly
/// increasing and of equal size >= 1.
double minor(const KernelDescriptor& k, std::span<const double> xs, std::span<const double> ys,
             bool extended = false);

struct MinorViolation {
    std::vector<std::size_t> rows, cols;  ///< indices into the report grids
    double det = 0.0;
};

struct OrderRecord {
    std::size_t m = 0;
    std::optional<int> epsilon;  ///< consensus sign; empty when mixed or all indeterminate
    std::size_t minors_tested = 0;
    std::size_t indeterminate = 0;
    std::size_t positive = 0;
    std::size_t negative = 0;
    std::optional<double> min_abs_det;  ///< over determinate minors
    bool full_enumeration = false;
    std::vector<MinorViolation> violations;  ///< minority-sign minors
};

struct CertifyOptions {
    std::size_t order = 3;
    double det_zero_tol = 1e-12;     ///< relative to the product of row sup-norms
    std::size_t subset_budget = 20000;
    std::uint64_t seed = 0;
    bool extended_precision = false;
    unsigned threads = 1;
    std::size_t max_violations_kept = 50;
};

struct SRReport {
    std::string kernel;
    std::size_t order_checked = 0;
    std::vector<double> xs, ys;
    double det_zero_tol = 0.0;
    std::size_t subset_budget = 0;
    std::uint64_t seed = 0;
    bool extended_precision = false;
    bool exploratory = false;  ///< grid evidence for a conjectured property
    std::vector<OrderRecord> orders;

    bool has_violations() const;
    /// Every order has a consensus sign.
    bool consensus() const;
    std::optional<int> epsilon(std::size_t m) const;
    /// e.g. "(+,-,-)", with '?' for orders without consensus.
    std::string signature_string() const;
};

SRReport certify_sign_regularity(const KernelDescriptor& k, std::span<const double> xs,
                                 std::span<const double> ys, const CertifyOptions& opts = {});

/// Certification of an explicit matrix; rows follow xs, columns follow ys.
SRReport certify_matrix(const std::vector<double>& row_major, std::span<const double> xs,
                        std::span<const double> ys, const std::string& name,
                        const CertifyOptions& opts = {});

/// Sign of eps_2 * eps_3, empty when either order lacks consensus.
std::optional<int> epsilon_orientation(const SRReport& rep);
std::optional<int> epsilon_orientation(const Signature3& s);

struct VariationReport {
    SignChangeSummary coefficients;
    SignChangeSummary samples;
    bool pass = false;                    ///< S^-(samples) <= S^-(coefficients)
    std::optional<bool> pattern_consistent;  ///< equal-count case, when a signature is known
    std::vector<double> values;           ///< f on the x grid
};

/// f(x) = sum_j c_j K(x, y_j) on xs. Each sample below 1e-12 * sum |c_j K(x,y_j)|
/// counts as zero. With a signature and S^-(f) = S^-(c) = k <= 2, the patterns
/// must agree when eps_k eps_{k+1} = 1 (eps_0 = 1) and be reversed otherwise.
VariationReport variation_diminishing_check(const KernelDescriptor& k, std::span<const double> xs,
                                            std::span<const double> ys,
                                            std::span<const double> coeffs,
                                            const std::optional<Signature3>& signature = std::nullopt);

/// |LHS - RHS| of (x;q)_m - (y;q)_m = -(x-y) sum_{j<m} q^j (x;q)_j (y q^{j+1};q)_{m-1-j}.
double qpochhammer_identity_residual(double x, double y, QParam q, unsigned m);

}  // namespace sigreg
