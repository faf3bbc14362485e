#pragma once

// Concrete special-function ratios: generalized hypergeometric ratios in a
// shifted parameter, the rational function R(x) = prod(a_i+x)/prod(b_j+x),
// Nuttall Q-function ratios, and the two exploratory scanners.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sigreg/kernel.hpp"
#include "sigreg/quadrature.hpp"
#include "sigreg/ratios.hpp"
#include "sigreg/signs.hpp"
#include "sigreg/sr_check.hpp"

namespace sigreg {

// ---------------------------------------------------------------- R(x)

struct RMonotoneReport {
    std::vector<double> a, b;       ///< sorted, after the optional q transform
    bool chain_applicable = false;  ///< m <= n
    bool chain_holds = false;
    bool majorization_applicable = false;  ///< m <= n, compared with the m smallest b
    /// Partial sums of the m smallest b bounded by those of a: sufficient for R decreasing.
    bool majorization_holds = false;
    /// The reverse inequality (a bounded by b). Recorded only; it does not
    /// imply a decrease (a = (1), b = (2) gives an increasing R).
    bool majorization_as_printed = false;
    /// The same two clauses applied to 1/R (roles of a and b swapped).
    bool reciprocal_chain_holds = false;
    bool reciprocal_majorization_holds = false;
    bool numeric_decreasing = false;  ///< R' < 0 at every grid point
    bool numeric_increasing = false;  ///< R' > 0 at every grid point
    /// A symbolic clause claims a direction the numeric test does not see.
    bool contradiction = false;
    std::vector<double> grid;
    std::vector<double> log_derivative;  ///< sum 1/(a_i+x) - sum 1/(b_j+x)
};

/// Throws DomainError on nonpositive entries (after the q transform).
RMonotoneReport check_R_monotone(std::span<const double> a, std::span<const double> b,
                                 std::optional<QParam> q_mode = std::nullopt);

/// (q^{-a_i} - 1)_i, the replacement vectors for q-hypergeometric ratios.
std::vector<double> q_transform(std::span<const double> a, QParam q);

// ------------------------------------------------- hypergeometric ratio

struct HypergeometricRatioSpec {
    std::vector<double> c, d;    ///< shared, shifted by mu
    std::vector<double> a1, b1;  ///< numerator-only upper / lower
    std::vector<double> b2, a2;  ///< denominator-only upper / lower
    double x = 0.5;
    std::vector<double> mu_grid;
    double tol = kDefaultSeriesTol;
    std::size_t max_terms = kDefaultMaxTerms;

    void validate() const;
};

/// pFq(c+mu, a1; d+mu, b1; x) / sFt(c+mu, b2; d+mu, a2; x).
double hypergeometric_ratio(const HypergeometricRatioSpec& spec, double mu);

enum class MuPlacement { upper_only, lower_only, general };

struct HypergeometricClassification {
    UnimodalityVerdict verdict;
    UnimodalityVerdict coefficient_verdict;  ///< of f_k/g_k = (a)_k/(b)_k
    std::vector<double> mu, values;
    RMonotoneReport r_report;
    MuPlacement placement = MuPlacement::general;
    std::optional<Signature3> signature;  ///< of (c+mu)_n/(d+mu)_n when catalog-known
    /// Upper placement: F'(0+) from the hypergeometric closed form and,
    /// independently, from the factorial-series endpoint formula.
    std::optional<double> endpoint_derivative;
    std::optional<double> endpoint_derivative_check;
    bool boundary_inconclusive = false;
    bool tail_decreasing = false;  ///< last grid step is a decrease
    bool contradiction = false;    ///< not unimodal under the hypotheses
};

HypergeometricClassification classify_hypergeometric_ratio(const HypergeometricRatioSpec& spec);

/// F'(0+) for the upper placement c = (0), d = ():
/// x [ (a)_1/(b)_1 F(1,1,a1+1; 2,b1+1; x) - (b2)_1/(a2)_1 F(1,1,b2+1; 2,a2+1; x) ].
double hypergeometric_upper_endpoint_derivative(const HypergeometricRatioSpec& spec);

/// Coefficients f_k, g_k of the two series (shared factors removed), until
/// both are negligible. Used to express the ratio as a factorial or inverse
/// factorial series.
void hypergeometric_coefficients(const HypergeometricRatioSpec& spec, std::vector<double>& f,
                                 std::vector<double>& g);

// ------------------------------------------------------------ Nuttall Q

struct NuttallSpec {
    double mu = 1.0;
    double nu = 0.0;
    double a = 1.0;
    double b = 0.0;
    QuadratureSpec quadrature;

    void validate() const;
};

/// Q_{mu,nu}(a,b) = int_b^inf x^mu e^{-(x^2+a^2)/2} I_nu(ax) dx, integrated on
/// unit panels up to max(a, b) + 40 with early exit once two panels fall
/// below rel_tol times the estimate.
double nuttall_q(const NuttallSpec& spec);

/// Closed form of Q_{mu,nu}(a, 0) through 1F1.
double nuttall_q_kummer(double mu, double nu, double a);

struct NuttallRatioReport {
    UnimodalityVerdict verdict;
    std::vector<double> mu, values;
    bool hypotheses_hold = false;  ///< nu1-nu2 positive even integer, 0 < a1 <= a2, b >= 0
    bool contradiction = false;
    std::string warning;
};

NuttallRatioReport classify_nuttall_ratio(double nu1, double nu2, double a1, double a2, double b,
                                          std::span<const double> mu_grid,
                                          const QuadratureSpec& quadrature = {});

// ------------------------------------------------------------ scanners

struct BesselRatioReport {
    UnimodalityVerdict verdict;
    std::vector<double> x, values;
    bool log_concavity_checked = false;  ///< nu1 >= nu2 > 0
    bool log_concave = true;
    std::vector<double> log_concavity_violations;  ///< abscissae
    bool theorem_backed = false;  ///< nu1-nu2 a positive even integer or zero
    bool counterexample = false;  ///< not unimodal, or not log-concave where claimed
    std::string label = "exploratory";
};

/// x -> I_{nu1}(a1 x) / I_{nu2}(a2 x) on the grid, through log_bessel_i.
BesselRatioReport scan_bessel_ratio(double nu1, double nu2, double a1, double a2,
                                    std::span<const double> x_grid);

/// Certification of the pointwise product of two translation kernels.
/// The report is always marked exploratory.
SRReport scan_product_kernel(const KernelDescriptor& f1, const KernelDescriptor& f2,
                             std::span<const double> xs, std::span<const double> ys,
                             const CertifyOptions& opts = {});

struct MeijerWeightReport {
    bool v_nonnegative = false;  ///< min sampled v >= -1e-12
    double min_v = 0.0;
    double argmin_t = 0.0;
    bool majorization = false;
    bool cross_check_ok = true;  ///< majorization implies v_nonnegative
};

/// Samples v(t) = sum (t^{c_j} - t^{d_j}) on t_grid in (0,1) and tests the
/// sorted partial-sum condition.
MeijerWeightReport meijer_weight_conditions(std::span<const double> c, std::span<const double> d,
                                            std::span<const double> t_grid);

}  // namespace sigreg
