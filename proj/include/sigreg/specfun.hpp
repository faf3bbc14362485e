#pragma once

// Scalar special functions shared by the kernel catalog, the series-ratio
// classifiers and the applications. Every function here is pure and uses a
// fixed summation order, so results are reproducible bit for bit.

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace sigreg {

/// Base of a q-analogue, validated to lie strictly inside (0, 1).
class QParam {
public:
    explicit QParam(double q);
    double value() const noexcept { return q_; }

private:
    double q_;
};

double log_gamma(double x);

/// Gamma function for x > 0 (overflows to +inf past x ~ 171.6).
double gamma(double x);

/// Rising factorial (x)_n = x (x+1) ... (x+n-1), by ascending product.
/// Switches to log space once the running product exceeds 1e300.
double pochhammer(double x, unsigned n);

/// log (x)_n for x > 0.
double log_pochhammer(double x, unsigned n);

/// (a; q)_n = prod_{j<n} (1 - a q^j), ascending j, q^j by repeated products.
double q_pochhammer(double a, QParam q, unsigned n);

double harmonic(unsigned n);

/// e_0 .. e_n of the entries of v, from the one-pass triangle recurrence
/// e_j <- e_j + v_i e_{j-1}.
std::vector<double> elementary_symmetric_all(std::span<const double> v);

/// e_j(v). Returns 0 for j > v.size().
double elementary_symmetric(std::span<const double> v, std::size_t j);

enum class GammaKind { lower, upper };

/// Regularized P(z, alpha) or Q(z, alpha).
double regularized_incomplete_gamma(GammaKind kind, double z, double alpha);

/// gamma(z, alpha) = int_0^alpha t^{z-1} e^{-t} dt (lower) or
/// Gamma(z, alpha) = int_alpha^inf t^{z-1} e^{-t} dt (upper).
/// Series for alpha <= z+1, continued fraction otherwise; the other kind is
/// the complement through Gamma(z).
double incomplete_gamma(GammaKind kind, double z, double alpha);

/// (x, alpha)_n = gamma(x+n, alpha)/Gamma(x) or [x, alpha]_n = Gamma(x+n, alpha)/Gamma(x).
double incomplete_pochhammer(GammaKind kind, double x, double alpha, unsigned n);

/// Upper end of the documented working range of bessel_i.
inline constexpr double kBesselSeriesMaxArgument = 50.0;

/// Modified Bessel function of the first kind by its ascending series.
/// Throws RangeError for z > 50; use bessel_i_scaled or log_bessel_i there.
double bessel_i(double nu, double z);

/// e^{-z} I_nu(z). Ascending series, or the large-argument expansion when
/// z > 50 and 4 nu^2 < z.
double bessel_i_scaled(double nu, double z);

/// log I_nu(z) for z > 0.
double log_bessel_i(double nu, double z);

struct SeriesValue {
    double value = 0.0;
    double tail = 0.0;  ///< magnitude of the last included term
    std::size_t terms = 0;
};

inline constexpr double kDefaultSeriesTol = 1e-17;
inline constexpr std::size_t kDefaultMaxTerms = 100000;

/// Generalized hypergeometric series pFq(a; b; x), summed in double-double.
/// Stops once three consecutive terms satisfy |term| <= tol |partial sum|.
/// Throws DomainError for a nonpositive-integer lower parameter or a
/// parameter count that makes the series divergent at x, and
/// TruncationError (carrying the partial sum) when the term cap is hit.
SeriesValue hyper_pfq(std::span<const double> a, std::span<const double> b, double x,
                      double tol = kDefaultSeriesTol, std::size_t max_terms = kDefaultMaxTerms);

/// Basic hypergeometric series with terms
///   prod (a_i;q)_k / prod (b_j;q)_k * x^k/(q;q)_k * [(-1)^k q^{k(k-1)/2}]^{1+t-s},
/// s = a.size(), t = b.size(). Same stopping rule as hyper_pfq.
SeriesValue q_hyper_phi(std::span<const double> a, std::span<const double> b, QParam q, double x,
                        double tol = kDefaultSeriesTol, std::size_t max_terms = kDefaultMaxTerms);

}  // namespace sigreg
