#include "sigreg/specfun.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "sigreg/double_double.hpp"
#include "sigreg/errors.hpp"

namespace sigreg {

namespace {

bool is_nonpositive_integer(double v) { return v <= 0.0 && v == std::floor(v); }

// lgamma without touching the global signgam.
double lgamma_pure(double x) {
#if defined(__GLIBC__)
    int sign = 0;
    return ::lgamma_r(x, &sign);
#else
    return std::lgamma(x);
#endif
}

// log gamma(z, a) by gamma(z, a) = a^z e^{-a} sum_{k>=0} a^k / (z (z+1) ... (z+k)).
double log_lower_gamma_series(double z, double a) {
    double term = 1.0 / z;
    double sum = term;
    for (int n = 1; n < 100000; ++n) {
        term *= a / (z + n);
        sum += term;
        if (term < sum * 1e-17) break;
    }
    return z * std::log(a) - a + std::log(sum);
}

// log Gamma(z, a) from the Legendre continued fraction, modified Lentz.
double log_upper_gamma_cf(double z, double a) {
    constexpr double tiny = 1e-300;
    double b = a + 1.0 - z;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 100000; ++i) {
        const double an = -i * (i - z);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    return z * std::log(a) - a + std::log(h);
}

void check_incomplete_args(double z, double alpha) {
    if (!(z > 0.0) || !(alpha > 0.0)) {
        throw DomainError("incomplete gamma requires z > 0 and alpha > 0");
    }
}

// Ascending Bessel series in a normalized form: I_nu(z) = exp(log_scale) * sum.
struct BesselSeries {
    double log_scale;
    double sum;
};

BesselSeries bessel_series(double nu, double z) {
    const double quarter_z2 = 0.25 * z * z;
    double log_scale = nu * std::log(0.5 * z) - lgamma_pure(nu + 1.0);
    double term = 1.0;
    double sum = 1.0;
    for (int k = 0; k < 1000000; ++k) {
        const double ratio = quarter_z2 / ((k + 1.0) * (k + 1.0 + nu));
        term *= ratio;
        sum += term;
        if (sum > 1e250) {
            log_scale += std::log(sum);
            term /= sum;
            sum = 1.0;
        }
        // Ratios decrease in k, so the remaining tail is bounded geometrically.
        const double next = quarter_z2 / ((k + 2.0) * (k + 2.0 + nu));
        if (next < 1.0 && term * next / (1.0 - next) <= 1e-17 * sum) break;
    }
    return {log_scale, sum};
}

bool use_bessel_asymptotic(double nu, double z) {
    return z > kBesselSeriesMaxArgument && 4.0 * nu * nu < z;
}

// e^{-z} I_nu(z) ~ (2 pi z)^{-1/2} sum_k (-1)^k prod_{j<=k} (4nu^2 - (2j-1)^2) / (k! (8z)^k).
double bessel_scaled_asymptotic(double nu, double z) {
    const double mu = 4.0 * nu * nu;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 200; ++k) {
        const double odd = 2.0 * k - 1.0;
        const double next = -term * (mu - odd * odd) / (8.0 * k * z);
        if (std::abs(next) > std::abs(term)) break;
        term = next;
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return sum / std::sqrt(2.0 * std::numbers::pi * z);
}

void check_bessel_args(double nu, double z) {
    if (!(nu > -1.0)) throw DomainError("bessel_i requires nu > -1");
    if (!(z >= 0.0)) throw DomainError("bessel_i requires z >= 0");
}

double bessel_at_zero(double nu) {
    if (nu == 0.0) return 1.0;
    if (nu > 0.0) return 0.0;
    return std::numeric_limits<double>::infinity();
}

}  // namespace

QParam::QParam(double q) : q_(q) {
    if (!(q > 0.0 && q < 1.0)) {
        throw DomainError("q must lie strictly inside (0, 1), got " + std::to_string(q));
    }
}

double log_gamma(double x) {
    if (!(x > 0.0)) throw DomainError("log_gamma requires x > 0");
    return lgamma_pure(x);
}

double gamma(double x) {
    if (!(x > 0.0)) throw DomainError("gamma requires x > 0");
    return std::tgamma(x);
}

double pochhammer(double x, unsigned n) {
    double p = 1.0;
    for (unsigned j = 0; j < n; ++j) {
        p *= x + j;
        if (std::abs(p) > 1e300 && j + 1 < n) {
            if (x > 0.0) {
                return std::exp(std::log(p) + lgamma_pure(x + n) - lgamma_pure(x + j + 1));
            }
            double sign = p < 0.0 ? -1.0 : 1.0;
            double log_abs = std::log(std::abs(p));
            for (unsigned i = j + 1; i < n; ++i) {
                const double f = x + i;
                if (f == 0.0) return 0.0;
                if (f < 0.0) sign = -sign;
                log_abs += std::log(std::abs(f));
            }
            return sign * std::exp(log_abs);
        }
    }
    return p;
}

double log_pochhammer(double x, unsigned n) {
    if (!(x > 0.0)) throw DomainError("log_pochhammer requires x > 0");
    if (n < 32) {
        double s = 0.0;
        for (unsigned j = 0; j < n; ++j) s += std::log(x + j);
        return s;
    }
    return lgamma_pure(x + n) - lgamma_pure(x);
}

double q_pochhammer(double a, QParam q, unsigned n) {
    double p = 1.0;
    double qj = 1.0;
    for (unsigned j = 0; j < n; ++j) {
        p *= 1.0 - a * qj;
        qj *= q.value();
    }
    return p;
}

double harmonic(unsigned n) {
    double h = 0.0;
    for (unsigned j = 1; j <= n; ++j) h += 1.0 / j;
    return h;
}

std::vector<double> elementary_symmetric_all(std::span<const double> v) {
    std::vector<double> e(v.size() + 1, 0.0);
    e[0] = 1.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        for (std::size_t j = i + 1; j >= 1; --j) e[j] += v[i] * e[j - 1];
    }
    return e;
}

double elementary_symmetric(std::span<const double> v, std::size_t j) {
    if (j > v.size()) return 0.0;
    return elementary_symmetric_all(v)[j];
}

double regularized_incomplete_gamma(GammaKind kind, double z, double alpha) {
    check_incomplete_args(z, alpha);
    const double lg = lgamma_pure(z);
    if (alpha <= z + 1.0) {
        const double p = std::exp(log_lower_gamma_series(z, alpha) - lg);
        return kind == GammaKind::lower ? p : 1.0 - p;
    }
    const double q = std::exp(log_upper_gamma_cf(z, alpha) - lg);
    return kind == GammaKind::upper ? q : 1.0 - q;
}

double incomplete_gamma(GammaKind kind, double z, double alpha) {
    check_incomplete_args(z, alpha);
    const double full = z < 170.0 ? std::tgamma(z) : std::exp(lgamma_pure(z));
    if (alpha <= z + 1.0) {
        const double lower = std::exp(log_lower_gamma_series(z, alpha));
        return kind == GammaKind::lower ? lower : full - lower;
    }
    const double upper = std::exp(log_upper_gamma_cf(z, alpha));
    return kind == GammaKind::upper ? upper : full - upper;
}

double incomplete_pochhammer(GammaKind kind, double x, double alpha, unsigned n) {
    check_incomplete_args(x, alpha);
    const double reg = regularized_incomplete_gamma(kind, x + n, alpha);
    if (reg <= 0.0) return 0.0;
    return std::exp(std::log(reg) + log_pochhammer(x, n));
}

double bessel_i(double nu, double z) {
    check_bessel_args(nu, z);
    if (z > kBesselSeriesMaxArgument) {
        throw RangeError("bessel_i: z = " + std::to_string(z) +
                         " is beyond the series working range (z <= 50); "
                         "use bessel_i_scaled or log_bessel_i");
    }
    if (z == 0.0) return bessel_at_zero(nu);
    const BesselSeries s = bessel_series(nu, z);
    return std::exp(s.log_scale) * s.sum;
}

double bessel_i_scaled(double nu, double z) {
    check_bessel_args(nu, z);
    if (z == 0.0) return bessel_at_zero(nu);
    if (use_bessel_asymptotic(nu, z)) return bessel_scaled_asymptotic(nu, z);
    const BesselSeries s = bessel_series(nu, z);
    return std::exp(s.log_scale - z) * s.sum;
}

double log_bessel_i(double nu, double z) {
    check_bessel_args(nu, z);
    if (!(z > 0.0)) throw DomainError("log_bessel_i requires z > 0");
    if (use_bessel_asymptotic(nu, z)) return std::log(bessel_scaled_asymptotic(nu, z)) + z;
    const BesselSeries s = bessel_series(nu, z);
    return s.log_scale + std::log(s.sum);
}

SeriesValue hyper_pfq(std::span<const double> a, std::span<const double> b, double x, double tol,
                      std::size_t max_terms) {
    for (double bj : b) {
        if (is_nonpositive_integer(bj)) {
            throw DomainError("hyper_pfq: lower parameter is a nonpositive integer");
        }
    }
    bool terminating = false;
    double excess = 0.0;
    for (double ai : a) {
        terminating = terminating || is_nonpositive_integer(ai);
        excess -= ai;
    }
    for (double bj : b) excess += bj;

    if (!terminating && x != 0.0) {
        const std::size_t p = a.size();
        const std::size_t q = b.size();
        if (p > q + 1) throw DomainError("hyper_pfq: series diverges for p > q+1");
        if (p == q + 1 && (std::abs(x) > 1.0 || (std::abs(x) == 1.0 && excess <= 0.0))) {
            throw DomainError("hyper_pfq: x outside the convergence disc");
        }
    }

    DoubleDouble term(1.0);
    DoubleDouble sum(1.0);
    int small_run = 0;
    for (std::size_t k = 0; k < max_terms; ++k) {
        const DoubleDouble kk(static_cast<double>(k));
        DoubleDouble num(x);
        DoubleDouble den(static_cast<double>(k + 1));
        for (double ai : a) num *= DoubleDouble(ai) + kk;
        for (double bj : b) den *= DoubleDouble(bj) + kk;
        term = term * num / den;
        sum += term;
        if (std::abs(term.hi) <= tol * std::abs(sum.hi)) {
            if (++small_run >= 3) return {to_double(sum), std::abs(term.hi), k + 2};
        } else {
            small_run = 0;
        }
    }
    throw TruncationError("hyper_pfq: term cap reached before convergence", to_double(sum));
}

SeriesValue q_hyper_phi(std::span<const double> a, std::span<const double> b, QParam q, double x,
                        double tol, std::size_t max_terms) {
    const long exponent = 1 + static_cast<long>(b.size()) - static_cast<long>(a.size());
    double term = 1.0;
    double sum = 1.0;
    double qk = 1.0;
    int small_run = 0;
    for (std::size_t k = 0; k < max_terms; ++k) {
        double factor = x / (1.0 - qk * q.value());
        for (double ai : a) factor *= 1.0 - ai * qk;
        for (double bj : b) {
            const double f = 1.0 - bj * qk;
            if (std::abs(f) < 1e-14) throw DomainError("q_hyper_phi: (b;q)_k vanishes");
            factor /= f;
        }
        const double balance = std::pow(-qk, static_cast<double>(exponent));
        factor *= balance;
        term *= factor;
        sum += term;
        qk *= q.value();
        if (std::abs(term) <= tol * std::abs(sum)) {
            if (++small_run >= 3) return {sum, std::abs(term), k + 2};
        } else {
            small_run = 0;
        }
    }
    throw TruncationError("q_hyper_phi: term cap reached before convergence", sum);
}

}  // namespace sigreg
