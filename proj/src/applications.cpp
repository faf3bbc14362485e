#include "sigreg/applications.hpp"

#include <algorithm>
#include <cmath>

#include "sigreg/errors.hpp"

namespace sigreg {

namespace {

void require_positive_entries(std::span<const double> v, const char* what) {
    for (double e : v) {
        if (!(e > 0.0) || !std::isfinite(e)) throw DomainError(std::string(what) + " entries must be positive");
    }
}

bool leq(double x, double y) { return x <= y + 1e-12 * std::max(std::abs(x), std::abs(y)); }

// e_n(b)/e_m(a) <= e_{n-1}(b)/e_{m-1}(a) <= ... <= e_{n-m}(b)/e_0(a).
bool chain_condition(const std::vector<double>& a, const std::vector<double>& b) {
    const std::size_t m = a.size(), n = b.size();
    if (m > n) return false;
    const std::vector<double> ea = elementary_symmetric_all(a);
    const std::vector<double> eb = elementary_symmetric_all(b);
    double prev = -std::numeric_limits<double>::infinity();
    for (std::size_t j = m + 1; j-- > 0;) {
        const double r = eb[n - m + j] / ea[j];
        if (!leq(prev, r)) return false;
        prev = r;
    }
    return true;
}

// Sorted partial sums x_1 + ... + x_k <= y_1 + ... + y_k for k <= count.
bool partial_sums_leq(const std::vector<double>& x, const std::vector<double>& y, std::size_t count) {
    if (count > x.size() || count > y.size()) return false;
    double sx = 0.0, sy = 0.0;
    for (std::size_t k = 0; k < count; ++k) {
        sx += x[k];
        sy += y[k];
        if (!leq(sx, sy)) return false;
    }
    return true;
}

std::vector<double> geometric(double lo, double hi, std::size_t n) {
    std::vector<double> g(n);
    const double r = std::log(hi / lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) g[i] = lo * std::exp(r * static_cast<double>(i));
    g.back() = hi;
    return g;
}

std::vector<double> concat(const std::vector<double>& u, const std::vector<double>& v) {
    std::vector<double> w(u);
    w.insert(w.end(), v.begin(), v.end());
    return w;
}

std::vector<double> shifted(const std::vector<double>& v, double mu) {
    std::vector<double> w(v);
    for (double& e : w) e += mu;
    return w;
}

double pochhammer_product_1(const std::vector<double>& v) {
    double p = 1.0;
    for (double e : v) p *= e;
    return p;
}

double relative_tol(std::span<const double> v, double rel) {
    double m = 0.0;
    for (double e : v) m = std::max(m, std::abs(e));
    return rel * m;
}

bool is_even_positive_integer(double v) {
    return v > 0.0 && std::abs(v - 2.0 * std::round(v / 2.0)) < 1e-12;
}

}  // namespace

std::vector<double> q_transform(std::span<const double> a, QParam q) {
    std::vector<double> out;
    out.reserve(a.size());
    for (double e : a) out.push_back(std::pow(q.value(), -e) - 1.0);
    return out;
}

RMonotoneReport check_R_monotone(std::span<const double> a_in, std::span<const double> b_in,
                                 std::optional<QParam> q_mode) {
    RMonotoneReport r;
    r.a = q_mode ? q_transform(a_in, *q_mode) : std::vector<double>(a_in.begin(), a_in.end());
    r.b = q_mode ? q_transform(b_in, *q_mode) : std::vector<double>(b_in.begin(), b_in.end());
    require_positive_entries(r.a, "a");
    require_positive_entries(r.b, "b");
    std::sort(r.a.begin(), r.a.end());
    std::sort(r.b.begin(), r.b.end());

    r.chain_applicable = r.a.size() <= r.b.size();
    r.majorization_applicable = r.chain_applicable;
    if (r.chain_applicable) {
        const std::size_t m = r.a.size();
        r.chain_holds = chain_condition(r.a, r.b);
        // 1/(t+x) is convex and decreasing in t, so the m smallest b must be
        // dominated by a for every factor pairing to pull R down.
        r.majorization_holds = partial_sums_leq(r.b, r.a, m);
        r.majorization_as_printed = partial_sums_leq(r.a, r.b, m);
    }
    if (r.b.size() <= r.a.size()) {
        r.reciprocal_chain_holds = chain_condition(r.b, r.a);
        r.reciprocal_majorization_holds = partial_sums_leq(r.a, r.b, r.b.size());
    }

    r.grid = geometric(1e-3, 1e3, 121);
    bool all_neg = true, all_pos = true, none_pos = true, none_neg = true;
    for (double x : r.grid) {
        double s = 0.0, mag = 0.0;
        for (double v : r.a) {
            s += 1.0 / (v + x);
            mag += 1.0 / (v + x);
        }
        for (double v : r.b) {
            s -= 1.0 / (v + x);
            mag += 1.0 / (v + x);
        }
        r.log_derivative.push_back(s);
        const double tol = 1e-13 * mag;
        all_neg = all_neg && s < -tol;
        all_pos = all_pos && s > tol;
        none_pos = none_pos && s <= tol;
        none_neg = none_neg && s >= -tol;
    }
    r.numeric_decreasing = all_neg;
    r.numeric_increasing = all_pos;
    const bool claims_decreasing = r.chain_holds || r.majorization_holds;
    const bool claims_increasing = r.reciprocal_chain_holds || r.reciprocal_majorization_holds;
    r.contradiction = (claims_decreasing && !none_pos) || (claims_increasing && !none_neg);
    return r;
}

void HypergeometricRatioSpec::validate() const {
    for (double v : d) {
        if (!(v >= 0.0)) throw DomainError("shared lower parameters d must be nonnegative");
    }
    for (double v : c) {
        if (!(v >= 0.0)) throw DomainError("shared upper parameters c must be nonnegative");
    }
    require_positive_entries(b1, "b1");
    require_positive_entries(a2, "a2");
    require_positive_entries(a1, "a1");
    require_positive_entries(b2, "b2");
    if (!std::isfinite(x)) throw InputError("x must be finite");
    for (std::size_t i = 0; i < mu_grid.size(); ++i) {
        if (!(mu_grid[i] > 0.0)) throw DomainError("mu grid must be positive");
        if (i > 0 && !(mu_grid[i] > mu_grid[i - 1])) throw InputError("mu grid must increase strictly");
    }
}

double hypergeometric_ratio(const HypergeometricRatioSpec& spec, double mu) {
    if (!(mu > 0.0)) throw DomainError("hypergeometric_ratio needs mu > 0");
    const std::vector<double> cm = shifted(spec.c, mu);
    const std::vector<double> dm = shifted(spec.d, mu);
    const double num = hyper_pfq(concat(cm, spec.a1), concat(dm, spec.b1), spec.x, spec.tol, spec.max_terms).value;
    const double den = hyper_pfq(concat(cm, spec.b2), concat(dm, spec.a2), spec.x, spec.tol, spec.max_terms).value;
    if (!(std::abs(den) > 1e-300)) throw DegeneracyError("hypergeometric denominator vanishes", mu);
    return num / den;
}

void hypergeometric_coefficients(const HypergeometricRatioSpec& spec, std::vector<double>& f,
                                 std::vector<double>& g) {
    f.assign(1, 1.0);
    g.assign(1, 1.0);
    // t_k = f_k (k-1)! tracks the weight the factorial endpoint formula uses.
    double tf = 0.0, tg = 0.0, sf = 1.0, sg = 1.0, stf = 0.0, stg = 0.0;
    int quiet = 0;
    for (std::size_t k = 0; k + 1 < spec.max_terms; ++k) {
        const double kd = static_cast<double>(k);
        double rf = spec.x / (kd + 1.0), rg = rf;
        for (double v : spec.a1) rf *= v + kd;
        for (double v : spec.b1) rf /= v + kd;
        for (double v : spec.b2) rg *= v + kd;
        for (double v : spec.a2) rg /= v + kd;
        f.push_back(f.back() * rf);
        g.push_back(g.back() * rg);
        tf = k == 0 ? f.back() : tf * rf * kd;
        tg = k == 0 ? g.back() : tg * rg * kd;
        sf += std::abs(f.back());
        sg += std::abs(g.back());
        stf += std::abs(tf);
        stg += std::abs(tg);
        const double eps = spec.tol;
        const bool small = std::abs(f.back()) <= eps * sf && std::abs(g.back()) <= eps * sg &&
                           std::abs(tf) <= eps * stf && std::abs(tg) <= eps * stg;
        quiet = small ? quiet + 1 : 0;
        if (quiet >= 3) return;
        if (!std::isfinite(tf) || !std::isfinite(tg)) break;
    }
    throw TruncationError("hypergeometric coefficients did not settle", sf);
}

double hypergeometric_upper_endpoint_derivative(const HypergeometricRatioSpec& spec) {
    const std::vector<double> one{1.0};
    auto plus1 = [](const std::vector<double>& v) { return shifted(v, 1.0); };
    const std::vector<double> num_upper = concat(concat({1.0, 1.0}, plus1(spec.a1)), {});
    const std::vector<double> num_lower = concat({2.0}, plus1(spec.b1));
    const std::vector<double> den_upper = concat({1.0, 1.0}, plus1(spec.b2));
    const std::vector<double> den_lower = concat({2.0}, plus1(spec.a2));
    const double tn = pochhammer_product_1(spec.a1) / pochhammer_product_1(spec.b1) *
                      hyper_pfq(num_upper, num_lower, spec.x, spec.tol, spec.max_terms).value;
    const double td = pochhammer_product_1(spec.b2) / pochhammer_product_1(spec.a2) *
                      hyper_pfq(den_upper, den_lower, spec.x, spec.tol, spec.max_terms).value;
    return spec.x * (tn - td);
}

HypergeometricClassification classify_hypergeometric_ratio(const HypergeometricRatioSpec& spec) {
    spec.validate();
    if (spec.mu_grid.empty()) throw InputError("mu grid is empty");
    HypergeometricClassification out;
    out.mu = spec.mu_grid;
    for (double mu : spec.mu_grid) out.values.push_back(hypergeometric_ratio(spec, mu));
    out.verdict = classify_unimodality_samples(out.mu, out.values, relative_tol(out.values, kDefaultRelativeZeroTol));
    if (out.values.size() >= 2) out.tail_decreasing = out.values.back() < out.values[out.values.size() - 2];

    const bool upper = spec.c == std::vector<double>{0.0} && spec.d.empty();
    const bool lower = spec.c.empty() && spec.d == std::vector<double>{0.0};
    out.placement = upper ? MuPlacement::upper_only : lower ? MuPlacement::lower_only : MuPlacement::general;

    if (!spec.c.empty() && spec.c.size() == spec.d.size()) {
        out.signature = gamma_ratio_kernel(spec.c, spec.d).catalog_signature();
    } else if (!spec.c.empty() && spec.d.empty()) {
        out.signature = gamma_product_kernel(spec.c).catalog_signature();
    } else if (spec.c.empty() && spec.d.size() == 1) {
        out.signature = inverse_pochhammer_kernel().catalog_signature();
    }

    const std::vector<double> a = concat(spec.a1, spec.a2);
    const std::vector<double> b = concat(spec.b1, spec.b2);
    out.r_report = check_R_monotone(a, b);

    std::vector<double> f, g;
    hypergeometric_coefficients(spec, f, g);
    std::vector<double> quotients;
    for (std::size_t k = 0; k < f.size() && g[k] != 0.0; ++k) quotients.push_back(f[k] / g[k]);
    out.coefficient_verdict = classify_unimodality_sequence(quotients, relative_tol(quotients, 1e-13));

    out.contradiction = out.signature.has_value() && out.coefficient_verdict.unimodal() && !out.verdict.unimodal();

    if (spec.x > 0.0) {
        if (upper) {
            out.endpoint_derivative = hypergeometric_upper_endpoint_derivative(spec);
            out.endpoint_derivative_check =
                factorial_endpoint_derivative(finite_series_spec(SeriesFamily::factorial, f, g));
        } else if (lower) {
            out.endpoint_derivative =
                inverse_factorial_endpoint_derivative(finite_series_spec(SeriesFamily::inverse_factorial, f, g));
        }
    }
    if (out.endpoint_derivative && std::abs(*out.endpoint_derivative) < kBoundaryInconclusiveTol) {
        out.boundary_inconclusive = true;
    }
    return out;
}

void NuttallSpec::validate() const {
    if (!(mu > 0.0)) throw DomainError("Nuttall Q needs mu > 0");
    if (!(nu > -1.0)) throw DomainError("Nuttall Q needs nu > -1");
    if (!(a > 0.0)) throw DomainError("Nuttall Q needs a > 0");
    if (!(b >= 0.0) || !std::isfinite(b)) throw DomainError("Nuttall Q needs b >= 0");
    quadrature.validate();
}

double nuttall_q(const NuttallSpec& spec) {
    spec.validate();
    const double mu = spec.mu, nu = spec.nu, a = spec.a;
    // x^mu e^{-(x^2+a^2)/2} I_nu(ax) = exp(mu ln x - (x-a)^2/2) * e^{-ax} I_nu(ax)
    const Integrand f = [=](double x) {
        if (x <= 0.0) return 0.0;
        const double g = std::exp(mu * std::log(x) - 0.5 * (x - a) * (x - a));
        return g == 0.0 ? 0.0 : g * bessel_i_scaled(nu, a * x);
    };
    const double limit = std::max(spec.b, a) + 40.0;
    return integrate_marching(f, spec.b, 1.0, 1.0, limit, spec.quadrature.rel_tol, spec.quadrature).value;
}

double nuttall_q_kummer(double mu, double nu, double a) {
    const double s = 0.5 * (mu + nu + 1.0);
    const double upper[] = {s};
    const double lower[] = {nu + 1.0};
    const double log_pref = 0.5 * (mu - nu - 1.0) * std::log(2.0) + nu * std::log(a) - 0.5 * a * a +
                            log_gamma(s) - log_gamma(nu + 1.0);
    return std::exp(log_pref) * hyper_pfq(upper, lower, 0.5 * a * a).value;
}

NuttallRatioReport classify_nuttall_ratio(double nu1, double nu2, double a1, double a2, double b,
                                          std::span<const double> mu_grid, const QuadratureSpec& quadrature) {
    if (mu_grid.empty()) throw InputError("mu grid is empty");
    require_strictly_increasing(mu_grid, "classify_nuttall_ratio");
    NuttallRatioReport r;
    r.hypotheses_hold = b >= 0.0 && a1 > 0.0 && a1 <= a2 && is_even_positive_integer(nu1 - nu2);
    if (!r.hypotheses_hold) r.warning = "outside the theorem hypotheses; verdict is exploratory";
    r.mu.assign(mu_grid.begin(), mu_grid.end());
    for (double mu : mu_grid) {
        const double num = nuttall_q({mu, nu1, a1, b, quadrature});
        const double den = nuttall_q({mu, nu2, a2, b, quadrature});
        if (!(den > 0.0)) throw DegeneracyError("Nuttall denominator vanishes", mu);
        r.values.push_back(num / den);
    }
    const double tol = std::max(kDefaultRelativeZeroTol, 10.0 * quadrature.rel_tol);
    r.verdict = classify_unimodality_samples(r.mu, r.values, relative_tol(r.values, tol));
    r.contradiction = r.hypotheses_hold && !r.verdict.unimodal();
    return r;
}

BesselRatioReport scan_bessel_ratio(double nu1, double nu2, double a1, double a2, std::span<const double> x_grid) {
    if (!(nu2 > -1.0) || !(nu1 >= nu2)) throw DomainError("Bessel ratio scan needs nu1 >= nu2 > -1");
    if (!(a1 > 0.0) || !(a1 <= a2)) throw DomainError("Bessel ratio scan needs 0 < a1 <= a2");
    if (x_grid.empty()) throw InputError("x grid is empty");
    require_strictly_increasing(x_grid, "scan_bessel_ratio");
    if (!(x_grid.front() > 0.0)) throw DomainError("x grid must be positive");
    BesselRatioReport r;
    r.x.assign(x_grid.begin(), x_grid.end());
    std::vector<double> logs;
    for (double x : x_grid) {
        const double l = log_bessel_i(nu1, a1 * x) - log_bessel_i(nu2, a2 * x);
        logs.push_back(l);
        r.values.push_back(std::exp(l));
    }
    r.verdict = classify_unimodality_samples(r.x, r.values, relative_tol(r.values, kDefaultRelativeZeroTol));
    r.theorem_backed = nu1 == nu2 || is_even_positive_integer(nu1 - nu2);
    r.log_concavity_checked = nu2 > 0.0;
    if (r.log_concavity_checked) {
        for (std::size_t i = 1; i + 1 < logs.size(); ++i) {
            const double h1 = r.x[i] - r.x[i - 1], h2 = r.x[i + 1] - r.x[i];
            const double d2 = 2.0 * ((logs[i + 1] - logs[i]) / h2 - (logs[i] - logs[i - 1]) / h1) / (h1 + h2);
            const double noise = 64.0 * std::numeric_limits<double>::epsilon() *
                                 (std::abs(logs[i - 1]) + std::abs(logs[i]) + std::abs(logs[i + 1]) + 1.0) /
                                 (std::min(h1, h2) * (h1 + h2));
            if (d2 > noise) r.log_concavity_violations.push_back(r.x[i]);
        }
        r.log_concave = r.log_concavity_violations.empty();
    }
    r.counterexample = !r.verdict.unimodal() || (r.log_concavity_checked && !r.log_concave);
    if (r.theorem_backed) r.label = "theorem-backed";
    return r;
}

SRReport scan_product_kernel(const KernelDescriptor& f1, const KernelDescriptor& f2, std::span<const double> xs,
                             std::span<const double> ys, const CertifyOptions& opts) {
    if (!f1.translation_type() || !f2.translation_type()) {
        throw InputError("product scan needs translation kernels F(x+y)");
    }
    SRReport rep = certify_sign_regularity(product_kernel(f1, f2), xs, ys, opts);
    rep.exploratory = true;
    return rep;
}

MeijerWeightReport meijer_weight_conditions(std::span<const double> c, std::span<const double> d,
                                            std::span<const double> t_grid) {
    if (c.empty() || c.size() != d.size()) throw DomainError("Meijer weight test needs c, d of equal length p >= 1");
    MeijerWeightReport r;
    r.majorization = partial_sums_dominated(c, d);
    r.min_v = std::numeric_limits<double>::infinity();
    for (double t : t_grid) {
        if (!(t > 0.0 && t < 1.0)) throw DomainError("t grid must lie in (0, 1)");
        double v = 0.0;
        for (std::size_t j = 0; j < c.size(); ++j) v += std::pow(t, c[j]) - std::pow(t, d[j]);
        if (v < r.min_v) {
            r.min_v = v;
            r.argmin_t = t;
        }
    }
    if (t_grid.empty()) r.min_v = 0.0;
    r.v_nonnegative = r.min_v >= -1e-12;
    r.cross_check_ok = !r.majorization || r.v_nonnegative;
    return r;
}

}  // namespace sigreg
