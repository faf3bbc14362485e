#include "sigreg/ratios.hpp"

#include <algorithm>
#include <cmath>

#include "sigreg/errors.hpp"

namespace sigreg {

namespace {

struct SeriesFamilyName {
    SeriesFamily family;
    const char* name;
};

constexpr SeriesFamilyName kSeriesNames[] = {
    {SeriesFamily::power, "power"},
    {SeriesFamily::dirichlet, "dirichlet"},
    {SeriesFamily::factorial, "factorial"},
    {SeriesFamily::inverse_factorial, "inverse_factorial"},
    {SeriesFamily::q_factorial, "q_factorial"},
    {SeriesFamily::inverse_q_factorial, "inverse_q_factorial"},
    {SeriesFamily::stieltjes, "stieltjes"},
    {SeriesFamily::gamma_ratio, "gamma_ratio"},
};

constexpr double kInverseFactorialMinX = 1e-8;
constexpr double kDenominatorFloor = 1e-300;

// phi_k(x) by forward recurrence; for dirichlet the values carry a common
// factor e^{-shift}.
class PhiStepper {
public:
    PhiStepper(const SeriesRatioSpec& s, double x, double shift) : s_(s), x_(x), shift_(shift) {
        if (s.family == SeriesFamily::q_factorial || s.family == SeriesFamily::inverse_q_factorial) {
            qx_ = std::pow(s.q, x);
        }
        phi_ = at_zero();
    }

    double value() const { return phi_; }

    // Moves from phi_k to phi_{k+1}.
    void advance(std::size_t k) {
        const double kd = static_cast<double>(k);
        switch (s_.family) {
            case SeriesFamily::power: phi_ *= x_; break;
            case SeriesFamily::dirichlet: phi_ = std::exp(s_.lambda(k + 1) * x_ - shift_); break;
            case SeriesFamily::factorial: phi_ *= x_ + kd; break;
            case SeriesFamily::inverse_factorial: phi_ /= x_ + kd; break;
            case SeriesFamily::q_factorial: phi_ *= 1.0 - qx_; qx_ *= s_.q; break;
            case SeriesFamily::inverse_q_factorial: phi_ /= 1.0 - qx_; qx_ *= s_.q; break;
            case SeriesFamily::stieltjes: phi_ = std::pow(x_ + kd + 1.0, -s_.alpha); break;
            case SeriesFamily::gamma_ratio:
                for (std::size_t i = 0; i < s_.c.size(); ++i) phi_ *= (x_ + s_.c[i] + kd) / (x_ + s_.d[i] + kd);
                break;
        }
    }

private:
    double at_zero() const {
        switch (s_.family) {
            case SeriesFamily::dirichlet: return std::exp(s_.lambda(0) * x_ - shift_);
            case SeriesFamily::stieltjes: return std::pow(x_, -s_.alpha);
            default: return 1.0;
        }
    }

    const SeriesRatioSpec& s_;
    double x_;
    double shift_;
    double qx_ = 0.0;
    double phi_ = 1.0;
};

void check_point(const SeriesRatioSpec& s, double x) {
    if (!std::isfinite(x) || !s.interval.contains(x)) {
        throw DomainError("x = " + std::to_string(x) + " lies outside the series interval");
    }
    if (s.family == SeriesFamily::inverse_factorial && x < kInverseFactorialMinX) {
        throw DomainError("inverse factorial series are not evaluated below x = 1e-8");
    }
    if ((s.family == SeriesFamily::stieltjes || s.family == SeriesFamily::factorial ||
         s.family == SeriesFamily::inverse_factorial || s.family == SeriesFamily::q_factorial ||
         s.family == SeriesFamily::inverse_q_factorial) && !(x > 0.0)) {
        throw DomainError(to_string(s.family) + " series need x > 0");
    }
    if (s.family == SeriesFamily::gamma_ratio) {
        for (std::size_t i = 0; i < s.c.size(); ++i) {
            if (!(x + s.c[i] > 0.0) || !(x + s.d[i] > 0.0)) throw DomainError("gamma_ratio series need x + c_i, x + d_i > 0");
        }
    }
}

struct Sums {
    double a = 0.0, b = 0.0, scale = 0.0, tail_a = 0.0, tail_b = 0.0, shift = 0.0;
    std::size_t terms = 0;
};

Sums sum_series(const SeriesRatioSpec& s, double x) {
    check_point(s, x);
    Sums out;
    if (s.family == SeriesFamily::dirichlet && !s.generated()) {
        double m = -std::numeric_limits<double>::infinity();
        for (double l : s.lambdas) m = std::max(m, l * x);
        out.shift = m;
    }
    PhiStepper phi(s, x, out.shift);
    const std::size_t n = s.active_length();
    int quiet = 0;
    for (std::size_t k = 0; k < n; ++k) {
        if (k > 0) phi.advance(k - 1);
        const double p = phi.value();
        const double bk = s.coeff_b(k);
        if (s.generated() && !(bk > 0.0)) {
            throw InputError("b_" + std::to_string(k) + " must be positive");
        }
        const double ta = s.coeff_a(k) * p;
        const double tb = bk * p;
        if (!std::isfinite(ta) || !std::isfinite(tb)) {
            throw RangeError("series term " + std::to_string(k) + " is not finite at x = " + std::to_string(x));
        }
        out.a += ta;
        out.b += tb;
        out.scale += std::abs(tb);
        out.tail_a = std::abs(ta);
        out.tail_b = std::abs(tb);
        out.terms = k + 1;
        if (s.generated()) {
            const bool small = std::abs(ta) <= s.truncation.tol * std::abs(out.a) &&
                               std::abs(tb) <= s.truncation.tol * std::abs(out.b);
            quiet = small ? quiet + 1 : 0;
            if (quiet >= 3) return out;
        }
    }
    if (s.generated()) {
        throw TruncationError("series did not settle within " + std::to_string(n) + " terms at x = " +
                                  std::to_string(x),
                              out.b);
    }
    return out;
}

void validate_shared(const SeriesRatioSpec& s) {
    switch (s.family) {
        case SeriesFamily::q_factorial:
        case SeriesFamily::inverse_q_factorial:
            (void)QParam(s.q);
            break;
        case SeriesFamily::stieltjes:
            if (!(s.alpha > 0.0)) throw DomainError("stieltjes alpha must be positive");
            break;
        case SeriesFamily::gamma_ratio:
            if (s.c.empty() || s.c.size() != s.d.size()) throw InputError("gamma_ratio series need c, d of equal nonzero length");
            for (std::size_t i = 0; i < s.c.size(); ++i) {
                if (!(s.c[i] >= 0.0) || !(s.d[i] >= 0.0)) throw DomainError("gamma_ratio c, d must be nonnegative");
            }
            break;
        default:
            break;
    }
    if (!(s.interval.lo < s.interval.hi)) throw InputError("series interval must be nonempty");
    if (s.truncation.max_terms == 0 || !(s.truncation.tol > 0.0)) throw InputError("invalid truncation policy");
}

double relative_tol(std::span<const double> v, double rel) {
    double m = 0.0;
    for (double e : v) m = std::max(m, std::abs(e));
    return rel * m;
}

bool is_strict_monotone(UnimodalityClass c) {
    return c == UnimodalityClass::increasing || c == UnimodalityClass::decreasing;
}

UnimodalityClass flip(UnimodalityClass c) {
    switch (c) {
        case UnimodalityClass::increasing: return UnimodalityClass::decreasing;
        case UnimodalityClass::decreasing: return UnimodalityClass::increasing;
        case UnimodalityClass::up_down: return UnimodalityClass::down_up;
        case UnimodalityClass::down_up: return UnimodalityClass::up_down;
        default: return c;
    }
}

// Orientation rules of the ratio theorems, applied to grid verdicts.
void annotate(RatioClassification& r) {
    if (!r.signature) {
        r.exploratory = true;
        r.note = "no catalog signature; verdict is descriptive only";
        return;
    }
    const Signature3& e = *r.signature;
    r.orientation = e[1] * e[2];
    r.monotone_orientation = e[0] * e[1];
    const auto coef = r.coefficient_verdict.cls;
    const auto got = r.verdict.cls;
    if (!r.coefficient_verdict.unimodal()) {
        r.note = "a/b is not unimodal; the theorem makes no claim";
        return;
    }
    if (got == UnimodalityClass::not_unimodal) {
        r.theorem_consistent = false;
        r.orientation_consistent = false;
        r.note = "contradiction: unimodal a/b and SR_3 kernel but F is not unimodal on the grid";
        return;
    }
    if (!r.verdict.monotone()) {
        if (r.coefficient_verdict.monotone()) {
            r.orientation_consistent = false;
            r.note = "F changes direction although a/b is monotone";
        } else {
            const auto expected = *r.orientation > 0 ? coef : flip(coef);
            r.orientation_consistent = got == expected;
            r.note = *r.orientation > 0 ? "pattern preserved" : "pattern reversed";
            if (!r.orientation_consistent) r.note += " expected but not observed";
        }
    } else if (is_strict_monotone(got) && is_strict_monotone(coef)) {
        const auto expected = *r.monotone_orientation > 0 ? coef : flip(coef);
        r.orientation_consistent = got == expected;
        r.note = r.orientation_consistent ? "monotone in the predicted direction"
                                          : "monotone against the predicted direction";
    } else {
        r.note = "monotone";
    }
}

// Materializes a, b up to the point where weight(k) * (|a_k| + b_k) becomes
// negligible, for the closed endpoint formulas on generated specs.
void materialize(const SeriesRatioSpec& s, const std::function<double(std::size_t)>& weight,
                 std::vector<double>& a, std::vector<double>& b) {
    if (!s.generated()) {
        a = s.a;
        b = s.b;
        return;
    }
    a.clear();
    b.clear();
    double total = 0.0;
    int quiet = 0;
    for (std::size_t k = 0; k < s.truncation.max_terms; ++k) {
        a.push_back(s.coeff_a(k));
        b.push_back(s.coeff_b(k));
        const double t = k == 0 ? 0.0 : weight(k) * (std::abs(a.back()) + std::abs(b.back()));
        total += t;
        quiet = (k > 1 && t <= s.truncation.tol * total) ? quiet + 1 : 0;
        if (quiet >= 3) return;
    }
    throw TruncationError("endpoint formula did not converge within the term cap", total);
}

double factorial_weight(std::size_t k) { return std::exp(log_gamma(static_cast<double>(k))); }

}  // namespace

std::string to_string(SeriesFamily f) {
    for (const auto& e : kSeriesNames) {
        if (e.family == f) return e.name;
    }
    return "unknown";
}

SeriesFamily series_family_from_string(const std::string& s) {
    for (const auto& e : kSeriesNames) {
        if (s == e.name) return e.family;
    }
    throw InputError("unknown series family '" + s + "'");
}

KernelDescriptor family_kernel(SeriesFamily f, double q, double alpha, std::vector<double> c,
                               std::vector<double> d) {
    switch (f) {
        case SeriesFamily::power: return power_kernel();
        case SeriesFamily::dirichlet: return exponential_kernel();
        case SeriesFamily::factorial: return pochhammer_kernel();
        case SeriesFamily::inverse_factorial: return inverse_pochhammer_kernel();
        case SeriesFamily::q_factorial: return q_pochhammer_kernel(q);
        case SeriesFamily::inverse_q_factorial: return inverse_q_pochhammer_kernel(q);
        case SeriesFamily::stieltjes: return stieltjes_kernel(alpha);
        case SeriesFamily::gamma_ratio: return gamma_ratio_kernel(std::move(c), std::move(d));
    }
    throw InputError("unknown series family");
}

double SeriesRatioSpec::coeff_a(std::size_t k) const { return generated() ? a_gen(k) : a[k]; }
double SeriesRatioSpec::coeff_b(std::size_t k) const { return generated() ? b_gen(k) : b[k]; }
double SeriesRatioSpec::lambda(std::size_t k) const {
    if (lambda_gen) return lambda_gen(k);
    return lambdas.at(k);
}

std::size_t SeriesRatioSpec::active_length() const {
    return generated() ? truncation.max_terms : a.size();
}

void SeriesRatioSpec::validate() const {
    validate_shared(*this);
    if (generated()) {
        if (!a_gen || !b_gen) throw InputError("series spec needs coefficients or generators");
        if (family == SeriesFamily::dirichlet && !lambda_gen) throw InputError("generated dirichlet specs need lambda_gen");
        return;
    }
    if (a.size() != b.size()) throw InputError("a and b must share the active length");
    for (std::size_t k = 0; k < b.size(); ++k) {
        if (!(b[k] > 0.0) || !std::isfinite(b[k])) throw InputError("b_" + std::to_string(k) + " must be positive");
        if (!std::isfinite(a[k])) throw InputError("a_" + std::to_string(k) + " must be finite");
    }
    if (family == SeriesFamily::dirichlet && !lambda_gen) {
        if (lambdas.size() != a.size()) throw InputError("dirichlet specs need one exponent per coefficient");
        for (std::size_t k = 1; k < lambdas.size(); ++k) {
            if (!(lambdas[k] > lambdas[k - 1])) throw InputError("dirichlet exponents must increase strictly");
        }
    }
}

SeriesRatioSpec finite_series_spec(SeriesFamily f, std::vector<double> a, std::vector<double> b,
                                   Interval interval) {
    SeriesRatioSpec s;
    s.family = f;
    s.a = std::move(a);
    s.b = std::move(b);
    s.interval = interval;
    return s;
}

SeriesValue eval_series(const SeriesRatioSpec& spec, SeriesPart which, double x) {
    spec.validate();
    const Sums s = sum_series(spec, x);
    const double f = std::exp(s.shift);
    if (which == SeriesPart::numerator) return {s.a * f, s.tail_a * f, s.terms};
    return {s.b * f, s.tail_b * f, s.terms};
}

RatioPoint eval_ratio_point(const SeriesRatioSpec& spec, double x) {
    spec.validate();
    const Sums s = sum_series(spec, x);
    if (!(std::abs(s.b) >= kDenominatorFloor * s.scale) || s.b == 0.0) {
        throw DegeneracyError("denominator vanishes at x = " + std::to_string(x), x);
    }
    return {x, s.a, s.b, s.a / s.b};
}

double eval_ratio(const SeriesRatioSpec& spec, double x) { return eval_ratio_point(spec, x).value; }

std::vector<double> coefficient_quotients(const SeriesRatioSpec& spec, std::size_t limit) {
    const std::size_t n = std::min(spec.active_length(), limit);
    std::vector<double> q(n);
    for (std::size_t k = 0; k < n; ++k) q[k] = spec.coeff_a(k) / spec.coeff_b(k);
    return q;
}

RatioClassification classify_ratio(const SeriesRatioSpec& spec, std::span<const double> grid,
                                   const ClassifyOptions& opts) {
    spec.validate();
    if (grid.empty()) throw InputError("classification grid is empty");
    require_strictly_increasing(grid, "classify_ratio");
    RatioClassification r;
    std::vector<double> values;
    values.reserve(grid.size());
    for (double x : grid) {
        r.points.push_back(eval_ratio_point(spec, x));
        values.push_back(r.points.back().value);
    }
    r.verdict = classify_unimodality_samples(grid, values, relative_tol(values, opts.zero_tol_rel));
    const std::vector<double> quotients = coefficient_quotients(spec, spec.generated() ? 200 : SIZE_MAX);
    r.coefficient_verdict =
        classify_unimodality_sequence(quotients, relative_tol(quotients, opts.coefficient_tol_rel));

    const bool power_off_half_line = spec.family == SeriesFamily::power && spec.interval.lo < 0.0;
    if (!power_off_half_line) {
        r.signature = family_kernel(spec.family, spec.q, spec.alpha, spec.c, spec.d).catalog_signature();
    }
    annotate(r);

    if (spec.interval.lo == 0.0) {
        try {
            if (spec.family == SeriesFamily::factorial) {
                r.endpoint_derivative = factorial_endpoint_derivative(spec);
            } else if (spec.family == SeriesFamily::inverse_factorial) {
                r.endpoint_derivative = inverse_factorial_endpoint_derivative(spec);
            }
        } catch (const Error&) {
            r.endpoint_derivative.reset();
        }
        if (r.endpoint_derivative && std::abs(*r.endpoint_derivative) < kBoundaryInconclusiveTol) {
            r.boundary_inconclusive = true;
        }
    }
    return r;
}

double factorial_endpoint_derivative(const SeriesRatioSpec& spec) {
    if (spec.family != SeriesFamily::factorial) throw InputError("factorial_endpoint_derivative needs a factorial spec");
    spec.validate();
    std::vector<double> a, b;
    materialize(spec, factorial_weight, a, b);
    const double r0 = a[0] / b[0];
    double s = 0.0;
    double fact = 1.0;  // (k-1)!
    for (std::size_t k = 1; k < a.size(); ++k) {
        if (k > 1) fact *= static_cast<double>(k - 1);
        s += b[k] * fact * (a[k] / b[k] - r0);
    }
    return s / b[0];
}

double inverse_factorial_endpoint_derivative(const SeriesRatioSpec& spec) {
    if (spec.family != SeriesFamily::inverse_factorial) {
        throw InputError("inverse_factorial_endpoint_derivative needs an inverse factorial spec");
    }
    spec.validate();
    std::vector<double> a, b;
    materialize(spec, [](std::size_t k) { return 1.0 / factorial_weight(k); }, a, b);
    const std::size_t n = a.size();
    std::vector<double> w(n, 0.0), harm(n, 0.0);  // w_k = b_k/(k-1)!, harm_k = H_{k-1}
    double inv_fact = 1.0;
    for (std::size_t k = 1; k < n; ++k) {
        if (k > 1) inv_fact /= static_cast<double>(k - 1);
        w[k] = b[k] * inv_fact;
        harm[k] = harmonic(static_cast<unsigned>(k - 1));
    }
    double denom = 0.0;
    for (std::size_t k = 1; k < n; ++k) denom += w[k];
    if (!(denom > 0.0)) throw InputError("inverse factorial endpoint formula needs some b_k > 0 with k >= 1");
    const double r0 = a[0] / b[0];
    double s = 0.0;
    for (std::size_t k = 1; k < n; ++k) {
        const double rk = a[k] / b[k];
        s += b[0] * w[k] * (r0 - rk);
        for (std::size_t j = 1; j < k; ++j) s += w[k] * w[j] * (harm[j] - harm[k]) * (rk - a[j] / b[j]);
    }
    return s / (denom * denom);
}

double inverse_factorial_tail_slope(const SeriesRatioSpec& spec, double x) {
    const double a0 = spec.coeff_a(0), a1 = spec.coeff_a(1);
    const double b0 = spec.coeff_b(0), b1 = spec.coeff_b(1);
    if (!(b0 > 0.0) || !(b1 > 0.0)) throw InputError("tail slope needs b_0, b_1 > 0");
    return (b1 / b0) * (a0 / b0 - a1 / b1) / (x * x);
}

double factorial_shift_difference(const SeriesRatioSpec& spec, double x) {
    return eval_ratio(spec, x + 1.0) - eval_ratio(spec, x);
}

std::optional<double> shift_difference_threshold(const SeriesRatioSpec& spec, std::span<const double> grid,
                                                 int sign) {
    std::optional<double> x0;
    for (std::size_t i = grid.size(); i-- > 0;) {
        const double d = factorial_shift_difference(spec, grid[i]);
        if (!(d * sign > 0.0)) break;
        x0 = grid[i];
    }
    return x0;
}

IntegralRatioValue eval_integral_ratio_full(const IntegralRatioSpec& spec, double x) {
    if (!spec.A || !spec.B || !spec.w) throw InputError("integral ratio needs A, B and w");
    const KernelDescriptor& k = spec.kernel;
    const Integrand num = [&](double t) { return k(x, t) * spec.A(t) * spec.w(t); };
    const Integrand den = [&](double t) { return k(x, t) * spec.B(t) * spec.w(t); };
    QuadratureSpec qs = spec.quadrature;
    qs.record_nodes = false;
    const QuadratureResult n = integrate(num, spec.j_lo, spec.j_hi, qs);
    const QuadratureResult d = integrate(den, spec.j_lo, spec.j_hi, qs);
    if (!(std::abs(d.value) > kDenominatorFloor) || !std::isfinite(d.value)) {
        throw DegeneracyError("integral denominator vanishes at x = " + std::to_string(x), x);
    }
    IntegralRatioValue v;
    v.numerator = n.value;
    v.denominator = d.value;
    v.value = n.value / d.value;
    v.error = (n.value != 0.0 ? n.error / std::abs(n.value) : 0.0) + d.error / std::abs(d.value);
    return v;
}

double eval_integral_ratio(const IntegralRatioSpec& spec, double x) {
    return eval_integral_ratio_full(spec, x).value;
}

RatioClassification classify_integral_ratio(const IntegralRatioSpec& spec, std::span<const double> grid,
                                            const ClassifyOptions& opts) {
    if (grid.empty()) throw InputError("classification grid is empty");
    require_strictly_increasing(grid, "classify_integral_ratio");
    spec.kernel.validate();
    RatioClassification r;

    QuadratureSpec qs = spec.quadrature;
    qs.record_nodes = true;
    const double x0 = grid.front();
    const QuadratureResult probe =
        integrate([&](double t) { return spec.kernel(x0, t) * spec.B(t) * spec.w(t); }, spec.j_lo, spec.j_hi, qs);
    std::vector<double> nodes = probe.nodes;
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    std::vector<double> profile;
    profile.reserve(nodes.size());
    for (double t : nodes) {
        const double bt = spec.B(t);
        const double wt = spec.w(t);
        if (!(bt > 0.0)) throw DomainError("B must be positive on J; B(" + std::to_string(t) + ") <= 0");
        if (!(wt > 0.0)) throw DomainError("w must be positive on J; w(" + std::to_string(t) + ") <= 0");
        profile.push_back(spec.A(t) / bt);
    }
    r.coefficient_verdict =
        classify_unimodality_samples(nodes, profile, relative_tol(profile, opts.coefficient_tol_rel));

    std::vector<double> values;
    for (double x : grid) {
        const IntegralRatioValue v = eval_integral_ratio_full(spec, x);
        r.points.push_back({x, v.numerator, v.denominator, v.value});
        values.push_back(v.value);
    }
    // Quadrature noise sits well above the series tolerance.
    const double tol = std::max(opts.zero_tol_rel, 10.0 * spec.quadrature.rel_tol);
    r.verdict = classify_unimodality_samples(grid, values, relative_tol(values, tol));
    r.signature = spec.kernel.catalog_signature();
    annotate(r);
    return r;
}

}  // namespace sigreg
