#include "sigreg/quadrature.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <queue>

#include "sigreg/errors.hpp"

namespace sigreg {

namespace {

// Kronrod abscissae in descending order; the last entry is the centre.
// Gauss weights belong to the odd-indexed Kronrod abscissae (and to the
// centre for the 7-point rule).
constexpr std::array<double, 8> kGK15x = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kGK15wk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGK15wg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr std::array<double, 11> kGK21x = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
constexpr std::array<double, 11> kGK21wk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr std::array<double, 5> kGK21wg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Segment {
    double a, b, value, error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

struct Evaluator {
    const Integrand& f;
    const QuadratureSpec& spec;
    QuadratureResult& out;

    double call(double x) {
        ++out.evaluations;
        if (spec.record_nodes) out.nodes.push_back(x);
        const double v = f(x);
        if (!std::isfinite(v)) {
            throw IntegrationError("integrand is not finite at x = " + std::to_string(x), out.value);
        }
        return v;
    }

    template <std::size_t NK, std::size_t NG>
    Segment rule(double a, double b, const std::array<double, NK>& xk,
                 const std::array<double, NK>& wk, const std::array<double, NG>& wg) {
        const double c = 0.5 * (a + b);
        const double h = 0.5 * (b - a);
        const double fc = call(c);
        double kron = wk[NK - 1] * fc;
        // The 7-point Gauss rule has a centre node; the 10-point rule does not.
        double gauss = (NK % 2 == 0) ? wg[NG - 1] * fc : 0.0;
        for (std::size_t i = 0; i + 1 < NK; ++i) {
            const double dx = h * xk[i];
            const double s = call(c - dx) + call(c + dx);
            kron += wk[i] * s;
            if (i % 2 == 1) gauss += wg[i / 2] * s;
        }
        return {a, b, kron * h, std::abs((kron - gauss) * h)};
    }

    Segment apply(double a, double b) {
        if (spec.rule == QuadratureRule::gk15) return rule(a, b, kGK15x, kGK15wk, kGK15wg);
        return rule(a, b, kGK21x, kGK21wk, kGK21wg);
    }

    // Adaptive bisection of the segment with the largest error estimate.
    Segment adaptive(double a, double b, double abs_floor) {
        std::priority_queue<Segment> heap;
        heap.push(apply(a, b));
        double total = heap.top().value;
        double err = heap.top().error;
        for (std::size_t n = 1;; ++n) {
            const double target = std::max({spec.abs_tol, abs_floor, spec.rel_tol * std::abs(total)});
            if (err <= target) break;
            Segment s = heap.top();
            const double mid = 0.5 * (s.a + s.b);
            if (!(mid > s.a && mid < s.b) ||
                s.error <= 64.0 * std::numeric_limits<double>::epsilon() * std::abs(total)) {
                break;  // resolution exhausted; accept the current estimate
            }
            if (n >= spec.max_subdivisions) {
                throw IntegrationError("adaptive quadrature did not reach tolerance on [" +
                                           std::to_string(a) + ", " + std::to_string(b) + "]",
                                       total);
            }
            heap.pop();
            const Segment l = apply(s.a, mid);
            const Segment r = apply(mid, s.b);
            total += l.value + r.value - s.value;
            err += l.error + r.error - s.error;
            heap.push(l);
            heap.push(r);
        }
        // Re-sum from the leaves to avoid drift from the running updates.
        double v = 0.0, e = 0.0;
        while (!heap.empty()) {
            v += heap.top().value;
            e += heap.top().error;
            heap.pop();
        }
        return {a, b, v, e};
    }
};

QuadratureResult integrate_right_infinite(const Integrand& f, double a, const QuadratureSpec& spec) {
    return integrate_marching(f, a, spec.initial_panel, spec.panel_growth,
                              std::numeric_limits<double>::infinity(), spec.eps_cut, spec);
}

}  // namespace

std::string to_string(QuadratureRule r) { return r == QuadratureRule::gk15 ? "gk15" : "gk21"; }

QuadratureRule quadrature_rule_from_string(const std::string& s) {
    if (s == "gk15") return QuadratureRule::gk15;
    if (s == "gk21") return QuadratureRule::gk21;
    throw InputError("unknown quadrature rule '" + s + "'");
}

void QuadratureSpec::validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || !(eps_cut > 0.0)) {
        throw InputError("quadrature tolerances must be positive");
    }
    if (!(initial_panel > 0.0) || !(panel_growth >= 1.0)) {
        throw InputError("quadrature panel width must be positive and growth at least 1");
    }
    if (max_subdivisions == 0 || max_panels == 0) throw InputError("quadrature caps must be positive");
}

QuadratureResult integrate_marching(const Integrand& f, double a, double width, double growth,
                                    double limit, double stop_rel, const QuadratureSpec& spec) {
    spec.validate();
    if (!std::isfinite(a)) throw InputError("marching quadrature needs a finite start");
    QuadratureResult out;
    Evaluator ev{f, spec, out};
    double lo = a;
    double w = width;
    int quiet = 0;
    for (std::size_t panel = 0; lo < limit; ++panel) {
        if (panel >= spec.max_panels) {
            throw IntegrationError("panel cap reached before the integrand became negligible", out.value);
        }
        const double hi = std::min(lo + w, limit);
        const Segment s = ev.adaptive(lo, hi, 0.1 * spec.rel_tol * std::abs(out.value));
        out.value += s.value;
        out.error += s.error;
        const bool negligible = std::abs(s.value) <= stop_rel * std::abs(out.value) ||
                                (out.value == 0.0 && s.value == 0.0 && panel >= 8);
        quiet = negligible ? quiet + 1 : 0;
        if (quiet >= 2) break;
        lo = hi;
        w *= growth;
    }
    return out;
}

QuadratureResult integrate(const Integrand& f, double a, double b, const QuadratureSpec& spec) {
    spec.validate();
    if (std::isnan(a) || std::isnan(b)) throw InputError("quadrature bounds must not be NaN");
    if (a == b) return {};
    if (a > b) {
        QuadratureResult r = integrate(f, b, a, spec);
        r.value = -r.value;
        return r;
    }
    const bool a_inf = std::isinf(a);
    const bool b_inf = std::isinf(b);
    if (a_inf && b_inf) {
        QuadratureResult left = integrate(f, a, 0.0, spec);
        QuadratureResult right = integrate(f, 0.0, b, spec);
        right.value += left.value;
        right.error += left.error;
        right.evaluations += left.evaluations;
        right.nodes.insert(right.nodes.begin(), left.nodes.begin(), left.nodes.end());
        return right;
    }
    if (a_inf) {
        const Integrand g = [&f](double t) { return f(-t); };
        QuadratureResult r = integrate_right_infinite(g, -b, spec);
        for (double& x : r.nodes) x = -x;
        return r;
    }
    if (b_inf) return integrate_right_infinite(f, a, spec);

    QuadratureResult out;
    Evaluator ev{f, spec, out};
    const Segment s = ev.adaptive(a, b, 0.0);
    out.value = s.value;
    out.error = s.error;
    return out;
}

}  // namespace sigreg
