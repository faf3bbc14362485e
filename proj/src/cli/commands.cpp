#include <charconv>
#include <cmath>
#include <functional>
#include <map>

#include "config.hpp"
#include "sigreg/applications.hpp"
#include "sigreg/cli.hpp"
#include "sigreg/errors.hpp"
#include "sigreg/rng.hpp"

namespace sigreg::cli {

namespace {

class Csv {
public:
    explicit Csv(std::vector<std::string> header) : columns_(header.size()) { row(header); }

    void row(const std::vector<std::string>& cells) {
        if (cells.size() != columns_) throw Error("csv row width mismatch");
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ += ',';
            out_ += cells[i];
        }
        out_ += '\n';
    }

    std::string str() const { return out_; }

private:
    std::size_t columns_;
    std::string out_;
};

std::string fmt(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

std::string fmt(std::size_t v) { return std::to_string(v); }

std::string fmt_eps(const std::optional<int>& e) { return e ? (*e > 0 ? "+" : "-") : "?"; }

Json base_document(const std::string& name, const Json& config, std::uint64_t seed) {
    Json doc = make_document(name);
    doc["config"] = config.is_null() ? Json::object() : config;
    doc["seed"] = seed;
    return doc;
}

struct Context {
    const std::string& name;
    const Json& config;
    Section root;
    std::uint64_t seed;
};

CertifyOptions parse_certify_options(Section& s, std::uint64_t seed) {
    CertifyOptions o;
    o.order = s.count("order", o.order);
    o.det_zero_tol = s.number("det_zero_tol", o.det_zero_tol);
    o.subset_budget = s.count("subset_budget", o.subset_budget);
    o.extended_precision = s.flag("extended_precision", o.extended_precision);
    o.threads = static_cast<unsigned>(s.count("threads", o.threads));
    o.seed = seed;
    if (o.order < 1) throw InputError("'order' must be >= 1");
    if (!(o.det_zero_tol >= 0.0)) throw InputError("'det_zero_tol' must be nonnegative");
    if (o.threads < 1) throw InputError("'threads' must be >= 1");
    return o;
}

void add_order_rows(Csv& csv, const SRReport& r, const std::string& label) {
    for (const OrderRecord& o : r.orders) {
        csv.row({label, fmt(o.m), fmt_eps(o.epsilon), fmt(o.minors_tested), fmt(o.indeterminate), fmt(o.positive),
                 fmt(o.negative), o.min_abs_det ? fmt(*o.min_abs_det) : "", fmt(o.violations.size())});
    }
}

Json violation_coordinates(const SRReport& r) {
    Json out = Json::array();
    for (const OrderRecord& o : r.orders) {
        for (const MinorViolation& v : o.violations) {
            Json xs = Json::array(), ys = Json::array();
            for (std::size_t i : v.rows) xs.push_back(r.xs[i]);
            for (std::size_t j : v.cols) ys.push_back(r.ys[j]);
            out.push_back({{"order", o.m}, {"x", xs}, {"y", ys}, {"det", v.det}});
        }
    }
    return out;
}

// ------------------------------------------------------------ certify

CommandOutput cmd_certify(Context& c) {
    KernelDescriptor k = parse_kernel(c.root.child("kernel"));
    const bool table = k.family == KernelFamily::custom_table;
    const Json dx = table ? Json(k.table_x) : grid_spec("uniform", 1.0, 4.0, 4);
    const Json dy = table ? Json(k.table_y) : grid_spec("uniform", 0.0, 3.0, 4);
    const std::vector<double> xs = c.root.grid("xs", dx);
    const std::vector<double> ys = c.root.grid("ys", dy);
    const CertifyOptions opts = parse_certify_options(c.root, c.seed);
    c.root.finish();

    const SRReport rep = certify_sign_regularity(k, xs, ys, opts);
    CommandOutput out;
    out.report = base_document(c.name, c.config, c.seed);
    out.report["catalog_signature"] = signature_json(k.catalog_signature());
    out.report["result"] = to_json(rep);
    out.report["counterexamples"] = violation_coordinates(rep);
    Csv csv({"kernel", "order", "epsilon", "minors_tested", "indeterminate", "positive", "negative", "min_abs_det",
             "violations"});
    add_order_rows(csv, rep, rep.kernel);
    out.csv = csv.str();
    out.exit_code = rep.has_violations() ? kExitViolation : kExitOk;
    return out;
}

// ---------------------------------------------------- classify-series

CommandOutput cmd_classify_series(Context& c) {
    Section& s = c.root;
    SeriesRatioSpec spec;
    spec.family = series_family_from_string(s.text("family", "power"));
    spec.a = s.numbers("a", {1.0, 3.0, 2.0});
    spec.b = s.numbers("b", {1.0, 1.0, 1.0});
    spec.lambdas = s.numbers("lambdas", {});
    if (spec.family == SeriesFamily::dirichlet && spec.lambdas.empty()) {
        for (std::size_t k = 0; k < spec.a.size(); ++k) spec.lambdas.push_back(static_cast<double>(k));
    }
    spec.q = s.number("q", spec.q);
    spec.alpha = s.number("alpha", spec.alpha);
    spec.c = s.numbers("c", {});
    spec.d = s.numbers("d", {});
    {
        Section iv = s.child("interval");
        spec.interval.lo = iv.number("lo", spec.interval.lo);
        spec.interval.hi = iv.number("hi", spec.interval.hi);
        iv.finish();
    }
    const std::vector<double> grid = s.grid("grid", grid_spec("geometric", 0.01, 10.0, 100));
    ClassifyOptions opts;
    opts.zero_tol_rel = s.number("zero_tol_rel", opts.zero_tol_rel);
    opts.coefficient_tol_rel = s.number("coefficient_tol_rel", opts.coefficient_tol_rel);
    s.finish();
    spec.validate();

    const RatioClassification rc = classify_ratio(spec, grid, opts);
    CommandOutput out;
    out.report = base_document(c.name, c.config, c.seed);
    Json result = to_json(rc);
    if (spec.family == SeriesFamily::factorial && rc.coefficient_verdict.unimodal() &&
        rc.coefficient_verdict.cls != UnimodalityClass::constant) {
        const bool rising = rc.coefficient_verdict.cls == UnimodalityClass::increasing ||
                            rc.coefficient_verdict.cls == UnimodalityClass::down_up;
        const int sign = rising ? 1 : -1;
        const auto x0 = shift_difference_threshold(spec, grid, sign);
        result["shift_difference"] = {{"sign", sign}, {"threshold", x0 ? Json(*x0) : Json(nullptr)}};
    }
    if (spec.family == SeriesFamily::inverse_factorial && spec.a.size() >= 2) {
        result["tail_slope_at_grid_end"] = inverse_factorial_tail_slope(spec, grid.back());
    }
    out.report["result"] = std::move(result);
    Csv csv({"x", "numerator", "denominator", "F"});
    for (const RatioPoint& p : rc.points) csv.row({fmt(p.x), fmt(p.numerator), fmt(p.denominator), fmt(p.value)});
    out.csv = csv.str();
    out.exit_code = rc.theorem_consistent ? kExitOk : kExitViolation;
    return out;
}

// -------------------------------------------------- classify-integral

CommandOutput cmd_classify_integral(Context& c) {
    Section& s = c.root;
    IntegralRatioSpec spec;
    Section ks = s.child("kernel");
    spec.kernel = s.has("kernel") ? parse_kernel(ks) : exp_decay_kernel();
    const Json one_term = Json::array({Json{{"c", 1.0}, {"p", 1.0}}});
    spec.A = parse_profile(s.has("A") ? s.raw("A") : one_term, "A");
    spec.B = parse_profile(s.has("B") ? s.raw("B") : Json(1.0), "B");
    spec.w = parse_profile(s.has("w") ? s.raw("w") : Json(1.0), "w");
    spec.j_lo = s.number("j_lo", 0.0);
    spec.j_hi = s.number("j_hi", std::numeric_limits<double>::infinity());
    spec.quadrature = parse_quadrature(s.child("quadrature"));
    const std::vector<double> grid = s.grid("grid", grid_spec("geometric", 0.5, 20.0, 40));
    ClassifyOptions opts;
    opts.zero_tol_rel = s.number("zero_tol_rel", opts.zero_tol_rel);
    opts.coefficient_tol_rel = s.number("coefficient_tol_rel", opts.coefficient_tol_rel);
    s.finish();
    if (!(spec.j_hi > spec.j_lo)) throw InputError("'j_hi' must exceed 'j_lo'");

    const RatioClassification rc = classify_integral_ratio(spec, grid, opts);
    CommandOutput out;
    out.report = base_document(c.name, c.config, c.seed);
    out.report["result"] = to_json(rc);
    Csv csv({"x", "numerator", "denominator", "F"});
    for (const RatioPoint& p : rc.points) csv.row({fmt(p.x), fmt(p.numerator), fmt(p.denominator), fmt(p.value)});
    out.csv = csv.str();
    out.exit_code = rc.theorem_consistent ? kExitOk : kExitViolation;
    return out;
}

// -------------------------------------------------------- hyper-ratio

CommandOutput cmd_hyper_ratio(Context& c) {
    Section& s = c.root;
    HypergeometricRatioSpec spec;
    spec.c = s.numbers("c", {0.0});
    spec.d = s.numbers("d", {});
    spec.a1 = s.numbers("a1", {5.0});
    spec.b1 = s.numbers("b1", {1.0, 3.0});
    spec.b2 = s.numbers("b2", {});
    spec.a2 = s.numbers("a2", {});
    spec.x = s.number("x", spec.x);
    spec.mu_grid = s.grid("mu_grid", grid_spec("geometric", 0.05, 50.0, 80));
    spec.tol = s.number("tol", spec.tol);
    spec.max_terms = s.count("max_terms", spec.max_terms);
    s.finish();

    const HypergeometricClassification hc = classify_hypergeometric_ratio(spec);
    CommandOutput out;
    out.report = base_document(c.name, c.config, c.seed);
    out.report["result"] = to_json(hc);
    Csv csv({"mu", "F"});
    for (std::size_t i = 0; i < hc.mu.size(); ++i) csv.row({fmt(hc.mu[i]), fmt(hc.values[i])});
    out.csv = csv.str();
    out.exit_code = hc.contradiction ? kExitViolation : kExitOk;
    return out;
}

// ------------------------------------------------------------ nuttall

CommandOutput cmd_nuttall(Context& c) {
    Section& s = c.root;
    const double nu1 = s.number("nu1", 2.0), nu2 = s.number("nu2", 0.0);
    const double a1 = s.number("a1", 1.0), a2 = s.number("a2", 1.0);
    const double b = s.number("b", 0.0);
    const std::vector<double> mu = s.grid("mu_grid", grid_spec("geometric", 0.1, 30.0, 60));
    const QuadratureSpec quad = parse_quadrature(s.child("quadrature"));
    const bool kummer = s.flag("kummer_check", b == 0.0);
    s.finish();
    if (kummer && b != 0.0) throw InputError("'kummer_check' needs b = 0");

    const NuttallRatioReport nr = classify_nuttall_ratio(nu1, nu2, a1, a2, b, mu, quad);
    CommandOutput out;
    out.report = base_document(c.name, c.config, c.seed);
    out.report["result"] = to_json(nr);
    std::vector<std::string> header{"mu", "F"};
    if (kummer) {
        for (const char* h : {"Q_num", "kummer_num", "Q_den", "kummer_den"}) header.push_back(h);
    }
    Csv csv(header);
    double worst = 0.0;
    std::optional<double> worst_mu;
    for (std::size_t i = 0; i < mu.size(); ++i) {
        std::vector<std::string> row{fmt(mu[i]), fmt(nr.values[i])};
        if (kummer) {
            const double qn = nuttall_q({mu[i], nu1, a1, 0.0, quad});
            const double kn = nuttall_q_kummer(mu[i], nu1, a1);
            const double qd = nuttall_q({mu[i], nu2, a2, 0.0, quad});
            const double kd = nuttall_q_kummer(mu[i], nu2, a2);
            for (double dev : {std::abs(qn - kn) / std::abs(kn), std::abs(qd - kd) / std::abs(kd)}) {
                if (!worst_mu || dev > worst) {
                    worst = dev;
                    worst_mu = mu[i];
                }
            }
            for (double v : {qn, kn, qd, kd}) row.push_back(fmt(v));
        }
        csv.row(row);
    }
    if (kummer) out.report["kummer_check"] = {{"max_relative_deviation", worst}, {"at_mu", worst_mu ? Json(*worst_mu) : Json(nullptr)}};
    out.csv = csv.str();
    out.exit_code = nr.contradiction ? kExitViolation : kExitOk;
    return out;
}

// -------------------------------------------------------- conjecture1

Json default_conjecture1_cases() {
    return Json::array({
        Json{{"label", "gamma_sum x inverse_gamma_sum"},
             {"f1", {{"family", "gamma_sum"}, {"shift", 1.5}}},
             {"f2", {{"family", "inverse_gamma_sum"}, {"shift", 0.5}}},
             {"expected", "(+,-,-)"}},
        Json{{"label", "gamma_sum x gamma_sum"},
             {"f1", {{"family", "gamma_sum"}}},
             {"f2", {{"family", "gamma_sum"}}},
             {"expected", "(+,+,+)"}},
        Json{{"label", "constant x inverse_gamma_sum"},
             {"f1", {{"family", "constant"}, {"value", 1.0}}},
             {"f2", {{"family", "inverse_gamma_sum"}}},
             {"expected", "(+,-,-)"}},
        Json{{"label", "stieltjes x incomplete_gamma_sum"},
             {"f1", {{"family", "stieltjes"}, {"alpha", 1.0}}},
             {"f2", {{"family", "incomplete_gamma_sum"}, {"kind", "upper"}, {"alpha", 1.0}}},
             {"expected", nullptr}},
    });
}

CommandOutput cmd_conjecture1(Context& c) {
    Section& s = c.root;
    const Json defaults = default_conjecture1_cases();
    const Json& cases_json = s.has("cases") ? s.raw("cases") : defaults;
    if (!cases_json.is_array() || cases_json.empty()) throw InputError("'cases' must be a nonempty array");
    const std::vector<double> xs = s.grid("xs", grid_spec("uniform", 0.5, 3.0, 6));
    const std::vector<double> ys = s.grid("ys", grid_spec("uniform", 0.5, 3.0, 6));
    const CertifyOptions opts = parse_certify_options(s, c.seed);
    s.finish();

    CommandOutput out;
    out.report = base_document(c.name, c.config, c.seed);
    out.report["label"] = "exploratory";
    Json results = Json::array();
    Csv csv({"case", "order", "epsilon", "minors_tested", "indeterminate", "positive", "negative", "min_abs_det",
             "violations"});
    for (std::size_t i = 0; i < cases_json.size(); ++i) {
        Section cs(cases_json[i], "cases[" + std::to_string(i) + "]");
        const std::string label = cs.text("label", "case " + std::to_string(i));
        const KernelDescriptor f1 = parse_kernel(cs.child("f1"));
        const KernelDescriptor f2 = parse_kernel(cs.child("f2"));
        std::optional<std::string> expected;
        if (cs.has("expected") && !cs.raw("expected").is_null()) expected = cs.text("expected", "");
        cs.finish();
        const SRReport rep = scan_product_kernel(f1, f2, xs, ys, opts);
        Json r;
        r["label"] = label;
        r["observed_signature"] = rep.signature_string();
        r["expected_signature"] = expected ? Json(*expected) : Json(nullptr);
        r["matches_expected"] = expected ? Json(*expected == rep.signature_string()) : Json(nullptr);
        r["counterexample_found"] = rep.has_violations();
        r["counterexamples"] = violation_coordinates(rep);
        r["report"] = to_json(rep);
        results.push_back(std::move(r));
        add_order_rows(csv, rep, label);
    }
    out.report["cases"] = std::move(results);
    out.csv = csv.str();
    return out;
}

// -------------------------------------------------------- conjecture2

Json default_conjecture2_cases() {
    Json cases = Json::array();
    const std::pair<double, double> nus[] = {{1.5, 0.5}, {2.3, 0.7}, {0.5, -0.5}, {3.0, 1.0}, {2.0, 0.0}, {4.0, 0.0}};
    const std::pair<double, double> as[] = {{1.0, 1.0}, {0.5, 1.0}};
    for (auto [n1, n2] : nus) {
        for (auto [a1, a2] : as) cases.push_back({{"nu1", n1}, {"nu2", n2}, {"a1", a1}, {"a2", a2}});
    }
    return cases;
}

CommandOutput cmd_conjecture2(Context& c) {
    Section& s = c.root;
    const Json defaults = default_conjecture2_cases();
    const Json& cases_json = s.has("cases") ? s.raw("cases") : defaults;
    if (!cases_json.is_array() || cases_json.empty()) throw InputError("'cases' must be a nonempty array");
    const std::vector<double> xs = s.grid("x_grid", grid_spec("geometric", 0.01, 50.0, 120));
    s.finish();

    CommandOutput out;
    out.report = base_document(c.name, c.config, c.seed);
    out.report["label"] = "exploratory";
    Json results = Json::array();
    Csv csv({"case", "x", "ratio"});
    for (std::size_t i = 0; i < cases_json.size(); ++i) {
        Section cs(cases_json[i], "cases[" + std::to_string(i) + "]");
        const double nu1 = cs.number("nu1", 1.5), nu2 = cs.number("nu2", 0.5);
        const double a1 = cs.number("a1", 1.0), a2 = cs.number("a2", 1.0);
        cs.finish();
        const BesselRatioReport br = scan_bessel_ratio(nu1, nu2, a1, a2, xs);
        Json r;
        r["nu1"] = nu1;
        r["nu2"] = nu2;
        r["a1"] = a1;
        r["a2"] = a2;
        r["report"] = to_json(br);
        Json coords = Json::array();
        if (!br.verdict.unimodal()) coords.push_back({{"kind", "not_unimodal"}, {"x", br.verdict.violation_witness}});
        for (double x : br.log_concavity_violations) coords.push_back({{"kind", "log_concavity"}, {"x", x}});
        r["counterexamples"] = std::move(coords);
        results.push_back(std::move(r));
        for (std::size_t j = 0; j < xs.size(); ++j) csv.row({fmt(i), fmt(xs[j]), fmt(br.values[j])});
    }
    out.report["cases"] = std::move(results);
    out.csv = csv.str();
    return out;
}

// ----------------------------------------------------- identity-check

CommandOutput cmd_identity_check(Context& c) {
    Section& s = c.root;
    const std::size_t draws = s.count("draws", 1000);
    const std::vector<double> qs = s.numbers("q_values", {0.1, 0.3, 0.5, 0.7, 0.9});
    const std::size_t max_m = s.count("max_m", 12);
    const double tol = s.number("tolerance", 1e-12);
    s.finish();
    if (qs.empty()) throw InputError("'q_values' must be nonempty");
    std::vector<QParam> qp;
    for (double q : qs) qp.emplace_back(q);

    Rng rng(c.seed);
    Csv csv({"draw", "x", "y", "q", "m", "residual"});
    double worst = 0.0;
    Json worst_at = nullptr;
    for (std::size_t i = 0; i < draws; ++i) {
        const double x = rng.uniform(), y = rng.uniform();
        const QParam q = qp[rng.below(qp.size())];
        const auto m = static_cast<unsigned>(rng.below(max_m + 1));
        const double r = qpochhammer_identity_residual(x, y, q, m);
        if (worst_at.is_null() || r > worst) {
            worst = r;
            worst_at = {{"draw", i}, {"x", x}, {"y", y}, {"q", q.value()}, {"m", m}};
        }
        csv.row({fmt(i), fmt(x), fmt(y), fmt(q.value()), fmt(static_cast<std::size_t>(m)), fmt(r)});
    }
    CommandOutput out;
    out.report = base_document(c.name, c.config, c.seed);
    out.report["result"] = {{"draws", draws}, {"max_residual", worst}, {"worst_draw", worst_at}, {"tolerance", tol},
                            {"pass", worst <= tol}};
    out.csv = csv.str();
    out.exit_code = worst <= tol ? kExitOk : kExitViolation;
    return out;
}

using Handler = std::function<CommandOutput(Context&)>;

const std::map<std::string, Handler>& handlers() {
    static const std::map<std::string, Handler> h = {
        {"certify", cmd_certify},           {"classify-series", cmd_classify_series},
        {"classify-integral", cmd_classify_integral}, {"hyper-ratio", cmd_hyper_ratio},
        {"nuttall", cmd_nuttall},           {"conjecture1", cmd_conjecture1},
        {"conjecture2", cmd_conjecture2},   {"identity-check", cmd_identity_check},
    };
    return h;
}

}  // namespace

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names = {"certify",     "classify-series", "classify-integral",
                                                   "hyper-ratio", "nuttall",         "conjecture1",
                                                   "conjecture2", "identity-check"};
    return names;
}

CommandOutput run_command(const std::string& name, const Json& config, std::optional<std::uint64_t> seed) {
    const auto it = handlers().find(name);
    if (it == handlers().end()) throw InputError("unknown subcommand '" + name + "'");
    Section root(config, "");
    const std::uint64_t s = root.u64("seed", 0);
    Context ctx{name, config, root, seed.value_or(s)};
    return it->second(ctx);
}

}  // namespace sigreg::cli
