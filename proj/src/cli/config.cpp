#include "config.hpp"

#include <cmath>
#include <limits>

#include "sigreg/errors.hpp"

namespace sigreg::cli {

namespace {

const Json& empty_object() {
    static const Json e = Json::object();
    return e;
}

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

}  // namespace

double json_number(const Json& v, const std::string& where) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
    }
    throw InputError("'" + where + "' must be a number");
}

Json grid_spec(const std::string& type, double lo, double hi, std::size_t count) {
    return Json{{"type", type}, {"lo", lo}, {"hi", hi}, {"count", count}};
}

std::vector<double> parse_grid(const Json& g, const std::string& where) {
    std::vector<double> out;
    if (g.is_array()) {
        for (std::size_t i = 0; i < g.size(); ++i) out.push_back(json_number(g[i], where));
        return out;
    }
    Section s(g, where);
    if (s.has("values")) {
        out = s.numbers("values", {});
        s.finish();
        return out;
    }
    const std::string type = s.text("type", "uniform");
    const double lo = s.number("lo", 0.0);
    const double hi = s.number("hi", 1.0);
    const std::size_t n = s.count("count", 50);
    s.finish();
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(hi > lo)) throw InputError("'" + where + "' needs finite lo < hi");
    if (n < 2) throw InputError("'" + where + "' needs count >= 2");
    out.resize(n);
    if (type == "uniform") {
        for (std::size_t i = 0; i < n; ++i) out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    } else if (type == "geometric") {
        if (!(lo > 0.0)) throw InputError("'" + where + "' geometric grid needs lo > 0");
        const double r = std::log(hi / lo) / static_cast<double>(n - 1);
        for (std::size_t i = 0; i < n; ++i) out[i] = lo * std::exp(r * static_cast<double>(i));
    } else {
        throw InputError("'" + where + "' type must be uniform or geometric");
    }
    out.front() = lo;
    out.back() = hi;
    return out;
}

Section::Section(const Json& j, std::string path) : j_(&j), path_(std::move(path)) {
    if (j_->is_null()) j_ = &empty_object();
    if (!j_->is_object()) throw InputError("'" + (path_.empty() ? std::string("config") : path_) + "' must be an object");
}

bool Section::has(const std::string& key) const { return j_->contains(key); }

const Json& Section::at(const std::string& key) {
    used_.insert(key);
    return j_->at(key);
}

double Section::number(const std::string& key, double fallback) {
    return has(key) ? json_number(at(key), join(path_, key)) : fallback;
}

std::size_t Section::count(const std::string& key, std::size_t fallback) {
    if (!has(key)) return fallback;
    const Json& v = at(key);
    if (!v.is_number_integer() || v.get<long long>() < 0) throw InputError("'" + join(path_, key) + "' must be a nonnegative integer");
    return v.get<std::size_t>();
}

std::uint64_t Section::u64(const std::string& key, std::uint64_t fallback) {
    if (!has(key)) return fallback;
    const Json& v = at(key);
    if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<long long>() < 0)) {
        throw InputError("'" + join(path_, key) + "' must be a nonnegative integer");
    }
    return v.get<std::uint64_t>();
}

bool Section::flag(const std::string& key, bool fallback) {
    if (!has(key)) return fallback;
    const Json& v = at(key);
    if (!v.is_boolean()) throw InputError("'" + join(path_, key) + "' must be a boolean");
    return v.get<bool>();
}

std::string Section::text(const std::string& key, const std::string& fallback) {
    if (!has(key)) return fallback;
    const Json& v = at(key);
    if (!v.is_string()) throw InputError("'" + join(path_, key) + "' must be a string");
    return v.get<std::string>();
}

std::vector<double> Section::numbers(const std::string& key, const std::vector<double>& fallback) {
    if (!has(key)) return fallback;
    const Json& v = at(key);
    if (!v.is_array()) throw InputError("'" + join(path_, key) + "' must be an array");
    std::vector<double> out;
    for (const Json& e : v) out.push_back(json_number(e, join(path_, key)));
    return out;
}

std::vector<double> Section::grid(const std::string& key, const Json& fallback) {
    return parse_grid(has(key) ? at(key) : fallback, join(path_, key));
}

Section Section::child(const std::string& key) {
    if (!has(key)) return Section(empty_object(), join(path_, key));
    return Section(at(key), join(path_, key));
}

std::vector<Section> Section::children(const std::string& key) {
    std::vector<Section> out;
    if (!has(key)) return out;
    const Json& v = at(key);
    if (!v.is_array()) throw InputError("'" + join(path_, key) + "' must be an array");
    for (std::size_t i = 0; i < v.size(); ++i) out.emplace_back(v[i], join(path_, key) + "[" + std::to_string(i) + "]");
    return out;
}

const Json& Section::raw(const std::string& key) { return at(key); }

void Section::finish() const {
    for (const auto& [k, v] : j_->items()) {
        if (!used_.count(k)) throw InputError("unknown config key '" + join(path_, k) + "'");
    }
}

KernelDescriptor parse_kernel(Section s) {
    const KernelFamily f = kernel_family_from_string(s.text("family", "power"));
    KernelDescriptor k;
    switch (f) {
        case KernelFamily::power: k = power_kernel(); break;
        case KernelFamily::exponential: k = exponential_kernel(); break;
        case KernelFamily::exp_decay: k = exp_decay_kernel(); break;
        case KernelFamily::stieltjes: k = stieltjes_kernel(s.number("alpha", 1.0)); break;
        case KernelFamily::gamma_sum: k = gamma_sum_kernel(s.number("shift", 0.0)); break;
        case KernelFamily::inverse_gamma_sum: k = inverse_gamma_sum_kernel(s.number("shift", 0.0)); break;
        case KernelFamily::gamma_sum_ratio:
            k = gamma_sum_ratio_kernel(s.numbers("c", {}), s.numbers("d", {}));
            break;
        case KernelFamily::incomplete_gamma_sum: {
            const std::string kind = s.text("kind", "lower");
            if (kind != "lower" && kind != "upper") throw InputError("'" + s.path() + ".kind' must be lower or upper");
            k = incomplete_gamma_kernel(kind == "lower" ? GammaKind::lower : GammaKind::upper, s.number("alpha", 1.0));
            break;
        }
        case KernelFamily::pochhammer: k = pochhammer_kernel(); break;
        case KernelFamily::inverse_pochhammer: k = inverse_pochhammer_kernel(); break;
        case KernelFamily::q_pochhammer: k = q_pochhammer_kernel(s.number("q", 0.5)); break;
        case KernelFamily::inverse_q_pochhammer: k = inverse_q_pochhammer_kernel(s.number("q", 0.5)); break;
        case KernelFamily::gamma_ratio: k = gamma_ratio_kernel(s.numbers("c", {}), s.numbers("d", {})); break;
        case KernelFamily::gamma_product: k = gamma_product_kernel(s.numbers("h", {})); break;
        case KernelFamily::hypergeometric:
            k = hypergeometric_kernel(s.numbers("upper", {}), s.numbers("lower", {}));
            break;
        case KernelFamily::product_of:
            k = product_kernel(parse_kernel(s.child("left")), parse_kernel(s.child("right")));
            break;
        case KernelFamily::constant: k = constant_kernel(s.number("value", 1.0)); break;
        case KernelFamily::custom_table: {
            std::vector<double> tx = s.numbers("table_x", {});
            std::vector<double> ty = s.numbers("table_y", {});
            std::vector<double> flat;
            if (s.has("table")) {
                const Json& rows = s.raw("table");
                if (!rows.is_array() || rows.size() != tx.size()) throw InputError("'" + s.path() + ".table' needs one row per table_x entry");
                for (const Json& row : rows) {
                    if (!row.is_array() || row.size() != ty.size()) throw InputError("'" + s.path() + ".table' rows need one entry per table_y entry");
                    for (const Json& e : row) flat.push_back(json_number(e, s.path() + ".table"));
                }
            }
            k = custom_table_kernel(std::move(tx), std::move(ty), std::move(flat));
            break;
        }
    }
    if (s.flag("transpose", false)) k = transposed(std::move(k));
    s.finish();
    k.validate();
    return k;
}

QuadratureSpec parse_quadrature(Section s) {
    QuadratureSpec q;
    q.rule = quadrature_rule_from_string(s.text("rule", to_string(q.rule)));
    q.abs_tol = s.number("abs_tol", q.abs_tol);
    q.rel_tol = s.number("rel_tol", q.rel_tol);
    q.eps_cut = s.number("eps_cut", q.eps_cut);
    q.max_subdivisions = s.count("max_subdivisions", q.max_subdivisions);
    q.initial_panel = s.number("initial_panel", q.initial_panel);
    q.panel_growth = s.number("panel_growth", q.panel_growth);
    q.max_panels = s.count("max_panels", q.max_panels);
    s.finish();
    q.validate();
    return q;
}

Profile parse_profile(const Json& j, const std::string& where) {
    if (j.is_number()) {
        const double c = j.get<double>();
        return [c](double) { return c; };
    }
    if (!j.is_array() || j.empty()) throw InputError("'" + where + "' must be a number or a nonempty list of terms");
    struct Term {
        double c, p, s;
    };
    std::vector<Term> terms;
    for (std::size_t i = 0; i < j.size(); ++i) {
        Section t(j[i], where + "[" + std::to_string(i) + "]");
        terms.push_back({t.number("c", 1.0), t.number("p", 0.0), t.number("s", 0.0)});
        t.finish();
        if (!std::isfinite(terms.back().c) || !std::isfinite(terms.back().p) || !std::isfinite(terms.back().s)) {
            throw InputError("'" + where + "' terms must be finite");
        }
    }
    return [terms](double t) {
        double v = 0.0;
        for (const Term& e : terms) {
            const double power = e.p == 0.0 ? 1.0 : std::pow(t, e.p);
            v += e.c * power * (e.s == 0.0 ? 1.0 : std::exp(-e.s * t));
        }
        return v;
    };
}

}  // namespace sigreg::cli
