#include "sigreg/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "sigreg/errors.hpp"

namespace sigreg {

namespace {

struct FamilyName {
    KernelFamily family;
    const char* name;
};

constexpr FamilyName kFamilyNames[] = {
    {KernelFamily::power, "power"},
    {KernelFamily::exponential, "exponential"},
    {KernelFamily::exp_decay, "exp_decay"},
    {KernelFamily::stieltjes, "stieltjes"},
    {KernelFamily::gamma_sum, "gamma_sum"},
    {KernelFamily::inverse_gamma_sum, "inverse_gamma_sum"},
    {KernelFamily::gamma_sum_ratio, "gamma_sum_ratio"},
    {KernelFamily::incomplete_gamma_sum, "incomplete_gamma_sum"},
    {KernelFamily::pochhammer, "pochhammer"},
    {KernelFamily::inverse_pochhammer, "inverse_pochhammer"},
    {KernelFamily::q_pochhammer, "q_pochhammer"},
    {KernelFamily::inverse_q_pochhammer, "inverse_q_pochhammer"},
    {KernelFamily::gamma_ratio, "gamma_ratio"},
    {KernelFamily::gamma_product, "gamma_product"},
    {KernelFamily::hypergeometric, "hypergeometric"},
    {KernelFamily::product_of, "product_of"},
    {KernelFamily::constant, "constant"},
    {KernelFamily::custom_table, "custom_table"},
};

constexpr double kMaxIndex = 1e6;

unsigned as_index(double y) {
    if (!(y >= 0.0) || y != std::floor(y) || y > kMaxIndex) {
        throw DomainError("index kernels need a nonnegative integer column, got " + std::to_string(y));
    }
    return static_cast<unsigned>(y);
}

void require_positive(double v, const char* what) {
    if (!(v > 0.0)) throw DomainError(std::string(what) + " must be positive");
}

void require_nonnegative(std::span<const double> v, const char* what) {
    for (double e : v) {
        if (!(e >= 0.0) || !std::isfinite(e)) throw DomainError(std::string(what) + " entries must be nonnegative");
    }
}

std::size_t exact_lookup(const std::vector<double>& grid, double v, const char* axis) {
    const auto it = std::lower_bound(grid.begin(), grid.end(), v);
    if (it == grid.end() || *it != v) {
        throw DomainError(std::string("custom_table: ") + axis + " = " + std::to_string(v) +
                          " is not a tabulated abscissa");
    }
    return static_cast<std::size_t>(it - grid.begin());
}

std::string join(const std::vector<double>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        char buf[32];
        std::snprintf(buf, sizeof buf, "%g", v[i]);
        s += buf;
    }
    return s + ")";
}

double eval_family(const KernelDescriptor& k, double x, double y) {
    switch (k.family) {
        case KernelFamily::power:
            if (!(x > 0.0)) throw DomainError("power kernel needs x > 0");
            return std::pow(x, y);
        case KernelFamily::exponential:
            return std::exp(x * y);
        case KernelFamily::exp_decay:
            return std::exp(-x * y);
        case KernelFamily::stieltjes:
            if (!(x + y > 0.0)) throw DomainError("stieltjes kernel needs x + y > 0");
            return std::pow(x + y, -k.alpha);
        case KernelFamily::gamma_sum: {
            const double z = x + y + k.shift;
            if (!(z > 0.0)) throw DomainError("gamma_sum kernel needs x + y + shift > 0");
            const double g = std::tgamma(z);
            if (!std::isfinite(g)) throw RangeError("gamma_sum kernel overflows at x + y + shift = " + std::to_string(z));
            return g;
        }
        case KernelFamily::inverse_gamma_sum: {
            const double z = x + y + k.shift;
            if (!(z > 0.0)) throw DomainError("inverse_gamma_sum kernel needs x + y + shift > 0");
            return std::exp(-log_gamma(z));
        }
        case KernelFamily::gamma_sum_ratio: {
            const double z = x + y;
            double s = 0.0;
            for (std::size_t i = 0; i < k.c.size(); ++i) {
                if (!(z + k.c[i] > 0.0) || !(z + k.d[i] > 0.0)) {
                    throw DomainError("gamma_sum_ratio kernel needs x + y + c_i, x + y + d_i > 0");
                }
                s += log_gamma(z + k.c[i]) - log_gamma(z + k.d[i]);
            }
            return std::exp(s);
        }
        case KernelFamily::incomplete_gamma_sum:
            return incomplete_gamma(k.gamma_kind, x + y, k.alpha);
        case KernelFamily::pochhammer:
            if (!(x > 0.0)) throw DomainError("pochhammer kernel needs x > 0");
            return pochhammer(x, as_index(y));
        case KernelFamily::inverse_pochhammer:
            if (!(x > 0.0)) throw DomainError("inverse_pochhammer kernel needs x > 0");
            return 1.0 / pochhammer(x, as_index(y));
        case KernelFamily::q_pochhammer:
            if (!(x > 0.0)) throw DomainError("q_pochhammer kernel needs x > 0");
            return q_pochhammer(std::pow(k.q, x), QParam(k.q), as_index(y));
        case KernelFamily::inverse_q_pochhammer:
            if (!(x > 0.0)) throw DomainError("inverse_q_pochhammer kernel needs x > 0");
            return 1.0 / q_pochhammer(std::pow(k.q, x), QParam(k.q), as_index(y));
        case KernelFamily::gamma_ratio: {
            const unsigned n = as_index(y);
            for (std::size_t i = 0; i < k.c.size(); ++i) {
                if (!(x + k.c[i] > 0.0) || !(x + k.d[i] > 0.0)) {
                    throw DomainError("gamma_ratio kernel needs x + c_i, x + d_i > 0");
                }
            }
            double p = 1.0;
            for (unsigned j = 0; j < n; ++j) {
                for (std::size_t i = 0; i < k.c.size(); ++i) p *= (x + k.c[i] + j) / (x + k.d[i] + j);
            }
            return p;
        }
        case KernelFamily::gamma_product: {
            const unsigned n = as_index(y);
            if (!(x > 0.0)) throw DomainError("gamma_product kernel needs x > 0");
            double p = 1.0;
            for (double hi : k.h) p *= pochhammer(hi + x, n);
            return p;
        }
        case KernelFamily::hypergeometric:
            return hyper_pfq(k.upper, k.lower, x * y).value;
        case KernelFamily::product_of:
            return (*k.left)(x, y) * (*k.right)(x, y);
        case KernelFamily::constant:
            return k.value;
        case KernelFamily::custom_table: {
            const std::size_t i = exact_lookup(k.table_x, x, "x");
            const std::size_t j = exact_lookup(k.table_y, y, "y");
            return k.table[i * k.table_y.size() + j];
        }
    }
    throw DomainError("unknown kernel family");
}

}  // namespace

std::string to_string(KernelFamily f) {
    for (const auto& e : kFamilyNames) {
        if (e.family == f) return e.name;
    }
    return "unknown";
}

KernelFamily kernel_family_from_string(const std::string& s) {
    for (const auto& e : kFamilyNames) {
        if (s == e.name) return e.family;
    }
    throw InputError("unknown kernel family '" + s + "'");
}

void KernelDescriptor::validate() const {
    switch (family) {
        case KernelFamily::stieltjes:
            require_positive(alpha, "stieltjes alpha");
            break;
        case KernelFamily::incomplete_gamma_sum:
            require_positive(alpha, "incomplete gamma alpha");
            break;
        case KernelFamily::q_pochhammer:
        case KernelFamily::inverse_q_pochhammer:
            (void)QParam(q);
            break;
        case KernelFamily::gamma_ratio:
        case KernelFamily::gamma_sum_ratio:
            if (c.size() != d.size() || c.empty()) {
                throw InputError(to_string(family) + " needs nonempty c and d of equal length");
            }
            require_nonnegative(c, "c");
            require_nonnegative(d, "d");
            break;
        case KernelFamily::gamma_product:
            if (h.empty()) throw InputError("gamma_product needs at least one h");
            require_nonnegative(h, "h");
            break;
        case KernelFamily::hypergeometric:
            for (double v : upper) require_positive(v, "hypergeometric upper parameter");
            for (double v : lower) require_positive(v, "hypergeometric lower parameter");
            if (upper.size() > lower.size() + 1) {
                throw InputError("hypergeometric kernel needs p <= q + 1 for a nonzero radius of convergence");
            }
            break;
        case KernelFamily::product_of:
            if (!left || !right) throw InputError("product_of needs two factors");
            left->validate();
            right->validate();
            break;
        case KernelFamily::constant:
            if (!std::isfinite(value)) throw InputError("constant kernel value must be finite");
            break;
        case KernelFamily::custom_table:
            if (table_x.empty() || table_y.empty() || table.size() != table_x.size() * table_y.size()) {
                throw InputError("custom_table needs a table of size |x| * |y|");
            }
            for (std::size_t i = 1; i < table_x.size(); ++i) {
                if (!(table_x[i] > table_x[i - 1])) throw InputError("custom_table x grid must increase");
            }
            for (std::size_t i = 1; i < table_y.size(); ++i) {
                if (!(table_y[i] > table_y[i - 1])) throw InputError("custom_table y grid must increase");
            }
            break;
        default:
            break;
    }
}

double KernelDescriptor::operator()(double x, double y) const {
    return transpose ? eval_family(*this, y, x) : eval_family(*this, x, y);
}

double eval_kernel(const KernelDescriptor& k, double x, double y) { return k(x, y); }

bool KernelDescriptor::index_columns() const {
    switch (family) {
        case KernelFamily::pochhammer:
        case KernelFamily::inverse_pochhammer:
        case KernelFamily::q_pochhammer:
        case KernelFamily::inverse_q_pochhammer:
        case KernelFamily::gamma_ratio:
        case KernelFamily::gamma_product:
            return !transpose;
        case KernelFamily::product_of:
            return left->index_columns() || right->index_columns();
        default:
            return false;
    }
}

bool KernelDescriptor::translation_type() const {
    switch (family) {
        case KernelFamily::stieltjes:
        case KernelFamily::gamma_sum:
        case KernelFamily::inverse_gamma_sum:
        case KernelFamily::gamma_sum_ratio:
        case KernelFamily::incomplete_gamma_sum:
        case KernelFamily::constant:
            return true;
        case KernelFamily::product_of:
            return left->translation_type() && right->translation_type();
        default:
            return false;
    }
}

std::optional<Signature3> KernelDescriptor::catalog_signature() const {
    constexpr Signature3 tp{1, 1, 1};
    constexpr Signature3 alternating{1, -1, -1};
    switch (family) {
        case KernelFamily::power:
        case KernelFamily::exponential:
        case KernelFamily::stieltjes:
        case KernelFamily::gamma_sum:
        case KernelFamily::incomplete_gamma_sum:
        case KernelFamily::pochhammer:
        case KernelFamily::q_pochhammer:
        case KernelFamily::gamma_product:
        case KernelFamily::hypergeometric:
            return tp;
        case KernelFamily::exp_decay:
        case KernelFamily::inverse_gamma_sum:
        case KernelFamily::inverse_pochhammer:
        case KernelFamily::inverse_q_pochhammer:
            return alternating;
        case KernelFamily::gamma_ratio:
        case KernelFamily::gamma_sum_ratio:
            if (partial_sums_dominated(c, d)) return tp;
            return std::nullopt;
        default:
            return std::nullopt;
    }
}

std::string KernelDescriptor::name() const {
    std::string s = to_string(family);
    char buf[64];
    switch (family) {
        case KernelFamily::stieltjes:
            std::snprintf(buf, sizeof buf, "[alpha=%g]", alpha);
            s += buf;
            break;
        case KernelFamily::incomplete_gamma_sum:
            std::snprintf(buf, sizeof buf, "[%s,alpha=%g]",
                          gamma_kind == GammaKind::lower ? "lower" : "upper", alpha);
            s += buf;
            break;
        case KernelFamily::gamma_sum:
        case KernelFamily::inverse_gamma_sum:
            if (shift != 0.0) {
                std::snprintf(buf, sizeof buf, "[shift=%g]", shift);
                s += buf;
            }
            break;
        case KernelFamily::q_pochhammer:
        case KernelFamily::inverse_q_pochhammer:
            std::snprintf(buf, sizeof buf, "[q=%g]", q);
            s += buf;
            break;
        case KernelFamily::gamma_ratio:
        case KernelFamily::gamma_sum_ratio:
            s += "[c=" + join(c) + ",d=" + join(d) + "]";
            break;
        case KernelFamily::gamma_product:
            s += "[h=" + join(h) + "]";
            break;
        case KernelFamily::hypergeometric:
            s += "[a=" + join(upper) + ",b=" + join(lower) + "]";
            break;
        case KernelFamily::product_of:
            s += "[" + left->name() + "*" + right->name() + "]";
            break;
        case KernelFamily::constant:
            std::snprintf(buf, sizeof buf, "[%g]", value);
            s += buf;
            break;
        default:
            break;
    }
    if (transpose) s += "^T";
    return s;
}

namespace {
KernelDescriptor make(KernelFamily f) {
    KernelDescriptor k;
    k.family = f;
    return k;
}
KernelDescriptor checked(KernelDescriptor k) {
    k.validate();
    return k;
}
}  // namespace

KernelDescriptor power_kernel() { return make(KernelFamily::power); }
KernelDescriptor exponential_kernel() { return make(KernelFamily::exponential); }
KernelDescriptor exp_decay_kernel() { return make(KernelFamily::exp_decay); }

KernelDescriptor stieltjes_kernel(double alpha) {
    KernelDescriptor k = make(KernelFamily::stieltjes);
    k.alpha = alpha;
    return checked(std::move(k));
}

KernelDescriptor gamma_sum_kernel(double shift) {
    KernelDescriptor k = make(KernelFamily::gamma_sum);
    k.shift = shift;
    return k;
}

KernelDescriptor inverse_gamma_sum_kernel(double shift) {
    KernelDescriptor k = make(KernelFamily::inverse_gamma_sum);
    k.shift = shift;
    return k;
}

KernelDescriptor gamma_sum_ratio_kernel(std::vector<double> c, std::vector<double> d) {
    KernelDescriptor k = make(KernelFamily::gamma_sum_ratio);
    k.c = std::move(c);
    k.d = std::move(d);
    return checked(std::move(k));
}

KernelDescriptor incomplete_gamma_kernel(GammaKind kind, double alpha) {
    KernelDescriptor k = make(KernelFamily::incomplete_gamma_sum);
    k.gamma_kind = kind;
    k.alpha = alpha;
    return checked(std::move(k));
}

KernelDescriptor pochhammer_kernel() { return make(KernelFamily::pochhammer); }
KernelDescriptor inverse_pochhammer_kernel() { return make(KernelFamily::inverse_pochhammer); }

KernelDescriptor q_pochhammer_kernel(double q) {
    KernelDescriptor k = make(KernelFamily::q_pochhammer);
    k.q = q;
    return checked(std::move(k));
}

KernelDescriptor inverse_q_pochhammer_kernel(double q) {
    KernelDescriptor k = make(KernelFamily::inverse_q_pochhammer);
    k.q = q;
    return checked(std::move(k));
}

KernelDescriptor gamma_ratio_kernel(std::vector<double> c, std::vector<double> d) {
    KernelDescriptor k = make(KernelFamily::gamma_ratio);
    k.c = std::move(c);
    k.d = std::move(d);
    return checked(std::move(k));
}

KernelDescriptor gamma_product_kernel(std::vector<double> h) {
    KernelDescriptor k = make(KernelFamily::gamma_product);
    k.h = std::move(h);
    return checked(std::move(k));
}

KernelDescriptor hypergeometric_kernel(std::vector<double> upper, std::vector<double> lower) {
    KernelDescriptor k = make(KernelFamily::hypergeometric);
    k.upper = std::move(upper);
    k.lower = std::move(lower);
    return checked(std::move(k));
}

KernelDescriptor product_kernel(KernelDescriptor left, KernelDescriptor right) {
    KernelDescriptor k = make(KernelFamily::product_of);
    k.left = std::make_shared<const KernelDescriptor>(std::move(left));
    k.right = std::make_shared<const KernelDescriptor>(std::move(right));
    return checked(std::move(k));
}

KernelDescriptor constant_kernel(double value) {
    KernelDescriptor k = make(KernelFamily::constant);
    k.value = value;
    return checked(std::move(k));
}

KernelDescriptor custom_table_kernel(std::vector<double> xs, std::vector<double> ys,
                                     std::vector<double> row_major) {
    KernelDescriptor k = make(KernelFamily::custom_table);
    k.table_x = std::move(xs);
    k.table_y = std::move(ys);
    k.table = std::move(row_major);
    return checked(std::move(k));
}

KernelDescriptor transposed(KernelDescriptor k) {
    k.transpose = !k.transpose;
    return k;
}

bool partial_sums_dominated(std::span<const double> c, std::span<const double> d) {
    if (c.size() != d.size()) throw DomainError("majorization test needs equal lengths");
    require_nonnegative(c, "c");
    require_nonnegative(d, "d");
    std::vector<double> cs(c.begin(), c.end()), ds(d.begin(), d.end());
    std::sort(cs.begin(), cs.end());
    std::sort(ds.begin(), ds.end());
    double sc = 0.0, sd = 0.0;
    for (std::size_t i = 0; i < cs.size(); ++i) {
        sc += cs[i];
        sd += ds[i];
        if (sc > sd) return false;
    }
    return true;
}

}  // namespace sigreg
