#include "sigreg/sr_check.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <thread>

#include "sigreg/double_double.hpp"
#include "sigreg/errors.hpp"
#include "sigreg/rng.hpp"

namespace sigreg {

namespace {

template <class T>
double eliminate(const std::vector<double>& src, std::size_t m) {
    using std::abs;
    std::vector<T> a(src.begin(), src.end());
    T det = T(1.0);
    for (std::size_t col = 0; col < m; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < m; ++r) {
            if (abs(a[r * m + col]) > abs(a[piv * m + col])) piv = r;
        }
        if (to_double(a[piv * m + col]) == 0.0) return 0.0;
        if (piv != col) {
            for (std::size_t c = 0; c < m; ++c) std::swap(a[piv * m + c], a[col * m + c]);
            det = -det;
        }
        const T p = a[col * m + col];
        det *= p;
        for (std::size_t r = col + 1; r < m; ++r) {
            const T f = a[r * m + col] / p;
            for (std::size_t c = col + 1; c < m; ++c) a[r * m + c] -= f * a[col * m + c];
        }
    }
    return to_double(det);
}

double binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0.0;
    double r = 1.0;
    for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    return r;
}

// Advances idx to the next increasing m-subset of {0..n-1}; false at the end.
bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
    const std::size_t m = idx.size();
    for (std::size_t i = m; i-- > 0;) {
        if (idx[i] < n - m + i) {
            ++idx[i];
            for (std::size_t j = i + 1; j < m; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

std::vector<std::size_t> iota(std::size_t start, std::size_t m) {
    std::vector<std::size_t> v(m);
    for (std::size_t i = 0; i < m; ++i) v[i] = start + i;
    return v;
}

struct Job {
    std::vector<std::size_t> rows, cols;
};

std::vector<Job> enumerate_jobs(std::size_t nx, std::size_t ny, std::size_t m,
                                std::size_t budget, Rng& rng, bool& full) {
    std::vector<Job> jobs;
    full = binomial(nx, m) * binomial(ny, m) <= static_cast<double>(budget);
    if (full) {
        std::vector<std::size_t> r = iota(0, m);
        do {
            std::vector<std::size_t> c = iota(0, m);
            do {
                jobs.push_back({r, c});
            } while (next_combination(c, ny));
        } while (next_combination(r, nx));
        return jobs;
    }
    std::set<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> seen;
    for (std::size_t i = 0; i + m <= nx; ++i) {
        for (std::size_t j = 0; j + m <= ny; ++j) {
            Job job{iota(i, m), iota(j, m)};
            seen.insert({job.rows, job.cols});
            jobs.push_back(std::move(job));
        }
    }
    const std::size_t max_attempts = 20 * budget;
    for (std::size_t attempt = 0; jobs.size() < budget && attempt < max_attempts; ++attempt) {
        Job job{rng.subset(nx, m), rng.subset(ny, m)};
        if (seen.insert({job.rows, job.cols}).second) jobs.push_back(std::move(job));
    }
    return jobs;
}

struct MinorValue {
    double det = 0.0;
    double scale = 0.0;
};

MinorValue evaluate_job(const std::vector<double>& mat, std::size_t ny, const Job& job, bool extended) {
    const std::size_t m = job.rows.size();
    std::vector<double> sub(m * m);
    double scale = 1.0;
    for (std::size_t i = 0; i < m; ++i) {
        double sup = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            const double v = mat[job.rows[i] * ny + job.cols[j]];
            sub[i * m + j] = v;
            sup = std::max(sup, std::abs(v));
        }
        scale *= sup;
    }
    return {determinant(std::move(sub), m, extended), scale};
}

std::vector<MinorValue> evaluate_all(const std::vector<double>& mat, std::size_t ny,
                                     const std::vector<Job>& jobs, bool extended, unsigned threads) {
    std::vector<MinorValue> out(jobs.size());
    const unsigned t = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(jobs.size() / 64 + 1)));
    if (t == 1) {
        for (std::size_t i = 0; i < jobs.size(); ++i) out[i] = evaluate_job(mat, ny, jobs[i], extended);
        return out;
    }
    // Each worker writes disjoint slots; assembly order is the job order.
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < t; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < jobs.size(); i += t) out[i] = evaluate_job(mat, ny, jobs[i], extended);
        });
    }
    for (auto& th : pool) th.join();
    return out;
}

void check_grid(std::span<const double> g, const char* what) {
    if (g.empty()) throw InputError(std::string(what) + " grid is empty");
    require_strictly_increasing(g, what);
}

}  // namespace

double determinant(std::vector<double> a, std::size_t m, bool extended) {
    if (a.size() != m * m) throw InputError("determinant: matrix size mismatch");
    if (m == 0) return 1.0;
    if (m == 1) return a[0];
    return extended ? eliminate<DoubleDouble>(a, m) : eliminate<double>(a, m);
}

double minor(const KernelDescriptor& k, std::span<const double> xs, std::span<const double> ys,
             bool extended) {
    if (xs.size() != ys.size() || xs.empty()) throw InputError("minor needs |xs| = |ys| >= 1");
    check_grid(xs, "minor x");
    check_grid(ys, "minor y");
    const std::size_t m = xs.size();
    std::vector<double> a(m * m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) a[i * m + j] = k(xs[i], ys[j]);
    }
    return determinant(std::move(a), m, extended);
}

bool SRReport::has_violations() const {
    return std::any_of(orders.begin(), orders.end(), [](const OrderRecord& o) { return !o.violations.empty(); });
}

bool SRReport::consensus() const {
    return !orders.empty() &&
           std::all_of(orders.begin(), orders.end(), [](const OrderRecord& o) { return o.epsilon.has_value(); });
}

std::optional<int> SRReport::epsilon(std::size_t m) const {
    for (const auto& o : orders) {
        if (o.m == m) return o.epsilon;
    }
    return std::nullopt;
}

std::string SRReport::signature_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < orders.size(); ++i) {
        if (i) s += ",";
        const auto& e = orders[i].epsilon;
        s += !e ? "?" : (*e > 0 ? "+" : "-");
    }
    return s + ")";
}

SRReport certify_matrix(const std::vector<double>& mat, std::span<const double> xs,
                        std::span<const double> ys, const std::string& name, const CertifyOptions& opts) {
    check_grid(xs, "certify x");
    check_grid(ys, "certify y");
    if (opts.order < 1) throw InputError("certification order must be at least 1");
    if (xs.size() < opts.order || ys.size() < opts.order) {
        throw InputError("grids must contain at least r = " + std::to_string(opts.order) + " points");
    }
    if (mat.size() != xs.size() * ys.size()) throw InputError("certify: matrix size mismatch");
    if (!(opts.det_zero_tol >= 0.0)) throw InputError("det_zero_tol must be nonnegative");
    if (opts.subset_budget == 0) throw InputError("subset_budget must be positive");
    for (double v : mat) {
        if (!std::isfinite(v)) throw RangeError("kernel value is not finite on the grid");
    }

    SRReport rep;
    rep.kernel = name;
    rep.order_checked = opts.order;
    rep.xs.assign(xs.begin(), xs.end());
    rep.ys.assign(ys.begin(), ys.end());
    rep.det_zero_tol = opts.det_zero_tol;
    rep.subset_budget = opts.subset_budget;
    rep.seed = opts.seed;
    rep.extended_precision = opts.extended_precision;

    Rng rng(opts.seed);
    const std::size_t ny = ys.size();
    for (std::size_t m = 1; m <= opts.order; ++m) {
        OrderRecord rec;
        rec.m = m;
        const std::vector<Job> jobs = enumerate_jobs(xs.size(), ny, m, opts.subset_budget, rng, rec.full_enumeration);
        const std::vector<MinorValue> vals = evaluate_all(mat, ny, jobs, opts.extended_precision, opts.threads);
        rec.minors_tested = jobs.size();
        std::vector<int> signs(jobs.size(), 0);
        for (std::size_t i = 0; i < vals.size(); ++i) {
            const double ad = std::abs(vals[i].det);
            if (!(ad > opts.det_zero_tol * vals[i].scale) || vals[i].scale == 0.0) {
                ++rec.indeterminate;
                continue;
            }
            signs[i] = vals[i].det > 0.0 ? 1 : -1;
            (signs[i] > 0 ? rec.positive : rec.negative) += 1;
            rec.min_abs_det = rec.min_abs_det ? std::min(*rec.min_abs_det, ad) : ad;
        }
        if (rec.positive > 0 && rec.negative == 0) {
            rec.epsilon = 1;
        } else if (rec.negative > 0 && rec.positive == 0) {
            rec.epsilon = -1;
        } else if (rec.positive > 0 && rec.negative > 0) {
            const int minority = rec.positive >= rec.negative ? -1 : 1;
            for (std::size_t i = 0; i < signs.size() && rec.violations.size() < opts.max_violations_kept; ++i) {
                if (signs[i] == minority) rec.violations.push_back({jobs[i].rows, jobs[i].cols, vals[i].det});
            }
        }
        rep.orders.push_back(std::move(rec));
    }
    return rep;
}

SRReport certify_sign_regularity(const KernelDescriptor& k, std::span<const double> xs,
                                 std::span<const double> ys, const CertifyOptions& opts) {
    k.validate();
    check_grid(xs, "certify x");
    check_grid(ys, "certify y");
    std::vector<double> mat(xs.size() * ys.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        for (std::size_t j = 0; j < ys.size(); ++j) mat[i * ys.size() + j] = k(xs[i], ys[j]);
    }
    SRReport rep = certify_matrix(mat, xs, ys, k.name(), opts);
    rep.exploratory = k.family == KernelFamily::product_of || !k.catalog_signature().has_value();
    return rep;
}

std::optional<int> epsilon_orientation(const SRReport& rep) {
    const auto e2 = rep.epsilon(2);
    const auto e3 = rep.epsilon(3);
    if (!e2 || !e3) return std::nullopt;
    return *e2 * *e3;
}

std::optional<int> epsilon_orientation(const Signature3& s) { return s[1] * s[2]; }

VariationReport variation_diminishing_check(const KernelDescriptor& k, std::span<const double> xs,
                                            std::span<const double> ys,
                                            std::span<const double> coeffs,
                                            const std::optional<Signature3>& signature) {
    if (ys.size() != coeffs.size()) throw InputError("variation check: one coefficient per column");
    check_grid(xs, "variation x");
    check_grid(ys, "variation y");
    VariationReport rep;
    rep.coefficients = sign_changes_sequence(coeffs);
    rep.values.resize(xs.size());
    std::vector<double> cleaned(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double s = 0.0, mag = 0.0;
        for (std::size_t j = 0; j < ys.size(); ++j) {
            const double t = coeffs[j] * k(xs[i], ys[j]);
            s += t;
            mag += std::abs(t);
        }
        rep.values[i] = s;
        cleaned[i] = std::abs(s) <= 1e-12 * mag ? 0.0 : s;
    }
    rep.samples = sign_changes_sequence(cleaned);
    rep.pass = rep.samples.count <= rep.coefficients.count;
    const std::size_t kk = rep.samples.count;
    if (signature && kk == rep.coefficients.count && kk <= 2 && !rep.samples.pattern.empty()) {
        const int ek = kk == 0 ? 1 : (*signature)[kk - 1];
        const int ek1 = (*signature)[kk];
        const bool same = rep.samples.pattern.front() == rep.coefficients.pattern.front();
        rep.pattern_consistent = (ek * ek1 > 0) == same;
    }
    return rep;
}

double qpochhammer_identity_residual(double x, double y, QParam q, unsigned m) {
    const double qv = q.value();
    const double lhs = q_pochhammer(x, q, m) - q_pochhammer(y, q, m);
    double sum = 0.0;
    double qj = 1.0;
    for (unsigned j = 0; j < m; ++j) {
        sum += qj * q_pochhammer(x, q, j) * q_pochhammer(y * qj * qv, q, m - 1 - j);
        qj *= qv;
    }
    const double rhs = -(x - y) * sum;
    return std::abs(lhs - rhs);
}

}  // namespace sigreg
