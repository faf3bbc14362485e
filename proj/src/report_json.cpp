#include "sigreg/report_json.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "sigreg/errors.hpp"

namespace sigreg {

namespace {

Json num(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

template <class T>
Json opt(const std::optional<T>& v) {
    if (!v) return nullptr;
    if constexpr (std::is_floating_point_v<T>) return num(*v);
    return Json(*v);
}

Json nums(std::span<const double> v) {
    Json a = Json::array();
    for (double e : v) a.push_back(num(e));
    return a;
}

const Json& member(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw InputError(std::string("report is missing '") + key + "'");
    return j.at(key);
}

double read_double(const Json& j, const char* key) {
    const Json& v = member(j, key);
    if (v.is_null()) return std::numeric_limits<double>::quiet_NaN();
    if (!v.is_number()) throw InputError(std::string("'") + key + "' must be a number");
    return v.get<double>();
}

std::optional<double> read_opt_double(const Json& j, const char* key) {
    const Json& v = member(j, key);
    if (v.is_null()) return std::nullopt;
    if (!v.is_number()) throw InputError(std::string("'") + key + "' must be a number or null");
    return v.get<double>();
}

std::size_t read_size(const Json& j, const char* key) {
    const Json& v = member(j, key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
        throw InputError(std::string("'") + key + "' must be a nonnegative integer");
    }
    return v.get<std::size_t>();
}

bool read_bool(const Json& j, const char* key) {
    const Json& v = member(j, key);
    if (!v.is_boolean()) throw InputError(std::string("'") + key + "' must be a boolean");
    return v.get<bool>();
}

std::vector<double> read_doubles(const Json& j, const char* key) {
    const Json& v = member(j, key);
    if (!v.is_array()) throw InputError(std::string("'") + key + "' must be an array");
    std::vector<double> out;
    for (const Json& e : v) {
        if (e.is_null()) {
            out.push_back(std::numeric_limits<double>::quiet_NaN());
        } else if (e.is_number()) {
            out.push_back(e.get<double>());
        } else {
            throw InputError(std::string("'") + key + "' must hold numbers");
        }
    }
    return out;
}

std::vector<std::size_t> read_sizes(const Json& j, const char* key) {
    const Json& v = member(j, key);
    if (!v.is_array()) throw InputError(std::string("'") + key + "' must be an array");
    std::vector<std::size_t> out;
    for (const Json& e : v) {
        if (!e.is_number_integer() || e.get<long long>() < 0) throw InputError(std::string("'") + key + "' must hold indices");
        out.push_back(e.get<std::size_t>());
    }
    return out;
}

const std::array<const char*, 14> kKnownKinds = {
    "sr_report",           "variation_report", "ratio_classification", "r_monotone",
    "hypergeometric_classification", "nuttall_ratio", "bessel_scan", "meijer_weight",
    "certify",             "classify-series",  "classify-integral",    "hyper-ratio",
    "nuttall",             "identity-check",
};

bool known_kind(const std::string& k) {
    if (k == "conjecture1" || k == "conjecture2") return true;
    return std::find(kKnownKinds.begin(), kKnownKinds.end(), k) != kKnownKinds.end();
}

bool looks_like_verdict(const Json& j) {
    return j.is_object() && j.contains("class") && j.contains("lambda_witnesses");
}

void walk(const Json& j) {
    if (j.is_object()) {
        if (j.contains("kind") && j.at("kind") == "sr_report") {
            sr_report_from_json(j);
            return;
        }
        if (looks_like_verdict(j)) {
            verdict_from_json(j);
            return;
        }
        for (const auto& [k, v] : j.items()) walk(v);
    } else if (j.is_array()) {
        for (const Json& e : j) walk(e);
    }
}

}  // namespace

Json make_document(const std::string& kind) {
    Json d = Json::object();
    d["kind"] = kind;
    d["schema_version"] = kReportSchemaVersion;
    return d;
}

Json signature_json(const std::optional<Signature3>& s) {
    if (!s) return nullptr;
    std::string out = "(";
    for (std::size_t i = 0; i < 3; ++i) {
        if (i) out += ',';
        out += (*s)[i] > 0 ? '+' : '-';
    }
    return out + ")";
}

Json to_json(const SignChangeSummary& s) {
    Json j;
    j["count"] = s.count;
    j["pattern"] = s.pattern_string();
    j["first_nonzero_index"] = opt(s.first_nonzero_index);
    return j;
}

Json to_json(const UnimodalityVerdict& v) {
    Json j;
    j["class"] = to_string(v.cls);
    j["mode_index"] = opt(v.mode_index);
    j["mode_witness"] = opt(v.mode_witness);
    j["lambda_witnesses"] = nums(v.lambda_witnesses);
    j["violation_indices"] = v.violation_indices;
    j["violation_witness"] = nums(v.violation_witness);
    return j;
}

UnimodalityVerdict verdict_from_json(const Json& j) {
    UnimodalityVerdict v;
    const Json& cls = member(j, "class");
    if (!cls.is_string()) throw InputError("'class' must be a string");
    v.cls = unimodality_class_from_string(cls.get<std::string>());
    if (!member(j, "mode_index").is_null()) v.mode_index = read_size(j, "mode_index");
    v.mode_witness = read_opt_double(j, "mode_witness");
    v.lambda_witnesses = read_doubles(j, "lambda_witnesses");
    v.violation_indices = read_sizes(j, "violation_indices");
    v.violation_witness = read_doubles(j, "violation_witness");
    if (v.cls == UnimodalityClass::not_unimodal && v.violation_witness.empty()) {
        throw InputError("not_unimodal verdict without a witness");
    }
    return v;
}

Json to_json(const SRReport& r) {
    Json j = make_document("sr_report");
    j["kernel"] = r.kernel;
    j["order_checked"] = r.order_checked;
    j["signature"] = r.signature_string();
    j["consensus"] = r.consensus();
    j["exploratory"] = r.exploratory;
    j["det_zero_tol"] = num(r.det_zero_tol);
    j["subset_budget"] = r.subset_budget;
    j["seed"] = r.seed;
    j["extended_precision"] = r.extended_precision;
    j["xs"] = nums(r.xs);
    j["ys"] = nums(r.ys);
    Json orders = Json::array();
    for (const OrderRecord& o : r.orders) {
        Json oj;
        oj["order"] = o.m;
        oj["epsilon"] = opt(o.epsilon);
        oj["minors_tested"] = o.minors_tested;
        oj["indeterminate"] = o.indeterminate;
        oj["positive"] = o.positive;
        oj["negative"] = o.negative;
        oj["min_abs_det"] = opt(o.min_abs_det);
        oj["full_enumeration"] = o.full_enumeration;
        Json vs = Json::array();
        for (const MinorViolation& v : o.violations) {
            vs.push_back({{"rows", v.rows}, {"cols", v.cols}, {"det", num(v.det)}});
        }
        oj["violations"] = std::move(vs);
        orders.push_back(std::move(oj));
    }
    j["orders"] = std::move(orders);
    return j;
}

SRReport sr_report_from_json(const Json& j) {
    if (member(j, "kind") != "sr_report") throw InputError("not an SR report");
    SRReport r;
    const Json& k = member(j, "kernel");
    if (!k.is_string()) throw InputError("'kernel' must be a string");
    r.kernel = k.get<std::string>();
    r.order_checked = read_size(j, "order_checked");
    r.exploratory = read_bool(j, "exploratory");
    r.det_zero_tol = read_double(j, "det_zero_tol");
    r.subset_budget = read_size(j, "subset_budget");
    r.seed = member(j, "seed").get<std::uint64_t>();
    r.extended_precision = read_bool(j, "extended_precision");
    r.xs = read_doubles(j, "xs");
    r.ys = read_doubles(j, "ys");
    const Json& orders = member(j, "orders");
    if (!orders.is_array()) throw InputError("'orders' must be an array");
    for (const Json& oj : orders) {
        OrderRecord o;
        o.m = read_size(oj, "order");
        const Json& e = member(oj, "epsilon");
        if (!e.is_null()) {
            if (!e.is_number_integer() || std::abs(e.get<int>()) != 1) throw InputError("'epsilon' must be +1, -1 or null");
            o.epsilon = e.get<int>();
        }
        o.minors_tested = read_size(oj, "minors_tested");
        o.indeterminate = read_size(oj, "indeterminate");
        o.positive = read_size(oj, "positive");
        o.negative = read_size(oj, "negative");
        o.min_abs_det = read_opt_double(oj, "min_abs_det");
        o.full_enumeration = read_bool(oj, "full_enumeration");
        const Json& vs = member(oj, "violations");
        if (!vs.is_array()) throw InputError("'violations' must be an array");
        for (const Json& vj : vs) {
            MinorViolation v;
            v.rows = read_sizes(vj, "rows");
            v.cols = read_sizes(vj, "cols");
            v.det = read_double(vj, "det");
            if (v.rows.size() != o.m || v.cols.size() != o.m) throw InputError("violation size does not match order");
            o.violations.push_back(std::move(v));
        }
        if (!o.violations.empty() && o.epsilon) throw InputError("order with violations cannot carry a consensus sign");
        r.orders.push_back(std::move(o));
    }
    const Json& sig = member(j, "signature");
    if (!sig.is_string() || sig.get<std::string>() != r.signature_string()) {
        throw InputError("signature does not match the per-order records");
    }
    return r;
}

Json to_json(const VariationReport& r) {
    Json j = make_document("variation_report");
    j["coefficients"] = to_json(r.coefficients);
    j["samples"] = to_json(r.samples);
    j["pass"] = r.pass;
    j["pattern_consistent"] = opt(r.pattern_consistent);
    return j;
}

Json to_json(const RatioClassification& r) {
    Json j = make_document("ratio_classification");
    j["verdict"] = to_json(r.verdict);
    j["coefficient_verdict"] = to_json(r.coefficient_verdict);
    j["signature"] = signature_json(r.signature);
    j["orientation"] = opt(r.orientation);
    j["monotone_orientation"] = opt(r.monotone_orientation);
    j["theorem_consistent"] = r.theorem_consistent;
    j["orientation_consistent"] = r.orientation_consistent;
    j["endpoint_derivative"] = opt(r.endpoint_derivative);
    j["boundary_inconclusive"] = r.boundary_inconclusive;
    j["exploratory"] = r.exploratory;
    j["note"] = r.note;
    j["grid_points"] = r.points.size();
    return j;
}

Json to_json(const RMonotoneReport& r) {
    Json j = make_document("r_monotone");
    j["a"] = nums(r.a);
    j["b"] = nums(r.b);
    j["chain_applicable"] = r.chain_applicable;
    j["chain_holds"] = r.chain_holds;
    j["majorization_applicable"] = r.majorization_applicable;
    j["majorization_holds"] = r.majorization_holds;
    j["majorization_as_printed"] = r.majorization_as_printed;
    j["reciprocal_chain_holds"] = r.reciprocal_chain_holds;
    j["reciprocal_majorization_holds"] = r.reciprocal_majorization_holds;
    j["numeric_decreasing"] = r.numeric_decreasing;
    j["numeric_increasing"] = r.numeric_increasing;
    j["contradiction"] = r.contradiction;
    return j;
}

Json to_json(const HypergeometricClassification& r) {
    Json j = make_document("hypergeometric_classification");
    static const char* placements[] = {"upper_only", "lower_only", "general"};
    j["verdict"] = to_json(r.verdict);
    j["coefficient_verdict"] = to_json(r.coefficient_verdict);
    j["placement"] = placements[static_cast<int>(r.placement)];
    j["signature"] = signature_json(r.signature);
    j["r_monotone"] = to_json(r.r_report);
    j["endpoint_derivative"] = opt(r.endpoint_derivative);
    j["endpoint_derivative_check"] = opt(r.endpoint_derivative_check);
    j["boundary_inconclusive"] = r.boundary_inconclusive;
    j["tail_decreasing"] = r.tail_decreasing;
    j["contradiction"] = r.contradiction;
    return j;
}

Json to_json(const NuttallRatioReport& r) {
    Json j = make_document("nuttall_ratio");
    j["verdict"] = to_json(r.verdict);
    j["hypotheses_hold"] = r.hypotheses_hold;
    j["contradiction"] = r.contradiction;
    j["warning"] = r.warning;
    return j;
}

Json to_json(const BesselRatioReport& r) {
    Json j = make_document("bessel_scan");
    j["label"] = r.label;
    j["verdict"] = to_json(r.verdict);
    j["theorem_backed"] = r.theorem_backed;
    j["log_concavity_checked"] = r.log_concavity_checked;
    j["log_concave"] = r.log_concave;
    j["log_concavity_violations"] = nums(r.log_concavity_violations);
    j["counterexample"] = r.counterexample;
    return j;
}

Json to_json(const MeijerWeightReport& r) {
    Json j = make_document("meijer_weight");
    j["v_nonnegative"] = r.v_nonnegative;
    j["min_v"] = num(r.min_v);
    j["argmin_t"] = num(r.argmin_t);
    j["majorization"] = r.majorization;
    j["cross_check_ok"] = r.cross_check_ok;
    return j;
}

void validate_report(const Json& doc) {
    if (!doc.is_object()) throw InputError("report must be a JSON object");
    const Json& kind = member(doc, "kind");
    if (!kind.is_string() || !known_kind(kind.get<std::string>())) throw InputError("unknown report kind");
    if (member(doc, "schema_version") != kReportSchemaVersion) throw InputError("unsupported schema version");
    walk(doc);
}

}  // namespace sigreg
