#include <doctest.h>

#include <json.hpp>
#include <vector>

#include "generators.hpp"
#include "sigreg/errors.hpp"
#include "sigreg/report_json.hpp"

using namespace sigreg;

TEST_CASE("verdict round trip") {
    for (const std::vector<double>& d : {std::vector<double>{1, 2, 3}, std::vector<double>{1, 3, 2},
                                         std::vector<double>{2, 1, 2}, std::vector<double>{1, 3, 1, 3},
                                         std::vector<double>{4}}) {
        const auto v = classify_unimodality_sequence(d);
        const auto back = verdict_from_json(Json::parse(to_json(v).dump()));
        CHECK(back.cls == v.cls);
        CHECK(back.mode_witness == v.mode_witness);
        CHECK(back.violation_witness == v.violation_witness);
    }
}

TEST_CASE("SR report round trip") {
    const std::vector<double> xs{1, 2, 3}, ys{0, 1, 2};
    std::vector<double> t;
    for (double x : xs) {
        for (double y : ys) t.push_back(x * x + y);
    }
    t[0] = -1.0;
    for (const SRReport& r : {certify_sign_regularity(power_kernel(), xs, ys),
                              certify_sign_regularity(custom_table_kernel(xs, ys, t), xs, ys)}) {
        Json doc = to_json(r);
        const SRReport back = sr_report_from_json(Json::parse(doc.dump()));
        CHECK(back.signature_string() == r.signature_string());
        REQUIRE(back.orders.size() == r.orders.size());
        for (std::size_t m = 0; m < r.orders.size(); ++m) {
            CHECK(back.orders[m].epsilon == r.orders[m].epsilon);
            CHECK(back.orders[m].minors_tested == r.orders[m].minors_tested);
            CHECK(back.orders[m].violations.size() == r.orders[m].violations.size());
        }
        CHECK(to_json(back).dump() == doc.dump());
    }
}

TEST_CASE("validate_report") {
    Json doc = make_document("sr_report");
    CHECK(doc["schema_version"] == kReportSchemaVersion);
    Json good = to_json(certify_sign_regularity(power_kernel(), std::vector<double>{1, 2, 3}, std::vector<double>{0, 1, 2}));
    CHECK_NOTHROW(validate_report(good));
    Json bad_kind = good;
    bad_kind["kind"] = "mystery";
    CHECK_THROWS_AS(validate_report(bad_kind), InputError);
    Json bad_version = good;
    bad_version["schema_version"] = 99;
    CHECK_THROWS_AS(validate_report(bad_version), InputError);
    Json bad_sig = good;
    bad_sig["signature"] = "(-,-)";
    CHECK_THROWS_AS(validate_report(bad_sig), InputError);
}

TEST_CASE("signature_json") {
    CHECK(signature_json(Signature3{1, -1, -1}) == "(+,-,-)");
    CHECK(signature_json(std::nullopt).is_null());
}

TEST_CASE("other reports serialize with kind and version") {
    const auto r = check_R_monotone(std::vector<double>{1.0}, std::vector<double>{2.0});
    const Json j = to_json(r);
    CHECK(j.contains("kind"));
    CHECK_NOTHROW(validate_report(Json::parse(j.dump())));
    const auto cls = classify_ratio(finite_series_spec(SeriesFamily::power, {1, 3, 2}, {1, 1, 1}),
                                    testgen::geometric_grid(0.01, 10.0, 30));
    CHECK_NOTHROW(validate_report(Json::parse(to_json(cls).dump())));
}
