#include <doctest.h>

#include <cmath>
#include <vector>

#include "generators.hpp"
#include "sigreg/errors.hpp"
#include "sigreg/sr_check.hpp"

using namespace sigreg;

TEST_CASE("determinant and minors") {
    CHECK(determinant({2.0}, 1) == 2.0);
    CHECK(determinant({1, 2, 3, 4}, 2) == doctest::Approx(-2.0));
    CHECK(determinant({0, 1, 1, 0}, 2) == doctest::Approx(-1.0));
    CHECK(determinant({1, 2, 3, 4}, 2, true) == doctest::Approx(-2.0));
    CHECK(minor(power_kernel(), std::vector<double>{2.0}, std::vector<double>{1.0}) == 2.0);
    CHECK(minor(power_kernel(), std::vector<double>{1, 2, 3}, std::vector<double>{0, 1, 2}) == doctest::Approx(2.0));
    const double e = minor(exp_decay_kernel(), std::vector<double>{1, 2}, std::vector<double>{1, 2});
    CHECK(e == doctest::Approx(std::exp(-5.0) - std::exp(-4.0)).epsilon(1e-12));
    CHECK(e < 0.0);
    CHECK_THROWS_AS(minor(power_kernel(), std::vector<double>{1, 1}, std::vector<double>{0, 1}), InputError);
    CHECK_THROWS_AS(minor(power_kernel(), std::vector<double>{1, 2}, std::vector<double>{0}), InputError);
}

TEST_CASE("Vandermonde minors are positive") {
    Rng rng(21);
    for (int t = 0; t < 300; ++t) {
        const std::size_t m = 1 + static_cast<std::size_t>(rng.below(5));
        const auto xs = testgen::sorted_uniform(rng, m, 0.2, 4.0);
        std::vector<double> ys(m);
        for (std::size_t j = 0; j < m; ++j) ys[j] = static_cast<double>(j);
        double vdm = 1.0;
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = i + 1; j < m; ++j) vdm *= xs[j] - xs[i];
        }
        const double det = minor(power_kernel(), xs, ys);
        CHECK(det > 0.0);
        CHECK(det == doctest::Approx(vdm).epsilon(1e-9));
    }
}

TEST_CASE("certify catalog examples") {
    auto r = certify_sign_regularity(power_kernel(), std::vector<double>{1, 2, 3, 4}, std::vector<double>{0, 1, 2, 3});
    CHECK(r.signature_string() == "(+,+,+)");
    CHECK(!r.has_violations());
    CHECK(r.orders[0].full_enumeration);
    CHECK(r.orders[2].minors_tested == 16);
    r = certify_sign_regularity(exp_decay_kernel(), std::vector<double>{0.5, 1, 1.5, 2.5}, std::vector<double>{0.3, 0.9, 1.4, 2});
    CHECK(r.signature_string() == "(+,-,-)");
    const std::vector<double> qx{0.5, 1.0, 1.7, 2.5}, qn{1, 2, 4, 6};
    CHECK(certify_sign_regularity(inverse_q_pochhammer_kernel(0.5), qx, qn).signature_string() == "(+,-,-)");
    CHECK(certify_sign_regularity(q_pochhammer_kernel(0.5), qx, qn).signature_string() == "(+,+,+)");
    CHECK_THROWS_AS(certify_sign_regularity(power_kernel(), std::vector<double>{1, 2}, std::vector<double>{0, 1, 2}), InputError);
}

TEST_CASE("planted sign flip is reported") {
    const std::vector<double> xs{1, 2, 3}, ys{0, 1, 2};
    std::vector<double> t;
    for (double x : xs) {
        for (double y : ys) t.push_back(std::pow(x, y));
    }
    t[4] = -t[4];
    const auto r = certify_sign_regularity(custom_table_kernel(xs, ys, t), xs, ys);
    CHECK(r.has_violations());
    CHECK(!r.orders[0].epsilon);
    REQUIRE(r.orders[0].violations.size() == 1);
    CHECK(r.orders[0].violations[0].rows == std::vector<std::size_t>{1});
    CHECK(r.orders[0].violations[0].cols == std::vector<std::size_t>{1});
}

TEST_CASE("row scaling leaves the signature unchanged") {
    Rng rng(22);
    const std::vector<double> xs{0.5, 1.0, 1.5, 2.0, 2.5}, ys{0.2, 0.7, 1.1, 1.9, 2.4};
    for (const KernelDescriptor& k : {power_kernel(), exp_decay_kernel(), stieltjes_kernel(1.0)}) {
        std::vector<double> table;
        for (double x : xs) {
            for (double y : ys) table.push_back(eval_kernel(k, x, y));
        }
        const std::string base = certify_sign_regularity(custom_table_kernel(xs, ys, table), xs, ys).signature_string();
        for (int t = 0; t < 10; ++t) {
            std::vector<double> scaled(table);
            for (std::size_t i = 0; i < xs.size(); ++i) {
                const double c = rng.uniform(0.1, 10.0);
                for (std::size_t j = 0; j < ys.size(); ++j) scaled[i * ys.size() + j] *= c;
            }
            CHECK(certify_sign_regularity(custom_table_kernel(xs, ys, scaled), xs, ys).signature_string() == base);
        }
    }
}

TEST_CASE("majorized gamma ratio kernels are totally positive on random grids") {
    Rng rng(23);
    for (int t = 0; t < 30; ++t) {
        const std::size_t p = 1 + static_cast<std::size_t>(rng.below(3));
        std::vector<double> c(p), d(p);
        for (std::size_t i = 0; i < p; ++i) {
            c[i] = rng.uniform(0.0, 2.0);
            d[i] = c[i] + rng.uniform(0.0, 1.5);
        }
        if (!partial_sums_dominated(c, d)) continue;
        const auto xs = testgen::sorted_uniform(rng, 5, 0.1, 4.0);
        const std::vector<double> ns{0, 1, 2, 3, 5};
        const auto r = certify_sign_regularity(gamma_ratio_kernel(c, d), xs, ns);
        CHECK(r.signature_string() == "(+,+,+)");
    }
}

TEST_CASE("budgeted enumeration is deterministic and thread-independent") {
    const auto xs = testgen::uniform_grid(0.1, 3.0, 40);
    const auto ys = testgen::uniform_grid(0.1, 3.0, 40);
    CertifyOptions o;
    o.subset_budget = 3000;
    o.seed = 99;
    const auto a = certify_sign_regularity(exp_decay_kernel(), xs, ys, o);
    o.threads = 4;
    const auto b = certify_sign_regularity(exp_decay_kernel(), xs, ys, o);
    CHECK(!a.orders[2].full_enumeration);
    CHECK(a.orders[2].minors_tested == b.orders[2].minors_tested);
    CHECK(a.orders[2].min_abs_det == b.orders[2].min_abs_det);
    CHECK(a.signature_string() == "(+,-,-)");
}

TEST_CASE("epsilon_orientation") {
    CHECK(epsilon_orientation(Signature3{1, 1, 1}) == 1);
    CHECK(epsilon_orientation(Signature3{1, -1, -1}) == 1);
    CHECK(epsilon_orientation(Signature3{1, 1, -1}) == -1);
    SRReport empty;
    CHECK(!epsilon_orientation(empty));
}

TEST_CASE("variation diminishing examples") {
    const auto xs = testgen::uniform_grid(0.01, 0.99, 200);
    const std::vector<double> idx{0, 1, 2};
    auto r = variation_diminishing_check(pochhammer_kernel(), xs, idx, std::vector<double>{1, 2, 3});
    CHECK(r.pass);
    CHECK(r.coefficients.count == 0);
    CHECK(r.samples.count == 0);
    // c0 + c1 x + c2 x^2 = -(1-x)^2 on (0,1): no sign change at all.
    r = variation_diminishing_check(power_kernel(), xs, idx, std::vector<double>{-1, 2, -1});
    CHECK(r.pass);
    CHECK(r.samples.count == 0);
    const auto xe = testgen::uniform_grid(-3.0, 3.0, 200);
    r = variation_diminishing_check(exponential_kernel(), xe, idx, std::vector<double>{1, -3, 1});
    CHECK(r.pass);
    CHECK(r.samples.count == 2);
}

TEST_CASE("variation diminishing holds for certified kernels") {
    Rng rng(24);
    const auto xs = testgen::uniform_grid(0.05, 3.0, 120);
    const std::vector<double> ys{0.2, 0.6, 1.1, 1.7, 2.5};
    const std::vector<double> ns{0, 1, 2, 3, 4};
    struct Case {
        KernelDescriptor k;
        const std::vector<double>* y;
    };
    const Case cases[] = {{power_kernel(), &ys},           {exp_decay_kernel(), &ys},
                          {stieltjes_kernel(0.7), &ys},    {pochhammer_kernel(), &ns},
                          {inverse_pochhammer_kernel(), &ns}, {q_pochhammer_kernel(0.4), &ns}};
    for (const Case& c : cases) {
        const auto cert = certify_sign_regularity(c.k, std::vector<double>{0.3, 0.9, 1.6, 2.4, 2.9}, *c.y);
        REQUIRE(cert.consensus());
        const Signature3 sig{*cert.epsilon(1), *cert.epsilon(2), *cert.epsilon(3)};
        for (int t = 0; t < 100; ++t) {
            const auto coeffs = testgen::few_sign_changes(rng, c.y->size(), 2);
            const auto r = variation_diminishing_check(c.k, xs, *c.y, coeffs, sig);
            CHECK(r.pass);
            if (r.pattern_consistent) CHECK(*r.pattern_consistent);
        }
    }
}

TEST_CASE("q-Pochhammer identity residual") {
    const QParam q(0.3);
    CHECK(qpochhammer_identity_residual(0.2, 0.7, q, 0) == 0.0);
    CHECK(qpochhammer_identity_residual(0.2, 0.7, q, 1) <= 1e-16);
    Rng rng(25);
    for (int t = 0; t < 1000; ++t) {
        const QParam qq(rng.uniform(0.05, 0.95));
        const double r = qpochhammer_identity_residual(rng.uniform(), rng.uniform(), qq, static_cast<unsigned>(rng.below(13)));
        CHECK(r <= 1e-12);
    }
    CHECK(qpochhammer_identity_residual(0.15, 0.85, q, 8) <= 1e-13);
}

TEST_CASE("signature string of an exploratory product") {
    const auto r = certify_sign_regularity(product_kernel(gamma_sum_kernel(), gamma_sum_kernel()),
                                           std::vector<double>{0.5, 1, 1.5, 2}, std::vector<double>{0.5, 1, 1.5, 2});
    CHECK(r.exploratory);
    CHECK(r.signature_string() == "(+,+,+)");
}
