#include <doctest.h>

#include <cmath>
#include <vector>

#include "generators.hpp"
#include "sigreg/applications.hpp"
#include "sigreg/errors.hpp"

using namespace sigreg;
using testgen::geometric_grid;

TEST_CASE("R monotonicity examples") {
    auto r = check_R_monotone(std::vector<double>{1.0}, std::vector<double>{2.0});
    CHECK(r.numeric_increasing);
    CHECK(!r.numeric_decreasing);
    CHECK(!r.majorization_holds);
    CHECK(r.majorization_as_printed);
    CHECK(r.reciprocal_majorization_holds);
    CHECK(!r.contradiction);
    r = check_R_monotone(std::vector<double>{2.0}, std::vector<double>{1.0});
    CHECK(r.numeric_decreasing);
    CHECK(r.chain_holds);
    CHECK(r.majorization_holds);
    CHECK(!r.reciprocal_majorization_holds);
    CHECK(!r.contradiction);
    r = check_R_monotone(std::vector<double>{1.0, 3.0}, std::vector<double>{1.0, 3.0});
    CHECK(!r.numeric_increasing);
    CHECK(!r.numeric_decreasing);
    CHECK_THROWS_AS(check_R_monotone(std::vector<double>{-1.0}, std::vector<double>{1.0}), DomainError);
    const auto qa = q_transform(std::vector<double>{1.0, 2.0}, QParam(0.5));
    CHECK(qa[0] == doctest::Approx(1.0));
    CHECK(qa[1] == doctest::Approx(3.0));
}

TEST_CASE("R monotonicity clauses agree with the numeric direction") {
    Rng rng(41);
    for (int t = 0; t < 1000; ++t) {
        const std::size_t m = 1 + static_cast<std::size_t>(rng.below(4));
        const std::size_t n = m + static_cast<std::size_t>(rng.below(3));
        std::vector<double> a(m), b(n);
        for (double& v : a) v = rng.uniform(0.05, 5.0);
        for (double& v : b) v = rng.uniform(0.05, 5.0);
        const auto r = check_R_monotone(a, b);
        CHECK(!r.contradiction);
        CHECK(!(r.numeric_increasing && r.numeric_decreasing));
        if (r.majorization_holds || r.chain_holds) CHECK(!r.numeric_increasing);
        if (r.reciprocal_majorization_holds || r.reciprocal_chain_holds) CHECK(!r.numeric_decreasing);
        for (std::size_t i = 0; i < r.grid.size(); ++i) {
            double want = 0.0;
            for (double ai : r.a) want += 1.0 / (ai + r.grid[i]);
            for (double bj : r.b) want -= 1.0 / (bj + r.grid[i]);
            CHECK(r.log_derivative[i] == doctest::Approx(want).epsilon(1e-12).scale(1.0));
        }
    }
}

TEST_CASE("hypergeometric ratio") {
    HypergeometricRatioSpec s;
    s.c = {0.0};
    s.a1 = {2.0};
    s.b1 = {3.0};
    s.b2 = {2.0};
    s.a2 = {3.0};
    s.x = 0.4;
    CHECK(hypergeometric_ratio(s, 1.3) == doctest::Approx(1.0).epsilon(1e-14));

    HypergeometricRatioSpec e;
    e.c = {};
    e.d = {};
    e.a1 = {};
    e.b1 = {};
    e.x = 0.7;
    CHECK(hypergeometric_ratio(e, 2.0) == doctest::Approx(1.0));
}

TEST_CASE("hypergeometric classification, upper placement") {
    HypergeometricRatioSpec s;
    s.c = {0.0};
    s.a1 = {5.0};
    s.b1 = {1.0, 3.0};
    s.x = 0.5;
    s.mu_grid = geometric_grid(0.05, 50.0, 80);
    const auto h = classify_hypergeometric_ratio(s);
    CHECK(h.placement == MuPlacement::upper_only);
    CHECK(h.verdict.unimodal());
    CHECK(!h.contradiction);
    REQUIRE(h.endpoint_derivative);
    REQUIRE(h.endpoint_derivative_check);
    CHECK(*h.endpoint_derivative == doctest::Approx(*h.endpoint_derivative_check).epsilon(1e-9));
    // One-sided difference at the left end of mu.
    const double d = 1e-6;
    const double fd = (hypergeometric_ratio(s, 2 * d) - hypergeometric_ratio(s, d)) / d;
    CHECK(*h.endpoint_derivative == doctest::Approx(fd).epsilon(1e-4));
}

TEST_CASE("hypergeometric coefficients reproduce the series") {
    HypergeometricRatioSpec s;
    s.c = {0.0};
    s.a1 = {1.5};
    s.b1 = {2.5};
    s.b2 = {0.5};
    s.a2 = {1.0};
    s.x = 0.3;
    std::vector<double> f, g;
    hypergeometric_coefficients(s, f, g);
    REQUIRE(f.size() > 3);
    // Numerator at mu: sum_k f_k (mu)_k.
    const double mu = 0.8;
    double num = 0.0, poch = 1.0;
    for (std::size_t k = 0; k < f.size(); ++k) {
        num += f[k] * poch;
        poch *= mu + static_cast<double>(k);
    }
    CHECK(num == doctest::Approx(hyper_pfq(std::vector<double>{mu, 1.5}, std::vector<double>{2.5}, 0.3).value).epsilon(1e-12));
}

TEST_CASE("Nuttall Q") {
    NuttallSpec s;
    s.mu = 1.0;
    s.nu = 0.0;
    for (double a : {0.5, 1.0, 2.0, 4.0}) {
        s.a = a;
        s.b = 0.0;
        CHECK(nuttall_q(s) == doctest::Approx(1.0).epsilon(1e-8));
    }
    s.a = 1.5;
    double prev = 2.0;
    for (double b = 0.0; b <= 6.0; b += 0.5) {
        s.b = b;
        const double v = nuttall_q(s);
        CHECK(v < prev);
        prev = v;
    }
    Rng rng(42);
    for (int t = 0; t < 30; ++t) {
        NuttallSpec k;
        k.mu = rng.uniform(0.2, 6.0);
        k.nu = rng.uniform(0.0, 4.0);
        k.a = rng.uniform(0.1, 4.0);
        k.b = 0.0;
        CHECK(nuttall_q(k) == doctest::Approx(nuttall_q_kummer(k.mu, k.nu, k.a)).epsilon(1e-6));
    }
    NuttallSpec bad;
    bad.b = -1.0;
    CHECK_THROWS(bad.validate());
}

TEST_CASE("Nuttall ratio classification") {
    const auto grid = geometric_grid(0.1, 30.0, 40);
    const auto r = classify_nuttall_ratio(2.0, 0.0, 1.0, 1.0, 0.0, grid);
    CHECK(r.hypotheses_hold);
    CHECK(r.verdict.unimodal());
    CHECK(!r.contradiction);
    const auto odd = classify_nuttall_ratio(1.0, 0.0, 1.0, 1.0, 0.0, grid);
    CHECK(!odd.hypotheses_hold);
    CHECK(!odd.warning.empty());
}

TEST_CASE("Bessel ratio scanner") {
    const auto grid = geometric_grid(0.01, 50.0, 120);
    for (double dnu : {2.0, 4.0}) {
        const auto r = scan_bessel_ratio(0.5 + dnu, 0.5, 1.0, 1.5, grid);
        CHECK(r.theorem_backed);
        CHECK(r.log_concavity_checked);
        CHECK(r.verdict.unimodal());
        CHECK(!r.counterexample);
        CHECK(r.label == "theorem-backed");
    }
    const auto e = scan_bessel_ratio(1.3, 0.4, 1.0, 1.0, grid);
    CHECK(!e.theorem_backed);
    CHECK(e.label == "exploratory");
    for (std::size_t i = 0; i < grid.size(); i += 17) {
        CHECK(e.values[i] == doctest::Approx(bessel_i(1.3, grid[i]) / bessel_i(0.4, grid[i])).epsilon(1e-10));
    }
}

TEST_CASE("product kernel scan is exploratory") {
    const std::vector<double> g{0.5, 1.0, 1.5, 2.0};
    const auto r = scan_product_kernel(gamma_sum_kernel(1.5), inverse_gamma_sum_kernel(0.5), g, g);
    CHECK(r.exploratory);
    CHECK_THROWS_AS(scan_product_kernel(power_kernel(), gamma_sum_kernel(), g, g), InputError);
}

TEST_CASE("Meijer weight: majorization implies a nonnegative weight") {
    const auto tg = testgen::uniform_grid(0.001, 0.999, 400);
    auto w = meijer_weight_conditions(std::vector<double>{0.5}, std::vector<double>{1.0}, tg);
    CHECK(w.majorization);
    CHECK(w.v_nonnegative);
    w = meijer_weight_conditions(std::vector<double>{1.0}, std::vector<double>{0.5}, tg);
    CHECK(!w.majorization);
    CHECK(!w.v_nonnegative);
    Rng rng(43);
    int majorized = 0;
    for (int t = 0; t < 1000; ++t) {
        const std::size_t p = 1 + static_cast<std::size_t>(rng.below(4));
        std::vector<double> c(p), d(p);
        for (std::size_t i = 0; i < p; ++i) {
            c[i] = rng.uniform(0.0, 3.0);
            d[i] = rng.uniform(0.0, 3.0);
        }
        const auto r = meijer_weight_conditions(c, d, tg);
        CHECK(r.cross_check_ok);
        if (r.majorization) {
            ++majorized;
            CHECK(r.v_nonnegative);
        }
    }
    CHECK(majorized > 0);
}
