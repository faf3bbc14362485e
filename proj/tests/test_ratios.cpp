#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "generators.hpp"
#include "sigreg/errors.hpp"
#include "sigreg/ratios.hpp"

using namespace sigreg;
using testgen::geometric_grid;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

SeriesRatioSpec family_spec(SeriesFamily f, std::vector<double> a, std::vector<double> b) {
    SeriesRatioSpec s = finite_series_spec(f, std::move(a), std::move(b));
    if (f == SeriesFamily::dirichlet) {
        for (std::size_t k = 0; k < s.b.size(); ++k) s.lambdas.push_back(0.5 * static_cast<double>(k));
        s.interval = {-kInf, kInf};
    }
    if (f == SeriesFamily::gamma_ratio) {
        s.c = {0.5};
        s.d = {1.5};
    }
    return s;
}

double random_x(Rng& rng, SeriesFamily f) {
    if (f == SeriesFamily::dirichlet) return rng.uniform(-4.0, 4.0);
    return rng.uniform(0.05, 8.0);
}

const SeriesFamily kAll[] = {SeriesFamily::power,       SeriesFamily::dirichlet,          SeriesFamily::factorial,
                             SeriesFamily::inverse_factorial, SeriesFamily::q_factorial, SeriesFamily::inverse_q_factorial,
                             SeriesFamily::stieltjes,   SeriesFamily::gamma_ratio};

}  // namespace

TEST_CASE("eval_series examples") {
    SeriesRatioSpec geo;
    geo.family = SeriesFamily::power;
    geo.a_gen = [](std::size_t) { return 1.0; };
    geo.b_gen = [](std::size_t) { return 1.0; };
    CHECK(eval_series(geo, SeriesPart::numerator, 0.5).value == doctest::Approx(2.0).epsilon(1e-14));
    const auto fac = finite_series_spec(SeriesFamily::factorial, {1.0}, {1.0});
    CHECK(eval_series(fac, SeriesPart::numerator, 3.3).value == 1.0);
    SeriesRatioSpec dir = finite_series_spec(SeriesFamily::dirichlet, {1.0, 1.0}, {1.0, 1.0});
    dir.lambdas = {0.0, 1.0};
    CHECK(eval_series(dir, SeriesPart::numerator, std::log(2.0)).value == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("generated series that does not settle") {
    SeriesRatioSpec s;
    s.family = SeriesFamily::power;
    s.a_gen = [](std::size_t) { return 1.0; };
    s.b_gen = [](std::size_t) { return 1.0; };
    s.truncation.max_terms = 100;
    CHECK_THROWS_AS(eval_series(s, SeriesPart::numerator, 0.999), TruncationError);
}

TEST_CASE("eval_ratio examples and degeneracy") {
    const auto s = finite_series_spec(SeriesFamily::power, {0.0, 1.0}, {1.0, 1.0});
    CHECK(eval_ratio(s, 1.0) == doctest::Approx(0.5));
    const auto same = finite_series_spec(SeriesFamily::factorial, {1, 2, 3}, {1, 2, 3});
    CHECK(eval_ratio(same, 2.7) == doctest::Approx(1.0));
    CHECK_THROWS_AS(finite_series_spec(SeriesFamily::power, {1.0}, {0.0}).validate(), Error);
    CHECK_THROWS_AS(eval_ratio(s, -1.0), DomainError);
    const auto inv = finite_series_spec(SeriesFamily::inverse_factorial, {0.0, 1.0}, {1.0, 1.0});
    CHECK_THROWS_AS(eval_ratio(inv, 1e-9), DomainError);
}

TEST_CASE("a = c b gives the constant c for every family") {
    Rng rng(31);
    for (SeriesFamily f : kAll) {
        for (int t = 0; t < 50; ++t) {
            const std::size_t n = 1 + static_cast<std::size_t>(rng.below(6));
            const double c = rng.uniform(-3.0, 3.0);
            std::vector<double> a(n), b(n);
            for (std::size_t k = 0; k < n; ++k) {
                b[k] = rng.uniform(0.1, 2.0);
                a[k] = c * b[k];
            }
            const auto s = family_spec(f, a, b);
            CHECK(eval_ratio(s, random_x(rng, f)) == doctest::Approx(c).epsilon(1e-12).scale(1.0));
        }
    }
}

TEST_CASE("classify_ratio examples") {
    const auto grid = geometric_grid(0.01, 30.0, 150);
    SUBCASE("a = b is constant") {
        for (SeriesFamily f : kAll) {
            const auto s = family_spec(f, {1, 2, 3}, {1, 2, 3});
            const auto g = f == SeriesFamily::dirichlet ? testgen::uniform_grid(-3, 3, 50) : grid;
            CHECK(classify_ratio(s, g).verdict.cls == UnimodalityClass::constant);
        }
    }
    SUBCASE("factorial family with increasing a/b and fast-decaying b") {
        std::vector<double> a, b;
        double fact = 1.0;
        for (int k = 0; k < 10; ++k) {
            if (k > 0) fact *= k;
            b.push_back(1.0 / (fact * fact));
            a.push_back((k + 1) * b.back());
        }
        const auto rc = classify_ratio(finite_series_spec(SeriesFamily::factorial, a, b), grid);
        CHECK((rc.verdict.cls == UnimodalityClass::increasing || rc.verdict.cls == UnimodalityClass::up_down));
        CHECK(rc.theorem_consistent);
    }
    SUBCASE("inverse factorial with a0/b0 < a1/b1 has a decreasing tail") {
        const auto s = finite_series_spec(SeriesFamily::inverse_factorial, {0.0, 1.0, 2.5}, {1.0, 1.0, 1.0});
        const auto g = geometric_grid(1.0, 2000.0, 100);
        const auto rc = classify_ratio(s, g);
        CHECK(rc.points.back().value < rc.points[rc.points.size() - 2].value);
        CHECK(inverse_factorial_tail_slope(s, 1000.0) < 0.0);
        CHECK(rc.verdict.unimodal());
    }
}

TEST_CASE("series ratio theorem on random unimodal specs") {
    Rng rng(32);
    for (SeriesFamily f : kAll) {
        for (int t = 0; t < 30; ++t) {
            const std::size_t n = 3 + static_cast<std::size_t>(rng.below(5));
            const auto ratio = testgen::shaped_sequence(rng, n, testgen::random_shape(rng, n));
            std::vector<double> a(n), b(n);
            for (std::size_t k = 0; k < n; ++k) {
                b[k] = rng.uniform(0.2, 2.0);
                a[k] = ratio[k] * b[k];
            }
            const auto s = family_spec(f, a, b);
            const auto g = f == SeriesFamily::dirichlet ? testgen::uniform_grid(-10, 10, 150) : geometric_grid(0.01, 40.0, 150);
            const auto rc = classify_ratio(s, g);
            CHECK(rc.coefficient_verdict.unimodal());
            CHECK(rc.verdict.unimodal());
            CHECK(rc.theorem_consistent);
        }
    }
}

TEST_CASE("factorial endpoint derivative") {
    CHECK(factorial_endpoint_derivative(finite_series_spec(SeriesFamily::factorial, {1, 2}, {1, 2})) == 0.0);
    CHECK(factorial_endpoint_derivative(finite_series_spec(SeriesFamily::factorial, {0, 1}, {1, 1})) ==
          doctest::Approx(1.0).epsilon(1e-12));
    const auto s = finite_series_spec(SeriesFamily::factorial, {1, 3}, {1, 1});
    CHECK(factorial_endpoint_derivative(s) == doctest::Approx(2.0));
    const double h = 1e-7;
    CHECK((eval_ratio(s, 2 * h) - eval_ratio(s, h)) / h == doctest::Approx(2.0).epsilon(1e-5));
}

TEST_CASE("inverse factorial endpoint derivative") {
    CHECK(inverse_factorial_endpoint_derivative(finite_series_spec(SeriesFamily::inverse_factorial, {1, 2}, {1, 2})) ==
          doctest::Approx(0.0).scale(1.0));
    CHECK(inverse_factorial_endpoint_derivative(finite_series_spec(SeriesFamily::inverse_factorial, {0, 1}, {1, 1})) ==
          doctest::Approx(-1.0).epsilon(1e-12));
    CHECK_THROWS_AS(inverse_factorial_endpoint_derivative(finite_series_spec(SeriesFamily::inverse_factorial, {1}, {1})),
                    InputError);
    Rng rng(33);
    for (int t = 0; t < 40; ++t) {
        std::vector<double> a(6), b(6);
        for (std::size_t k = 0; k < 6; ++k) {
            b[k] = rng.uniform(0.2, 2.0);
            a[k] = rng.uniform(-1.0, 2.0) * b[k];
        }
        const auto s = finite_series_spec(SeriesFamily::inverse_factorial, a, b);
        const double x = 1e-4, h = 1e-5;
        const double fd = (eval_ratio(s, x + h) - eval_ratio(s, x - h)) / (2 * h);
        const double fd2 = (eval_ratio(s, 2 * x + h) - eval_ratio(s, 2 * x - h)) / (2 * h);
        CHECK(inverse_factorial_endpoint_derivative(s) == doctest::Approx(2 * fd - fd2).epsilon(1e-5));
    }
}

TEST_CASE("inverse factorial tail slope") {
    CHECK(inverse_factorial_tail_slope(finite_series_spec(SeriesFamily::inverse_factorial, {1, 2}, {1, 2}), 10.0) == 0.0);
    const auto s = finite_series_spec(SeriesFamily::inverse_factorial, {0, 1}, {1, 1});
    CHECK(inverse_factorial_tail_slope(s, 10.0) == doctest::Approx(-0.01));
    const double exact = -1.0 / 121.0;
    CHECK(inverse_factorial_tail_slope(s, 10.0) * exact > 0.0);
    Rng rng(34);
    for (int t = 0; t < 50; ++t) {
        std::vector<double> a(5), b(5);
        for (std::size_t k = 0; k < 5; ++k) {
            b[k] = rng.uniform(0.2, 2.0);
            a[k] = rng.uniform(-1.0, 2.0) * b[k];
        }
        const auto sp = finite_series_spec(SeriesFamily::inverse_factorial, a, b);
        const double x = 1e3, h = 1.0;
        const double fd = (eval_ratio(sp, x + h) - eval_ratio(sp, x - h)) / (2 * h);
        CHECK(std::signbit(fd) == std::signbit(inverse_factorial_tail_slope(sp, x)));
    }
}

TEST_CASE("factorial shift difference") {
    CHECK(factorial_shift_difference(finite_series_spec(SeriesFamily::factorial, {1, 2}, {1, 2}), 3.0) ==
          doctest::Approx(0.0).scale(1.0));
    const auto g = testgen::uniform_grid(0.5, 100.0, 200);
    const auto updown = finite_series_spec(SeriesFamily::factorial, {1, 3, 2}, {1, 1, 1});
    const auto x0 = shift_difference_threshold(updown, g, -1);
    REQUIRE(x0);
    for (double x : g) {
        if (x >= *x0) CHECK(factorial_shift_difference(updown, x) < 0.0);
    }
    const auto inc = finite_series_spec(SeriesFamily::factorial, {1, 2, 3}, {1, 1, 1});
    CHECK(factorial_shift_difference(inc, 90.0) > 0.0);
}

TEST_CASE("integral ratios") {
    IntegralRatioSpec s;
    s.kernel = exp_decay_kernel();
    s.A = [](double t) { return t; };
    s.B = [](double) { return 1.0; };
    s.w = [](double) { return 1.0; };
    CHECK(eval_integral_ratio(s, 2.0) == doctest::Approx(0.5).epsilon(1e-9));
    for (double y = 0.5; y <= 20.0; y *= 1.3) CHECK(eval_integral_ratio(s, y) == doctest::Approx(1.0 / y).epsilon(1e-8));
    const auto rc = classify_integral_ratio(s, geometric_grid(0.5, 20.0, 30));
    CHECK(rc.verdict.cls == UnimodalityClass::decreasing);
    CHECK(rc.coefficient_verdict.cls == UnimodalityClass::increasing);
    CHECK(rc.orientation == 1);

    IntegralRatioSpec c = s;
    c.A = [](double) { return 3.0; };
    CHECK(eval_integral_ratio(c, 1.7) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(classify_integral_ratio(c, geometric_grid(0.5, 5.0, 10)).verdict.cls == UnimodalityClass::constant);

    IntegralRatioSpec mellin;
    mellin.kernel = transposed(power_kernel());  // K(x, t) = t^x
    mellin.A = [](double t) { return t; };
    mellin.B = [](double t) { return 1.0 + t * t; };
    mellin.w = [](double t) { return std::exp(-t); };
    const auto mv = classify_integral_ratio(mellin, geometric_grid(0.1, 5.0, 40));
    CHECK(mv.coefficient_verdict.cls == UnimodalityClass::up_down);
    CHECK((mv.verdict.cls == UnimodalityClass::increasing || mv.verdict.cls == UnimodalityClass::decreasing ||
           mv.verdict.cls == UnimodalityClass::up_down));
}

TEST_CASE("family names round-trip") {
    for (SeriesFamily f : kAll) CHECK(series_family_from_string(to_string(f)) == f);
    CHECK_THROWS_AS(series_family_from_string("laurent"), InputError);
}
