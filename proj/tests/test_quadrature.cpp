#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "sigreg/errors.hpp"
#include "sigreg/quadrature.hpp"

using namespace sigreg;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
bool rel_close(double got, double want, double tol) { return std::abs(got - want) <= tol * std::abs(want); }
}  // namespace

TEST_CASE("finite intervals") {
    for (QuadratureRule rule : {QuadratureRule::gk15, QuadratureRule::gk21}) {
        QuadratureSpec s;
        s.rule = rule;
        CHECK(rel_close(integrate([](double x) { return x * x; }, 0.0, 3.0, s).value, 9.0, 1e-13));
        CHECK(rel_close(integrate([](double x) { return std::sin(x); }, 0.0, std::numbers::pi, s).value, 2.0, 1e-12));
        CHECK(rel_close(integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, s).value, 2.0, 1e-9));
        CHECK(rel_close(integrate([](double x) { return x; }, 2.0, 0.0, s).value, -2.0, 1e-13));
    }
}

TEST_CASE("infinite intervals") {
    CHECK(rel_close(integrate([](double t) { return std::exp(-t); }, 0.0, kInf).value, 1.0, 1e-10));
    CHECK(rel_close(integrate([](double t) { return t * std::exp(-2.0 * t); }, 0.0, kInf).value, 0.25, 1e-10));
    CHECK(rel_close(integrate([](double t) { return std::exp(-t * t); }, -kInf, kInf).value, std::sqrt(std::numbers::pi), 1e-10));
    CHECK(rel_close(integrate([](double t) { return std::exp(t); }, -kInf, 0.0).value, 1.0, 1e-10));
    CHECK(rel_close(integrate([](double t) { return 1.0 / (1.0 + t * t); }, 0.0, kInf).value, std::numbers::pi / 2.0, 1e-8));
}

TEST_CASE("node recording") {
    QuadratureSpec s;
    s.record_nodes = true;
    const auto r = integrate([](double x) { return x; }, 0.0, 1.0, s);
    CHECK(r.nodes.size() == r.evaluations);
    CHECK(r.nodes.size() >= 21);
}

TEST_CASE("errors") {
    QuadratureSpec bad;
    bad.rel_tol = 0.0;
    CHECK_THROWS_AS(bad.validate(), InputError);
    CHECK_THROWS_AS(integrate([](double) { return std::numeric_limits<double>::quiet_NaN(); }, 0.0, 1.0), Error);
    QuadratureSpec tight;
    tight.max_subdivisions = 2;
    tight.rel_tol = 1e-14;
    CHECK_THROWS_AS(integrate([](double x) { return std::sin(1.0 / (x + 1e-3)); }, 0.0, 1.0, tight), IntegrationError);
    CHECK(quadrature_rule_from_string("gk15") == QuadratureRule::gk15);
    CHECK_THROWS_AS(quadrature_rule_from_string("simpson"), InputError);
}
