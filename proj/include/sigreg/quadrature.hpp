#pragma once

// Adaptive Gauss-Kronrod quadrature on finite and half-infinite intervals.

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace sigreg {

enum class QuadratureRule { gk15, gk21 };

std::string to_string(QuadratureRule r);
QuadratureRule quadrature_rule_from_string(const std::string& s);

struct QuadratureSpec {
    QuadratureRule rule = QuadratureRule::gk21;
    double abs_tol = 1e-300;
    double rel_tol = 1e-10;
    /// Infinite domains: marching stops after two consecutive panels whose
    /// contribution is below eps_cut times the running estimate.
    double eps_cut = 1e-14;
    std::size_t max_subdivisions = 2000;  ///< per finite interval or panel
    double initial_panel = 1.0;           ///< width of the first panel on infinite domains
    double panel_growth = 2.0;
    std::size_t max_panels = 400;
    bool record_nodes = false;

    /// Throws InputError on nonpositive tolerances or widths.
    void validate() const;
};

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
    std::size_t evaluations = 0;
    std::vector<double> nodes;  ///< every abscissa evaluated, when record_nodes is set
};

using Integrand = std::function<double(double)>;

/// Integral of f over (a, b). Either bound may be infinite; a doubly infinite
/// range is split at 0. Throws IntegrationError (carrying the estimate) when
/// the tolerance cannot be reached within the subdivision or panel caps.
QuadratureResult integrate(const Integrand& f, double a, double b, const QuadratureSpec& spec = {});

/// Marches panels of width `width`, `width*growth`, ... rightwards from a
/// until `limit` (may be +inf). Each panel is integrated adaptively; marching
/// stops early after two consecutive panels below stop_rel times the running
/// estimate.
QuadratureResult integrate_marching(const Integrand& f, double a, double width, double growth,
                                    double limit, double stop_rel, const QuadratureSpec& spec);

}  // namespace sigreg
