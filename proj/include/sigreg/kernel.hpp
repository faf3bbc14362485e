#pragma once

// Catalog of bivariate kernels K(x, y). Rows are indexed by x and columns by
// y; for the index families (pochhammer and friends) y is the index n and
// must be a nonnegative integer, so K(x, n) = phi_n(x).

#include <array>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sigreg/specfun.hpp"

namespace sigreg {

enum class KernelFamily {
    power,                 ///< x^y, x > 0
    exponential,           ///< e^{xy}
    exp_decay,             ///< e^{-xy}
    stieltjes,             ///< (x+y)^{-alpha}
    gamma_sum,             ///< Gamma(x+y+shift)
    inverse_gamma_sum,     ///< 1/Gamma(x+y+shift)
    gamma_sum_ratio,       ///< prod Gamma(x+y+c_i)/Gamma(x+y+d_i)
    incomplete_gamma_sum,  ///< gamma(x+y, alpha) or Gamma(x+y, alpha)
    pochhammer,            ///< (x)_n
    inverse_pochhammer,    ///< 1/(x)_n
    q_pochhammer,          ///< (q^x; q)_n
    inverse_q_pochhammer,  ///< 1/(q^x; q)_n
    gamma_ratio,           ///< prod (x+c_i)_n/(x+d_i)_n
    gamma_product,         ///< prod (h_i+x)_n
    hypergeometric,        ///< pFq(upper; lower; xy)
    product_of,            ///< left(x,y) * right(x,y)
    constant,              ///< value
    custom_table,          ///< tabulated values, exact abscissa lookup
};

std::string to_string(KernelFamily f);
KernelFamily kernel_family_from_string(const std::string& s);

/// Signs (eps_1, eps_2, eps_3) as +1/-1.
using Signature3 = std::array<int, 3>;

struct KernelDescriptor {
    KernelFamily family = KernelFamily::power;
    double alpha = 1.0;             ///< stieltjes exponent, incomplete-gamma cut
    GammaKind gamma_kind = GammaKind::lower;
    double shift = 0.0;             ///< gamma_sum / inverse_gamma_sum
    double q = 0.5;                 ///< q families
    double value = 1.0;             ///< constant family
    std::vector<double> c, d;       ///< gamma_ratio / gamma_sum_ratio
    std::vector<double> h;          ///< gamma_product
    std::vector<double> upper, lower;  ///< hypergeometric
    std::shared_ptr<const KernelDescriptor> left, right;  ///< product_of
    std::vector<double> table_x, table_y;
    std::vector<double> table;      ///< row-major, table_x.size() x table_y.size()
    bool transpose = false;         ///< evaluate the family at (y, x)

    /// Throws DomainError / InputError when family invariants fail.
    void validate() const;

    /// K(x, y). Throws DomainError outside the family domain.
    double operator()(double x, double y) const;

    /// Columns are nonnegative integer indices.
    bool index_columns() const;

    /// Translation kernels F(x+y), the setting of the product conjecture.
    bool translation_type() const;

    /// Signature known from the catalog for orders 1..3, if any.
    std::optional<Signature3> catalog_signature() const;

    std::string name() const;
};

double eval_kernel(const KernelDescriptor& k, double x, double y);

KernelDescriptor power_kernel();
KernelDescriptor exponential_kernel();
KernelDescriptor exp_decay_kernel();
KernelDescriptor stieltjes_kernel(double alpha);
KernelDescriptor gamma_sum_kernel(double shift = 0.0);
KernelDescriptor inverse_gamma_sum_kernel(double shift = 0.0);
KernelDescriptor gamma_sum_ratio_kernel(std::vector<double> c, std::vector<double> d);
KernelDescriptor incomplete_gamma_kernel(GammaKind kind, double alpha);
KernelDescriptor pochhammer_kernel();
KernelDescriptor inverse_pochhammer_kernel();
KernelDescriptor q_pochhammer_kernel(double q);
KernelDescriptor inverse_q_pochhammer_kernel(double q);
KernelDescriptor gamma_ratio_kernel(std::vector<double> c, std::vector<double> d);
KernelDescriptor gamma_product_kernel(std::vector<double> h);
KernelDescriptor hypergeometric_kernel(std::vector<double> upper, std::vector<double> lower);
KernelDescriptor product_kernel(KernelDescriptor left, KernelDescriptor right);
KernelDescriptor constant_kernel(double value);
KernelDescriptor custom_table_kernel(std::vector<double> xs, std::vector<double> ys,
                                     std::vector<double> row_major);
KernelDescriptor transposed(KernelDescriptor k);

/// Sorted partial-sum majorization: with both vectors sorted ascending,
/// sum_{i<=k} c_i <= sum_{i<=k} d_i for every k. Requires equal lengths and
/// nonnegative entries (DomainError otherwise).
bool partial_sums_dominated(std::span<const double> c, std::span<const double> d);

}  // namespace sigreg
