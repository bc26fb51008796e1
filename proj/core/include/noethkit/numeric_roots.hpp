#pragma once

#include <noethkit/polynomial.hpp>

#include <complex>
#include <functional>
#include <vector>

namespace noethkit {

// All roots (with multiplicity, as nearby copies) of the polynomial with the
// given ascending coefficients, by the Durand-Kerner iteration from fixed
// starting values. Deterministic; leading zero coefficients are trimmed.
std::vector<std::complex<double>> polynomial_roots(std::vector<std::complex<double>> coeffs);

// Ascending complex coefficient vector of a univariate polynomial in `v`.
std::vector<std::complex<double>> complex_coefficients(const poly& p, var_id v);

// Exact Sylvester resultant of f and g with respect to x2, computed by
// evaluation at integer points and Lagrange interpolation in x1. Returns a
// polynomial in x1 alone. f and g must involve no variables besides x1, x2.
poly resultant_x2(const poly& f, const poly& g);

struct root_cluster {
    std::complex<double> center;
    unsigned size = 0;
};

// Merges numerically coincident roots. Two roots join one cluster when their
// distance is below 10 * (e_i + e_j) + 1e-12, where e_i is the Weierstrass
// correction |p(r_i)| / prod_{j != i} |r_i - r_j| supplied by `eval`.
std::vector<root_cluster> cluster_roots(const std::vector<std::complex<double>>& roots,
                                        const std::function<std::complex<double>(std::complex<double>)>& eval);

} // namespace noethkit
