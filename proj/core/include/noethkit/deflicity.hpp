#pragma once

#include <noethkit/chain.hpp>
#include <noethkit/local_mult.hpp>

#include <optional>
#include <vector>

namespace noethkit {

enum class branch_kind { undetermined, good, bad };

// One Puiseux branch of a plane curve germ at the origin: the parametrization
// is (x1, x2) = (s^ram, x2_series(s)), or (0, s) for the vertical line.
// The series is exact through s^truncation.
struct branch {
    bool vertical = false;
    unsigned ram = 1;
    poly x2_series;
    unsigned truncation = 0;
    unsigned long multiplicity = 1;
    branch_kind kind = branch_kind::undetermined;
    // Set by classification for good branches: the order of the projection
    // function along the branch, in x1-units (s-order divided by ram).
    std::optional<rational> rho_order;
};

// The shared parameter variable of branch series.
var_id branch_parameter();

// Newton-Puiseux decomposition of a bivariate polynomial germ vanishing at
// the origin (variables x1, x2) into branches with multiplicities; series are
// developed through roughly s^(order * ram) per branch. Branch coefficients
// outside the rationals or an unresolved edge polynomial raise
// inconclusive_error.
std::vector<branch> puiseux_decompose(const poly& f, unsigned order);

// Order of g (a polynomial in the local x1, x2 coordinates) composed with the
// branch parametrization, in x1-units. The try_ variant reports a vanishing
// composition (through the trusted truncation) as empty; the plain variant
// raises inconclusive_error for it.
std::optional<rational> try_ord_along_branch(const branch& b, const poly& g);
rational ord_along_branch(const branch& b, const poly& g);

// Log-log slope of |g| along the parametrization on s in {1e-2 .. 1e-5};
// a floating cross-check of the exact order.
double ord_slope_estimate(const branch& b, const poly& g);

// A deflicity instance: the set cut out by P on the leaf through p, projected
// by R; order is the working jet/series truncation.
struct deflicity_problem {
    chain c;
    leaf_point p;
    std::vector<poly> P;  // n-1 polynomials
    poly R;
    unsigned order = 16;
};

// Branches of the leaf restriction of P at p (n = 2; empty for n = 1). The
// decomposition is recomputed at doubled truncation until two consecutive
// rounds agree.
std::vector<branch> branch_decompose(const deflicity_problem& prob);

// Marks each branch good (R - R(p) has finite order along it) or bad (the
// composition vanishes through the trusted truncation), filling rho_order.
std::vector<branch> classify_branches(std::vector<branch> branches, const poly& r,
                                      const deflicity_problem& prob);

// Sum of multiplicity * s-order of (R - R(p)) over the good branches; for
// n = 1 the multiplicity of R - R(p) at p on the leaf.
integer deflicity_symbolic(const deflicity_problem& prob);

// Numeric deflicity of an algebraic family: the `family` polynomials live in
// x1..xn and eps; for each eps sample the square system is solved
// numerically and the roots within `radius` of `base` are counted with
// cluster multiplicities. Disagreeing counts raise inconclusive_error.
integer deflicity_numeric(const std::vector<poly>& family,
                          const std::vector<rational>& base,
                          const std::vector<rational>& eps_samples,
                          double radius);

inline integer deflicity_numeric(const std::vector<poly>& family,
                                 const std::vector<rational>& base) {
    return deflicity_numeric(family, base,
                             {rational(1, 1000), rational(1, 10000)}, 0.1);
}

} // namespace noethkit
