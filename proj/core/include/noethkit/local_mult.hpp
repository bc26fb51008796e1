#pragma once

#include <noethkit/chain.hpp>

#include <optional>
#include <vector>

namespace noethkit {

// Outcome of a multiplicity oracle: the value when the escalation decided,
// otherwise empty with `order` recording where the search was abandoned.
struct mult_result {
    std::optional<unsigned long> value;
    unsigned order = 0;
    bool decided() const { return value.has_value(); }
};

// Order of the first nonvanishing jet coefficient of psi restricted to the
// leaf through q (n = 1 chains). Undecided when every coefficient through
// max_order vanishes.
mult_result mult_univariate(const chain& c, const leaf_point& q, const poly& psi,
                            unsigned max_order = 64);

// Dimension of the order-`order` dual space of the ideal spanned by the leaf
// restrictions of the system at q: the corank of the Macaulay matrix of all
// monomial multiples truncated at the given order, over exact rationals.
unsigned long dual_space_dim(const chain& c, const leaf_point& q,
                             const std::vector<poly>& system, unsigned order);

// Multiplicity of q as an isolated solution of the restricted system: dual
// dimensions along the doubling schedule 2, 4, 8, ... agree twice in a row
// exactly when they have reached the multiplicity (the truncated quotients
// stabilize monotonically), so agreement decides the value; reaching
// max_order without agreement leaves the result undecided.
mult_result mult_isolated(const chain& c, const leaf_point& q,
                          const std::vector<poly>& system, unsigned max_order = 64);

// A direction in the x-coordinates (spans the line used for restriction).
struct direction {
    std::vector<rational> v;
};

// Directional derivatives D^j(phi) for j = 1..k along the direction through
// the chain: D = sum_i t_i V_i. Degrees obey deg D^j(phi) <= deg phi + j(delta-1).
std::vector<poly> mo_restrict(const chain& c, const poly& phi, const direction& t,
                              unsigned k);

// Smallest j <= kmax with D^j(phi)(q) != 0, the vanishing order of phi
// restricted to the line through q; undecided if all of them vanish.
mult_result mo_vanish_order(const chain& c, const leaf_point& q, const poly& phi,
                            const direction& t, unsigned kmax);

} // namespace noethkit
