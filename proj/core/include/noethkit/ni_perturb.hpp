#pragma once

#include <noethkit/chain.hpp>
#include <noethkit/deflicity.hpp>

#include <cstdint>
#include <optional>
#include <vector>

namespace noethkit {

// A cut system on the leaves of a chain: n-1 section polynomials P and a
// projection R, with a small working order k_hat standing in for the
// astronomically large theoretical truncation.
struct ni_system {
    chain c;
    std::vector<poly> P;  // n-1 entries
    poly R;
    unsigned k_hat = 4;
};

// Polynomials vanishing on the set of points whose cut by (P, R - R(q)) is
// non-isolated: the integrability-locus generators plus derivative
// combinations of R (orders 1..k_hat) for n = 1, or a directional-Jacobian
// tower over the fixed directions (1,0), (0,1), (1,1) for n = 2. Sound but
// not claimed complete for n = 2.
std::vector<poly> ni_generators(const ni_system& sys);

// True when the dual-space dimension of (P, R - R(q)) at q exceeds k_hat or
// fails to stabilize below it: the working-order surrogate for membership in
// the non-isolated locus.
bool ni_member_numeric(const ni_system& sys, const leaf_point& q);

// H = (D_t^lambda phi)^(lambda + 1), the certificate that phi vanishes to
// order exactly lambda along direction t. The degree is asserted against the
// derivative-degree formula.
poly build_H(const ni_system& sys, const poly& phi, const direction& t, unsigned lambda);

// E = sum_i H_i * prod_{j != i} Q_j. samples[i] lists points of component i;
// the separation of the Q_j is checked there.
poly build_E(const ni_system& sys,
             const std::vector<std::pair<poly, poly>>& components,
             const std::vector<std::vector<std::map<var_id, rational>>>& samples);

// E' = E^a_hat * ell^b_hat, with ell of degree at most 1 vanishing at p.
poly build_eprime(const chain& c, const leaf_point& p, const poly& e, const poly& ell,
                  unsigned a_hat = 2, unsigned b_hat = 2);

// Seed-deterministic polynomial tuple in the x-variables of c, of the given
// total degree, with integer coefficients from a fixed box.
std::vector<poly> random_polys(const chain& c, std::size_t count, unsigned degree,
                               std::uint64_t seed);

// P'_j = P_j + Q_j * eprime^(k_hat + 1); degrees asserted.
std::vector<poly> perturb(const ni_system& sys, const std::vector<poly>& q_tuple,
                          const poly& eprime);

struct growth_check {
    branch b;
    std::optional<rational> perturbation_order;  // empty: vanishes through truncation
    rational projection_order;                   // ord of R - R(p) along the branch
    bool pass = false;
};

struct member_delta {
    std::vector<rational> point;
    bool before = false;
    bool after = false;
};

struct perturb_report {
    integer original;
    integer perturbed;
    std::vector<growth_check> checks;
    std::vector<member_delta> deltas;
    bool all_growth_pass = true;
    bool preserved = false;  // perturbed >= original
    unsigned k_hat = 0;
    std::uint64_t seed = 0;
};

// Compares the deflicity of (P, R) and (P', R) at p and records the
// per-branch growth condition: the perturbation must vanish to higher order
// than R - R(p) along every good branch.
perturb_report verify_preservation(const ni_system& sys, const std::vector<poly>& pprime,
                                   const leaf_point& p, unsigned order = 16);

struct sard_report {
    unsigned long trials = 0;
    unsigned long points = 0;
    unsigned long failures = 0;
    double failure_fraction = 0.0;
    std::uint64_t seed = 0;
};

// One fixed perturbation tuple: P' = P + Q * E, checked at sample points near
// p that are outside the non-isolated locus of (P, R); counts the points that
// the perturbation pushes into it.
sard_report sard_check_tuple(const ni_system& sys, const leaf_point& p, const poly& e,
                             const std::vector<poly>& q_tuple);

// `trials` seeded random tuples Q of degree n+m, aggregated.
sard_report sard_sample(const ni_system& sys, const leaf_point& p, const poly& e,
                        unsigned trials, std::uint64_t seed);

} // namespace noethkit
