#pragma once

#include <noethkit/bound_expr.hpp>

#include <string>
#include <utility>
#include <vector>

namespace noethkit {

// Parameters of the degree/multiplicity bounds: m auxiliary functions, n
// variables, chain degree delta, input degree d.
struct bound_params {
    unsigned m = 0;
    unsigned n = 1;
    integer delta = 1;
    integer d = 1;
};

void validate(const bound_params& p);  // n >= 1, delta >= 1, d >= 1

// Degree after multiplicity-operator application:
// C(n+k, n)(d + k*delta) - k. Exact for arbitrary-precision k.
integer deg_after_mo(unsigned n, const integer& delta, const integer& d,
                     const integer& k);

// Degree of the integrability-locus equations:
// (m+1)(delta-1)/2 * [2 delta (n+m+2) - 2m - 2]^(2m+2) + delta (n+2) - 1.
// The division is exact whenever the bracket is even (always, as the bracket
// is twice an integer); the flag records the never-expected rounding.
struct il_degree_result {
    integer value;
    bool rounded_up = false;
};
il_degree_result il_degree(unsigned m, unsigned n, const integer& delta);

// Upper bound for the multiplicity of an isolated solution.
// rough: (delta+d)^(8(m+n)^2) * (m+n)^(8(m+n)^3), exact power product.
// exact: certified upper bound for max of the two sharp values, with the
// transcendental factor Q evaluated by round-up interval arithmetic at the
// given precision (for n = 1 the factor collapses to the rational m+1).
enum class mult_mode { rough, exact };
bound_expr mult0_bound(const bound_params& p, mult_mode mode,
                       unsigned precision = 128);

// The sharp-mode factor Q as an exact rational upper bound (round-up dyadic
// for n >= 2, exactly m+1 for n = 1).
struct q_factor_result {
    rational upper;
    bool exact = false;  // true only for n = 1
};
q_factor_result q_factor(unsigned m, unsigned n, unsigned precision = 128);

// One induction step: composed degrees for the canonical choice
// k = B = mult0_bound(rough).
struct induction_report {
    bound_params params;
    integer k, B;
    integer d_il;
    integer d_m;       // deg_after_mo(n, delta, d, k)
    integer d_ni;      // max(d_il, d_m)
    integer d_h;       // (k+1) d_m
    integer d_e;       // d_ni^(2(n+m)) + d_h
    integer a;         // max(d_ni, deg_after_mo(n, delta, d, B))^(n+m)
    integer d_prime;   // (a d_e + B)(k+1) + n + m
    std::vector<std::pair<std::string, bool>> verdicts;
};
induction_report induction_degree(const bound_params& p);

// Re-derives every displayed inequality of the composed-bound argument with
// k = B instantiated at the certified sharp bound (the composition is
// monotone in k, so the verdicts transfer to any true multiplicity).
struct proof_chain_report {
    bound_params params;
    integer k;  // = B = ceil(sharp mult0 bound)
    std::vector<std::pair<std::string, bool>> checks;
    bool all_true() const;
};
proof_chain_report verify_main_proof_chain(const bound_params& p,
                                           unsigned precision = 128);

// (max{d, delta} (m+n))^(16 (m+n)^(20n+3)), as a power product.
bound_expr main_bound(const bound_params& p);

// Repeated induction: one exact induction_degree step, then the closed-form
// degree (max{d_t, delta})^(32(m+n)^4) (m+n)^(40(m+n)^5) per further step,
// finally the rough multiplicity bound at the resulting degree.
struct ladder_report {
    bound_params params;
    unsigned e = 0;
    std::vector<bound_expr> degrees;  // d_1 .. d_e
    bound_expr final_bound;
    bool within_main = false;  // final_bound <= main_bound(params)
};
ladder_report induction_ladder(const bound_params& p, unsigned e);

// Main-bound formula instantiated at degree 2(d + delta - 1).
bound_expr loja_exponent_bound(const bound_params& p);

// Grid sweep of verify_main_proof_chain over m,n in 1..max_mn and
// d,delta in 1..max_d; jobs > 1 evaluates grid cells concurrently.
std::vector<proof_chain_report> verify_grid(unsigned max_mn, unsigned max_d,
                                            unsigned jobs = 1,
                                            unsigned precision = 128);

} // namespace noethkit
