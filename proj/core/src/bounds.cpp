#include <noethkit/bounds.hpp>

#include <noethkit/errors.hpp>

#include <mpfr.h>

#include <algorithm>
#include <thread>

namespace noethkit {

void validate(const bound_params& p) {
    if (p.n < 1) throw usage_error("bound parameters require n >= 1");
    if (p.delta < 1) throw usage_error("bound parameters require delta >= 1");
    if (p.d < 1) throw usage_error("bound parameters require d >= 1");
}

integer deg_after_mo(unsigned n, const integer& delta, const integer& d,
                     const integer& k) {
    if (n < 1 || delta < 1 || d < 1 || k < 0)
        throw usage_error("deg_after_mo requires n, delta, d >= 1 and k >= 0");
    return binomial_shift(k, n) * (d + k * delta) - k;
}

il_degree_result il_degree(unsigned m, unsigned n, const integer& delta) {
    if (n < 1 || delta < 1) throw usage_error("il_degree requires n >= 1, delta >= 1");
    integer bracket = 2 * delta * (n + m + 2) - 2 * (m + 1);
    integer numerator = (m + 1) * (delta - 1) * pow_int(bracket, 2 * m + 2);
    il_degree_result r;
    // The bracket is twice an integer, so the numerator is even; the rounding
    // branch is kept for faithfulness to the ceiling reading of the formula.
    if (mpz_odd_p(numerator.get_mpz_t())) {
        r.value = (numerator + 1) / 2;
        r.rounded_up = true;
    } else {
        r.value = numerator / 2;
    }
    r.value += delta * (n + 2) - 1;
    return r;
}

namespace {

// Exact value of an mpfr number (every finite mpfr value is dyadic).
rational dyadic_value(mpfr_srcptr x) {
    if (!mpfr_number_p(x)) throw inconclusive_error("interval endpoint overflowed");
    if (mpfr_zero_p(x)) return rational(0);
    integer mant;
    mpfr_exp_t e = mpfr_get_z_2exp(mant.get_mpz_t(), x);
    rational r(mant);
    if (e >= 0) {
        mpz_mul_2exp(r.get_num_mpz_t(), r.get_num().get_mpz_t(),
                     static_cast<mp_bitcnt_t>(e));
    } else {
        mpz_mul_2exp(r.get_den_mpz_t(), r.get_den().get_mpz_t(),
                     static_cast<mp_bitcnt_t>(-e));
    }
    r.canonicalize();
    return r;
}

integer ceil_rational(const rational& q) {
    integer r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return r;
}

integer mn_of(const bound_params& p) { return integer(p.m) + p.n; }

} // namespace

q_factor_result q_factor(unsigned m, unsigned n, unsigned precision) {
    if (n < 1) throw usage_error("q_factor requires n >= 1");
    if (n == 1) {
        // ln 1 = 0 collapses every transcendental factor: Q = e * (e(1+m))^1 / e^2.
        return {rational(static_cast<long>(m) + 1), true};
    }
    mpfr_prec_t prec = std::max<unsigned>(precision, 64);
    mpfr_t lnn_u, lnn_d, t_u, lna_u, s, acc, tmp;
    mpfr_init2(lnn_u, prec);
    mpfr_init2(lnn_d, prec);
    mpfr_init2(t_u, prec);
    mpfr_init2(lna_u, prec);
    mpfr_init2(s, prec);
    mpfr_init2(acc, prec);
    mpfr_init2(tmp, prec);

    mpfr_set_ui(tmp, n, MPFR_RNDU);
    mpfr_log(lnn_u, tmp, MPFR_RNDU);
    mpfr_log(lnn_d, tmp, MPFR_RNDD);

    // ln Q = (1 + ln n) + t * ln A + n (ln n - 2), with t = ln n + 1 and
    // A = e(n+m)/sqrt(n) > 1; an upper bound per addend gives an upper bound.
    mpfr_add_ui(t_u, lnn_u, 1, MPFR_RNDU);

    mpfr_set_ui(tmp, n + m, MPFR_RNDU);
    mpfr_log(lna_u, tmp, MPFR_RNDU);
    mpfr_add_ui(lna_u, lna_u, 1, MPFR_RNDU);
    mpfr_div_ui(tmp, lnn_d, 2, MPFR_RNDD);
    mpfr_sub(lna_u, lna_u, tmp, MPFR_RNDU);

    mpfr_add_ui(acc, lnn_u, 1, MPFR_RNDU);
    mpfr_mul(s, t_u, lna_u, MPFR_RNDU);
    mpfr_add(acc, acc, s, MPFR_RNDU);
    mpfr_sub_ui(s, lnn_u, 2, MPFR_RNDU);
    mpfr_mul_ui(s, s, n, MPFR_RNDU);
    mpfr_add(acc, acc, s, MPFR_RNDU);

    mpfr_exp(acc, acc, MPFR_RNDU);
    rational upper = dyadic_value(acc);

    mpfr_clear(lnn_u);
    mpfr_clear(lnn_d);
    mpfr_clear(t_u);
    mpfr_clear(lna_u);
    mpfr_clear(s);
    mpfr_clear(acc);
    mpfr_clear(tmp);
    return {upper, false};
}

namespace {

// The two candidate values of the sharp multiplicity bound, as exact
// rationals built from the round-up Q.
std::pair<rational, rational> sharp_candidates(const bound_params& p,
                                               unsigned precision) {
    auto q = q_factor(p.m, p.n, precision);
    integer x1 = (p.m + 1) * (p.delta - 1) *
                     pow_int(2 * p.delta * (p.n + p.m + 2) - 2 * (p.m + 1),
                             2 * p.m + 2) +
                 2 * p.delta * (p.n + 2) - 2;
    rational x2 = 2 * pow_rat(q.upper + p.n, p.n) *
                  (rational(p.d) + q.upper * rational(p.delta - 1));
    unsigned long e = 2 * (p.m + p.n);
    rational half_q = q.upper / 2;
    return {half_q * pow_rat(rational(x1), e), half_q * pow_rat(x2, e)};
}

} // namespace

bound_expr mult0_bound(const bound_params& p, mult_mode mode, unsigned precision) {
    validate(p);
    integer mn = mn_of(p);
    if (mode == mult_mode::rough) {
        integer mn2 = mn * mn;
        return bound_expr::make(rational(1), {{p.delta + p.d, 8 * mn2},
                                              {mn, 8 * mn2 * mn}});
    }
    auto q = q_factor(p.m, p.n, precision);
    integer x1 = (p.m + 1) * (p.delta - 1) *
                     pow_int(2 * p.delta * (p.n + p.m + 2) - 2 * (p.m + 1),
                             2 * p.m + 2) +
                 2 * p.delta * (p.n + 2) - 2;
    rational x2 = 2 * pow_rat(q.upper + p.n, p.n) *
                  (rational(p.d) + q.upper * rational(p.delta - 1));
    integer e = 2 * mn;
    bound_expr c1 = bound_expr::make(q.upper / 2, {{x1, e}});
    bound_expr c2(q.upper / 2 * pow_rat(x2, 2 * (p.m + p.n)));
    return bound_max(c1, c2);
}

induction_report induction_degree(const bound_params& p) {
    validate(p);
    integer mn = mn_of(p);
    // Estimate the output size before committing: d' has on the order of
    // (3(m+n)+1)(n+1) log C bits.
    {
        auto [lo, hi] = mult0_bound(p, mult_mode::rough).log10_enclosure();
        double digits = hi * (3.0 * mn.get_d() + 1.0) * (p.n + 1.0);
        if (digits > 2e6)
            throw usage_error("induction parameters exceed the exact-arithmetic range");
    }

    induction_report r;
    r.params = p;
    auto rough = mult0_bound(p, mult_mode::rough).expand();
    if (!rough) throw usage_error("induction parameters exceed the digit cap");
    r.k = *rough;
    r.B = r.k;
    r.d_il = il_degree(p.m, p.n, p.delta).value;
    r.d_m = deg_after_mo(p.n, p.delta, p.d, r.k);
    r.d_ni = std::max(r.d_il, r.d_m);
    r.d_h = (r.k + 1) * r.d_m;
    unsigned long mn_ul = p.m + p.n;
    r.d_e = pow_int(r.d_ni, 2 * mn_ul) + r.d_h;
    r.a = pow_int(std::max(r.d_ni, deg_after_mo(p.n, p.delta, p.d, r.B)), mn_ul);
    r.d_prime = (r.a * r.d_e + r.B) * (r.k + 1) + p.n + p.m;

    integer closed = pow_int(std::max(p.d, p.delta), 32 * mn_ul * mn_ul * mn_ul * mn_ul) *
                     pow_int(mn, 40 * mn_ul * mn_ul * mn_ul * mn_ul * mn_ul);
    r.verdicts.emplace_back(
        "d_prime <= (max{d,delta})^(32(m+n)^4)*(m+n)^(40(m+n)^5)",
        r.d_prime <= closed);
    return r;
}

bool proof_chain_report::all_true() const {
    for (const auto& [name, ok] : checks)
        if (!ok) return false;
    return true;
}

proof_chain_report verify_main_proof_chain(const bound_params& p, unsigned precision) {
    validate(p);
    unsigned long mn = p.m + p.n;
    {
        auto [lo, hi] = mult0_bound(p, mult_mode::rough).log10_enclosure();
        if (hi * (3.0 * mn + 1.0) * (p.n + 1.0) > 2e6)
            throw usage_error("proof-chain parameters exceed the exact-arithmetic range");
    }
    proof_chain_report r;
    r.params = p;

    // Instantiate k = B at the certified sharp multiplicity bound. Every
    // composed quantity below is nondecreasing in k and B, so true verdicts
    // hold a fortiori for the real multiplicity value.
    auto [c1, c2] = sharp_candidates(p, precision);
    r.k = ceil_rational(std::max(c1, c2));
    const integer& k = r.k;
    const integer& B = r.k;

    auto rough = mult0_bound(p, mult_mode::rough).expand();
    if (!rough) throw usage_error("parameters exceed the digit cap");
    integer c = *rough;

    integer d_il = il_degree(p.m, p.n, p.delta).value;
    integer d_m_b = deg_after_mo(p.n, p.delta, p.d, B);
    integer d_ni = std::max(d_il, d_m_b);
    integer a = pow_int(std::max(d_ni, d_m_b), mn);
    integer d_h = (k + 1) * d_m_b;
    integer d_e = pow_int(d_ni, 2 * mn) + d_h;
    integer d_prime = (a * d_e + B) * (k + 1) + p.n + p.m;

    auto add = [&](const std::string& name, bool ok) {
        r.checks.emplace_back(name, ok);
    };
    add("B <= C", B <= c);
    add("k+1 <= C", k + 1 <= c);
    add("d_M(n,delta,d,B) < C^(n+1)*(d+delta)",
        d_m_b < pow_int(c, p.n + 1) * (p.d + p.delta));
    add("d_IL < delta^(2(m+n))*(m+n)^(6(m+n))",
        d_il < pow_int(p.delta, 2 * mn) * pow_int(mn_of(p), 6 * mn));
    add("d_NI < C^(m+n)", d_ni < pow_int(c, mn));
    add("A < C^((m+n)^2)", a < pow_int(c, mn * mn));
    add("d_H < C^(m+n)", d_h < pow_int(c, mn));
    add("d_E < C^(2(m+n)^2)", d_e < pow_int(c, 2 * mn * mn));
    add("d_prime < C^(4(m+n)^2)", d_prime < pow_int(c, 4 * mn * mn));
    integer closed = pow_int(std::max(p.d, p.delta), 32 * mn * mn * mn * mn) *
                     pow_int(mn_of(p), 40 * mn * mn * mn * mn * mn);
    add("d_prime <= (max{d,delta})^(32(m+n)^4)*(m+n)^(40(m+n)^5)",
        d_prime <= closed);
    return r;
}

bound_expr main_bound(const bound_params& p) {
    validate(p);
    integer mn = mn_of(p);
    integer base = std::max(p.d, p.delta) * mn;
    integer exponent = 16 * pow_int(mn, 20ul * p.n + 3);
    return bound_expr::pow_of(base, exponent);
}

ladder_report induction_ladder(const bound_params& p, unsigned e) {
    validate(p);
    if (e > p.n) throw usage_error("induction ladder requires 0 <= e <= n");
    ladder_report r;
    r.params = p;
    r.e = e;

    unsigned long mn = p.m + p.n;
    integer mn_z = mn_of(p);
    integer exp_rough_1 = 8 * mn_z * mn_z;
    integer exp_rough_2 = exp_rough_1 * mn_z;

    if (e == 0) {
        r.final_bound = mult0_bound(p, mult_mode::rough);
    } else {
        integer d1 = induction_degree(p).d_prime;
        r.degrees.push_back(bound_expr(d1));
        integer exp_closed_1 = 32 * pow_int(mn_z, 4);
        integer exp_closed_2 = 40 * pow_int(mn_z, 5);
        for (unsigned step = 2; step <= e; ++step) {
            bound_expr base = bound_max(r.degrees.back(), bound_expr(p.delta));
            r.degrees.push_back(base.pow(exp_closed_1) *
                                bound_expr::pow_of(mn_z, exp_closed_2));
        }
        if (e == 1) {
            r.final_bound = bound_expr::make(
                rational(1), {{p.delta + d1, exp_rough_1}, {mn_z, exp_rough_2}});
        } else {
            // delta <= d_tilde at every rung, so delta + d_tilde <= 2 d_tilde.
            const bound_expr& dt = r.degrees.back();
            if (bound_cmp(bound_expr(p.delta), dt) == cmp_result::greater)
                throw ledger_error("ladder degree fell below the chain degree");
            r.final_bound = (bound_expr(integer(2)) * dt).pow(exp_rough_1) *
                            bound_expr::pow_of(mn_z, exp_rough_2);
        }
    }
    r.within_main = bound_cmp(r.final_bound, main_bound(p)) != cmp_result::greater;
    return r;
}

bound_expr loja_exponent_bound(const bound_params& p) {
    validate(p);
    bound_params widened = p;
    widened.d = 2 * (p.d + p.delta - 1);
    return main_bound(widened);
}

std::vector<proof_chain_report> verify_grid(unsigned max_mn, unsigned max_d,
                                            unsigned jobs, unsigned precision) {
    if (max_mn < 1 || max_d < 1) throw usage_error("grid limits must be >= 1");
    std::vector<bound_params> cells;
    for (unsigned m = 1; m <= max_mn; ++m)
        for (unsigned n = 1; n <= max_mn; ++n)
            for (unsigned delta = 1; delta <= max_d; ++delta)
                for (unsigned d = 1; d <= max_d; ++d)
                    cells.push_back({m, n, integer(delta), integer(d)});

    std::vector<proof_chain_report> out(cells.size());
    if (jobs <= 1) {
        for (std::size_t i = 0; i < cells.size(); ++i)
            out[i] = verify_main_proof_chain(cells[i], precision);
        return out;
    }
    unsigned workers = std::min<std::size_t>(jobs, cells.size());
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < cells.size(); i += workers)
                    out[i] = verify_main_proof_chain(cells[i], precision);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    for (auto& t : pool) t.join();
    for (const auto& err : errors)
        if (err) std::rethrow_exception(err);
    return out;
}

} // namespace noethkit
