#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <noethkit/bounds.hpp>
#include <noethkit/errors.hpp>

using namespace noethkit;

TEST_CASE("degree after derivative steps: golden values") {
    CHECK(deg_after_mo(1, integer(2), integer(3), integer(2)) == 19);
    CHECK(deg_after_mo(1, integer(1), integer(1), integer(1)) == 3);
    CHECK(deg_after_mo(2, integer(1), integer(2), integer(1)) == 8);
    // k = 0 steps leave the degree alone.
    CHECK(deg_after_mo(3, integer(5), integer(7), integer(0)) == 7);
    // Binomial growth in k: C(1+k, 1)(1 + k) - k = (k+1)^2 - k.
    CHECK(deg_after_mo(1, integer(1), integer(1), integer(10)) == 111);
}

TEST_CASE("integrability locus degree: golden values") {
    CHECK(il_degree(1, 1, integer(2)).value == 20741);
    CHECK(!il_degree(1, 1, integer(2)).rounded_up);
    // Degree-one chains have flat coefficients: the formula collapses to n+1.
    for (unsigned m = 1; m <= 3; ++m)
        for (unsigned n = 1; n <= 3; ++n) {
            CAPTURE(m);
            CAPTURE(n);
            CHECK(il_degree(m, n, integer(1)).value == n + 1);
        }
    CHECK(il_degree(0, 1, integer(2)).value == 55);
}

TEST_CASE("rough and sharp multiplicity bounds at the reference parameters") {
    bound_params p{1, 1, integer(2), integer(2)};
    CHECK(mult0_bound(p, mult_mode::rough).str() == "2^128");
    CHECK(mult0_bound(p, mult_mode::exact).str() == "41482^4");
    auto q = q_factor(1, 1);
    CHECK(q.exact);
    CHECK(q.upper == rational(2));
}

TEST_CASE("the one-variable transcendental factor collapses to m + 1") {
    for (unsigned m = 0; m <= 4; ++m) {
        auto q = q_factor(m, 1);
        CHECK(q.exact);
        CHECK(q.upper == rational(static_cast<unsigned long>(m + 1)));
    }
    auto q2 = q_factor(1, 2);
    CHECK(!q2.exact);
    CHECK(q2.upper >= rational(2));  // at least the one-variable value
}

TEST_CASE("main bound golden value and loja instantiation") {
    bound_params p{1, 1, integer(2), integer(2)};
    CHECK(main_bound(p).str() == "2^268435456");
    CHECK(loja_exponent_bound(p).str() == "12^134217728");
}

TEST_CASE("sharp bound never exceeds the rough bound on a small grid") {
    for (unsigned m = 1; m <= 2; ++m)
        for (unsigned n = 1; n <= 2; ++n)
            for (long d = 1; d <= 3; ++d)
                for (long delta = 1; delta <= 3; ++delta) {
                    CAPTURE(m);
                    CAPTURE(n);
                    CAPTURE(d);
                    CAPTURE(delta);
                    bound_params p{m, n, integer(delta), integer(d)};
                    CHECK(bound_cmp(mult0_bound(p, mult_mode::exact),
                                    mult0_bound(p, mult_mode::rough)) != cmp_result::greater);
                }
}

TEST_CASE("bounds are monotone in each parameter") {
    auto le = [](const bound_expr& a, const bound_expr& b) {
        return bound_cmp(a, b) != cmp_result::greater;
    };
    for (unsigned m = 1; m <= 2; ++m)
        for (unsigned n = 1; n <= 2; ++n)
            for (long d = 1; d <= 3; ++d)
                for (long delta = 1; delta <= 3; ++delta) {
                    bound_params p{m, n, integer(delta), integer(d)};
                    bound_params pd{m, n, integer(delta), integer(d + 1)};
                    bound_params pdl{m, n, integer(delta + 1), integer(d)};
                    bound_params pm{m + 1, n, integer(delta), integer(d)};
                    bound_params pn{m, n + 1, integer(delta), integer(d)};
                    CAPTURE(m);
                    CAPTURE(n);
                    CAPTURE(d);
                    CAPTURE(delta);
                    for (mult_mode mode : {mult_mode::rough, mult_mode::exact}) {
                        CHECK(le(mult0_bound(p, mode), mult0_bound(pd, mode)));
                        CHECK(le(mult0_bound(p, mode), mult0_bound(pdl, mode)));
                        CHECK(le(mult0_bound(p, mode), mult0_bound(pm, mode)));
                        CHECK(le(mult0_bound(p, mode), mult0_bound(pn, mode)));
                    }
                    CHECK(le(main_bound(p), main_bound(pd)));
                    CHECK(le(main_bound(p), main_bound(pdl)));
                    CHECK(le(main_bound(p), main_bound(pm)));
                    CHECK(le(main_bound(p), main_bound(pn)));
                    // Degree-in-k monotonicity of the derivative degree.
                    CHECK(deg_after_mo(n, integer(delta), integer(d), integer(3)) <=
                          deg_after_mo(n, integer(delta), integer(d), integer(4)));
                }
}

TEST_CASE("induction step report is internally consistent") {
    bound_params p{1, 1, integer(2), integer(2)};
    induction_report rep = induction_degree(p);
    CHECK(rep.k == rep.B);
    CHECK(rep.d_ni == std::max(rep.d_il, rep.d_m));
    CHECK(rep.d_h == (rep.k + 1) * rep.d_m);
    for (const auto& [label, ok] : rep.verdicts) {
        CAPTURE(label);
        CHECK(ok);
    }
}

TEST_CASE("proof chain verification holds on the reference grid") {
    for (unsigned m = 1; m <= 2; ++m)
        for (unsigned n = 1; n <= 2; ++n) {
            bound_params p{m, n, integer(2), integer(2)};
            proof_chain_report rep = verify_main_proof_chain(p);
            CAPTURE(m);
            CAPTURE(n);
            CHECK(rep.all_true());
            CHECK(rep.checks.size() >= 5);
            bool has_degree_closure = false;
            for (const auto& [label, ok] : rep.checks)
                if (label.find("d_prime <= (max{d,delta})") != std::string::npos)
                    has_degree_closure = true;
            CHECK(has_degree_closure);
        }
}

TEST_CASE("grid sweep is deterministic and parallel-stable") {
    auto seq = verify_grid(2, 2, 1);
    auto par = verify_grid(2, 2, 4);
    REQUIRE(seq.size() == par.size());
    CHECK(seq.size() == 16);
    for (std::size_t i = 0; i < seq.size(); ++i) {
        CHECK(seq[i].params.m == par[i].params.m);
        CHECK(seq[i].params.n == par[i].params.n);
        CHECK(seq[i].params.d == par[i].params.d);
        CHECK(seq[i].params.delta == par[i].params.delta);
        CHECK(seq[i].k == par[i].k);
        CHECK(seq[i].checks == par[i].checks);
    }
}

TEST_CASE("induction ladder stays within the main bound") {
    for (unsigned m = 1; m <= 2; ++m)
        for (unsigned n = 1; n <= 2; ++n) {
            bound_params p{m, n, integer(2), integer(2)};
            ladder_report rep = induction_ladder(p, n);
            CAPTURE(m);
            CAPTURE(n);
            CHECK(rep.e == n);
            CHECK(rep.degrees.size() == n);
            CHECK(rep.within_main);
            CHECK(bound_cmp(rep.final_bound, main_bound(p)) != cmp_result::greater);
        }
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(validate(bound_params{1, 0, integer(1), integer(1)}), usage_error);
    CHECK_THROWS_AS(validate(bound_params{1, 1, integer(0), integer(1)}), usage_error);
    CHECK_THROWS_AS(validate(bound_params{1, 1, integer(1), integer(0)}), usage_error);
    CHECK_THROWS_AS(deg_after_mo(0, integer(1), integer(1), integer(1)), usage_error);
    CHECK_THROWS_AS(il_degree(1, 1, integer(0)), usage_error);
}
