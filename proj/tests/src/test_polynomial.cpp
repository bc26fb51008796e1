#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <noethkit/errors.hpp>
#include <noethkit/polynomial.hpp>

#include <random>
#include <vector>

using namespace noethkit;

namespace {

arena xy() {
    return arena({var("x1"), var("x2")});
}

arena xyf() {
    return arena({var("x1"), var("x2"), var("f1")});
}

} // namespace

TEST_CASE("variable order is canonical across registration order") {
    // Late registration must not perturb the order x* < f* < eps < s < t.
    var_id s = var("s");
    var_id f2 = var("f2");
    var_id x9 = var("x9");
    CHECK(var_table::var_less(x9, f2));
    CHECK(var_table::var_less(f2, var("eps")));
    CHECK(var_table::var_less(var("eps"), s));
    CHECK(var_table::var_less(var("x1"), var("x2")));
    CHECK(var_table::var_less(var("x2"), x9));
    CHECK(var_table::name(var("x1")) == "x1");
}

TEST_CASE("parse and print golden forms") {
    arena a = xy();
    CHECK(poly::parse("x1^2 - 2*x1*x2 + 3/4", a).str() == "x1^2 - 2*x1*x2 + 3/4");
    CHECK(poly::parse("0", a).str() == "0");
    CHECK(poly::parse("-x1", a).str() == "-x1");
    CHECK(poly::parse("(x1 + x2)*(x1 - x2)", a).str() == "x1^2 - x2^2");
    CHECK(poly::parse("2/4", a).str() == "1/2");
    // Graded-lex order: higher total degree first, then earlier-variable power.
    CHECK(poly::parse("x2 + x1 + x2^2 + x1*x2", a).str() == "x1*x2 + x2^2 + x1 + x2");
}

TEST_CASE("unary minus binds looser than power") {
    arena a = xy();
    CHECK(poly::parse("-x1^2", a) == -(poly::parse("x1^2", a)));
    CHECK(poly::parse("3 - x1^2", a) == poly::parse("3", a) - poly::parse("x1^2", a));
}

TEST_CASE("parse rejects malformed input with a position") {
    arena a = xy();
    CHECK_THROWS_AS(poly::parse("x1 +", a), parse_error);
    CHECK_THROWS_AS(poly::parse("2x1", a), parse_error);
    CHECK_THROWS_AS(poly::parse("x3", a), parse_error);
    CHECK_THROWS_AS(poly::parse("x1^-1", a), parse_error);
    CHECK_THROWS_AS(poly::parse("x1^100001", a), parse_error);
    CHECK_THROWS_AS(poly::parse("(x1", a), parse_error);
    CHECK_THROWS_AS(poly::parse("", a), parse_error);
    CHECK_THROWS_AS(poly::parse("1/0", a), parse_error);
    try {
        poly::parse("x1 + @", a);
        FAIL("expected parse_error");
    } catch (const parse_error& e) {
        CHECK(e.position() == 5);
    }
}

TEST_CASE("ring axioms on random polynomials") {
    arena a = xyf();
    std::mt19937_64 rng(20240811);
    std::vector<var_id> vars = a.vars();
    auto draw = [&]() {
        poly_builder b;
        unsigned terms = 1 + rng() % 5;
        for (unsigned t = 0; t < terms; ++t) {
            std::vector<monomial::entry> fs;
            for (var_id v : vars) {
                unsigned e = rng() % 4;
                if (e) fs.push_back({v, e});
            }
            long c = static_cast<long>(rng() % 19) - 9;
            b.add(monomial(std::move(fs)), rational(c));
        }
        return b.build();
    };
    for (int i = 0; i < 200; ++i) {
        poly p = draw(), q = draw(), r = draw();
        CHECK((p + q) + r == p + (q + r));
        CHECK((p * q) * r == p * (q * r));
        CHECK(p * q == q * p);
        CHECK(p * (q + r) == p * q + p * r);
        CHECK((p - q) + q == p);
        CHECK(p + poly() == p);
        CHECK(p * poly::constant(1) == p);
        CHECK(p * poly() == poly());
    }
}

TEST_CASE("parse of print is the identity") {
    arena a = xyf();
    std::mt19937_64 rng(77);
    std::vector<var_id> vars = a.vars();
    for (int i = 0; i < 100; ++i) {
        poly_builder b;
        unsigned terms = 1 + rng() % 6;
        for (unsigned t = 0; t < terms; ++t) {
            std::vector<monomial::entry> fs;
            for (var_id v : vars) {
                unsigned e = rng() % 5;
                if (e) fs.push_back({v, e});
            }
            long num = static_cast<long>(rng() % 39) - 19;
            long den = 1 + rng() % 7;
            b.add(monomial(std::move(fs)), rational(num) / rational(den));
        }
        poly p = b.build();
        CHECK(poly::parse(p.str(), a) == p);
    }
}

TEST_CASE("degrees, coefficients and evaluation") {
    arena a = xy();
    poly p = poly::parse("x1^3*x2 - x2^2 + 5", a);
    CHECK(p.total_degree() == 4);
    CHECK(p.degree_in(var("x1")) == 3);
    CHECK(p.degree_in(var("x2")) == 2);
    CHECK(p.constant_term() == 5);
    CHECK(p.term_count() == 3);
    CHECK(p.coefficient(monomial({{var("x2"), 2}})) == -1);
    CHECK(p.eval({{var("x1"), rational(2)}, {var("x2"), rational(3)}}) == rational(20));

    CHECK(poly().total_degree() == -1);
    CHECK(poly::constant(7).total_degree() == 0);
    CHECK(poly::parse("x1 + x2", a).pow(2) == poly::parse("x1^2 + 2*x1*x2 + x2^2", a));
    CHECK(poly::parse("x1 + x2", a).pow(0) == poly::constant(1));
}

TEST_CASE("derivative and substitution") {
    arena a = xy();
    poly p = poly::parse("x1^3*x2 + x2", a);
    CHECK(p.derivative(var("x1")) == poly::parse("3*x1^2*x2", a));
    CHECK(p.derivative(var("x2")) == poly::parse("x1^3 + 1", a));

    poly q = poly::parse("(x1 + x2)^2", a);
    CHECK(q.substitute({{var("x1"), poly::variable(var("x2"))}}) == poly::parse("4*x2^2", a));
    // Simultaneous substitution is not sequential: swap the variables.
    poly swapped = q.substitute(
        {{var("x1"), poly::variable(var("x2"))}, {var("x2"), poly::variable(var("x1"))}});
    CHECK(swapped == q);
    CHECK(poly::parse("x1*x2", a).substitute({{var("x1"), poly::parse("x2^2 - 1", a)}}) ==
          poly::parse("x2^3 - x2", a));
}

TEST_CASE("coefficients_in splits by one variable") {
    arena a = xy();
    poly p = poly::parse("x1^2*x2^2 + x1*x2^2 - x1 + 4", a);
    auto cs = p.coefficients_in(var("x2"));
    REQUIRE(cs.size() == 3);
    CHECK(cs[0] == poly::parse("-x1 + 4", a));
    CHECK(cs[1] == poly());
    CHECK(cs[2] == poly::parse("x1^2 + x1", a));
}

TEST_CASE("arena restricts the admitted variables") {
    arena a({var("x1")});
    CHECK_THROWS_AS(poly::parse("x2", a), parse_error);
    CHECK(a.allows(var("x1")));
    CHECK(!a.allows(var("x2")));
    a.add(var("x2"));
    CHECK(a.allows(var("x2")));
}
