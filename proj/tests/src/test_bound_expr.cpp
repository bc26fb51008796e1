#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <noethkit/bound_expr.hpp>

#include <cmath>
#include <random>
#include <vector>

using namespace noethkit;

TEST_CASE("canonical factorizations") {
    CHECK(bound_expr(integer(1)).str() == "1");
    CHECK(bound_expr(integer(2)).str() == "2");
    CHECK(bound_expr(integer(8)).str() == "2^3");
    // A lone composite base is already canonical: refinement works by gcds
    // between bases and never factors an integer outright.
    CHECK(bound_expr(integer(12)).str() == "12");
    CHECK(bound_expr(integer(41482)).pow(integer(4)).str() == "41482^4");
    CHECK(bound_expr::pow_of(integer(2), integer(268435456)).str() == "2^268435456");
    // Perfect-power bases are rewritten to a primitive base.
    CHECK(bound_expr::pow_of(integer(4), integer(5)).str() == "2^10");
    CHECK(bound_expr::pow_of(integer(27), integer(2)).str() == "3^6");
    // Common factors between bases are split off so bases end up coprime.
    CHECK((bound_expr(integer(6)) * bound_expr(integer(10))).str() == "2^2 * 3 * 5");
    CHECK(bound_cmp(bound_expr(integer(6)) * bound_expr(integer(10)),
                    bound_expr(integer(60))) == cmp_result::equal);
}

TEST_CASE("bases of a canonical form are pairwise coprime, power-free, sorted") {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 200; ++i) {
        std::vector<bound_expr::factor> fs;
        unsigned parts = 1 + rng() % 4;
        for (unsigned p = 0; p < parts; ++p)
            fs.push_back({integer(2 + rng() % 120), integer(1 + rng() % 40)});
        bound_expr b = bound_expr::make(rational(1 + rng() % 9), fs);
        const auto& canon = b.factors();
        for (std::size_t u = 0; u < canon.size(); ++u) {
            CHECK(canon[u].first >= 2);
            CHECK(canon[u].second != 0);
            if (u + 1 < canon.size()) {
                CHECK(canon[u].first < canon[u + 1].first);
                integer g;
                mpz_gcd(g.get_mpz_t(), canon[u].first.get_mpz_t(),
                        canon[u + 1].first.get_mpz_t());
                CHECK(g == 1);
            }
            // No base is a perfect power: k-th roots fail for all k up to the
            // bit size.
            const integer& base = canon[u].first;
            for (unsigned long k = 2; k <= mpz_sizeinbase(base.get_mpz_t(), 2); ++k) {
                integer root;
                CHECK(mpz_root(root.get_mpz_t(), base.get_mpz_t(), k) == 0);
            }
        }
    }
}

TEST_CASE("value equality is structural equality of canonical forms") {
    bound_expr a = bound_expr::pow_of(integer(8), integer(4));
    bound_expr b = bound_expr::pow_of(integer(16), integer(3));
    CHECK(a == b);  // both canonicalize to 2^12
    CHECK(bound_cmp(a, b) == cmp_result::equal);
    // Equal values over genuinely different bases are caught by the exact
    // comparison even though the factor lists differ structurally.
    CHECK(bound_cmp(bound_expr(integer(36)),
                    bound_expr(integer(4)) * bound_expr(integer(9))) ==
          cmp_result::equal);
}

TEST_CASE("comparison agrees with exact expansion on moderate values") {
    std::mt19937_64 rng(2718);
    for (int i = 0; i < 150; ++i) {
        bound_expr a = bound_expr::pow_of(integer(2 + rng() % 30), integer(1 + rng() % 200)) *
                       bound_expr(integer(1 + rng() % 50));
        bound_expr b = bound_expr::pow_of(integer(2 + rng() % 30), integer(1 + rng() % 200)) *
                       bound_expr(integer(1 + rng() % 50));
        integer ea = *a.expand();
        integer eb = *b.expand();
        cmp_result want = ea < eb   ? cmp_result::less
                          : ea > eb ? cmp_result::greater
                                    : cmp_result::equal;
        CHECK(bound_cmp(a, b) == want);
    }
}

TEST_CASE("comparison separates astronomically close values") {
    bound_expr a = bound_expr::pow_of(integer(2), integer(268435456));
    bound_expr b = a * bound_expr(integer(2));
    CHECK(bound_cmp(a, b) == cmp_result::less);
    CHECK(bound_cmp(b, a) == cmp_result::greater);
    CHECK(bound_cmp(a, a) == cmp_result::equal);
    // 2^(3k) vs 8^k is an equality only structural canonicalization can see.
    CHECK(bound_cmp(bound_expr::pow_of(integer(2), integer(300000000)),
                    bound_expr::pow_of(integer(8), integer(100000000))) ==
          cmp_result::equal);
    CHECK(&bound_max(a, b) == &b);
}

TEST_CASE("log10 enclosure brackets the true logarithm") {
    bound_expr a = bound_expr::pow_of(integer(2), integer(128));
    auto [lo, hi] = a.log10_enclosure();
    double exact = 128.0 * std::log10(2.0);
    CHECK(lo <= exact);
    CHECK(hi >= exact);
    CHECK(hi - lo < 1e-9);

    auto [lo1, hi1] = bound_expr(integer(1)).log10_enclosure();
    CHECK(lo1 <= 0.0);
    CHECK(hi1 >= 0.0);

    std::mt19937_64 rng(5);
    for (int i = 0; i < 50; ++i) {
        bound_expr b = bound_expr::pow_of(integer(2 + rng() % 99), integer(1 + rng() % 60));
        integer v = *b.expand();
        double truth = std::log10(v.get_d());
        auto [l, h] = b.log10_enclosure();
        CHECK(l <= truth + 1e-12);
        CHECK(h >= truth - 1e-12);
    }
}

TEST_CASE("expansion respects the digit cap") {
    bound_expr big = bound_expr::pow_of(integer(2), integer(268435456));
    CHECK(!big.expand().has_value());  // ~8e7 digits > default cap
    CHECK(!big.expand(100).has_value());

    bound_expr small = bound_expr::pow_of(integer(2), integer(128));
    auto v = small.expand();
    REQUIRE(v.has_value());
    CHECK(v->get_str() == "340282366920938463463374607431768211456");
    CHECK(!small.expand(10).has_value());  // 39 digits > 10

    // Rational fold-in that leaves an integer value expands fine.
    bound_expr frac = bound_expr::make(rational(1, 4), {{integer(2), integer(10)}});
    CHECK(*frac.expand() == 256);
}

TEST_CASE("multiplication and powers are exact") {
    bound_expr a = bound_expr(integer(6));
    bound_expr b = a.pow(integer(3));
    CHECK(*b.expand() == 216);
    CHECK(b.pow(integer(0)) == bound_expr());
    CHECK((a * bound_expr()).factors() == a.factors());
    std::mt19937_64 rng(31337);
    for (int i = 0; i < 100; ++i) {
        integer u(2 + rng() % 200), w(2 + rng() % 200);
        unsigned long e = 1 + rng() % 9;
        bound_expr prod = bound_expr(u) * bound_expr(w);
        CHECK(*prod.expand() == u * w);
        CHECK(*bound_expr(u).pow(integer(e)).expand() ==
              [&] { integer r; mpz_pow_ui(r.get_mpz_t(), u.get_mpz_t(), e); return r; }());
    }
}
