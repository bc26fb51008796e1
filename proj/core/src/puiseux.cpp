#include <noethkit/deflicity.hpp>
#include <noethkit/errors.hpp>

#include <algorithm>
#include <climits>
#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace noethkit {

var_id branch_parameter() {
    static const var_id s = var("s");
    return s;
}

namespace {

constexpr unsigned max_recursion_depth = 32;
constexpr unsigned max_series_budget = 1u << 16;

var_id ax1() {
    static const var_id v = var("x1");
    return v;
}

var_id ax2() {
    static const var_id v = var("x2");
    return v;
}

void require_plane(const poly& f) {
    for (var_id v : f.variables())
        if (v != ax1() && v != ax2())
            throw usage_error("plane curve input must involve only x1 and x2");
}

// Minimal exponent of v across the terms (0 when some term omits v).
unsigned min_exponent(const poly& h, var_id v) {
    unsigned best = UINT_MAX;
    for (const auto& [mono, coeff] : h.terms()) {
        (void)coeff;
        best = std::min<unsigned>(best, mono.degree_in(v));
        if (best == 0) break;
    }
    return best == UINT_MAX ? 0 : best;
}

// Exact division by v^k.
poly shift_down(const poly& h, var_id v, unsigned k) {
    if (k == 0) return h;
    poly_builder out;
    for (const auto& [mono, coeff] : h.terms()) {
        std::vector<monomial::entry> fs;
        bool seen = false;
        for (const auto& [w, e] : mono.factors()) {
            if (w == v) {
                seen = true;
                if (e < k) throw std::logic_error("shift_down: exponent below shift");
                if (e > k) fs.emplace_back(w, e - k);
            } else {
                fs.emplace_back(w, e);
            }
        }
        if (!seen) throw std::logic_error("shift_down: exponent below shift");
        out.add(monomial(std::move(fs)), coeff);
    }
    return out.build();
}

// Order in x2 of h(0, x2); UINT_MAX when that restriction vanishes.
unsigned ord_x2_at_zero(const poly& h) {
    unsigned best = UINT_MAX;
    for (const auto& [mono, coeff] : h.terms()) {
        (void)coeff;
        if (mono.degree_in(ax1()) != 0) continue;
        best = std::min<unsigned>(best, mono.degree_in(ax2()));
    }
    return best;
}

void divisors_of(const integer& n, std::vector<integer>& out, bool& complete) {
    integer a = abs(n);
    if (a == 0) throw std::logic_error("divisors of zero requested");
    std::vector<std::pair<integer, unsigned>> fac;
    auto push = [&](const integer& p) {
        unsigned e = 0;
        while (mpz_divisible_p(a.get_mpz_t(), p.get_mpz_t())) {
            a /= p;
            ++e;
        }
        if (e) fac.emplace_back(p, e);
    };
    push(2);
    for (integer d = 3; d * d <= a && d < 1000000; d += 2) push(d);
    if (a > 1) {
        if (a < integer(1000000) * 1000000 ||
            mpz_probab_prime_p(a.get_mpz_t(), 25) != 0)
            fac.emplace_back(a, 1);
        else
            complete = false;  // unfactored composite cofactor
    }
    out.push_back(1);
    for (const auto& [p, e] : fac) {
        std::size_t base = out.size();
        integer pk = 1;
        for (unsigned k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) {
                out.push_back(out[i] * pk);
                if (out.size() > 100000) {
                    complete = false;
                    return;
                }
            }
        }
    }
}

// Synthetic division of the ascending-coefficient polynomial by (x - r);
// returns the quotient when the remainder is zero.
std::optional<std::vector<rational>> divide_root(const std::vector<rational>& cs,
                                                 const rational& r) {
    std::size_t n = cs.size() - 1;
    std::vector<rational> q(n);
    rational carry = cs[n];
    for (std::size_t k = n; k >= 1; --k) {
        q[k - 1] = carry;
        carry = cs[k - 1] + r * carry;
    }
    if (carry != 0) return std::nullopt;
    return q;
}

struct rat_roots_result {
    std::vector<std::pair<rational, unsigned>> roots;
    bool complete = true;
};

// Rational roots with multiplicities of the polynomial with the given
// ascending coefficients (constant and leading coefficient nonzero).
rat_roots_result rational_roots(std::vector<rational> cs) {
    rat_roots_result res;
    if (cs.size() <= 1) return res;
    integer lcm = 1;
    for (const auto& c : cs) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den().get_mpz_t());
    std::vector<integer> bs;
    bs.reserve(cs.size());
    for (const auto& c : cs) {
        rational scaled = c * rational(lcm);
        if (scaled.get_den() != 1) throw std::logic_error("denominator lcm failed");
        bs.push_back(scaled.get_num());
    }
    integer g = 0;
    for (const auto& b : bs) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), b.get_mpz_t());
    for (auto& b : bs) b /= g;

    bool candidates_complete = true;
    std::vector<integer> nums, dens;
    divisors_of(bs.front(), nums, candidates_complete);
    divisors_of(bs.back(), dens, candidates_complete);
    std::set<rational> candidates;
    for (const auto& nu : nums)
        for (const auto& de : dens) {
            rational r = rational(nu) / rational(de);
            candidates.insert(r);
            candidates.insert(-r);
        }

    for (const auto& r : candidates) {
        unsigned mult = 0;
        while (cs.size() > 1) {
            auto q = divide_root(cs, r);
            if (!q) break;
            cs = std::move(*q);
            ++mult;
        }
        if (mult) res.roots.emplace_back(r, mult);
    }
    res.complete = cs.size() <= 1 && candidates_complete;
    if (cs.size() <= 1) res.complete = true;  // everything accounted for
    return res;
}

// Exact rational q-th root, when it exists over the rationals.
std::optional<rational> rational_qth_root(const rational& y, unsigned q) {
    if (q == 1) return y;
    bool neg = y < 0;
    if (neg && q % 2 == 0) return std::nullopt;
    integer num = abs(y.get_num()), den = y.get_den();
    integer rn, rd;
    if (!mpz_root(rn.get_mpz_t(), num.get_mpz_t(), q)) return std::nullopt;
    if (!mpz_root(rd.get_mpz_t(), den.get_mpz_t(), q)) return std::nullopt;
    rational out = rational(neg ? -rn : rn) / rational(rd);
    return out;
}

struct np_branch {
    unsigned ram = 1;
    poly series;  // in the branch parameter
    unsigned long mult = 1;
    unsigned trunc = 0;
};

// Series continuation at a simple edge root: g(0, x2) has a nonzero linear
// term, so g(t, v(t)) = 0 determines v term by term.
np_branch continue_simple(const poly& g, unsigned budget) {
    rational e1 = g.coefficient(monomial({{ax2(), 1}}));
    if (e1 == 0) throw std::logic_error("simple branch without linear term");
    poly s;
    for (unsigned k = 1; k <= budget; ++k) {
        poly gk = g.substitute({{ax2(), s}});
        rational ck = gk.coefficient(monomial({{ax1(), k}}));
        if (ck == 0) continue;
        s += poly::constant(-ck / e1) * poly::variable(ax1()).pow(k);
    }
    poly res = g.substitute({{ax2(), s}});
    if (!res.is_zero() && min_exponent(res, ax1()) <= budget)
        throw std::logic_error("series continuation failed");
    np_branch nb;
    nb.ram = 1;
    nb.mult = 1;
    nb.trunc = budget;
    nb.series = s.substitute({{ax1(), poly::variable(branch_parameter())}});
    return nb;
}

// Newton-Puiseux recursion. f must be nonzero, not divisible by x1, and the
// returned branches satisfy sum(mult * ram) = ord_{x2} f(0, x2).
std::vector<np_branch> np_recurse(const poly& f, unsigned budget, unsigned depth) {
    if (depth > max_recursion_depth)
        throw inconclusive_error("puiseux recursion depth exceeded");
    if (f.is_zero()) throw std::logic_error("puiseux recursion on zero polynomial");

    std::vector<np_branch> out;
    poly h = f;
    unsigned b = min_exponent(h, ax2());
    if (b > 0) {
        h = shift_down(h, ax2(), b);
        np_branch nb;
        nb.ram = 1;
        nb.mult = b;
        nb.trunc = budget;
        out.push_back(nb);
    }
    if (h.constant_term() != 0) return out;  // origin not on the residual curve

    std::vector<std::tuple<long, long, rational>> pts;
    for (const auto& [mono, coeff] : h.terms())
        pts.emplace_back(mono.degree_in(ax1()), mono.degree_in(ax2()), coeff);

    long ci = LONG_MAX, cj = LONG_MAX;
    for (const auto& [i, j, c] : pts) {
        (void)c;
        if (i < ci || (i == ci && j < cj)) {
            ci = i;
            cj = j;
        }
    }
    if (ci != 0) throw std::logic_error("puiseux recursion input divisible by x1");

    while (cj > 0) {
        bool found = false;
        long ni = 0, nj = 0;
        for (const auto& [pi, pj, pc] : pts) {
            (void)pc;
            if (pj >= cj) continue;
            long di = pi - ci, dj = cj - pj;
            if (di <= 0) throw std::logic_error("puiseux polygon walk failed");
            if (!found) {
                ni = pi;
                nj = pj;
                found = true;
                continue;
            }
            long lhs = di * (cj - nj), rhs = (ni - ci) * dj;
            if (lhs < rhs || (lhs == rhs && pj < nj)) {
                ni = pi;
                nj = pj;
            }
        }
        if (!found) throw std::logic_error("puiseux polygon has no terminal vertex");

        long di = ni - ci, dj = cj - nj;
        long g = std::gcd(di, dj);
        unsigned p = static_cast<unsigned>(di / g);
        unsigned q = static_cast<unsigned>(dj / g);
        long w = static_cast<long>(q) * ci + static_cast<long>(p) * cj;

        std::map<long, rational> phi;
        for (const auto& [pi, pj, pc] : pts)
            if (static_cast<long>(q) * pi + static_cast<long>(p) * pj == w) phi[pj] = pc;

        std::vector<rational> edge(static_cast<std::size_t>((cj - nj) / q) + 1, rational(0));
        for (const auto& [j, cf] : phi) {
            long rel = j - nj;
            if (rel % q != 0)
                throw std::logic_error("edge support not aligned with ramification");
            edge[static_cast<std::size_t>(rel / q)] = cf;
        }

        auto rr = rational_roots(edge);
        if (!rr.complete)
            throw inconclusive_error("edge polynomial has irrational or unresolved roots");

        for (const auto& [y0, r] : rr.roots) {
            auto copt = rational_qth_root(y0, q);
            if (!copt)
                throw inconclusive_error("branch leading coefficient is not rational");
            rational c = *copt;

            poly t = poly::variable(ax1());
            poly gnext = h.substitute(
                {{ax1(), t.pow(q)},
                 {ax2(), t.pow(p) * (poly::constant(c) + poly::variable(ax2()))}});
            gnext = shift_down(gnext, ax1(), static_cast<unsigned>(w));
            if (ord_x2_at_zero(gnext) != r)
                throw std::logic_error("puiseux edge multiplicity mismatch");

            unsigned long wide = static_cast<unsigned long>(budget) * q;
            if (wide > max_series_budget)
                throw inconclusive_error("puiseux series budget exceeded");
            unsigned budget_next = static_cast<unsigned>(wide);

            std::vector<np_branch> subs;
            if (r == 1)
                subs.push_back(continue_simple(gnext, budget_next));
            else
                subs = np_recurse(gnext, budget_next, depth + 1);

            for (const auto& sb : subs) {
                np_branch nb;
                nb.ram = q * sb.ram;
                unsigned shift = p * sb.ram;
                nb.series = poly::variable(branch_parameter()).pow(shift) *
                            (poly::constant(c) + sb.series);
                nb.mult = sb.mult;
                nb.trunc = sb.trunc + shift;
                out.push_back(nb);
            }
        }
        ci = ni;
        cj = nj;
    }
    return out;
}

// Orders two series by their lowest differing coefficient, so the relative
// order of distinct branches does not depend on how far they were truncated.
int series_cmp(const poly& a, const poly& b) {
    std::map<unsigned, rational> ca, cb;
    for (const auto& [mono, coeff] : a.terms()) ca[mono.degree_in(branch_parameter())] = coeff;
    for (const auto& [mono, coeff] : b.terms()) cb[mono.degree_in(branch_parameter())] = coeff;
    auto ia = ca.begin();
    auto ib = cb.begin();
    while (ia != ca.end() || ib != cb.end()) {
        unsigned ea = ia == ca.end() ? UINT_MAX : ia->first;
        unsigned eb = ib == cb.end() ? UINT_MAX : ib->first;
        if (ea != eb) {
            // The series with the earlier extra term compares by that
            // coefficient's sign against zero.
            if (ea < eb) return ia->second < 0 ? -1 : 1;
            return ib->second < 0 ? 1 : -1;
        }
        if (ia->second != ib->second) return ia->second < ib->second ? -1 : 1;
        ++ia;
        ++ib;
    }
    return 0;
}

void sort_branches(std::vector<branch>& bs) {
    std::sort(bs.begin(), bs.end(), [](const branch& a, const branch& b) {
        if (a.vertical != b.vertical) return a.vertical;
        if (a.ram != b.ram) return a.ram < b.ram;
        int c = series_cmp(a.x2_series, b.x2_series);
        if (c != 0) return c < 0;
        return a.multiplicity < b.multiplicity;
    });
}

}  // namespace

std::vector<branch> puiseux_decompose(const poly& f, unsigned order) {
    if (order == 0) throw usage_error("puiseux truncation order must be positive");
    if (f.is_zero()) throw usage_error("cannot decompose the zero polynomial");
    require_plane(f);
    if (f.constant_term() != 0) return {};  // the germ misses the origin

    std::vector<branch> out;
    poly h = f;
    unsigned a = min_exponent(h, ax1());
    if (a > 0) {
        h = shift_down(h, ax1(), a);
        branch vb;
        vb.vertical = true;
        vb.ram = 1;
        vb.x2_series = poly::variable(branch_parameter());
        vb.truncation = order;
        vb.multiplicity = a;
        out.push_back(vb);
    }
    if (!h.is_constant() && h.constant_term() == 0) {
        unsigned total = ord_x2_at_zero(h);
        auto nps = np_recurse(h, order, 0);
        unsigned long covered = 0;
        for (const auto& nb : nps) covered += nb.mult * nb.ram;
        if (covered != total)
            throw std::logic_error("puiseux branch count fails conservation");
        for (const auto& nb : nps) {
            branch br;
            br.ram = nb.ram;
            br.x2_series = nb.series;
            br.truncation = nb.trunc;
            br.multiplicity = nb.mult;
            out.push_back(br);
        }
    }
    sort_branches(out);
    return out;
}

std::optional<rational> try_ord_along_branch(const branch& b, const poly& g) {
    require_plane(g);
    poly composed;
    if (b.vertical) {
        composed = g.substitute(
            {{ax1(), poly()}, {ax2(), poly::variable(branch_parameter())}});
        if (composed.is_zero()) return std::nullopt;
        return rational(min_exponent(composed, branch_parameter()));
    }
    composed = g.substitute(
        {{ax1(), poly::variable(branch_parameter()).pow(b.ram)}, {ax2(), b.x2_series}});
    if (composed.is_zero()) return std::nullopt;
    unsigned e = min_exponent(composed, branch_parameter());
    if (e > b.truncation) return std::nullopt;  // below the trusted truncation
    return rational(integer(e)) / rational(integer(b.ram));
}

rational ord_along_branch(const branch& b, const poly& g) {
    auto r = try_ord_along_branch(b, g);
    if (!r)
        throw inconclusive_error(
            "function vanishes along the branch through the truncation order");
    return *r;
}

double ord_slope_estimate(const branch& b, const poly& g) {
    require_plane(g);
    std::vector<double> xs, ys;
    for (double s : {1e-2, 1e-3, 1e-4, 1e-5}) {
        std::map<var_id, std::complex<double>> pt;
        if (b.vertical) {
            pt[ax1()] = 0.0;
            pt[ax2()] = s;
        } else {
            pt[ax1()] = std::pow(s, static_cast<double>(b.ram));
            pt[ax2()] = b.x2_series.eval_complex({{branch_parameter(), s}});
        }
        double v = std::abs(g.eval_complex(pt));
        if (v <= 0.0 || !std::isfinite(v)) continue;
        xs.push_back(std::log(s));
        ys.push_back(std::log(v));
    }
    if (xs.size() < 2) return std::numeric_limits<double>::quiet_NaN();
    double xm = 0, ym = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        xm += xs[i];
        ym += ys[i];
    }
    xm /= static_cast<double>(xs.size());
    ym /= static_cast<double>(xs.size());
    double num = 0, den = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        num += (xs[i] - xm) * (ys[i] - ym);
        den += (xs[i] - xm) * (xs[i] - xm);
    }
    return num / den / static_cast<double>(b.ram);
}

} // namespace noethkit
