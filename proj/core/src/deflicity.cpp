#include <noethkit/deflicity.hpp>
#include <noethkit/errors.hpp>
#include <noethkit/numeric_roots.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>

namespace noethkit {

namespace {

var_id dx1() {
    static const var_id v = var("x1");
    return v;
}

var_id dx2() {
    static const var_id v = var("x2");
    return v;
}

var_id deps() {
    static const var_id v = var("eps");
    return v;
}

void validate_problem(const deflicity_problem& prob) {
    if (prob.c.n() > 2) throw usage_error("symbolic deflicity requires n <= 2");
    if (prob.P.size() + 1 != prob.c.n())
        throw usage_error("expected n-1 section polynomials");
    if (prob.order == 0) throw usage_error("truncation order must be positive");
    auto at = prob.c.bind(prob.p);
    for (const poly& pi : prob.P)
        if (pi.eval(at) != 0)
            throw usage_error("section polynomial does not vanish at the base point");
    if (!il_test(prob.c, prob.p, default_il_depth(prob.c)))
        throw not_integrable_error("base point fails the integrability test");
}

poly leaf_series(const deflicity_problem& prob, const poly& psi, unsigned order) {
    return jet(prob.c, prob.p, psi, order).series;
}

poly truncate_series(const poly& s, var_id v, unsigned order) {
    poly_builder out;
    for (const auto& [mono, coeff] : s.terms())
        if (mono.degree_in(v) <= order) out.add(mono, coeff);
    return out.build();
}

bool same_decomposition(const std::vector<branch>& a, const std::vector<branch>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const branch &x = a[i], &y = b[i];
        if (x.vertical != y.vertical || x.ram != y.ram ||
            x.multiplicity != y.multiplicity)
            return false;
        unsigned t = std::min(x.truncation, y.truncation);
        if (!(truncate_series(x.x2_series, branch_parameter(), t) ==
              truncate_series(y.x2_series, branch_parameter(), t)))
            return false;
    }
    return true;
}

}  // namespace

std::vector<branch> branch_decompose(const deflicity_problem& prob) {
    validate_problem(prob);
    if (prob.c.n() == 1) return {};

    // The decomposition is accepted once two consecutive doublings of the
    // truncation order reproduce it.
    std::optional<std::vector<branch>> prev;
    unsigned streak = 0;
    for (unsigned k = prob.order; k <= prob.order * 16; k *= 2) {
        poly f = leaf_series(prob, prob.P[0], k);
        if (f.is_zero())
            throw usage_error(
                "section polynomial vanishes identically on the leaf through order " +
                std::to_string(k));
        auto cur = puiseux_decompose(f, k);
        // The leaf series is only exact through total degree k, so series
        // coefficients past that order are not trustworthy even when the
        // expansion produced them.
        for (branch& b : cur) {
            b.truncation = std::min(b.truncation, k);
            b.x2_series = truncate_series(b.x2_series, branch_parameter(), b.truncation);
        }
        if (prev && same_decomposition(*prev, cur)) {
            if (++streak >= 2) return cur;
        } else {
            streak = 0;
        }
        prev = std::move(cur);
    }
    throw inconclusive_error("branch decomposition not stabilized at order " +
                             std::to_string(prob.order * 16));
}

std::vector<branch> classify_branches(std::vector<branch> branches, const poly& r,
                                      const deflicity_problem& prob) {
    validate_problem(prob);
    poly g = leaf_series(prob, r, 2 * prob.order);
    g -= poly::constant(g.constant_term());
    for (branch& b : branches) {
        branch probe = b;
        probe.truncation = std::min(b.truncation, 2 * prob.order);
        auto e = try_ord_along_branch(probe, g);
        if (e) {
            b.kind = branch_kind::good;
            b.rho_order = *e;
        } else {
            b.kind = branch_kind::bad;
            b.rho_order.reset();
        }
    }
    return branches;
}

integer deflicity_symbolic(const deflicity_problem& prob) {
    validate_problem(prob);
    if (prob.c.n() == 1) {
        rational rp = prob.R.eval(prob.c.bind(prob.p));
        poly shifted = prob.R - poly::constant(rp);
        auto mr = mult_univariate(prob.c, prob.p, shifted,
                                  std::max(64u, 4 * prob.order));
        if (!mr.decided())
            throw inconclusive_error("multiplicity not decided through order " +
                                     std::to_string(mr.order));
        return integer(static_cast<unsigned long>(*mr.value));
    }
    auto branches = classify_branches(branch_decompose(prob), prob.R, prob);
    integer total = 0;
    for (const branch& b : branches) {
        if (b.kind != branch_kind::good) continue;
        rational sord = *b.rho_order * rational(integer(b.ram));
        if (sord.get_den() != 1) throw std::logic_error("branch order is not integral");
        total += sord.get_num() * integer(b.multiplicity);
    }
    return total;
}

namespace {

std::function<std::complex<double>(std::complex<double>)> monic_eval(
    std::vector<std::complex<double>> cs) {
    while (!cs.empty() && cs.back() == std::complex<double>(0.0)) cs.pop_back();
    if (!cs.empty()) {
        std::complex<double> lead = cs.back();
        for (auto& c : cs) c /= lead;
    }
    return [cs](std::complex<double> z) {
        std::complex<double> acc = 0.0;
        for (auto it = cs.rbegin(); it != cs.rend(); ++it) acc = acc * z + *it;
        return acc;
    };
}

integer count_at_eps(const std::vector<poly>& family,
                     const std::vector<rational>& base, const rational& eps,
                     double radius) {
    std::size_t n = family.size();
    std::vector<poly> sys;
    sys.reserve(n);
    for (const poly& p : family)
        sys.push_back(p.substitute({{deps(), poly::constant(eps)}}));
    for (const poly& p : sys)
        if (p.is_zero())
            throw inconclusive_error("degenerate system at epsilon sample");

    if (n == 1) {
        auto cs = complex_coefficients(sys[0], dx1());
        auto roots = polynomial_roots(cs);
        auto clusters = cluster_roots(roots, monic_eval(cs));
        std::complex<double> b1(to_double(base[0]), 0.0);
        unsigned long count = 0;
        for (const auto& cl : clusters)
            if (std::abs(cl.center - b1) <= radius) count += cl.size;
        return integer(count);
    }

    const poly &f = sys[0], &g = sys[1];
    poly res = resultant_x2(f, g);
    if (res.is_zero())
        throw inconclusive_error("family shares a component at the epsilon sample");
    auto rcs = complex_coefficients(res, dx1());
    auto rroots = polynomial_roots(rcs);
    auto clusters = cluster_roots(rroots, monic_eval(rcs));

    const poly& fib = f.degree_in(dx2()) >= g.degree_in(dx2()) ? f : g;
    if (fib.degree_in(dx2()) == 0)
        throw inconclusive_error("system does not determine x2");
    auto fib_coeffs = fib.coefficients_in(dx2());

    std::complex<double> b1(to_double(base[0]), 0.0);
    std::complex<double> b2(to_double(base[1]), 0.0);
    rational count = 0;
    for (const auto& cl : clusters) {
        std::vector<std::complex<double>> fc;
        fc.reserve(fib_coeffs.size());
        for (const poly& c : fib_coeffs)
            fc.push_back(c.eval_complex({{dx1(), cl.center}}));
        auto froots = polynomial_roots(fc);
        std::vector<std::complex<double>> pts;
        for (const auto& z : froots) {
            std::map<var_id, std::complex<double>> at{{dx1(), cl.center}, {dx2(), z}};
            if (std::abs(f.eval_complex(at)) <= 1e-6 &&
                std::abs(g.eval_complex(at)) <= 1e-6)
                pts.push_back(z);
        }
        if (pts.empty()) continue;  // leading-coefficient artifact of the resultant
        unsigned long inside = 0;
        for (const auto& z : pts)
            if (std::hypot(std::abs(cl.center - b1), std::abs(z - b2)) <= radius)
                ++inside;
        count += rational(static_cast<unsigned long>(cl.size)) *
                 rational(inside) / rational(static_cast<unsigned long>(pts.size()));
    }
    if (count.get_den() != 1)
        throw inconclusive_error("unstable count at epsilon sample");
    return count.get_num();
}

}  // namespace

integer deflicity_numeric(const std::vector<poly>& family,
                          const std::vector<rational>& base,
                          const std::vector<rational>& eps_samples,
                          double radius) {
    std::size_t n = family.size();
    if (n == 0) throw usage_error("family must contain at least one polynomial");
    if (base.size() != n)
        throw usage_error("base point dimension must match the family");
    if (eps_samples.empty())
        throw usage_error("at least one epsilon sample is required");
    if (!(radius > 0)) throw usage_error("radius must be positive");
    if (n > 2) throw inconclusive_error("numeric deflicity solver supports n <= 2");

    arena allowed({deps()});
    for (std::size_t i = 1; i <= n; ++i) allowed.add(var("x" + std::to_string(i)));
    for (const poly& p : family)
        for (var_id v : p.variables())
            if (!allowed.allows(v))
                throw usage_error("family polynomials must use x variables and eps only");

    std::optional<integer> agreed;
    for (const rational& e : eps_samples) {
        integer cnt = count_at_eps(family, base, e, radius);
        if (agreed && *agreed != cnt)
            throw inconclusive_error("unstable count across epsilon samples");
        agreed = cnt;
    }
    return *agreed;
}

} // namespace noethkit
