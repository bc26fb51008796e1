#include <noethkit/ni_perturb.hpp>
#include <noethkit/bounds.hpp>
#include <noethkit/errors.hpp>
#include <noethkit/local_mult.hpp>

#include <algorithm>
#include <array>
#include <functional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>

namespace noethkit {

namespace {

void validate_system(const ni_system& sys) {
    if (sys.k_hat < 1) throw usage_error("working order k_hat must be at least 1");
    if (sys.P.size() + 1 != sys.c.n())
        throw usage_error("expected n-1 section polynomials");
}

integer system_degree(const ni_system& sys) {
    integer d = 1;
    for (const poly& p : sys.P) d = std::max(d, integer(std::max<std::int64_t>(p.total_degree(), 1)));
    d = std::max(d, integer(std::max<std::int64_t>(sys.R.total_degree(), 1)));
    return d;
}

integer generator_degree_cap(const ni_system& sys) {
    integer delta(std::max<std::int64_t>(sys.c.delta(), 1));
    integer cap = deg_after_mo(sys.c.n(), delta, system_degree(sys), integer(sys.k_hat));
    return std::max(cap, il_degree(sys.c.m(), sys.c.n(), delta).value);
}

void assert_generator_degree(const poly& p, const integer& cap) {
    if (p.is_zero()) return;
    if (integer(p.total_degree()) > cap)
        throw ledger_error("generator degree exceeds the derivative-degree budget");
}

poly monic(const poly& p) {
    if (p.is_zero()) return p;
    return poly::constant(rational(1) / p.leading_coefficient()) * p;
}

// Directional derivative along t on the leaves.
poly dir_derive(const chain& c, const poly& h, const std::array<rational, 2>& t) {
    poly out;
    if (t[0] != 0) out += poly::constant(t[0]) * derive(c, h, 1);
    if (t[1] != 0) out += poly::constant(t[1]) * derive(c, h, 2);
    return out;
}

// Jacobian pairing of a and b along two directions.
poly jac_pair(const chain& c, const poly& a, const poly& b,
              const std::array<rational, 2>& t, const std::array<rational, 2>& u) {
    return dir_derive(c, a, t) * dir_derive(c, b, u) -
           dir_derive(c, a, u) * dir_derive(c, b, t);
}

}  // namespace

std::vector<poly> ni_generators(const ni_system& sys) {
    validate_system(sys);
    unsigned n = sys.c.n();
    if (n > 2) throw usage_error("ni generators support n <= 2");

    integer cap = generator_degree_cap(sys);
    std::vector<poly> out = il_generators(sys.c, default_il_depth(sys.c));
    for (const poly& g : out) assert_generator_degree(g, cap);

    if (n == 1) {
        poly cur = sys.R;
        for (unsigned j = 1; j <= sys.k_hat; ++j) {
            cur = derive(sys.c, cur, 1);
            assert_generator_degree(cur, cap);
            if (!cur.is_zero()) out.push_back(cur);
        }
        return out;
    }

    for (const poly& p : sys.P) out.push_back(p);

    const std::array<std::array<rational, 2>, 3> dirs = {
        std::array<rational, 2>{rational(1), rational(0)},
        std::array<rational, 2>{rational(0), rational(1)},
        std::array<rational, 2>{rational(1), rational(1)}};
    const std::array<std::pair<int, int>, 3> pairs = {
        std::make_pair(0, 1), std::make_pair(0, 2), std::make_pair(1, 2)};

    std::set<std::string> seen;
    auto emit = [&](std::vector<poly>& level, const poly& g) {
        if (g.is_zero()) return;
        assert_generator_degree(g, cap);
        if (seen.insert(monic(g).str()).second) {
            level.push_back(g);
            out.push_back(g);
        }
    };

    std::vector<poly> tier;
    for (const auto& [a, b] : pairs)
        emit(tier, jac_pair(sys.c, sys.P[0], sys.R, dirs[a], dirs[b]));
    for (unsigned j = 2; j <= sys.k_hat && !tier.empty(); ++j) {
        std::vector<poly> next;
        for (const poly& h : tier)
            for (const auto& [a, b] : pairs) {
                emit(next, jac_pair(sys.c, sys.P[0], h, dirs[a], dirs[b]));
                emit(next, jac_pair(sys.c, sys.R, h, dirs[a], dirs[b]));
            }
        tier = std::move(next);
    }
    return out;
}

bool ni_member_numeric(const ni_system& sys, const leaf_point& q) {
    validate_system(sys);
    if (!il_test(sys.c, q, default_il_depth(sys.c)))
        throw not_integrable_error("sample point fails the integrability test");

    auto at = sys.c.bind(q);
    for (const poly& p : sys.P)
        if (p.eval(at) != 0) return false;  // off the cut locus entirely

    std::vector<poly> system = sys.P;
    system.push_back(sys.R - poly::constant(sys.R.eval(at)));

    unsigned cap = std::max(64u, 8 * sys.k_hat);
    unsigned long prev = 0;
    bool have_prev = false;
    for (unsigned t = 2; t <= cap; t *= 2) {
        unsigned long dim = dual_space_dim(sys.c, q, system, t);
        if (dim > sys.k_hat) return true;
        if (have_prev && dim == prev) return false;  // stabilized below k_hat
        prev = dim;
        have_prev = true;
    }
    return true;  // never stabilized within the cap
}

poly build_H(const ni_system& sys, const poly& phi, const direction& t, unsigned lambda) {
    validate_system(sys);
    if (lambda > sys.k_hat)
        throw usage_error("vanishing order exceeds the working order k_hat");
    poly d = mo_restrict(sys.c, phi, t, lambda).back();
    if (d.is_zero()) throw usage_error("direction not generic");
    poly h = d.pow(static_cast<unsigned long>(lambda) + 1);

    integer delta(std::max<std::int64_t>(sys.c.delta(), 1));
    integer dphi(std::max<std::int64_t>(phi.total_degree(), 1));
    integer cap = (integer(lambda) + 1) *
                  deg_after_mo(sys.c.n(), delta, dphi, integer(std::max(lambda, 1u)));
    if (!h.is_zero() && integer(h.total_degree()) > cap)
        throw ledger_error("H degree exceeds its budget");
    return h;
}

poly build_E(const ni_system& sys,
             const std::vector<std::pair<poly, poly>>& components,
             const std::vector<std::vector<std::map<var_id, rational>>>& samples) {
    validate_system(sys);
    if (components.empty()) throw usage_error("E requires at least one component");
    if (!samples.empty() && samples.size() != components.size())
        throw usage_error("sample list must match the component list");

    std::size_t k = components.size();
    if (!samples.empty()) {
        for (std::size_t i = 0; i < k; ++i)
            for (const auto& pt : samples[i]) {
                if (components[i].second.eval(pt) != 0)
                    throw usage_error("Q does not vanish on its own component sample");
                for (std::size_t j = 0; j < k; ++j)
                    if (j != i && components[j].second.eval(pt) == 0)
                        throw usage_error("Q separation check failed at a sample point");
            }
    }

    poly e;
    std::vector<poly> summands;
    for (std::size_t i = 0; i < k; ++i) {
        poly s = components[i].first;
        for (std::size_t j = 0; j < k; ++j)
            if (j != i) s = s * components[j].second;
        summands.push_back(s);
        e += s;
    }
    if (!samples.empty()) {
        // every summand except the i-th must vanish on component i's samples
        for (std::size_t i = 0; i < k; ++i)
            for (const auto& pt : samples[i])
                for (std::size_t l = 0; l < k; ++l)
                    if (l != i && summands[l].eval(pt) != 0)
                        throw usage_error("summand fails to vanish on a foreign component");
    }

    integer delta(std::max<std::int64_t>(sys.c.delta(), 1));
    integer d = system_degree(sys);
    for (const auto& [h, q] : components) {
        d = std::max(d, integer(std::max<std::int64_t>(h.total_degree(), 1)));
        d = std::max(d, integer(std::max<std::int64_t>(q.total_degree(), 1)));
    }
    integer dni = std::max(il_degree(sys.c.m(), sys.c.n(), delta).value,
                           deg_after_mo(sys.c.n(), delta, d, integer(sys.k_hat)));
    integer dh = (integer(sys.k_hat) + 1) *
                 deg_after_mo(sys.c.n(), delta, d, integer(sys.k_hat));
    integer cap = pow_int(dni, 2 * (sys.c.n() + sys.c.m())) + dh;
    if (!e.is_zero() && integer(e.total_degree()) > cap)
        throw ledger_error("E degree exceeds its budget");
    return e;
}

poly build_eprime(const chain& c, const leaf_point& p, const poly& e, const poly& ell,
                  unsigned a_hat, unsigned b_hat) {
    if (ell.total_degree() > 1)
        throw usage_error("ell must have degree at most 1");
    if (ell.eval(c.bind(p)) != 0)
        throw usage_error("ell must vanish at the base point");
    return e.pow(a_hat) * ell.pow(b_hat);
}

std::vector<poly> random_polys(const chain& c, std::size_t count, unsigned degree,
                               std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto coeff = [&]() {
        return rational(static_cast<long>(rng() % 19) - 9);
    };
    // all monomials of total degree <= degree in the x-variables
    std::vector<std::vector<unsigned>> exps;
    std::vector<unsigned> cur(c.n(), 0);
    std::function<void(std::size_t, unsigned)> rec = [&](std::size_t pos, unsigned left) {
        if (pos == cur.size()) {
            exps.push_back(cur);
            return;
        }
        for (unsigned e = 0; e <= left; ++e) {
            cur[pos] = e;
            rec(pos + 1, left - e);
        }
        cur[pos] = 0;
    };
    rec(0, degree);

    std::vector<poly> out;
    for (std::size_t i = 0; i < count; ++i) {
        poly_builder pb;
        for (const auto& ev : exps) {
            rational cf = coeff();
            if (cf == 0) continue;
            std::vector<monomial::entry> fs;
            for (unsigned j = 0; j < ev.size(); ++j)
                if (ev[j]) fs.emplace_back(c.x_var(j + 1), ev[j]);
            pb.add(monomial(std::move(fs)), cf);
        }
        out.push_back(pb.build());
    }
    return out;
}

std::vector<poly> perturb(const ni_system& sys, const std::vector<poly>& q_tuple,
                          const poly& eprime) {
    validate_system(sys);
    if (q_tuple.size() != sys.P.size())
        throw usage_error("perturbation tuple size must match P");
    poly lift = eprime.pow(static_cast<unsigned long>(sys.k_hat) + 1);
    std::vector<poly> out;
    for (std::size_t j = 0; j < sys.P.size(); ++j) {
        poly pj = sys.P[j] + q_tuple[j] * lift;
        std::int64_t cap = std::max<std::int64_t>(
            sys.P[j].total_degree(),
            q_tuple[j].is_zero() || eprime.is_zero()
                ? 0
                : q_tuple[j].total_degree() +
                      static_cast<std::int64_t>(sys.k_hat + 1) * eprime.total_degree());
        if (!pj.is_zero() && pj.total_degree() > cap)
            throw ledger_error("perturbed polynomial degree exceeds its budget");
        out.push_back(pj);
    }
    return out;
}

perturb_report verify_preservation(const ni_system& sys, const std::vector<poly>& pprime,
                                   const leaf_point& p, unsigned order) {
    validate_system(sys);
    if (pprime.size() != sys.P.size())
        throw usage_error("perturbed tuple size must match P");

    deflicity_problem before{sys.c, p, sys.P, sys.R, order};
    deflicity_problem after{sys.c, p, pprime, sys.R, order};

    perturb_report rep;
    rep.k_hat = sys.k_hat;
    rep.original = deflicity_symbolic(before);
    rep.perturbed = deflicity_symbolic(after);
    rep.preserved = rep.perturbed >= rep.original;

    if (sys.c.n() == 2) {
        auto branches = classify_branches(branch_decompose(before), sys.R, before);
        poly delta = pprime[0] - sys.P[0];
        poly dser = jet(sys.c, p, delta, 2 * order).series;
        for (const branch& b : branches) {
            if (b.kind != branch_kind::good) continue;
            growth_check gc;
            gc.b = b;
            branch probe = b;
            probe.truncation = std::min(b.truncation, 2 * order);
            gc.perturbation_order = try_ord_along_branch(probe, dser);
            gc.projection_order = *b.rho_order;
            // no finite order through the truncation counts as arbitrarily high
            gc.pass = !gc.perturbation_order ||
                      *gc.perturbation_order > gc.projection_order;
            rep.all_growth_pass = rep.all_growth_pass && gc.pass;
            rep.checks.push_back(std::move(gc));
        }
    }

    ni_system perturbed_sys{sys.c, pprime, sys.R, sys.k_hat};
    for (unsigned i = 0; i < sys.c.n(); ++i)
        for (int sgn : {1, -1}) {
            leaf_point q = p;
            q.coords[i] += rational(sgn) / 8;
            if (!il_test(sys.c, q, default_il_depth(sys.c))) continue;
            member_delta md;
            for (const rational& c : q.coords) md.point.push_back(c);
            md.before = ni_member_numeric(sys, q);
            md.after = ni_member_numeric(perturbed_sys, q);
            rep.deltas.push_back(std::move(md));
        }
    return rep;
}

sard_report sard_check_tuple(const ni_system& sys, const leaf_point& p, const poly& e,
                             const std::vector<poly>& q_tuple) {
    validate_system(sys);
    if (q_tuple.size() != sys.P.size())
        throw usage_error("perturbation tuple size must match P");

    std::vector<poly> pprime;
    for (std::size_t j = 0; j < sys.P.size(); ++j)
        pprime.push_back(sys.P[j] + q_tuple[j] * e);
    ni_system perturbed{sys.c, pprime, sys.R, sys.k_hat};

    sard_report rep;
    rep.trials = 1;
    std::vector<rational> offsets = {rational(1, 8), rational(-1, 8), rational(1, 16),
                                     rational(-3, 16), rational(5, 16)};
    for (std::size_t k = 0; k < offsets.size(); ++k) {
        leaf_point q = p;
        for (unsigned i = 0; i < sys.c.n(); ++i)
            q.coords[i] += offsets[(k + i) % offsets.size()];
        if (!il_test(sys.c, q, default_il_depth(sys.c))) continue;
        if (ni_member_numeric(sys, q)) continue;  // need points outside the locus
        ++rep.points;
        if (ni_member_numeric(perturbed, q)) ++rep.failures;
    }
    rep.failure_fraction =
        rep.points ? static_cast<double>(rep.failures) / static_cast<double>(rep.points) : 0.0;
    return rep;
}

sard_report sard_sample(const ni_system& sys, const leaf_point& p, const poly& e,
                        unsigned trials, std::uint64_t seed) {
    validate_system(sys);
    if (trials < 1) throw usage_error("at least one trial is required");
    sard_report rep;
    rep.seed = seed;
    rep.trials = trials;
    for (unsigned t = 0; t < trials; ++t) {
        auto q_tuple = random_polys(sys.c, sys.P.size(), sys.c.n() + sys.c.m(),
                                    seed + 0x9e3779b97f4a7c15ull * (t + 1));
        auto one = sard_check_tuple(sys, p, e, q_tuple);
        rep.points += one.points;
        rep.failures += one.failures;
    }
    rep.failure_fraction =
        rep.points ? static_cast<double>(rep.failures) / static_cast<double>(rep.points) : 0.0;
    return rep;
}

} // namespace noethkit
