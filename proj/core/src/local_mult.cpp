#include <noethkit/local_mult.hpp>

#include <noethkit/errors.hpp>

#include <algorithm>
#include <map>

namespace noethkit {

namespace {

void require_integrable(const chain& c, const leaf_point& q) {
    if (!il_test(c, q, default_il_depth(c)))
        throw not_integrable_error("point fails the integrability conditions");
}

// All exponent vectors over `vars` variables with total degree <= order,
// listed by total degree; the listing order fixes the matrix columns.
std::vector<std::vector<std::uint32_t>> exponents_up_to(unsigned vars,
                                                        unsigned order) {
    std::vector<std::vector<std::uint32_t>> out;
    std::vector<std::uint32_t> cur(vars, 0);
    auto rec = [&](auto&& self, unsigned pos, unsigned left) -> void {
        if (pos == vars) {
            out.push_back(cur);
            return;
        }
        for (unsigned e = 0; e <= left; ++e) {
            cur[pos] = e;
            self(self, pos + 1, left - e);
        }
        cur[pos] = 0;
    };
    for (unsigned total = 0; total <= order; ++total) {
        std::size_t before = out.size();
        rec(rec, 0, total);
        // keep only exact-degree rows of this round
        out.erase(std::remove_if(out.begin() + static_cast<std::ptrdiff_t>(before),
                                 out.end(),
                                 [&](const std::vector<std::uint32_t>& e) {
                                     unsigned s = 0;
                                     for (auto x : e) s += x;
                                     return s != total;
                                 }),
                  out.end());
    }
    return out;
}

// Row-echelon rank over exact rationals.
std::size_t rank_of(std::vector<std::vector<rational>>& rows, std::size_t cols) {
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows.size(); ++col) {
        std::size_t pivot = rank;
        while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[rank], rows[pivot]);
        const rational lead = rows[rank][col];
        for (std::size_t r = rank + 1; r < rows.size(); ++r) {
            if (rows[r][col] == 0) continue;
            rational factor = rows[r][col] / lead;
            for (std::size_t k = col; k < cols; ++k)
                rows[r][k] -= factor * rows[rank][k];
        }
        ++rank;
    }
    return rank;
}

} // namespace

mult_result mult_univariate(const chain& c, const leaf_point& q, const poly& psi,
                            unsigned max_order) {
    if (c.n() != 1) throw usage_error("mult_univariate requires an n = 1 chain");
    require_integrable(c, q);
    auto point = c.bind(q);
    poly w = psi;
    for (unsigned j = 0; j <= max_order; ++j) {
        if (w.eval(point) != 0) return {j, j};
        w = derive(c, w, 1);
    }
    return {std::nullopt, max_order};
}

unsigned long dual_space_dim(const chain& c, const leaf_point& q,
                             const std::vector<poly>& system, unsigned order) {
    auto cols_exp = exponents_up_to(c.n(), order);
    std::map<std::vector<std::uint32_t>, std::size_t> col_of;
    for (std::size_t i = 0; i < cols_exp.size(); ++i) col_of[cols_exp[i]] = i;

    auto mults_exp = exponents_up_to(c.n(), order == 0 ? 0 : order - 1);

    std::vector<std::vector<rational>> rows;
    for (const auto& psi : system) {
        poly series = jet(c, q, psi, order).series;
        if (series.is_zero()) continue;
        for (const auto& beta : mults_exp) {
            std::vector<monomial::entry> factors;
            for (unsigned i = 0; i < c.n(); ++i)
                if (beta[i] > 0) factors.emplace_back(c.x_var(i + 1), beta[i]);
            poly_builder b;
            b.add(monomial(std::move(factors)), rational(1));
            poly shifted = b.build() * series;

            std::vector<rational> row(cols_exp.size(), rational(0));
            bool nonzero = false;
            for (const auto& [mono, coeff] : shifted.terms()) {
                if (mono.total_degree() > order) continue;
                std::vector<std::uint32_t> e(c.n(), 0);
                for (unsigned i = 0; i < c.n(); ++i)
                    e[i] = mono.degree_in(c.x_var(i + 1));
                row[col_of.at(e)] = coeff;
                nonzero = true;
            }
            if (nonzero) rows.push_back(std::move(row));
        }
    }
    std::size_t rank = rank_of(rows, cols_exp.size());
    return cols_exp.size() - rank;
}

mult_result mult_isolated(const chain& c, const leaf_point& q,
                          const std::vector<poly>& system, unsigned max_order) {
    if (system.size() != c.n())
        throw usage_error("system must have exactly n components");
    require_integrable(c, q);
    auto point = c.bind(q);
    for (const auto& psi : system)
        if (psi.eval(point) != 0)
            throw usage_error("the point is not a common zero of the system");

    unsigned t = 2;
    if (t > max_order) return {std::nullopt, max_order};
    unsigned long prev = dual_space_dim(c, q, system, t);
    while (2 * t <= max_order) {
        unsigned long cur = dual_space_dim(c, q, system, 2 * t);
        t *= 2;
        if (cur == prev) return {cur, t};
        prev = cur;
    }
    return {std::nullopt, t};
}

std::vector<poly> mo_restrict(const chain& c, const poly& phi, const direction& t,
                              unsigned k) {
    if (t.v.size() != c.n())
        throw usage_error("direction must have one entry per x-variable");
    bool nonzero = false;
    for (const auto& ti : t.v)
        if (ti != 0) nonzero = true;
    if (!nonzero) throw usage_error("direction must span a line");

    std::vector<poly> out;
    poly cur = phi;
    std::int64_t phi_deg = phi.total_degree();
    for (unsigned j = 1; j <= k; ++j) {
        poly next;
        for (unsigned i = 1; i <= c.n(); ++i)
            if (t.v[i - 1] != 0) next += t.v[i - 1] * derive(c, cur, i);
        cur = next;
        if (phi_deg >= 1 && !cur.is_zero() &&
            cur.total_degree() > phi_deg + static_cast<std::int64_t>(j) * (c.delta() - 1))
            throw ledger_error("directional derivative exceeded its degree budget");
        out.push_back(cur);
    }
    return out;
}

mult_result mo_vanish_order(const chain& c, const leaf_point& q, const poly& phi,
                            const direction& t, unsigned kmax) {
    auto point = c.bind(q);
    if (phi.eval(point) != 0)
        throw usage_error("vanishing order requires phi(q) = 0");
    auto derivatives = mo_restrict(c, phi, t, kmax);
    for (unsigned j = 1; j <= kmax; ++j)
        if (derivatives[j - 1].eval(point) != 0) return {j, j};
    return {std::nullopt, kmax};
}

} // namespace noethkit
