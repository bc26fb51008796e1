#include <noethkit/chain.hpp>

#include <noethkit/errors.hpp>

#include <algorithm>
#include <map>
#include <string>

namespace noethkit {

chain chain::make(unsigned n, unsigned m, std::vector<std::vector<poly>> g) {
    if (n == 0) throw usage_error("a chain needs at least one x-variable");
    if (g.size() != n) throw usage_error("coefficient matrix must have n rows");
    for (const auto& row : g)
        if (row.size() != m) throw usage_error("coefficient matrix must have m columns");

    chain c;
    c.n_ = n;
    c.m_ = m;
    c.g_ = std::move(g);
    for (unsigned i = 1; i <= n; ++i) c.xs_.push_back(var("x" + std::to_string(i)));
    for (unsigned j = 1; j <= m; ++j) c.fs_.push_back(var("f" + std::to_string(j)));

    arena scope = c.make_arena();
    c.delta_ = 0;
    for (const auto& row : c.g_)
        for (const auto& p : row) {
            for (var_id v : p.variables())
                if (!scope.allows(v))
                    throw usage_error("chain coefficient uses variable " +
                                      var_table::name(v) + " outside x1..x" +
                                      std::to_string(n) + ", f1..f" + std::to_string(m));
            c.delta_ = std::max(c.delta_, p.total_degree());
        }
    return c;
}

const poly& chain::g(unsigned i, unsigned j) const {
    if (i < 1 || i > n_ || j < 1 || j > m_)
        throw usage_error("chain coefficient index out of range");
    return g_[i - 1][j - 1];
}

var_id chain::x_var(unsigned i) const {
    if (i < 1 || i > n_) throw usage_error("x index out of range");
    return xs_[i - 1];
}

var_id chain::f_var(unsigned j) const {
    if (j < 1 || j > m_) throw usage_error("f index out of range");
    return fs_[j - 1];
}

arena chain::make_arena() const {
    std::vector<var_id> vs = xs_;
    vs.insert(vs.end(), fs_.begin(), fs_.end());
    return arena(std::move(vs));
}

std::map<var_id, rational> chain::bind(const leaf_point& q) const {
    if (q.coords.size() != n_ + m_)
        throw usage_error("point has " + std::to_string(q.coords.size()) +
                          " coordinates, expected " + std::to_string(n_ + m_));
    std::map<var_id, rational> point;
    for (unsigned i = 0; i < n_; ++i) point[xs_[i]] = q.coords[i];
    for (unsigned j = 0; j < m_; ++j) point[fs_[j]] = q.coords[n_ + j];
    return point;
}

poly derive(const chain& c, const poly& p, unsigned axis) {
    if (axis < 1 || axis > c.n()) throw usage_error("derivation axis out of range");
    poly r = p.derivative(c.x_var(axis));
    for (unsigned j = 1; j <= c.m(); ++j) {
        poly df = p.derivative(c.f_var(j));
        if (!df.is_zero()) r += c.g(axis, j) * df;
    }
    if (p.total_degree() >= 1 && r.total_degree() > p.total_degree() + c.delta() - 1)
        throw ledger_error("derivative degree " + std::to_string(r.total_degree()) +
                           " exceeds budget " +
                           std::to_string(p.total_degree() + c.delta() - 1));
    return r;
}

poly iterated_derive(const chain& c, const poly& p, const std::vector<unsigned>& word) {
    if (word.empty()) throw usage_error("derivation word must be nonempty");
    poly r = p;
    for (auto it = word.rbegin(); it != word.rend(); ++it) r = derive(c, r, *it);
    return r;
}

std::vector<unsigned> canonical_word(const std::vector<std::uint32_t>& alpha) {
    std::vector<unsigned> word;
    for (std::size_t i = 0; i < alpha.size(); ++i)
        for (std::uint32_t r = 0; r < alpha[i]; ++r)
            word.push_back(static_cast<unsigned>(i + 1));
    return word;
}

namespace {

// A vertical field sum_k c_k d/df_k, kept as its coefficient list.
using vertical = std::vector<poly>;

// Applies the vertical field to a polynomial.
poly apply_vertical(const chain& c, const vertical& a, const poly& h) {
    poly r;
    for (unsigned k = 1; k <= c.m(); ++k) {
        poly dh = h.derivative(c.f_var(k));
        if (!dh.is_zero() && !a[k - 1].is_zero()) r += a[k - 1] * dh;
    }
    return r;
}

vertical bracket(const chain& c, const vertical& a, const vertical& b) {
    vertical out(c.m());
    for (unsigned k = 0; k < c.m(); ++k)
        out[k] = apply_vertical(c, a, b[k]) - apply_vertical(c, b, a[k]);
    return out;
}

poly monic(const poly& p) {
    rational lc = p.leading_coefficient();
    return rational(1) / lc * p;
}

} // namespace

std::vector<poly> il_generators(const chain& c, unsigned depth) {
    if (depth < 1) throw usage_error("bracket depth must be at least 1");
    std::vector<poly> out;
    std::vector<std::string> seen;
    auto emit = [&](const poly& p) {
        if (p.is_zero()) return;
        std::string key = monic(p).str();
        if (std::find(seen.begin(), seen.end(), key) != seen.end()) return;
        seen.push_back(key);
        out.push_back(p);
    };

    // [V_i, V_j] has no horizontal part; its vertical coefficients are the
    // depth-1 generators.
    std::vector<vertical> level1;
    for (unsigned i = 1; i <= c.n(); ++i)
        for (unsigned j = i + 1; j <= c.n(); ++j) {
            vertical w(c.m());
            for (unsigned k = 1; k <= c.m(); ++k)
                w[k - 1] = derive(c, c.g(j, k), i) - derive(c, c.g(i, k), j);
            for (const auto& p : w) emit(p);
            level1.push_back(std::move(w));
        }

    // On a true leaf every level-1 coefficient vanishes identically, hence so
    // does every bracket formed from the vertical fields; iterating brackets
    // of verticals keeps the condition set sound.
    std::vector<vertical> prev = level1;
    for (unsigned d = 2; d <= depth; ++d) {
        std::vector<vertical> next;
        for (const auto& a : level1)
            for (const auto& b : prev) {
                vertical w = bracket(c, a, b);
                bool nonzero = false;
                for (const auto& p : w)
                    if (!p.is_zero()) nonzero = true;
                if (!nonzero) continue;
                for (const auto& p : w) emit(p);
                next.push_back(std::move(w));
            }
        if (next.empty()) break;
        prev = std::move(next);
    }
    return out;
}

bool il_test(const chain& c, const leaf_point& q, unsigned depth) {
    auto point = c.bind(q);
    for (const auto& p : il_generators(c, depth))
        if (p.eval(point) != 0) return false;
    return true;
}

jet_result jet(const chain& c, const leaf_point& q, const poly& p, unsigned order) {
    auto point = c.bind(q);

    jet_result out;
    out.base = q;
    out.order = order;
    out.integrable = il_test(c, q, default_il_depth(c));

    // Taylor coefficient at alpha: the canonical-word derivative evaluated at
    // the base point, divided by alpha!. Derivatives are shared through a
    // table keyed by the multi-index; peeling the smallest axis reproduces the
    // canonical (ascending) word.
    std::map<std::vector<std::uint32_t>, poly> table;
    std::vector<std::uint32_t> zero(c.n(), 0);
    table[zero] = p;

    std::vector<std::vector<std::uint32_t>> frontier{zero};
    poly series = poly::constant(p.eval(point));
    for (unsigned total = 1; total <= order; ++total) {
        std::vector<std::vector<std::uint32_t>> next_frontier;
        for (const auto& alpha : frontier) {
            for (unsigned axis = 1; axis <= c.n(); ++axis) {
                std::vector<std::uint32_t> beta = alpha;
                beta[axis - 1] += 1;
                if (table.count(beta)) continue;
                // The canonical word of beta ends with its largest axis, so
                // the outermost derivative is the smallest one; build beta
                // from the multi-index missing its smallest axis.
                unsigned lowest = 1;
                while (beta[lowest - 1] == 0) ++lowest;
                std::vector<std::uint32_t> gamma = beta;
                gamma[lowest - 1] -= 1;
                table[beta] = derive(c, table.at(gamma), lowest);
                next_frontier.push_back(beta);

                rational value = table[beta].eval(point);
                if (value != 0) {
                    integer fact = 1;
                    std::vector<monomial::entry> mono;
                    for (unsigned i = 1; i <= c.n(); ++i) {
                        fact *= factorial(beta[i - 1]);
                        if (beta[i - 1] > 0) mono.emplace_back(c.x_var(i), beta[i - 1]);
                    }
                    poly_builder b;
                    b.add(monomial(std::move(mono)), value / rational(fact));
                    series += b.build();
                }
            }
        }
        frontier = std::move(next_frontier);
    }
    out.series = series;
    return out;
}

} // namespace noethkit
