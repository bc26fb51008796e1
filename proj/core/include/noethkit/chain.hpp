#pragma once

#include <noethkit/polynomial.hpp>

#include <cstdint>
#include <map>
#include <vector>

namespace noethkit {

// A point of the ambient space, listed as (x_1..x_n, f_1..f_m).
struct leaf_point {
    std::vector<rational> coords;
};

// A chain of derivations V_i = d/dx_i + sum_j g_ij d/df_j on variables
// x_1..x_n, f_1..f_m. The chain degree is the maximal total degree of the
// coefficient matrix (0 for an empty or constant matrix).
class chain {
public:
    static chain make(unsigned n, unsigned m, std::vector<std::vector<poly>> g);

    unsigned n() const { return n_; }
    unsigned m() const { return m_; }
    // 1-based: coefficient of d/df_j in V_i.
    const poly& g(unsigned i, unsigned j) const;
    std::int64_t delta() const { return delta_; }

    var_id x_var(unsigned i) const;  // 1-based
    var_id f_var(unsigned j) const;  // 1-based
    arena make_arena() const;

    // Binds a point's coordinates to the chain's variables for evaluation.
    std::map<var_id, rational> bind(const leaf_point& q) const;

private:
    unsigned n_ = 0, m_ = 0;
    std::vector<std::vector<poly>> g_;
    std::vector<var_id> xs_, fs_;
    std::int64_t delta_ = 0;
};

// V_axis(p). The result degree never exceeds deg p + delta - 1 for
// nonconstant p; a violation indicates an internal defect and throws
// ledger_error.
poly derive(const chain& c, const poly& p, unsigned axis);

// Composition in the written order: word (w1, w2, ..., wk) yields
// V_{w1}(V_{w2}(...V_{wk}(p)...)), i.e. the rightmost letter acts first.
poly iterated_derive(const chain& c, const poly& p, const std::vector<unsigned>& word);

// The fixed derivation order attached to a multi-index: its letters sorted
// ascending, e.g. (1,0,2) -> (1,3,3).
std::vector<unsigned> canonical_word(const std::vector<std::uint32_t>& alpha);

// Necessary conditions for a point to lie on the integrability locus:
// coefficients of the commutators [V_i,V_j] and, past depth 1, of iterated
// brackets of the resulting vertical fields. Zero polynomials are dropped and
// scalar multiples deduplicated; the raw (unscaled) representatives are kept.
std::vector<poly> il_generators(const chain& c, unsigned depth);

// True iff every generator up to the given depth vanishes at q.
bool il_test(const chain& c, const leaf_point& q, unsigned depth);

inline unsigned default_il_depth(const chain& c) { return 2 * (c.m() + 1); }

// Truncated power series of p restricted to the leaf through the base point,
// in the x-variables recentered at that point.
struct jet_result {
    leaf_point base;
    unsigned order = 0;
    poly series;
    // il_test at the default depth; when false the coefficients still follow
    // the canonical word order but need not be order-independent.
    bool integrable = true;
};

jet_result jet(const chain& c, const leaf_point& q, const poly& p, unsigned order);

} // namespace noethkit
