#pragma once

#include <noethkit/scalar.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace noethkit {

enum class cmp_result { less, equal, greater };

// Exact positive value kept as a product of integer bases raised to
// arbitrary-precision integer exponents. Values like 2^268435456 are stored
// and compared without ever being expanded.
//
// Canonical form: bases are pairwise coprime (gcd-based factor refinement,
// no integer factoring), none is a perfect power, all are >= 2, exponents are
// nonzero, and the list is sorted by base. Over such a basis the exponent
// vector of a value is unique, so structural equality of canonical forms is
// value equality.
class bound_expr {
public:
    using factor = std::pair<integer, integer>;  // (base, exponent)

    bound_expr() : bound_expr(integer(1)) {}
    explicit bound_expr(const integer& value);
    explicit bound_expr(const rational& value);
    // coeff * prod(base^exponent); everything is folded into the canonical
    // factor list. The overall value must be positive.
    static bound_expr make(const rational& coeff, std::vector<factor> factors);
    static bound_expr pow_of(const integer& base, const integer& exponent);

    const std::vector<factor>& factors() const { return factors_; }
    bool is_one() const { return factors_.empty(); }

    friend bound_expr operator*(const bound_expr& a, const bound_expr& b);
    bound_expr pow(const integer& e) const;

    friend bool operator==(const bound_expr& a, const bound_expr& b) {
        return a.factors_ == b.factors_;
    }

    // Certified decimal-log enclosure: lo <= log10(value) <= hi.
    std::pair<double, double> log10_enclosure() const;

    // Exact integer expansion, refused when the value is not an integer or
    // has more decimal digits than digit_cap.
    std::optional<integer> expand(std::uint64_t digit_cap = 1000000) const;

    // Normalized power-product display, e.g. "2^128", "41482^4",
    // "2^1792 * 3^5"; plain "1" for the empty product.
    std::string str() const;

private:
    std::vector<factor> factors_;
};

// Exact ordering. Identical power products are detected structurally; all
// other cases are decided by directed-rounding logarithm intervals whose
// precision is escalated until the sign of log(a) - log(b) is certain.
cmp_result bound_cmp(const bound_expr& a, const bound_expr& b);

inline const bound_expr& bound_max(const bound_expr& a, const bound_expr& b) {
    return bound_cmp(a, b) == cmp_result::less ? b : a;
}

} // namespace noethkit
