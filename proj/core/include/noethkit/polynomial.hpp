#pragma once

#include <noethkit/scalar.hpp>

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace noethkit {

using var_id = std::uint32_t;

// Process-wide variable registry. Names map to stable ids; the canonical
// variable order is x1 < x2 < ... < f1 < f2 < ... < eps < s < t < (others by
// registration order), so polynomials from different chains mix safely.
class var_table {
public:
    static var_id id(const std::string& name);
    static const std::string& name(var_id v);
    // Sort key realizing the canonical order; smaller key = earlier variable.
    static std::uint64_t sort_key(var_id v);
    static bool var_less(var_id a, var_id b);
};

inline var_id var(const std::string& name) { return var_table::id(name); }

// Restricted variable scope used by parsers: a polynomial text may only
// mention variables admitted here.
class arena {
public:
    arena() = default;
    explicit arena(std::vector<var_id> vars) : vars_(std::move(vars)) {}
    void add(var_id v);
    bool allows(var_id v) const;
    const std::vector<var_id>& vars() const { return vars_; }

private:
    std::vector<var_id> vars_;
};

// Exponent vector, sorted by the canonical variable order, no zero exponents.
class monomial {
public:
    using entry = std::pair<var_id, std::uint32_t>;

    monomial() = default;
    explicit monomial(std::vector<entry> factors);  // sorts and fuses

    std::uint64_t total_degree() const;
    std::uint32_t degree_in(var_id v) const;
    bool empty() const { return factors_.empty(); }
    const std::vector<entry>& factors() const { return factors_; }

    friend monomial operator*(const monomial& a, const monomial& b);
    // Graded lexicographic order: higher total degree first, ties broken by
    // the earliest variable with the larger exponent.
    static int cmp(const monomial& a, const monomial& b);
    friend bool operator==(const monomial& a, const monomial& b) {
        return cmp(a, b) == 0;
    }

private:
    std::vector<entry> factors_;
};

// Sparse multivariate polynomial with exact rational coefficients.
// Terms are kept in descending graded-lex order with no zero coefficients,
// so structural equality coincides with mathematical equality.
class poly {
public:
    using term = std::pair<monomial, rational>;

    poly() = default;
    static poly constant(const rational& c);
    static poly variable(var_id v);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    // Degree of the zero polynomial is reported as -1.
    std::int64_t total_degree() const;
    std::int64_t degree_in(var_id v) const;
    const std::vector<term>& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }
    rational constant_term() const;
    rational leading_coefficient() const;  // in the graded-lex order
    rational coefficient(const monomial& mono) const;
    std::vector<var_id> variables() const;  // sorted in canonical order

    friend poly operator+(const poly& a, const poly& b);
    friend poly operator-(const poly& a, const poly& b);
    friend poly operator*(const poly& a, const poly& b);
    friend poly operator-(const poly& a);
    friend poly operator*(const rational& c, const poly& p);
    friend bool operator==(const poly& a, const poly& b) {
        return a.terms_ == b.terms_;
    }
    poly& operator+=(const poly& o) { return *this = *this + o; }
    poly& operator-=(const poly& o) { return *this = *this - o; }
    poly& operator*=(const poly& o) { return *this = *this * o; }

    poly pow(unsigned long e) const;
    poly derivative(var_id v) const;
    // Simultaneous substitution of polynomials for a subset of variables.
    poly substitute(const std::map<var_id, poly>& repl) const;

    rational eval(const std::map<var_id, rational>& point) const;
    gaussian eval_gaussian(const std::map<var_id, gaussian>& point) const;
    std::complex<double> eval_complex(
        const std::map<var_id, std::complex<double>>& point) const;

    // Coefficients of the polynomial viewed as univariate in v, ascending
    // degree; entry j is a polynomial free of v.
    std::vector<poly> coefficients_in(var_id v) const;

    std::string str() const;

    // Grammar: integers, rationals p/q, admitted variable names, + - * ^ and
    // parentheses; whitespace insignificant; '^' takes a nonnegative integer.
    static poly parse(const std::string& text, const arena& allowed);

private:
    std::vector<term> terms_;
    void normalize();  // sort, fuse, drop zeros
    friend class poly_builder;
};

// Accumulates terms without intermediate normalization.
class poly_builder {
public:
    void add(monomial mono, rational coeff);
    poly build();

private:
    std::map<std::vector<monomial::entry>, rational> acc_;
};

} // namespace noethkit
