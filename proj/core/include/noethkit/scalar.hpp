#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>

namespace noethkit {

// Exact scalars. All symbolic arithmetic in the library is carried out over
// these; floating point appears only in the clearly numeric oracles.
using integer = mpz_class;
using rational = mpq_class;

inline integer pow_int(const integer& base, unsigned long e) {
    integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline rational pow_rat(const rational& base, unsigned long e) {
    rational r;
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num().get_mpz_t(), e);
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den().get_mpz_t(), e);
    r.canonicalize();
    return r;
}

inline integer factorial(unsigned long k) {
    integer r;
    mpz_fac_ui(r.get_mpz_t(), k);
    return r;
}

// C(k+n, n) for small n and arbitrary-precision k, by the exact product
// formula; the quotient is an integer at every step when taken in order.
inline integer binomial_shift(const integer& k, unsigned n) {
    integer r = 1;
    for (unsigned i = 1; i <= n; ++i) {
        r *= k + static_cast<long>(i);
        r /= static_cast<long>(i);
    }
    return r;
}

inline double to_double(const rational& q) { return q.get_d(); }

inline std::string to_string(const integer& z) { return z.get_str(); }

inline std::string to_string(const rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

// Gaussian rational a + b*i. Used only by verification paths that need exact
// complex evaluation; the default coefficient field stays rational.
struct gaussian {
    rational re, im;

    gaussian() = default;
    gaussian(rational r) : re(std::move(r)) {}
    gaussian(rational r, rational i) : re(std::move(r)), im(std::move(i)) {}

    friend gaussian operator+(const gaussian& a, const gaussian& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend gaussian operator-(const gaussian& a, const gaussian& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend gaussian operator*(const gaussian& a, const gaussian& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend bool operator==(const gaussian& a, const gaussian& b) {
        return a.re == b.re && a.im == b.im;
    }
    bool is_zero() const { return re == 0 && im == 0; }
    std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }
};

} // namespace noethkit
