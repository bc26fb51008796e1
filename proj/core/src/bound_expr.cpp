#include <noethkit/bound_expr.hpp>

#include <noethkit/errors.hpp>

#include <mpfr.h>

#include <algorithm>
#include <deque>
#include <sstream>

namespace noethkit {

namespace {

// Factor refinement (gcd worklist): maintain a list of pairwise coprime
// bases, splitting any pair with a nontrivial common divisor. No integer
// factoring is attempted, so arbitrary-size bases are cheap.
class coprime_basis {
public:
    void insert(const integer& base, const integer& exponent) {
        work_.emplace_back(base, exponent);
        drain();
    }

    // Drops zero exponents and sorts by base.
    std::vector<bound_expr::factor> finish() {
        std::vector<bound_expr::factor> out;
        for (auto& f : entries_)
            if (f.second != 0) out.push_back(std::move(f));
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    void drain() {
        while (!work_.empty()) {
            auto [b, e] = std::move(work_.front());
            work_.pop_front();
            if (b == 1 || e == 0) continue;
            if (b <= 0) throw usage_error("bound expression base must be positive");
            bool matched = false;
            for (std::size_t i = 0; i < entries_.size(); ++i) {
                auto& [c, f] = entries_[i];
                if (b == c) {
                    f += e;
                    matched = true;
                    break;
                }
                integer g = gcd(b, c);
                if (g > 1) {
                    // b^e * c^f = g^e (b/g)^e g^f (c/g)^f; requeue the pieces.
                    integer cf = c / g, bf = b / g, fe = f;
                    entries_.erase(entries_.begin() + static_cast<std::ptrdiff_t>(i));
                    work_.emplace_back(g, e);
                    work_.emplace_back(bf, e);
                    work_.emplace_back(g, fe);
                    work_.emplace_back(cf, fe);
                    matched = true;
                    break;
                }
            }
            if (!matched) entries_.emplace_back(std::move(b), std::move(e));
        }
    }

    std::vector<bound_expr::factor> entries_;
    std::deque<bound_expr::factor> work_;
};

// Replaces every perfect power base = r^k by (r, k*e) with r power-free.
// Repeated extraction of prime roots reaches the maximal k; the fast
// perfect-power test gates the root extractions. Since the bases are
// pairwise coprime their reduced roots stay pairwise coprime.
void reduce_perfect_powers(std::vector<bound_expr::factor>& factors) {
    for (auto& [base, exp] : factors) {
        while (base > 3 && mpz_perfect_power_p(base.get_mpz_t()) != 0) {
            std::size_t bits = mpz_sizeinbase(base.get_mpz_t(), 2);
            integer p = 1, root;
            bool reduced = false;
            while (true) {
                mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
                if (!p.fits_ulong_p() || p.get_ui() > bits) break;
                if (mpz_root(root.get_mpz_t(), base.get_mpz_t(), p.get_ui()) != 0) {
                    base = root;
                    exp *= p;
                    reduced = true;
                    break;
                }
            }
            if (!reduced) break;
        }
    }
    std::sort(factors.begin(), factors.end());
}

std::vector<bound_expr::factor> normalize(const rational& coeff,
                                          std::vector<bound_expr::factor> raw) {
    if (coeff <= 0) throw usage_error("bound expression value must be positive");
    coprime_basis basis;
    if (coeff.get_num() != 1) basis.insert(coeff.get_num(), integer(1));
    if (coeff.get_den() != 1) basis.insert(coeff.get_den(), integer(-1));
    for (auto& [b, e] : raw) basis.insert(b, e);
    auto factors = basis.finish();
    reduce_perfect_powers(factors);
    return factors;
}

// Adds e*log(b) (natural log) into acc with the requested rounding mode.
void accumulate_log(mpfr_t acc, const integer& base, const integer& exp,
                    mpfr_rnd_t rnd) {
    mpfr_prec_t prec = mpfr_get_prec(acc);
    mpfr_t lg, ex, term;
    mpfr_init2(lg, prec);
    mpfr_init2(ex, prec);
    mpfr_init2(term, prec);
    // Directed rounding must track the sign of the exponent so the product
    // rounds toward the same side as the sum.
    bool exp_neg = exp < 0;
    mpfr_rnd_t log_rnd = (rnd == MPFR_RNDU) == !exp_neg ? MPFR_RNDU : MPFR_RNDD;
    mpfr_set_z(lg, base.get_mpz_t(), log_rnd);
    mpfr_log(lg, lg, log_rnd);
    mpfr_set_z(ex, exp.get_mpz_t(), rnd);
    mpfr_mul(term, lg, ex, rnd);
    mpfr_add(acc, acc, term, rnd);
    mpfr_clear(lg);
    mpfr_clear(ex);
    mpfr_clear(term);
}

} // namespace

bound_expr::bound_expr(const integer& value) {
    factors_ = normalize(rational(value), {});
}

bound_expr::bound_expr(const rational& value) {
    factors_ = normalize(value, {});
}

bound_expr bound_expr::make(const rational& coeff, std::vector<factor> factors) {
    bound_expr e;
    e.factors_ = normalize(coeff, std::move(factors));
    return e;
}

bound_expr bound_expr::pow_of(const integer& base, const integer& exponent) {
    return make(rational(1), {{base, exponent}});
}

bound_expr operator*(const bound_expr& a, const bound_expr& b) {
    std::vector<bound_expr::factor> all = a.factors_;
    all.insert(all.end(), b.factors_.begin(), b.factors_.end());
    return bound_expr::make(rational(1), std::move(all));
}

bound_expr bound_expr::pow(const integer& e) const {
    if (e == 0) return bound_expr();
    // Scaling every exponent by the same nonzero integer preserves the
    // canonical form, so no renormalization is needed.
    bound_expr r = *this;
    for (auto& f : r.factors_) f.second *= e;
    return r;
}

cmp_result bound_cmp(const bound_expr& a, const bound_expr& b) {
    // Exponent vector of a/b over the joint coprime basis; all-zero iff equal.
    coprime_basis basis;
    for (const auto& [base, exp] : a.factors()) basis.insert(base, exp);
    for (const auto& [base, exp] : b.factors()) basis.insert(base, integer(-exp));
    auto ratio = basis.finish();
    if (ratio.empty()) return cmp_result::equal;

    // Values differ, so sign(log(a/b)) is decidable at finite precision.
    for (mpfr_prec_t prec = 128; prec <= (mpfr_prec_t(1) << 22); prec *= 2) {
        mpfr_t lo, hi;
        mpfr_init2(lo, prec);
        mpfr_init2(hi, prec);
        mpfr_set_zero(lo, 1);
        mpfr_set_zero(hi, 1);
        for (const auto& [base, exp] : ratio) {
            accumulate_log(lo, base, exp, MPFR_RNDD);
            accumulate_log(hi, base, exp, MPFR_RNDU);
        }
        bool pos = mpfr_sgn(lo) > 0;
        bool neg = mpfr_sgn(hi) < 0;
        mpfr_clear(lo);
        mpfr_clear(hi);
        if (pos) return cmp_result::greater;
        if (neg) return cmp_result::less;
    }
    throw inconclusive_error("bound comparison did not resolve at maximum precision");
}

std::pair<double, double> bound_expr::log10_enclosure() const {
    mpfr_prec_t prec = 128;
    mpfr_t lo, hi, ln10;
    mpfr_init2(lo, prec);
    mpfr_init2(hi, prec);
    mpfr_init2(ln10, prec);
    mpfr_set_zero(lo, 1);
    mpfr_set_zero(hi, 1);
    for (const auto& [base, exp] : factors_) {
        accumulate_log(lo, base, exp, MPFR_RNDD);
        accumulate_log(hi, base, exp, MPFR_RNDU);
    }
    // Divide by ln 10, rounding each endpoint outward.
    mpfr_set_ui(ln10, 10, MPFR_RNDU);
    mpfr_log(ln10, ln10, MPFR_RNDU);
    if (mpfr_sgn(lo) >= 0)
        mpfr_div(lo, lo, ln10, MPFR_RNDD);
    else {
        mpfr_t l10d;
        mpfr_init2(l10d, prec);
        mpfr_set_ui(l10d, 10, MPFR_RNDD);
        mpfr_log(l10d, l10d, MPFR_RNDD);
        mpfr_div(lo, lo, l10d, MPFR_RNDD);
        mpfr_clear(l10d);
    }
    if (mpfr_sgn(hi) >= 0) {
        mpfr_t l10d;
        mpfr_init2(l10d, prec);
        mpfr_set_ui(l10d, 10, MPFR_RNDD);
        mpfr_log(l10d, l10d, MPFR_RNDD);
        mpfr_div(hi, hi, l10d, MPFR_RNDU);
        mpfr_clear(l10d);
    } else {
        mpfr_div(hi, hi, ln10, MPFR_RNDU);
    }
    double dlo = mpfr_get_d(lo, MPFR_RNDD);
    double dhi = mpfr_get_d(hi, MPFR_RNDU);
    mpfr_clear(lo);
    mpfr_clear(hi);
    mpfr_clear(ln10);
    return {dlo, dhi};
}

std::optional<integer> bound_expr::expand(std::uint64_t digit_cap) const {
    for (const auto& [base, exp] : factors_)
        if (exp < 0) return std::nullopt;
    auto [lo, hi] = log10_enclosure();
    if (hi > static_cast<double>(digit_cap)) return std::nullopt;
    integer v = 1;
    for (const auto& [base, exp] : factors_) {
        if (!exp.fits_ulong_p()) return std::nullopt;
        v *= pow_int(base, exp.get_ui());
    }
    return v;
}

std::string bound_expr::str() const {
    if (factors_.empty()) return "1";
    std::ostringstream os;
    bool first = true;
    for (const auto& [base, exp] : factors_) {
        if (!first) os << " * ";
        os << base.get_str();
        if (exp != 1) os << "^" << exp.get_str();
        first = false;
    }
    return os.str();
}

} // namespace noethkit
