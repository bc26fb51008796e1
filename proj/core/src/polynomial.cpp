#include <noethkit/polynomial.hpp>

#include <noethkit/errors.hpp>

#include <algorithm>
#include <cctype>
#include <mutex>
#include <sstream>
#include <unordered_map>

namespace noethkit {

namespace {

struct var_registry {
    std::mutex mu;
    std::unordered_map<std::string, var_id> by_name;
    std::vector<std::string> names;
    std::vector<std::uint64_t> keys;
    std::uint32_t misc_counter = 0;

    static var_registry& instance() {
        static var_registry r;
        return r;
    }
};

// Classes: 0 = x<i>, 1 = f<i>, 2 = eps, 3 = s/t, 4 = everything else.
std::uint64_t make_sort_key(const std::string& name, std::uint32_t misc_index) {
    auto indexed = [&](char prefix) -> std::optional<std::uint32_t> {
        if (name.size() < 2 || name[0] != prefix) return std::nullopt;
        std::uint64_t idx = 0;
        for (std::size_t i = 1; i < name.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(name[i]))) return std::nullopt;
            idx = idx * 10 + static_cast<std::uint64_t>(name[i] - '0');
            if (idx > 0xffffffffull) return std::nullopt;
        }
        if (name[1] == '0') return std::nullopt;
        return static_cast<std::uint32_t>(idx);
    };
    auto key = [](std::uint64_t cls, std::uint64_t idx) { return (cls << 32) | idx; };
    if (auto i = indexed('x')) return key(0, *i);
    if (auto i = indexed('f')) return key(1, *i);
    if (name == "eps") return key(2, 0);
    if (name == "s") return key(3, 0);
    if (name == "t") return key(3, 1);
    return key(4, misc_index);
}

} // namespace

var_id var_table::id(const std::string& name) {
    auto& r = var_registry::instance();
    std::lock_guard<std::mutex> lock(r.mu);
    auto it = r.by_name.find(name);
    if (it != r.by_name.end()) return it->second;
    var_id v = static_cast<var_id>(r.names.size());
    r.by_name.emplace(name, v);
    r.names.push_back(name);
    r.keys.push_back(make_sort_key(name, r.misc_counter++));
    return v;
}

const std::string& var_table::name(var_id v) {
    auto& r = var_registry::instance();
    std::lock_guard<std::mutex> lock(r.mu);
    return r.names.at(v);
}

std::uint64_t var_table::sort_key(var_id v) {
    auto& r = var_registry::instance();
    std::lock_guard<std::mutex> lock(r.mu);
    return r.keys.at(v);
}

bool var_table::var_less(var_id a, var_id b) {
    if (a == b) return false;
    auto ka = sort_key(a), kb = sort_key(b);
    if (ka != kb) return ka < kb;
    return name(a) < name(b);
}

void arena::add(var_id v) {
    if (!allows(v)) vars_.push_back(v);
}

bool arena::allows(var_id v) const {
    return std::find(vars_.begin(), vars_.end(), v) != vars_.end();
}

monomial::monomial(std::vector<entry> factors) : factors_(std::move(factors)) {
    std::sort(factors_.begin(), factors_.end(), [](const entry& a, const entry& b) {
        return var_table::var_less(a.first, b.first);
    });
    std::vector<entry> fused;
    for (const auto& e : factors_) {
        if (e.second == 0) continue;
        if (!fused.empty() && fused.back().first == e.first)
            fused.back().second += e.second;
        else
            fused.push_back(e);
    }
    factors_ = std::move(fused);
}

std::uint64_t monomial::total_degree() const {
    std::uint64_t d = 0;
    for (const auto& e : factors_) d += e.second;
    return d;
}

std::uint32_t monomial::degree_in(var_id v) const {
    for (const auto& e : factors_)
        if (e.first == v) return e.second;
    return 0;
}

monomial operator*(const monomial& a, const monomial& b) {
    std::vector<monomial::entry> all = a.factors_;
    all.insert(all.end(), b.factors_.begin(), b.factors_.end());
    return monomial(std::move(all));
}

int monomial::cmp(const monomial& a, const monomial& b) {
    std::uint64_t da = a.total_degree(), db = b.total_degree();
    if (da != db) return da < db ? -1 : 1;
    // Same degree: walk the two factor lists in canonical variable order.
    std::size_t i = 0, j = 0;
    while (i < a.factors_.size() && j < b.factors_.size()) {
        var_id va = a.factors_[i].first, vb = b.factors_[j].first;
        if (va == vb) {
            if (a.factors_[i].second != b.factors_[j].second)
                return a.factors_[i].second > b.factors_[j].second ? 1 : -1;
            ++i, ++j;
        } else if (var_table::var_less(va, vb)) {
            return 1;  // a has positive exponent on an earlier variable
        } else {
            return -1;
        }
    }
    if (i < a.factors_.size()) return 1;
    if (j < b.factors_.size()) return -1;
    return 0;
}

poly poly::constant(const rational& c) {
    poly p;
    if (c != 0) p.terms_.emplace_back(monomial{}, c);
    return p;
}

poly poly::variable(var_id v) {
    poly p;
    p.terms_.emplace_back(monomial({{v, 1}}), rational(1));
    return p;
}

bool poly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].first.empty());
}

std::int64_t poly::total_degree() const {
    if (terms_.empty()) return -1;
    // Descending graded order: the first term carries the total degree.
    return static_cast<std::int64_t>(terms_.front().first.total_degree());
}

std::int64_t poly::degree_in(var_id v) const {
    if (terms_.empty()) return -1;
    std::int64_t d = 0;
    for (const auto& t : terms_)
        d = std::max(d, static_cast<std::int64_t>(t.first.degree_in(v)));
    return d;
}

rational poly::constant_term() const {
    for (const auto& t : terms_)
        if (t.first.empty()) return t.second;
    return rational(0);
}

rational poly::leading_coefficient() const {
    if (terms_.empty()) return rational(0);
    return terms_.front().second;
}

rational poly::coefficient(const monomial& mono) const {
    for (const auto& t : terms_)
        if (t.first == mono) return t.second;
    return rational(0);
}

std::vector<var_id> poly::variables() const {
    std::vector<var_id> vs;
    for (const auto& t : terms_)
        for (const auto& e : t.first.factors())
            if (std::find(vs.begin(), vs.end(), e.first) == vs.end())
                vs.push_back(e.first);
    std::sort(vs.begin(), vs.end(), var_table::var_less);
    return vs;
}

void poly::normalize() {
    std::sort(terms_.begin(), terms_.end(), [](const term& a, const term& b) {
        return monomial::cmp(a.first, b.first) > 0;
    });
    std::vector<term> fused;
    for (auto& t : terms_) {
        if (!fused.empty() && fused.back().first == t.first)
            fused.back().second += t.second;
        else
            fused.push_back(std::move(t));
    }
    fused.erase(std::remove_if(fused.begin(), fused.end(),
                               [](const term& t) { return t.second == 0; }),
                fused.end());
    terms_ = std::move(fused);
}

poly operator+(const poly& a, const poly& b) {
    poly r;
    r.terms_ = a.terms_;
    r.terms_.insert(r.terms_.end(), b.terms_.begin(), b.terms_.end());
    r.normalize();
    return r;
}

poly operator-(const poly& a, const poly& b) { return a + (-b); }

poly operator-(const poly& a) {
    poly r = a;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
}

poly operator*(const rational& c, const poly& p) {
    if (c == 0) return poly();
    poly r = p;
    for (auto& t : r.terms_) t.second *= c;
    return r;
}

poly operator*(const poly& a, const poly& b) {
    poly_builder acc;
    for (const auto& ta : a.terms_)
        for (const auto& tb : b.terms_)
            acc.add(ta.first * tb.first, ta.second * tb.second);
    return acc.build();
}

poly poly::pow(unsigned long e) const {
    poly r = poly::constant(1);
    poly base = *this;
    while (e > 0) {
        if (e & 1ul) r = r * base;
        e >>= 1;
        if (e > 0) base = base * base;
    }
    return r;
}

poly poly::derivative(var_id v) const {
    poly_builder acc;
    for (const auto& t : terms_) {
        std::uint32_t e = t.first.degree_in(v);
        if (e == 0) continue;
        std::vector<monomial::entry> fs;
        for (const auto& f : t.first.factors()) {
            if (f.first == v) {
                if (f.second > 1) fs.emplace_back(f.first, f.second - 1);
            } else {
                fs.push_back(f);
            }
        }
        acc.add(monomial(std::move(fs)), t.second * rational(static_cast<long>(e)));
    }
    return acc.build();
}

poly poly::substitute(const std::map<var_id, poly>& repl) const {
    poly result;
    for (const auto& t : terms_) {
        poly factor = poly::constant(t.second);
        for (const auto& e : t.first.factors()) {
            auto it = repl.find(e.first);
            if (it == repl.end()) {
                factor = factor * poly::variable(e.first).pow(e.second);
            } else {
                factor = factor * it->second.pow(e.second);
            }
        }
        result = result + factor;
    }
    return result;
}

rational poly::eval(const std::map<var_id, rational>& point) const {
    rational sum(0);
    for (const auto& t : terms_) {
        rational v = t.second;
        for (const auto& e : t.first.factors()) {
            auto it = point.find(e.first);
            if (it == point.end())
                throw usage_error("evaluation point missing variable " +
                                  var_table::name(e.first));
            v *= pow_rat(it->second, e.second);
        }
        sum += v;
    }
    return sum;
}

gaussian poly::eval_gaussian(const std::map<var_id, gaussian>& point) const {
    gaussian sum{rational(0)};
    for (const auto& t : terms_) {
        gaussian v{t.second};
        for (const auto& e : t.first.factors()) {
            auto it = point.find(e.first);
            if (it == point.end())
                throw usage_error("evaluation point missing variable " +
                                  var_table::name(e.first));
            for (std::uint32_t i = 0; i < e.second; ++i) v = v * it->second;
        }
        sum = sum + v;
    }
    return sum;
}

std::complex<double> poly::eval_complex(
    const std::map<var_id, std::complex<double>>& point) const {
    std::complex<double> sum(0.0, 0.0);
    for (const auto& t : terms_) {
        std::complex<double> v(t.second.get_d(), 0.0);
        for (const auto& e : t.first.factors()) {
            auto it = point.find(e.first);
            if (it == point.end())
                throw usage_error("evaluation point missing variable " +
                                  var_table::name(e.first));
            std::complex<double> base = it->second, acc(1.0, 0.0);
            for (std::uint32_t i = 0; i < e.second; ++i) acc *= base;
            v *= acc;
        }
        sum += v;
    }
    return sum;
}

std::vector<poly> poly::coefficients_in(var_id v) const {
    std::int64_t d = degree_in(v);
    std::vector<poly> out(static_cast<std::size_t>(std::max<std::int64_t>(d, 0)) + 1);
    for (const auto& t : terms_) {
        std::uint32_t e = t.first.degree_in(v);
        std::vector<monomial::entry> fs;
        for (const auto& f : t.first.factors())
            if (f.first != v) fs.push_back(f);
        poly_builder b;
        b.add(monomial(std::move(fs)), t.second);
        out[e] = out[e] + b.build();
    }
    return out;
}

std::string poly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
        rational c = t.second;
        bool neg = c < 0;
        if (first) {
            if (neg) os << "-";
            first = false;
        } else {
            os << (neg ? " - " : " + ");
        }
        if (neg) c = -c;
        bool coeff_shown = false;
        if (t.first.empty() || c != 1) {
            os << to_string(c);
            coeff_shown = true;
        }
        bool first_factor = true;
        for (const auto& e : t.first.factors()) {
            if (coeff_shown || !first_factor) os << "*";
            os << var_table::name(e.first);
            if (e.second > 1) os << "^" << e.second;
            first_factor = false;
            coeff_shown = true;
        }
    }
    return os.str();
}

void poly_builder::add(monomial mono, rational coeff) {
    if (coeff == 0) return;
    auto key = mono.factors();
    auto it = acc_.find(key);
    if (it == acc_.end())
        acc_.emplace(std::move(key), std::move(coeff));
    else
        it->second += coeff;
}

poly poly_builder::build() {
    poly p;
    for (auto& [key, c] : acc_) {
        if (c == 0) continue;
        p.terms_.emplace_back(monomial(std::vector<monomial::entry>(key)), std::move(c));
    }
    acc_.clear();
    p.normalize();
    return p;
}

namespace {

struct token {
    enum kind { number, name, plus, minus, star, caret, lparen, rparen, end };
    kind k;
    rational value;       // number
    std::string text;     // name
    std::size_t pos;
};

class lexer {
public:
    lexer(const std::string& s) : s_(s) {}

    token next() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
        std::size_t start = i_;
        if (i_ >= s_.size()) return {token::end, rational(0), "", start};
        char c = s_[i_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string num = read_digits();
            // "p/q" is a single rational literal.
            if (i_ < s_.size() && s_[i_] == '/') {
                std::size_t save = i_;
                ++i_;
                if (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
                    std::string den = read_digits();
                    if (integer(den) == 0) throw parse_error("zero denominator", save);
                    rational q{integer(num), integer(den)};
                    q.canonicalize();
                    return {token::number, q, "", start};
                }
                i_ = save;
            }
            return {token::number, rational(integer(num)), "", start};
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string name;
            while (i_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_'))
                name += s_[i_++];
            return {token::name, rational(0), name, start};
        }
        ++i_;
        switch (c) {
            case '+': return {token::plus, rational(0), "", start};
            case '-': return {token::minus, rational(0), "", start};
            case '*': return {token::star, rational(0), "", start};
            case '^': return {token::caret, rational(0), "", start};
            case '(': return {token::lparen, rational(0), "", start};
            case ')': return {token::rparen, rational(0), "", start};
            default: throw parse_error(std::string("unexpected character '") + c + "'", start);
        }
    }

private:
    std::string read_digits() {
        std::string num;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_])))
            num += s_[i_++];
        return num;
    }
    const std::string& s_;
    std::size_t i_ = 0;
};

class parser {
public:
    parser(const std::string& s, const arena& allowed) : lex_(s), allowed_(allowed) {
        advance();
    }

    poly parse_expr() {
        poly r = parse_term();
        while (cur_.k == token::plus || cur_.k == token::minus) {
            bool sub = cur_.k == token::minus;
            advance();
            poly t = parse_term();
            r = sub ? r - t : r + t;
        }
        return r;
    }

    void expect_end() {
        if (cur_.k != token::end) throw parse_error("trailing input", cur_.pos);
    }

private:
    poly parse_term() {
        poly r = parse_factor();
        while (cur_.k == token::star) {
            advance();
            r = r * parse_factor();
        }
        return r;
    }

    // Unary minus binds looser than '^': -x1^2 parses as -(x1^2).
    poly parse_factor() {
        if (cur_.k == token::minus) {
            advance();
            return -parse_factor();
        }
        poly base = parse_base();
        if (cur_.k == token::caret) {
            std::size_t pos = cur_.pos;
            advance();
            if (cur_.k != token::number || cur_.value.get_den() != 1 || cur_.value < 0)
                throw parse_error("exponent must be a nonnegative integer", pos);
            if (cur_.value.get_num() > 100000)
                throw parse_error("exponent too large", pos);
            unsigned long e = mpz_get_ui(cur_.value.get_num().get_mpz_t());
            advance();
            return base.pow(e);
        }
        return base;
    }

    poly parse_base() {
        switch (cur_.k) {
            case token::number: {
                poly p = poly::constant(cur_.value);
                advance();
                return p;
            }
            case token::name: {
                var_id v = var_table::id(cur_.text);
                if (!allowed_.allows(v))
                    throw parse_error("unknown variable '" + cur_.text + "'", cur_.pos);
                advance();
                return poly::variable(v);
            }
            case token::lparen: {
                advance();
                poly p = parse_expr();
                if (cur_.k != token::rparen) throw parse_error("expected ')'", cur_.pos);
                advance();
                return p;
            }
            default:
                throw parse_error("expected a number, variable or '('", cur_.pos);
        }
    }

    void advance() { cur_ = lex_.next(); }

    lexer lex_;
    const arena& allowed_;
    token cur_{token::end, rational(0), "", 0};
};

} // namespace

poly poly::parse(const std::string& text, const arena& allowed) {
    parser p(text, allowed);
    poly r = p.parse_expr();
    p.expect_end();
    return r;
}

} // namespace noethkit
