#include <noethkit/numeric_roots.hpp>
#include <noethkit/errors.hpp>
#include <noethkit/scalar.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace noethkit {

namespace {

std::complex<double> horner(const std::vector<std::complex<double>>& cs,
                            std::complex<double> z) {
    std::complex<double> acc = 0.0;
    for (auto it = cs.rbegin(); it != cs.rend(); ++it) acc = acc * z + *it;
    return acc;
}

}  // namespace

std::vector<std::complex<double>> polynomial_roots(std::vector<std::complex<double>> coeffs) {
    while (!coeffs.empty() && coeffs.back() == std::complex<double>(0.0)) coeffs.pop_back();
    if (coeffs.size() <= 1) return {};
    std::complex<double> lead = coeffs.back();
    for (auto& c : coeffs) c /= lead;
    std::size_t n = coeffs.size() - 1;

    std::vector<std::complex<double>> z(n);
    const std::complex<double> seed(0.4, 0.9);
    std::complex<double> w = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        w *= seed;
        z[i] = w;
    }

    for (unsigned iter = 0; iter < 500; ++iter) {
        double worst = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            std::complex<double> den = 1.0;
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) den *= z[i] - z[j];
            if (std::abs(den) < 1e-300) {
                z[i] += 1e-8;
                worst = 1.0;
                continue;
            }
            std::complex<double> delta = horner(coeffs, z[i]) / den;
            z[i] -= delta;
            worst = std::max(worst, std::abs(delta) / (1.0 + std::abs(z[i])));
        }
        if (worst < 1e-14) break;
    }
    return z;
}

std::vector<std::complex<double>> complex_coefficients(const poly& p, var_id v) {
    for (var_id w : p.variables())
        if (w != v) throw usage_error("polynomial is not univariate in the requested variable");
    std::vector<std::complex<double>> out;
    for (const poly& c : p.coefficients_in(v))
        out.push_back(std::complex<double>(to_double(c.constant_term()), 0.0));
    return out;
}

namespace {

var_id rx1() {
    static const var_id v = var("x1");
    return v;
}

var_id rx2() {
    static const var_id v = var("x2");
    return v;
}

// Exact determinant by fraction Gaussian elimination.
rational det(std::vector<std::vector<rational>> m) {
    std::size_t n = m.size();
    rational d = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m[piv][col] == 0) ++piv;
        if (piv == n) return rational(0);
        if (piv != col) {
            std::swap(m[piv], m[col]);
            d = -d;
        }
        d *= m[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            if (m[r][col] == 0) continue;
            rational f = m[r][col] / m[col][col];
            for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
        }
    }
    return d;
}

// Coefficients of f in x2, each evaluated at x1 = a.
std::vector<rational> x2_coeffs_at(const poly& f, const rational& a) {
    std::vector<rational> out;
    for (const poly& c : f.coefficients_in(rx2()))
        out.push_back(c.eval({{rx1(), a}}));
    return out;
}

rational sylvester_at(const poly& f, const poly& g, long df, long dg, const rational& a) {
    std::vector<rational> fc = x2_coeffs_at(f, a);
    std::vector<rational> gc = x2_coeffs_at(g, a);
    fc.resize(static_cast<std::size_t>(df) + 1, rational(0));
    gc.resize(static_cast<std::size_t>(dg) + 1, rational(0));
    std::size_t n = static_cast<std::size_t>(df + dg);
    std::vector<std::vector<rational>> m(n, std::vector<rational>(n, rational(0)));
    for (long r = 0; r < dg; ++r)
        for (long k = 0; k <= df; ++k)
            m[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + k)] =
                fc[static_cast<std::size_t>(df - k)];
    for (long r = 0; r < df; ++r)
        for (long k = 0; k <= dg; ++k)
            m[static_cast<std::size_t>(dg + r)][static_cast<std::size_t>(r + k)] =
                gc[static_cast<std::size_t>(dg - k)];
    return det(std::move(m));
}

}  // namespace

poly resultant_x2(const poly& f, const poly& g) {
    if (f.is_zero() || g.is_zero())
        throw usage_error("resultant of the zero polynomial");
    for (var_id v : f.variables())
        if (v != rx1() && v != rx2())
            throw usage_error("resultant input must involve only x1 and x2");
    for (var_id v : g.variables())
        if (v != rx1() && v != rx2())
            throw usage_error("resultant input must involve only x1 and x2");

    long df = f.degree_in(rx2()), dg = g.degree_in(rx2());
    if (df == 0 && dg == 0) return poly::constant(1);
    if (df == 0) return f.pow(static_cast<unsigned long>(dg));
    if (dg == 0) return g.pow(static_cast<unsigned long>(df));

    long bound = df * g.degree_in(rx1()) + dg * f.degree_in(rx1());
    std::vector<rational> nodes, values;
    long k = 0;
    while (static_cast<long>(nodes.size()) < bound + 1) {
        rational a(k);
        nodes.push_back(a);
        values.push_back(sylvester_at(f, g, df, dg, a));
        k = k > 0 ? -k : -k + 1;  // 0, 1, -1, 2, -2, ...
    }

    poly x = poly::variable(rx1());
    poly out;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (values[i] == 0) continue;
        poly basis = poly::constant(values[i]);
        for (std::size_t j = 0; j < nodes.size(); ++j) {
            if (j == i) continue;
            basis = basis * (x - poly::constant(nodes[j]));
            basis = poly::constant(rational(1) / (nodes[i] - nodes[j])) * basis;
        }
        out += basis;
    }
    return out;
}

std::vector<root_cluster> cluster_roots(
    const std::vector<std::complex<double>>& roots,
    const std::function<std::complex<double>(std::complex<double>)>& eval) {
    std::size_t n = roots.size();
    std::vector<double> err(n);
    for (std::size_t i = 0; i < n; ++i) {
        double prod = 1.0;
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) prod *= std::abs(roots[i] - roots[j]);
        // Exact duplicates still merge through the absolute 1e-12 term.
        err[i] = prod > 1e-300 ? std::abs(eval(roots[i])) / prod : 0.0;
    }

    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(roots[i] - roots[j]) <= 10.0 * (err[i] + err[j]) + 1e-12)
                parent[find(i)] = find(j);

    std::vector<root_cluster> out;
    std::vector<long> slot(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t r = find(i);
        if (slot[r] < 0) {
            slot[r] = static_cast<long>(out.size());
            out.push_back({std::complex<double>(0.0), 0});
        }
        auto& cl = out[static_cast<std::size_t>(slot[r])];
        cl.center += roots[i];
        cl.size += 1;
    }
    for (auto& cl : out) cl.center /= static_cast<double>(cl.size);
    return out;
}

} // namespace noethkit
