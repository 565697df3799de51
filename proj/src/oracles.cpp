#include "mqc/oracles.hpp"

#include "mqc/errors.hpp"

#include <algorithm>

namespace mqc::oracle {

namespace {

int degree(const Dense& d) {
    int n = static_cast<int>(d.size()) - 1;
    while (n >= 0 && d[static_cast<std::size_t>(n)].is_zero()) --n;
    return n;
}

Rational at(const Dense& d, int i) {
    return i >= 0 && i < static_cast<int>(d.size()) ? d[static_cast<std::size_t>(i)] : Rational(0);
}

// a / b as power series, b(0) != 0
Dense series_quotient(const Dense& a, const Dense& b, int count) {
    if (at(b, 0).is_zero()) throw DomainError("oracle: denominator vanishes at the expansion point");
    Dense out(static_cast<std::size_t>(std::max(count, 0)), Rational(0));
    for (int n = 0; n < count; ++n) {
        Rational acc = at(a, n);
        for (int k = 1; k <= n; ++k) acc = acc - at(b, k) * out[static_cast<std::size_t>(n - k)];
        out[static_cast<std::size_t>(n)] = acc / at(b, 0);
    }
    return out;
}

Dense reversed(const Dense& d) {
    Dense out(d.begin(), d.begin() + degree(d) + 1);
    std::reverse(out.begin(), out.end());
    return out;
}

} // namespace

Dense multiply(const Dense& a, const Dense& b, int order) {
    Dense out(static_cast<std::size_t>(order) + 1, Rational(0));
    for (int i = 0; i <= order && i < static_cast<int>(a.size()); ++i)
        for (int j = 0; i + j <= order && j < static_cast<int>(b.size()); ++j)
            out[static_cast<std::size_t>(i + j)] = out[static_cast<std::size_t>(i + j)] + a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)];
    return out;
}

Dense mercator(int order) {
    Dense out(static_cast<std::size_t>(order) + 1, Rational(0));
    for (int n = 1; n <= order; ++n) out[static_cast<std::size_t>(n)] = Rational(1, n);
    return out;
}

Dense exponential(int order) {
    Dense out(static_cast<std::size_t>(order) + 1, Rational(1));
    for (int n = 1; n <= order; ++n) out[static_cast<std::size_t>(n)] = out[static_cast<std::size_t>(n - 1)] / Rational(n);
    return out;
}

Dense catalan_reversion(int order) {
    Dense g(static_cast<std::size_t>(order) + 1, Rational(0));
    for (int step = 0; step <= order; ++step) {
        Dense next = multiply(g, g, order);
        if (order >= 1) next[1] = next[1] + Rational(1);
        g = next;
    }
    return g;
}

Rational pascal(int n, int k) {
    if (k < 0 || k > n) return Rational(0);
    std::vector<Rational> row{Rational(1)};
    for (int i = 1; i <= n; ++i) {
        std::vector<Rational> next(static_cast<std::size_t>(i) + 1, Rational(1));
        for (int j = 1; j < i; ++j) next[static_cast<std::size_t>(j)] = row[static_cast<std::size_t>(j - 1)] + row[static_cast<std::size_t>(j)];
        row = next;
    }
    return row[static_cast<std::size_t>(k)];
}

std::vector<Rational> bernoulli_numbers(int n) {
    std::vector<Rational> b{Rational(1)};
    for (int m = 1; m <= n; ++m) {
        Rational acc(0);
        for (int k = 0; k < m; ++k) acc = acc + pascal(m + 1, k) * b[static_cast<std::size_t>(k)];
        b.push_back(-acc / Rational(m + 1));
    }
    return b;
}

Rational chi_line(int n, int k) { return pascal(n + k, n); }

GradedPoly chi_minus_y(const RingPtr& ring, int n) {
    auto y = GradedPoly::generator(ring, "y");
    GradedPoly out(ring);
    for (int p = 0; p <= n; ++p) {
        Rational chi_p(0);
        for (int q = 0; q <= n; ++q) {
            int h = p == q ? 1 : 0;
            chi_p = chi_p + Rational(q % 2 ? -h : h);
        }
        out += (-y).pow(static_cast<unsigned>(p)) * chi_p;
    }
    return out;
}

Series from_dense(const RingPtr& ring, const Dense& d, std::string variable) {
    std::vector<GradedPoly> c;
    for (const auto& r : d) c.push_back(GradedPoly::constant(ring, r));
    return Series::from_coefficients(ring, std::move(variable), 0, c);
}

Series hirzebruch_log(const RingPtr& ring, int order) {
    auto y = GradedPoly::generator(ring, "y");
    Series out(ring, "u", 0, order);
    for (int n = 1; n <= order; ++n) {
        // (1 - y^n)/(1 - y) = 1 + y + ... + y^{n-1}
        GradedPoly s(ring);
        for (int p = 0; p < n; ++p) s += y.pow(static_cast<unsigned>(p));
        out.set_coeff(n, s * Rational(1, n));
    }
    return out;
}

Series hirzebruch_orientation(const RingPtr& ring, int order) {
    // t/((1-y) + y t) = sum_k (-y)^{k-1} t^k / (1-y)^k
    auto y = GradedPoly::generator(ring, "y");
    auto r = (GradedPoly::constant(ring, Rational(1)) - y).inverse();
    Series out(ring, "t", 0, order);
    for (int k = 1; k <= order; ++k) out.set_coeff(k, (-y).pow(static_cast<unsigned>(k - 1)) * r.pow(static_cast<unsigned>(k)));
    return out;
}

std::map<int, Rational> Fraction::at_zero(int count) const {
    Dense c = series_quotient(num, den, count);
    std::map<int, Rational> out;
    for (int n = 0; n < count; ++n)
        if (!c[static_cast<std::size_t>(n)].is_zero()) out[shift + n] = c[static_cast<std::size_t>(n)];
    return out;
}

std::map<int, Rational> Fraction::at_infinity(int count) const {
    const int dn = degree(num), dd = degree(den);
    std::map<int, Rational> out;
    if (dn < 0) return out;
    const int top = shift + dn - dd;
    Dense c = series_quotient(reversed(num), reversed(den), count);
    for (int n = 0; n < count; ++n)
        if (!c[static_cast<std::size_t>(n)].is_zero()) out[top - n] = c[static_cast<std::size_t>(n)];
    return out;
}

Rational Fraction::residue_zero() const {
    if (shift > -1) return Rational(0);
    auto c = at_zero(-shift);
    return c.contains(-1) ? c.at(-1) : Rational(0);
}

Rational Fraction::residue_infinity() const {
    const int top = shift + degree(num) - degree(den);
    if (degree(num) < 0 || top < -1) return Rational(0);
    auto c = at_infinity(top + 2);
    return c.contains(-1) ? -c.at(-1) : Rational(0);
}

Fraction times(const Fraction& a, const Fraction& b) {
    const int order = std::max(degree(a.num), 0) + std::max(degree(b.num), 0) + std::max(degree(a.den), 0) +
                      std::max(degree(b.den), 0);
    return {multiply(a.num, b.num, order), multiply(a.den, b.den, order), a.shift + b.shift};
}

} // namespace mqc::oracle
