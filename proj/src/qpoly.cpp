#include "mqc/qpoly.hpp"

#include "mqc/errors.hpp"

#include <algorithm>
#include <numeric>

namespace mqc {

// ---------------------------------------------------------------------------
// QPoly

QPoly::QPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

QPoly QPoly::constant(const Rational& c) { return QPoly({c}); }

QPoly QPoly::monomial(int n, const Rational& c) {
    std::vector<Rational> v(static_cast<std::size_t>(n) + 1, Rational(0));
    v.back() = c;
    return QPoly(std::move(v));
}

void QPoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Rational QPoly::operator[](int i) const {
    if (i < 0 || i > degree()) return Rational(0);
    return c_[static_cast<std::size_t>(i)];
}

Rational QPoly::eval(const Rational& x) const {
    Rational acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

QPoly QPoly::reversed() const {
    std::vector<Rational> v(c_.rbegin(), c_.rend());
    return QPoly(std::move(v));
}

QPoly QPoly::negated_variable() const {
    std::vector<Rational> v = c_;
    for (std::size_t i = 1; i < v.size(); i += 2) v[i] = -v[i];
    return QPoly(std::move(v));
}

QPoly QPoly::operator-() const {
    QPoly out = *this;
    for (auto& c : out.c_) c = -c;
    return out;
}

QPoly operator+(const QPoly& a, const QPoly& b) {
    std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
    return QPoly(std::move(v));
}

QPoly operator-(const QPoly& a, const QPoly& b) { return a + (-b); }

QPoly operator*(const QPoly& a, const QPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> v(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    return QPoly(std::move(v));
}

QPoly operator*(QPoly a, const Rational& c) {
    for (auto& x : a.c_) x *= c;
    a.trim();
    return a;
}

QPoly QPoly::pow(unsigned e) const {
    QPoly out = constant(Rational(1));
    for (unsigned i = 0; i < e; ++i) out = out * *this;
    return out;
}

std::string QPoly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::string out;
    for (int i = 0; i <= degree(); ++i) {
        const Rational& c = c_[static_cast<std::size_t>(i)];
        if (c.is_zero()) continue;
        Rational mag = c.sign() < 0 ? -c : c;
        if (out.empty()) out = c.sign() < 0 ? "-" : "";
        else out += c.sign() < 0 ? " - " : " + ";
        bool unit = mag.is_one() && i > 0;
        if (!unit) out += mag.str();
        if (i > 0) {
            if (!unit) out += "*";
            out += var;
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

QDivision divmod(const QPoly& a, const QPoly& b) {
    if (b.is_zero()) throw DomainError("polynomial division by zero");
    std::vector<Rational> rem = a.coeffs();
    const int db = b.degree();
    if (a.degree() < db) return {QPoly(), a};
    std::vector<Rational> quot(static_cast<std::size_t>(a.degree() - db + 1), Rational(0));
    Rational inv = b.leading().inverse();
    for (int i = a.degree(); i >= db; --i) {
        Rational f = rem[static_cast<std::size_t>(i)] * inv;
        if (f.is_zero()) continue;
        quot[static_cast<std::size_t>(i - db)] = f;
        for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(i - db + j)] -= f * b[j];
    }
    return {QPoly(std::move(quot)), QPoly(std::move(rem))};
}

Bezout ext_gcd(const QPoly& a, const QPoly& b) {
    QPoly r0 = a, r1 = b;
    QPoly s0 = QPoly::constant(Rational(1)), s1;
    QPoly t0, t1 = QPoly::constant(Rational(1));
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        r0 = std::exchange(r1, r);
        s0 = std::exchange(s1, s0 - q * s1);
        t0 = std::exchange(t1, t0 - q * t1);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    Rational inv = r0.leading().inverse();
    return {r0 * inv, s0 * inv, t0 * inv};
}

QPoly inverse_mod(const QPoly& a, const QPoly& m) {
    auto [g, u, v] = ext_gcd(a, m);
    (void)v;
    if (g.degree() != 0) throw DomainError("polynomials " + a.str() + " and " + m.str() + " are not coprime");
    return divmod(u, m).remainder;
}

QPoly cyclotomic(int n) {
    if (n < 1) throw DomainError("cyclotomic polynomial needs n >= 1");
    static std::map<int, QPoly> cache;
    if (auto it = cache.find(n); it != cache.end()) return it->second;
    QPoly p = QPoly::monomial(n) - QPoly::constant(Rational(1));
    for (int d = 1; d < n; ++d)
        if (n % d == 0) p = divmod(p, cyclotomic(d)).quotient;
    cache.emplace(n, p);
    return p;
}

// ---------------------------------------------------------------------------
// CPoly

CPoly::CPoly(RingPtr ring) : ring_(std::move(ring)) {}

CPoly::CPoly(RingPtr ring, std::vector<GradedPoly> coeffs) : ring_(std::move(ring)), c_(std::move(coeffs)) {
    for (const auto& c : c_) require_same_ring(c.ring(), ring_, "CPoly");
    trim();
}

CPoly CPoly::from(const RingPtr& ring, const QPoly& p) {
    std::vector<GradedPoly> v;
    for (const auto& c : p.coeffs()) v.push_back(GradedPoly::constant(ring, c));
    return CPoly(ring, std::move(v));
}

void CPoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

GradedPoly CPoly::operator[](int i) const {
    if (i < 0 || i > degree()) return GradedPoly(ring_);
    return c_[static_cast<std::size_t>(i)];
}

void CPoly::add(int i, const GradedPoly& c) {
    if (i < 0) throw DomainError("CPoly: negative exponent");
    while (static_cast<int>(c_.size()) <= i) c_.emplace_back(ring_);
    c_[static_cast<std::size_t>(i)] += c;
    trim();
}

CPoly CPoly::operator-() const {
    CPoly out = *this;
    for (auto& c : out.c_) c = -c;
    return out;
}

CPoly operator+(const CPoly& a, const CPoly& b) {
    require_same_ring(a.ring_, b.ring_, "CPoly +");
    std::vector<GradedPoly> v(std::max(a.c_.size(), b.c_.size()), GradedPoly(a.ring_));
    for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
    return CPoly(a.ring_, std::move(v));
}

CPoly operator-(const CPoly& a, const CPoly& b) { return a + (-b); }

CPoly operator*(const CPoly& a, const CPoly& b) {
    require_same_ring(a.ring_, b.ring_, "CPoly *");
    if (a.is_zero() || b.is_zero()) return CPoly(a.ring_);
    std::vector<GradedPoly> v(a.c_.size() + b.c_.size() - 1, GradedPoly(a.ring_));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    return CPoly(a.ring_, std::move(v));
}

CPoly operator*(const CPoly& a, const QPoly& b) {
    if (a.is_zero() || b.is_zero()) return CPoly(a.ring_);
    std::vector<GradedPoly> v(a.c_.size() + b.coeffs().size() - 1, GradedPoly(a.ring_));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs().size(); ++j)
            if (!b.coeffs()[j].is_zero()) v[i + j] += a.c_[i] * b.coeffs()[j];
    return CPoly(a.ring_, std::move(v));
}

CPoly operator*(CPoly a, const GradedPoly& c) {
    for (auto& x : a.c_) x = x * c;
    a.trim();
    return a;
}

bool operator==(const CPoly& a, const CPoly& b) { return same_ring(a.ring_, b.ring_) && a.c_ == b.c_; }

CDivision divmod(const CPoly& a, const QPoly& b) {
    if (b.is_zero()) throw DomainError("polynomial division by zero");
    const int db = b.degree();
    if (a.degree() < db) return {CPoly(a.ring()), a};
    std::vector<GradedPoly> rem = a.coeffs();
    std::vector<GradedPoly> quot(static_cast<std::size_t>(a.degree() - db + 1), GradedPoly(a.ring()));
    Rational inv = b.leading().inverse();
    for (int i = a.degree(); i >= db; --i) {
        GradedPoly f = rem[static_cast<std::size_t>(i)] * inv;
        if (f.is_zero()) continue;
        for (int j = 0; j <= db; ++j)
            if (!b[j].is_zero()) rem[static_cast<std::size_t>(i - db + j)] -= f * b[j];
        quot[static_cast<std::size_t>(i - db)] = std::move(f);
    }
    return {CPoly(a.ring(), std::move(quot)), CPoly(a.ring(), std::move(rem))};
}

// ---------------------------------------------------------------------------
// Pole factors

PoleFactor PoleFactor::linear(const Rational& a) {
    if (a.is_zero()) throw DomainError("linear pole factor 1 - a q needs a != 0");
    PoleFactor f;
    f.kind = Kind::Linear;
    f.a = a;
    return f;
}

PoleFactor PoleFactor::root_of_unity(int n) {
    if (n < 1) throw DomainError("root of unity order must be positive");
    if (n == 1) return linear(Rational(1));
    if (n == 2) return linear(Rational(-1));
    PoleFactor f;
    f.kind = Kind::Cyclotomic;
    f.n = n;
    return f;
}

PoleFactor PoleFactor::parse_location(std::string_view text) {
    if (text == "i") return root_of_unity(4);
    if (text.starts_with("zeta_")) {
        std::string digits(text.substr(5));
        if (digits.empty() || digits.size() > 4 || !std::all_of(digits.begin(), digits.end(), ::isdigit))
            throw UndeclaredPole("bad root-of-unity tag '" + std::string(text) + "'");
        int n = std::stoi(digits);
        if (n < 1) throw UndeclaredPole("bad root-of-unity tag '" + std::string(text) + "'");
        return root_of_unity(n);
    }
    Rational r;
    try {
        r = Rational::parse(text);
    } catch (const Error&) {
        throw UndeclaredPole("unrecognized pole location '" + std::string(text) + "'");
    }
    if (r.is_zero()) throw UndeclaredPole("q = 0 is not a finite pole location; use the zero residue");
    return linear(r.inverse());
}

QPoly PoleFactor::poly() const {
    if (kind == Kind::Linear) return QPoly({Rational(1), -a});
    return cyclotomic(n);
}

std::string PoleFactor::location() const {
    if (kind == Kind::Cyclotomic) return "zeta_" + std::to_string(n);
    return a.inverse().str();
}

PoleFactor PoleFactor::reflected() const {
    if (kind == Kind::Cyclotomic) return *this; // Phi_n is palindromic for n >= 2
    return linear(a.inverse());
}

bool operator<(const PoleFactor& x, const PoleFactor& y) {
    if (x.kind != y.kind) return x.kind == PoleFactor::Kind::Linear;
    if (x.kind == PoleFactor::Kind::Linear) return x.a < y.a;
    return x.n < y.n;
}

// ---------------------------------------------------------------------------
// Factoring over Q

namespace {

std::vector<mpz_class> divisors(mpz_class n) {
    if (n < 0) n = -n;
    if (n > mpz_class("1000000000000")) throw UnsupportedInput("coefficients too large to search for rational roots");
    std::vector<mpz_class> out;
    for (mpz_class d = 1; d * d <= n; ++d)
        if (n % d == 0) {
            out.push_back(d);
            if (d * d != n) out.push_back(n / d);
        }
    return out;
}

// integer multiple of p with the same roots
std::vector<mpz_class> integral(const QPoly& p) {
    mpz_class l = 1;
    for (const auto& c : p.coeffs()) {
        mpz_class d = c.denominator();
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    }
    std::vector<mpz_class> out;
    for (const auto& c : p.coeffs()) out.push_back(c.numerator() * (l / c.denominator()));
    return out;
}

bool divides_out(QPoly& p, const QPoly& f) {
    auto [q, r] = divmod(p, f);
    if (!r.is_zero()) return false;
    p = q;
    return true;
}

} // namespace

Factorization factor(const QPoly& p) {
    if (p.is_zero()) throw DomainError("cannot factor the zero polynomial");
    Factorization out;
    QPoly rest = p;
    while (rest[0].is_zero()) {
        rest = divmod(rest, QPoly::monomial(1)).quotient;
        ++out.shift;
    }

    // rational roots r = num/den: num | a_0, den | a_n
    if (rest.degree() >= 1) {
        auto z = integral(rest);
        auto nums = divisors(z.front());
        auto dens = divisors(z.back());
        for (const auto& n : nums)
            for (const auto& d : dens)
                for (int s : {1, -1}) {
                    Rational root(mpz_class(s * n), d);
                    if (rest.degree() < 1) break;
                    PoleFactor f = PoleFactor::linear(root.inverse());
                    while (rest.degree() >= 1 && divides_out(rest, f.poly())) ++out.factors[f];
                }
    }
    for (int n = 3; n <= 60 && rest.degree() >= 2; ++n) {
        QPoly phi = cyclotomic(n);
        if (phi.degree() > rest.degree()) continue;
        PoleFactor f = PoleFactor::root_of_unity(n);
        while (rest.degree() >= phi.degree() && divides_out(rest, phi)) ++out.factors[f];
    }
    if (rest.degree() != 0)
        throw UnsupportedInput("factor " + rest.str() + " has no rational or root-of-unity zeros");
    out.unit = rest[0];
    return out;
}

} // namespace mqc
