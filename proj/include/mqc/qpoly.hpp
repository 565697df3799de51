#pragma once

#include "mqc/graded_poly.hpp"
#include "mqc/rational.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace mqc {

/// Dense polynomial in q over Q; coefficient i multiplies q^i. No trailing zeros.
class QPoly {
public:
    QPoly() = default;
    explicit QPoly(std::vector<Rational> coeffs);
    static QPoly constant(const Rational& c);
    /// q^n
    static QPoly monomial(int n, const Rational& c = Rational(1));

    int degree() const { return static_cast<int>(c_.size()) - 1; } // -1 for zero
    bool is_zero() const { return c_.empty(); }
    Rational operator[](int i) const;
    const std::vector<Rational>& coeffs() const { return c_; }
    Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }
    Rational eval(const Rational& x) const;
    /// q^deg * p(1/q)
    QPoly reversed() const;
    /// p(-q)
    QPoly negated_variable() const;

    QPoly operator-() const;
    friend QPoly operator+(const QPoly& a, const QPoly& b);
    friend QPoly operator-(const QPoly& a, const QPoly& b);
    friend QPoly operator*(const QPoly& a, const QPoly& b);
    friend QPoly operator*(QPoly a, const Rational& c);
    QPoly pow(unsigned e) const;
    friend bool operator==(const QPoly&, const QPoly&) = default;

    std::string str(const std::string& var = "q") const;

private:
    std::vector<Rational> c_;
    void trim();
};

struct QDivision {
    QPoly quotient;
    QPoly remainder;
};

QDivision divmod(const QPoly& a, const QPoly& b);

/// g = u a + v b with g monic (or zero when a = b = 0).
struct Bezout {
    QPoly g, u, v;
};

Bezout ext_gcd(const QPoly& a, const QPoly& b);

/// Inverse of a modulo m; DomainError if they share a factor.
QPoly inverse_mod(const QPoly& a, const QPoly& m);

/// n-th cyclotomic polynomial.
QPoly cyclotomic(int n);

/// Dense polynomial in q with GradedPoly coefficients over one ring.
class CPoly {
public:
    explicit CPoly(RingPtr ring);
    CPoly(RingPtr ring, std::vector<GradedPoly> coeffs);
    static CPoly from(const RingPtr& ring, const QPoly& p);

    const RingPtr& ring() const { return ring_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    GradedPoly operator[](int i) const;
    const std::vector<GradedPoly>& coeffs() const { return c_; }
    void add(int i, const GradedPoly& c);

    CPoly operator-() const;
    friend CPoly operator+(const CPoly& a, const CPoly& b);
    friend CPoly operator-(const CPoly& a, const CPoly& b);
    friend CPoly operator*(const CPoly& a, const CPoly& b);
    friend CPoly operator*(const CPoly& a, const QPoly& b);
    friend CPoly operator*(CPoly a, const GradedPoly& c);
    friend bool operator==(const CPoly& a, const CPoly& b);

    /// Applies fn to each coefficient (e.g. a ring map); the result lives over `target`.
    template <class Fn>
    CPoly map(Fn&& fn, RingPtr target) const {
        std::vector<GradedPoly> out;
        for (const auto& c : c_) out.push_back(fn(c));
        return CPoly(std::move(target), std::move(out));
    }

private:
    RingPtr ring_;
    std::vector<GradedPoly> c_;
    void trim();
};

struct CDivision {
    CPoly quotient;
    CPoly remainder;
};

/// Division by a nonzero rational polynomial (its leading coefficient is always invertible).
CDivision divmod(const CPoly& a, const QPoly& b);

/// Irreducible factor of a rational Laurent polynomial, normalized so that P(0) = 1:
/// a linear factor 1 - a q (pole at q = 1/a) or a cyclotomic polynomial Phi_n with n >= 3.
struct PoleFactor {
    enum class Kind { Linear, Cyclotomic };
    Kind kind = Kind::Linear;
    Rational a;  // Linear: 1 - a q
    int n = 0;   // Cyclotomic: Phi_n

    static PoleFactor linear(const Rational& a);
    /// Root-of-unity factor for the primitive n-th roots; n = 1, 2 give 1 - q and 1 + q.
    static PoleFactor root_of_unity(int n);
    /// Parses a location: "1", "-1/2", "zeta_n". For rationals this is the pole itself (q = 1/a).
    static PoleFactor parse_location(std::string_view text);

    QPoly poly() const;
    int degree() const { return kind == Kind::Linear ? 1 : poly().degree(); }
    /// Location label: the rational pole 1/a, or "zeta_n".
    std::string location() const;
    /// Factor of the reflected polynomial q^deg P(1/q), normalized to constant term 1.
    PoleFactor reflected() const;

    friend bool operator==(const PoleFactor& x, const PoleFactor& y) {
        return x.kind == y.kind && x.a == y.a && x.n == y.n;
    }
    friend bool operator<(const PoleFactor& x, const PoleFactor& y);
};

/// c * q^shift * prod factors^mult for a nonzero rational Laurent polynomial. Throws
/// UnsupportedInput when a factor is neither linear over Q nor cyclotomic (n <= 60).
struct Factorization {
    Rational unit;
    int shift = 0;
    std::map<PoleFactor, int> factors;
};

Factorization factor(const QPoly& p);

} // namespace mqc
