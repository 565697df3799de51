#pragma once

#include "mqc/graded_poly.hpp"
#include "mqc/qpoly.hpp"
#include "mqc/series.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace mqc {

using Laurent = std::map<int, GradedPoly>;

/// Scalar rational function of q in canonical partial-fraction form
///
///   f = sum_n L_n q^n + sum_P sum_{j>=1} N_{P,j}(q) / P(q)^j,   deg N_{P,j} < deg P,
///
/// with coefficients in a GradedPoly ring and P running over PoleFactors. The
/// normal form is unique, so equality is equality of the stored data.
class ScalarLoop {
public:
    explicit ScalarLoop(RingPtr ring);
    static ScalarLoop constant(const GradedPoly& c);
    static ScalarLoop laurent(RingPtr ring, Laurent terms);
    /// q^n
    static ScalarLoop monomial(RingPtr ring, int n, const GradedPoly& c);
    /// c / P^j
    static ScalarLoop pole(const PoleFactor& p, int j, const GradedPoly& c);
    /// numerator / prod P^mult, reduced to canonical form.
    static ScalarLoop fraction(RingPtr ring, const Laurent& numerator, const std::map<PoleFactor, int>& denominator);

    const RingPtr& ring() const { return ring_; }
    const Laurent& laurent_part() const { return laurent_; }
    /// principal()[P][j-1] = N_{P,j}
    const std::map<PoleFactor, std::vector<CPoly>>& principal() const { return principal_; }

    bool is_zero() const { return laurent_.empty() && principal_.empty(); }
    bool is_laurent() const { return principal_.empty(); }
    /// Pole order at P (0 if absent).
    int multiplicity(const PoleFactor& p) const;
    /// Smallest and largest exponent in the Laurent part.
    int min_exponent() const;
    int max_exponent() const;

    ScalarLoop principal_parts() const;
    ScalarLoop laurent_only() const;

    /// Value at q = 0; DomainError if f has a pole there.
    GradedPoly at_zero() const;
    /// Value at q = infinity; DomainError if f has a pole there.
    GradedPoly at_infinity() const;

    /// Residues of f dq.
    GradedPoly residue_zero() const;
    GradedPoly residue_infinity() const;
    /// Summed over the roots of P (the Galois orbit for cyclotomic factors).
    GradedPoly residue_at(const PoleFactor& p) const;

    /// f(1/q)
    ScalarLoop reflected() const;
    ScalarLoop map_coefficients(const std::function<GradedPoly(const GradedPoly&)>& fn, RingPtr target) const;

    ScalarLoop operator-() const;
    friend ScalarLoop operator+(const ScalarLoop& a, const ScalarLoop& b);
    friend ScalarLoop operator-(const ScalarLoop& a, const ScalarLoop& b);
    friend ScalarLoop operator*(const ScalarLoop& a, const ScalarLoop& b);
    friend ScalarLoop operator*(ScalarLoop a, const GradedPoly& c);
    friend bool operator==(const ScalarLoop& a, const ScalarLoop& b);

    /// numerator / prod P^mult with a Laurent-polynomial numerator.
    struct Fraction {
        Laurent numerator;
        std::map<PoleFactor, int> denominator;
    };
    Fraction as_fraction() const;
    QRational as_qrational() const;

    /// e.g. "-1 + 1/(1 - q) + (2 + q)/(1 + q + q^2)^2"
    std::string str(const std::string& var = "q") const;
    nlohmann::json to_json() const;
    static ScalarLoop from_json(const nlohmann::json& j, const RingPtr& ring);

private:
    RingPtr ring_;
    Laurent laurent_;
    std::map<PoleFactor, std::vector<CPoly>> principal_;

    void add_laurent(int n, const GradedPoly& c);
    void normalize();
};

/// Laurent expansion of f at q = zeta e^x (zeta = 1 or -1) through x^order.
Series expand_at(const ScalarLoop& f, const Rational& zeta, int order, std::string variable = "x");

/// Parses a rational expression in q and the ring's generators, e.g. "q/(1-q)^2 + y/(1-y*q)".
/// Denominators are factored over Q; nilpotent parts are expanded exactly.
ScalarLoop parse_scalar_loop(const RingPtr& ring, std::string_view text);

} // namespace mqc
