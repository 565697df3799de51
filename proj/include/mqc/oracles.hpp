#pragma once

#include "mqc/graded_poly.hpp"
#include "mqc/rational.hpp"
#include "mqc/series.hpp"

#include <map>
#include <vector>

/// Reference computations that avoid the main code paths: dense rational series,
/// brute-force back-substitution, closed forms and Laurent expansions of fractions.
namespace mqc::oracle {

/// coefficients of t^0..t^order
using Dense = std::vector<Rational>;

Dense multiply(const Dense& a, const Dense& b, int order);
/// sum_{n>=1} u^n / n = -log(1 - u)
Dense mercator(int order);
/// e^t
Dense exponential(int order);
/// g with g - g^2 = t, by iterating g <- t + g^2
Dense catalan_reversion(int order);
/// B_0..B_n from sum_{k<=m} C(m+1, k) B_k = 0, using Pascal's triangle
std::vector<Rational> bernoulli_numbers(int n);
/// Pascal's triangle, n >= 0
Rational pascal(int n, int k);
/// chi(CP^n; O(k)) = C(n + k, n) for k >= 0, by Pascal's triangle
Rational chi_line(int n, int k);
/// sum_p (-y)^p chi(CP^n; Omega^p) from the Hodge numbers h^{p,q} = delta_pq
GradedPoly chi_minus_y(const RingPtr& ring, int n);

/// sum_{n>=1} u^n (1 - y^n) / (n (1 - y)) as a series in u
Series hirzebruch_log(const RingPtr& ring, int order);
/// t / ((1 - y) + y t), the Hirzebruch orientation in t = 1 - q^-1
Series hirzebruch_orientation(const RingPtr& ring, int order);
Series from_dense(const RingPtr& ring, const Dense& d, std::string variable);

/// Rational function q^shift num(q) / den(q) with den(0) != 0.
struct Fraction {
    Dense num;
    Dense den;
    int shift = 0;

    /// Laurent coefficients at q = 0 from exponent shift through shift + count - 1
    std::map<int, Rational> at_zero(int count) const;
    /// coefficients of q^e at q = infinity for e from the top exponent down, count terms
    std::map<int, Rational> at_infinity(int count) const;
    Rational residue_zero() const;
    Rational residue_infinity() const;
};

Fraction times(const Fraction& a, const Fraction& b);

} // namespace mqc::oracle
