#pragma once

#include "mqc/graded_poly.hpp"
#include "mqc/series.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace mqc {

/// A rational formal group law given by its logarithm z(u) and exponential u(z).
struct FormalGroupLaw {
    Series log;
    Series exp;

    int order() const { return log.order(); }
    const RingPtr& ring() const { return log.ring(); }
};

/// Law with the given logarithm (leading coefficient 1); the exponential is its reversion.
FormalGroupLaw fgl_from_log(const Series& log);

/// z(u) = u + sum_{n>=1} [CP^n] u^{n+1}/(n+1) over Q[p1..p_{order-1}] truncated at weight D.
FormalGroupLaw mishchenko_log(int order, int truncation);

/// F(x1, x2) = exp(log x1 + log x2), stored as a series in x1 whose coefficients
/// live in the base ring extended by the weight-1 generators x2 and x3. Only
/// terms of total degree <= order in (x1, x2, x3) and base weight <= D are kept.
struct TwoVariableLaw {
    Series series;
    RingPtr base;
    int order;

    /// Coefficient of x1^i x2^j, back in the base ring.
    GradedPoly coefficient(int i, int j) const;
};

TwoVariableLaw group_law(const FormalGroupLaw& fgl);

/// F(a(t), b(t)) for two series without constant term, over the base ring.
Series evaluate_law(const TwoVariableLaw& law, const Series& a, const Series& b);

/// F(F(x1,x2),x3) and F(x1,F(x2,x3)) over the extended ring, for the associativity axiom.
std::pair<Series, Series> associativity_sides(const TwoVariableLaw& law);
/// F(x2, x1) in the same representation as law.series.
Series swapped(const TwoVariableLaw& law);
/// F(x1, 0) as a series over the base ring.
Series right_unit(const TwoVariableLaw& law);

/// iota(u) = exp(-log(u)), so that F(u, iota(u)) = 0.
Series fgl_inverse(const FormalGroupLaw& fgl);

/// u(t): reversion of t = 1 - e^{-t0 z(u)}, with t standing for 1 - q^{-1}.
Series orientation_series(const FormalGroupLaw& fgl, const GradedPoly& t0);

/// b_k, a_k, c_k read off an orientation u(t) with unit scale t0:
///   t0 u(t)               = t + sum_{k>=1} b_k t^{k+1}
///   log(t / u(t))         = log(t0) + sum_{k>=1} a_k t^k
///   sum_k a_k (1-q^-1)^k  = c_0 + sum_{k>=1} (c_k / k) q^{-k}
/// so that Td_K(L) = e^{(log t0 + c_0)} e^{sum_k (c_k/k) Psi^k(L^*)}. The a- and c-lists are
/// the exact binomial reexpansion of the a_k known at this order.
struct GeneratorTable {
    std::vector<GradedPoly> b; // b[k-1] = b_k, k = 1..order-1
    std::vector<GradedPoly> a; // a[k-1] = a_k
    std::vector<GradedPoly> c; // c[k] = c_k, k = 0..order-1
    GradedPoly t0;
    GradedPoly log_t0;
    int order = 0;

    const GradedPoly& b_at(int k) const { return b.at(static_cast<std::size_t>(k - 1)); }
    const GradedPoly& a_at(int k) const { return a.at(static_cast<std::size_t>(k - 1)); }
    const GradedPoly& c_at(int k) const { return c.at(static_cast<std::size_t>(k)); }

    nlohmann::json to_json() const;
    static GeneratorTable from_json(const nlohmann::json& j, const RingPtr& ring);
    friend bool operator==(const GeneratorTable&, const GeneratorTable&);
};

GeneratorTable extract_generators(const Series& orientation, const GradedPoly& t0);

/// u(t) = t0^{-1} (t + sum b_k t^{k+1}).
Series reconstruct_orientation(const GeneratorTable& table);

/// s(1) = c_0 + sum_{k>=1} c_k / k, zero in stable mode.
GradedPoly s_at_one(const GeneratorTable& table);

enum class Genus { Additive, ClassicalK, Hirzebruch };

Genus parse_genus(std::string_view name);
std::string genus_name(Genus g);

/// Specialization U*(pt) -> A*(pt) and the unit scale carried by the genus:
///   additive:    pn -> 0,                  t0 = 1
///   classical_K: pn -> 1,                  t0 = 1
///   hirzebruch:  pn -> 1 + y + ... + y^n,  t0 = 1 - y
struct GenusSpecialization {
    Genus genus;
    RingPtr target;
    Assignment phi;
    GradedPoly t0;

    GradedPoly apply(const GradedPoly& x) const;
    Series apply(const Series& s) const;
    FormalGroupLaw apply(const FormalGroupLaw& fgl) const;
    /// Maps b, a, c and log(t0) coefficient-wise; the unit scale of the source is kept.
    GeneratorTable apply(const GeneratorTable& table) const;
};

GenusSpecialization specialize_genus(Genus genus, const RingPtr& source);

} // namespace mqc
