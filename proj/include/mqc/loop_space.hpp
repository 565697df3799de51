#pragma once

#include "mqc/kring.hpp"
#include "mqc/rational_loop.hpp"

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace mqc {

/// Loop with values in an Algebra: one ScalarLoop per basis coordinate.
class RationalLoop {
public:
    explicit RationalLoop(AlgebraPtr algebra);
    RationalLoop(AlgebraPtr algebra, std::vector<ScalarLoop> coords);
    /// f times the unit of the algebra
    static RationalLoop scalar(AlgebraPtr algebra, const ScalarLoop& f);
    static RationalLoop constant(const Element& e);

    const AlgebraPtr& algebra() const { return alg_; }
    const std::vector<ScalarLoop>& coords() const { return c_; }
    const ScalarLoop& operator[](std::size_t i) const { return c_.at(i); }
    bool is_zero() const;
    bool is_laurent() const;

    RationalLoop principal_parts() const;
    RationalLoop laurent_only() const;
    Element at_zero() const;
    Element at_infinity() const;
    RationalLoop reflected() const;

    RationalLoop operator-() const;
    friend RationalLoop operator+(const RationalLoop& a, const RationalLoop& b);
    friend RationalLoop operator-(const RationalLoop& a, const RationalLoop& b);
    friend RationalLoop operator*(const RationalLoop& a, const RationalLoop& b);
    friend RationalLoop operator*(const RationalLoop& a, const Element& e);
    friend RationalLoop operator*(const RationalLoop& a, const GradedPoly& c);
    friend bool operator==(const RationalLoop& a, const RationalLoop& b);

    std::string str(const std::string& var = "q") const;
    /// Rank one: the scalar schema. Otherwise {"components": {label: scalar schema}}.
    nlohmann::json to_json() const;
    static RationalLoop from_json(const nlohmann::json& j, const AlgebraPtr& algebra);

private:
    AlgebraPtr alg_;
    std::vector<ScalarLoop> c_;
};

/// Parses a scalar expression (see parse_scalar_loop) and places it on the unit.
RationalLoop parse_loop(const AlgebraPtr& algebra, std::string_view text);

struct PoleAt {
    enum class Kind { Zero, Infinity, Factor };
    Kind kind = Kind::Zero;
    std::optional<PoleFactor> factor;

    static PoleAt zero() { return {Kind::Zero, std::nullopt}; }
    static PoleAt infinity() { return {Kind::Infinity, std::nullopt}; }
    static PoleAt at(const PoleFactor& p) { return {Kind::Factor, p}; }
    /// "0", "inf"/"infinity", or a pole location; UndeclaredPole if malformed.
    static PoleAt parse(std::string_view text);
};

/// Residue of f dq. A well-formed location where f has no pole gives 0.
Element residue(const RationalLoop& f, const PoleAt& pole);

struct PairingConfig {
    std::optional<Element> twist;     // W, unit when empty
    std::optional<GradedPoly> scale;  // 1 when empty
    int r = 1;
};

/// -[Res_0 + Res_inf] chi(f(q) g(1/q) W) dq/q, then r Psi^r on coefficients and the scale.
GradedPoly omega(const RationalLoop& f, const RationalLoop& g, const PairingConfig& cfg = {});

/// T(q, x) = A(q, x) / (1 - x/q) with A polynomial in x over Laurent polynomials in q.
struct Kernel {
    std::map<int, Laurent> numerator; // x-exponent -> coefficient Laurent polynomial in q
    std::string name;

    static Kernel canonical(const RingPtr& ring);
    /// (1/(1-y)) (1 - y x/q) / (1 - x/q)
    static Kernel hirzebruch(const RingPtr& ring);
    const RingPtr& ring() const;
    std::string str() const;
};

/// Negative space of a polarization; the positive space is always the Laurent polynomials.
struct Polarization {
    struct Standard {};
    /// {f : f(inf) = lambda f(0), finite}
    struct Constraint {
        GradedPoly lambda;
    };
    std::variant<Standard, Constraint, Kernel> space;

    static Polarization standard() { return {Standard{}}; }
    static Polarization constraint(const GradedPoly& lambda) { return {Constraint{lambda}}; }
    static Polarization tensor(Kernel k) { return {std::move(k)}; }
};

struct Projection {
    RationalLoop plus;
    RationalLoop minus;
};

/// f = plus + minus, plus a Laurent polynomial, minus in the negative space.
/// PolarizationError if the pole configuration does not allow the decomposition.
Projection project(const RationalLoop& f, const Polarization& pol);
bool in_negative_space(const RationalLoop& f, const Polarization& pol);

/// Orientation of the residue pairing in the tensor map. Fixed so that the canonical
/// kernel acts as the identity on the standard negative space.
inline constexpr int kTensorSign = -1;

/// kTensorSign * (-[Res_0 + Res_inf]_q f(q) T(q, x) dq/q) with 1/(1 - x/q) expanded in
/// powers of q/x, resummed to a rational function of x. f must lie in the standard
/// negative space; PolarizationError otherwise or if the resummation does not close.
ScalarLoop tensor_polarization_map(const Kernel& kernel, const ScalarLoop& f);
RationalLoop tensor_polarization_map(const Kernel& kernel, const RationalLoop& f);

/// f(inf) == y f(0). DomainError if f has a pole at 0 or infinity.
bool hirzebruch_negative_space_check(const RationalLoop& f);

enum class Dilaton { Standard, Hirzebruch };
Dilaton parse_dilaton(std::string_view name);
/// 1 - q, or (1 - q)/(1 - y q) expanded in the nilpotent y.
ScalarLoop dilaton_shift(const RingPtr& ring, Dilaton which);

struct TwMult {
    RationalLoop exponent;
    /// expansion of each coordinate of the exponent at q = e^x
    std::vector<Series> expansion;
    bool identity = false;
};

/// sum_k (c_k/k) (Psi^k V - rank) / (1 - q^-k), and its expansion at q = 1 through x^order.
TwMult tw_mult_operator(const AlgebraPtr& a, const MultClass& cls, const SplitBundle& lines, int order);

} // namespace mqc
