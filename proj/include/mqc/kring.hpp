#pragma once

#include "mqc/formal_group.hpp"
#include "mqc/graded_poly.hpp"
#include "mqc/series.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace mqc {

class Algebra;
using AlgebraPtr = std::shared_ptr<const Algebra>;

/// Element of an Algebra: coordinates in its basis.
class Element {
public:
    Element(AlgebraPtr algebra, std::vector<GradedPoly> coords);

    const AlgebraPtr& algebra() const { return alg_; }
    const std::vector<GradedPoly>& coords() const { return c_; }
    const GradedPoly& operator[](std::size_t i) const { return c_.at(i); }
    bool is_zero() const;

    Element operator-() const;
    friend Element operator+(const Element& a, const Element& b);
    friend Element operator-(const Element& a, const Element& b);
    friend Element operator*(const Element& a, const Element& b);
    friend Element operator*(const Element& a, const GradedPoly& c);
    friend Element operator*(const GradedPoly& c, const Element& a) { return a * c; }
    friend bool operator==(const Element& a, const Element& b);

    Element pow(int e) const; // negative exponents invert
    Element inverse() const;  // NonUnit if not invertible

    std::string str() const;

private:
    AlgebraPtr alg_;
    std::vector<GradedPoly> c_;
};

/// Finite-rank commutative Frobenius algebra over a GradedPoly ring, with a
/// counit chi and a table of Adams operations Psi^r for 1 <= r <= max_adams().
class Algebra : public std::enable_shared_from_this<Algebra> {
public:
    using Matrix = std::vector<std::vector<GradedPoly>>;

    struct Data {
        std::string name;
        RingPtr ring;
        std::vector<std::string> basis;
        /// structure[i][j] = coordinates of e_i e_j
        std::vector<std::vector<std::vector<GradedPoly>>> structure;
        std::vector<GradedPoly> unit;
        std::vector<GradedPoly> chi;
        /// adams[r][i] = coordinates of Psi^r(e_i); Psi^1 is implicit
        std::map<int, Matrix> adams;
    };

    /// Checks sizes, commutativity, associativity, the unit and the Adams table
    /// (Psi^r multiplicative, Psi^r Psi^s = Psi^{rs} where stored). DomainError on failure.
    static AlgebraPtr make(Data data);

    const std::string& name() const { return d_.name; }
    const RingPtr& ring() const { return d_.ring; }
    std::size_t rank() const { return d_.basis.size(); }
    const std::vector<std::string>& labels() const { return d_.basis; }
    std::optional<std::size_t> index_of(std::string_view label) const;
    int max_adams() const { return d_.adams.empty() ? 1 : d_.adams.rbegin()->first; }
    const Data& data() const { return d_; }

    Element zero() const;
    Element unit() const;
    Element basis(std::size_t i) const;
    Element scalar(const GradedPoly& c) const;
    Element element(std::vector<GradedPoly> coords) const;

    Element multiply(const Element& a, const Element& b) const;
    GradedPoly chi(const Element& a) const;
    /// Psi^r: the table on basis elements, y -> y^r on coefficients.
    Element adams(int r, const Element& a) const;

    nlohmann::json to_json() const;
    /// Coefficients may be strings in the ring's generators or GradedPoly JSON objects.
    static AlgebraPtr from_json(const nlohmann::json& j, const RingPtr& ring, std::string name = "json");

private:
    explicit Algebra(Data d) : d_(std::move(d)) {}
    Data d_;
};

/// "point" or "projN" / "proj(N)" for N >= 1: K^0(CP^N) on the basis L^k, k = 0..N,
/// with (1-L)^{N+1} = 0, chi(L^k) = C(k+N, N) and Psi^r(L^k) = L^{rk} for r <= max_adams.
AlgebraPtr builtin_model(std::string_view name, const RingPtr& ring, int max_adams = 8);

struct Duality {
    Algebra::Matrix gram;       // gram[i][j] = chi(e_i e_j)
    std::vector<Element> basis; // phi_alpha
    std::vector<Element> dual;  // phi^alpha with (phi_alpha, phi^beta) = delta
};

/// DualityError when the Gram matrix is not invertible over the ring.
Duality pairing_and_duals(const AlgebraPtr& a);
/// Same for an arbitrary basis given as elements.
Duality pairing_and_duals(const AlgebraPtr& a, const std::vector<Element>& basis);
/// sum_alpha phi^alpha (x) phi_alpha in standard coordinates: result[i][j].
Algebra::Matrix casimir(const Duality& d);

/// N_r(e_1..e_r) from the exterior powers lambda^1..lambda^r (Newton's identities).
Element newton_adams(const std::vector<Element>& exterior_powers, int r);

/// Virtual sum of lines: sum sign * multiplicity * L.
struct SplitBundle {
    struct Term {
        Element line;
        int multiplicity = 1;
        int sign = 1;
    };
    std::vector<Term> terms;

    int rank() const;
    SplitBundle dual() const;
    SplitBundle operator+(const SplitBundle& o) const;
    /// The bundle as an element of the algebra.
    Element value(const AlgebraPtr& a) const;
    /// sum sign * mult * L^r
    Element adams(const AlgebraPtr& a, int r) const;
    /// lambda^1..lambda^count for an honest bundle (all signs +); DomainError otherwise.
    std::vector<Element> exterior_powers(const AlgebraPtr& a, int count) const;
};

/// Euler-sequence surrogate (n+1) L - 1 for T CP^n on proj(n).
SplitBundle tangent_proj(const AlgebraPtr& a);

/// Multiplicative K-theoretic characteristic class
///   C(L) = (t/u(t))|_{t = 1 - L^-1} = t0 exp(c_0 + sum_k (c_k/k) Psi^k(L^*)).
struct MultClass {
    std::vector<GradedPoly> c; // c[0..K]
    GradedPoly t0;
    GradedPoly log_t0;
    Series line_value;         // t/u(t)
    /// True when every c_k with k > K vanishes in the ring, so the exponential is exact for any line.
    bool complete = false;

    static MultClass from_table(const GeneratorTable& table);
    /// C_y: c_k = -y^k, t0 = 1 - y, C_y(L) = 1 - y L^-1 (ring must contain y).
    static MultClass hirzebruch(const RingPtr& ring);
    /// The classical Todd class in this normalization: all c_k = 0, t0 = 1.
    static MultClass classical(const RingPtr& ring);

    const RingPtr& ring() const { return t0.ring(); }
    int known() const { return static_cast<int>(c.size()) - 1; }
};

enum class EvalMode { LineProduct, AdamsExponential };

/// C(V). Lines must be invertible with 1 - L^-1 nilpotent; PrecisionError if the class is
/// not known to enough order for that nilpotency.
Element eval_class(const AlgebraPtr& a, const MultClass& cls, const SplitBundle& v, EvalMode mode);

inline GradedPoly pushforward_chi(const Element& v) { return v.algebra()->chi(v); }

/// Smallest m with x^m = 0, or nullopt if x^(limit) != 0.
std::optional<int> nilpotency(const Element& x, int limit);

} // namespace mqc
