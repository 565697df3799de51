#pragma once

#include "mqc/rational.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace mqc {

struct Generator {
    std::string name;
    int weight = 1;

    friend bool operator==(const Generator&, const Generator&) = default;
};

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

/// Generator table plus truncation order D. Every polynomial over the ring
/// keeps only terms of total weight <= D, so positive-weight elements are
/// nilpotent and anything with a nonzero rational constant term is a unit.
class Ring {
public:
    Ring(std::vector<Generator> generators, int truncation);

    static RingPtr make(std::vector<Generator> generators, int truncation);

    const std::vector<Generator>& generators() const { return gens_; }
    std::size_t size() const { return gens_.size(); }
    int truncation() const { return truncation_; }
    int weight(std::size_t index) const { return gens_[index].weight; }
    std::optional<std::size_t> index_of(std::string_view name) const;

    /// Same generators followed by `extra`, with a new truncation order.
    RingPtr extended(const std::vector<Generator>& extra, int truncation) const;

    friend bool operator==(const Ring& a, const Ring& b) {
        return a.truncation_ == b.truncation_ && a.gens_ == b.gens_;
    }

private:
    std::vector<Generator> gens_;
    int truncation_;
};

bool same_ring(const RingPtr& a, const RingPtr& b);
void require_same_ring(const RingPtr& a, const RingPtr& b, const char* where);

/// p1..pn with [CP^k] = pk of weight k.
RingPtr cobordism_ring(int max_generator, int truncation);
/// The single weight-1 parameter y.
RingPtr hirzebruch_ring(int truncation);

/// Sparse exponent vector with cached total weight.
class Monomial {
public:
    using Entry = std::pair<std::uint32_t, std::uint32_t>; // (generator index, exponent)

    Monomial() = default;
    static Monomial generator(std::size_t index, int weight, std::uint32_t exponent = 1);

    int weight() const { return weight_; }
    bool is_one() const { return exps_.empty(); }
    const std::vector<Entry>& entries() const { return exps_; }
    std::uint32_t exponent(std::size_t index) const;
    std::vector<std::uint32_t> dense(std::size_t n) const;

    Monomial operator*(const Monomial& o) const;

    friend bool operator==(const Monomial&, const Monomial&) = default;

private:
    std::vector<Entry> exps_; // sorted by index, exponents > 0
    int weight_ = 0;
};

/// Graded-lex: lower total weight first, then the larger exponent of the
/// earliest generator first.
struct MonomialOrder {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

class GradedPoly {
public:
    using Terms = std::map<Monomial, Rational, MonomialOrder>;

    explicit GradedPoly(RingPtr ring);
    static GradedPoly constant(RingPtr ring, const Rational& c);
    static GradedPoly generator(RingPtr ring, std::string_view name);

    const RingPtr& ring() const { return ring_; }
    const Terms& terms() const { return terms_; }

    /// Adds c*m, dropping it if its weight exceeds the truncation order.
    void add_term(const Monomial& m, const Rational& c);

    bool is_zero() const { return terms_.empty(); }
    Rational constant_term() const;
    Rational coefficient(const Monomial& m) const;
    /// Smallest weight among stored terms; nullopt for zero.
    std::optional<int> min_weight() const;
    std::optional<int> max_weight() const;
    /// Nonzero rational constant term: invertible in the truncated ring.
    bool is_unit() const { return !constant_term().is_zero(); }

    GradedPoly homogeneous_part(int weight) const;
    /// Keeps the terms whose partial weight (sum of exponent * partial[i]) is <= bound.
    GradedPoly restricted(std::span<const int> partial_weights, int bound) const;

    GradedPoly operator-() const;
    GradedPoly& operator+=(const GradedPoly& o);
    GradedPoly& operator-=(const GradedPoly& o);
    GradedPoly& operator*=(const Rational& c);
    friend GradedPoly operator+(GradedPoly a, const GradedPoly& b) { return a += b; }
    friend GradedPoly operator-(GradedPoly a, const GradedPoly& b) { return a -= b; }
    friend GradedPoly operator*(const GradedPoly& a, const GradedPoly& b);
    friend GradedPoly operator*(GradedPoly a, const Rational& c) { return a *= c; }
    friend GradedPoly operator*(const Rational& c, GradedPoly a) { return a *= c; }

    GradedPoly pow(unsigned e) const;
    /// Inverse of a unit: c^-1 * sum_k (-n/c)^k, finite because n is nilpotent.
    GradedPoly inverse() const;

    friend bool operator==(const GradedPoly& a, const GradedPoly& b);

    /// Human-readable form, e.g. "1/2 - 1/2*p1 + p1^2*y".
    std::string str() const;
    nlohmann::json to_json() const;
    static GradedPoly from_json(const nlohmann::json& j);
    /// Same as from_json but checks the embedded ring against `ring`.
    static GradedPoly from_json(const nlohmann::json& j, const RingPtr& ring);

private:
    RingPtr ring_;
    Terms terms_;
};

enum class PolyOp { Add, Mul, Neg, ScalarMul };

/// Ring operation entry point; `b` is ignored for Neg and must be a constant for ScalarMul.
GradedPoly poly_arith(PolyOp op, const GradedPoly& a, const GradedPoly& b);

using Assignment = std::map<std::string, GradedPoly, std::less<>>;

/// Ring homomorphism sending each generator to phi[name] in `target`.
/// Every term of phi[g] must have weight <= weight(g). Because images may
/// drop weight, the map respects products only while they stay within D.
GradedPoly specialize(const GradedPoly& x, const Assignment& phi, const RingPtr& target);

/// Maps by generator name into `target`; terms over the target truncation are dropped.
GradedPoly embed(const GradedPoly& x, const RingPtr& target);

/// log(x) for x with constant term 1.
GradedPoly log_unit(const GradedPoly& x);
/// exp(x) for x with zero constant term.
GradedPoly exp_nilpotent(const GradedPoly& x);

/// Adams operation on coefficients: y -> y^r, rationals fixed. Other generators are rejected.
GradedPoly adams_coefficients(const GradedPoly& x, int r);

} // namespace mqc
