#pragma once

#include "mqc/graded_poly.hpp"

#include <map>
#include <string>
#include <vector>

namespace mqc {

/// Truncated Laurent series sum_{n=lowest}^{order} c_n t^n + O(t^{order+1})
/// over a GradedPoly ring. Every coefficient inside the window is exact;
/// nothing is known past `order`, and no operation ever claims more.
class Series {
public:
    /// The zero series known through `order`.
    Series(RingPtr ring, std::string variable, int lowest, int order);

    static Series from_coefficients(std::string variable, int lowest, std::vector<GradedPoly> coeffs);
    static Series from_coefficients(RingPtr ring, std::string variable, int lowest,
                                    std::vector<GradedPoly> coeffs);
    /// The variable itself, t + O(t^{order+1}).
    static Series variable(RingPtr ring, std::string variable, int order);
    static Series constant(const GradedPoly& c, std::string variable, int order);

    const RingPtr& ring() const { return ring_; }
    const std::string& variable() const { return var_; }
    int lowest() const { return lowest_; }
    int order() const { return order_; }

    /// Coefficient of t^n; zero below `lowest`, PrecisionError above `order`.
    GradedPoly coeff(int n) const;
    void set_coeff(int n, GradedPoly c);
    /// First exponent with a nonzero coefficient, or order()+1 if none is visible.
    int valuation() const;
    bool is_zero() const { return valuation() > order_; }

    /// Drops everything above `order`; requesting more precision throws.
    Series truncated(int order) const;
    /// Same series with the window starting at `lowest` (only zero coefficients may be dropped).
    Series with_lowest(int lowest) const;
    Series renamed(std::string variable) const;
    /// Applies `fn` to every coefficient (ring homomorphisms, embeddings, ...).
    template <class Fn>
    Series map_coefficients(Fn&& fn, RingPtr target) const {
        std::vector<GradedPoly> cs;
        cs.reserve(coeffs_.size());
        for (const auto& c : coeffs_) cs.push_back(fn(c));
        return from_coefficients(std::move(target), var_, lowest_, std::move(cs));
    }

    Series operator-() const;
    Series& operator*=(const GradedPoly& c);
    friend Series operator+(const Series& a, const Series& b);
    friend Series operator-(const Series& a, const Series& b);
    friend Series operator*(const Series& a, const Series& b);
    friend Series operator*(Series a, const GradedPoly& c) { return a *= c; }

    /// Equal variable, equal order, equal coefficients through the order.
    friend bool operator==(const Series& a, const Series& b);

    std::string str() const;
    nlohmann::json to_json() const;
    static Series from_json(const nlohmann::json& j, const RingPtr& ring);

private:
    RingPtr ring_;
    std::string var_;
    int lowest_;
    int order_;
    std::vector<GradedPoly> coeffs_; // size order_ - lowest_ + 1
};

enum class SeriesOp { Add, Mul, Div };

Series series_arith(SeriesOp op, const Series& a, const Series& b);
Series divide(const Series& a, const Series& b);
Series reciprocal(const Series& b);

/// f(g). g must have zero constant term, or a constant term of positive
/// weight that the ring truncation guarantees is killed past f's order.
Series compose(const Series& f, const Series& g);

/// Compositional inverse g with f(g(t)) = t, by coefficient-wise back-substitution.
Series revert(const Series& f);

enum class ExpLogOp { Exp, Log };

Series exp_log(ExpLogOp op, const Series& f);
Series exp(const Series& f);
Series log(const Series& f);

/// Bernoulli numbers B_0..B_N with B_1 = -1/2, from sum_{k<=m} C(m+1,k) B_k = 0.
class BernoulliCache {
public:
    explicit BernoulliCache(int n);

    const Rational& operator[](int n) const { return values_.at(static_cast<std::size_t>(n)); }
    int size() const { return static_cast<int>(values_.size()); }

private:
    std::vector<Rational> values_;
};

Rational bernoulli(int n);

/// numerator(q) / prod_i factor_i(q)^{mult_i}, with Laurent-polynomial numerator and
/// polynomial factors, all over one GradedPoly ring.
struct QRational {
    using Laurent = std::map<int, GradedPoly>;

    Laurent numerator;
    std::vector<std::pair<Laurent, int>> denominator;
};

/// Laurent expansion in x of f(zeta * e^x) through x^order. zeta must be a
/// nonzero rational (the rational roots of unity are +1 and -1).
Series expand_at_root_of_unity(const RingPtr& ring, const QRational& f, const Rational& zeta,
                               int order, std::string variable = "x");

} // namespace mqc
