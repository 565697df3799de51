#include "mqc/series.hpp"

#include "mqc/errors.hpp"

#include <algorithm>
#include <sstream>

namespace mqc {

Series::Series(RingPtr ring, std::string variable, int lowest, int order)
    : ring_(std::move(ring)), var_(std::move(variable)), lowest_(lowest), order_(order) {
    if (order_ < lowest_ - 1) throw DomainError("series order below its lowest exponent");
    coeffs_.assign(static_cast<std::size_t>(order_ - lowest_ + 1), GradedPoly(ring_));
}

Series Series::from_coefficients(std::string variable, int lowest, std::vector<GradedPoly> coeffs) {
    if (coeffs.empty()) throw DomainError("cannot infer the ring of an empty series");
    RingPtr ring = coeffs.front().ring();
    return from_coefficients(std::move(ring), std::move(variable), lowest, std::move(coeffs));
}

Series Series::from_coefficients(RingPtr ring, std::string variable, int lowest,
                                 std::vector<GradedPoly> coeffs) {
    Series s(ring, std::move(variable), lowest, lowest + static_cast<int>(coeffs.size()) - 1);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        require_same_ring(coeffs[i].ring(), ring, "series");
        s.coeffs_[i] = std::move(coeffs[i]);
    }
    return s;
}

Series Series::variable(RingPtr ring, std::string variable, int order) {
    Series s(ring, std::move(variable), 0, order);
    if (order >= 1) s.coeffs_[1] = GradedPoly::constant(ring, Rational(1));
    return s;
}

Series Series::constant(const GradedPoly& c, std::string variable, int order) {
    Series s(c.ring(), std::move(variable), 0, order);
    if (order >= 0) s.coeffs_[0] = c;
    return s;
}

GradedPoly Series::coeff(int n) const {
    if (n > order_)
        throw PrecisionError("coefficient of " + var_ + "^" + std::to_string(n) +
                             " is beyond the known order " + std::to_string(order_));
    if (n < lowest_) return GradedPoly(ring_);
    return coeffs_[static_cast<std::size_t>(n - lowest_)];
}

void Series::set_coeff(int n, GradedPoly c) {
    if (n > order_ || n < lowest_) throw PrecisionError("set_coeff outside the series window");
    require_same_ring(c.ring(), ring_, "set_coeff");
    coeffs_[static_cast<std::size_t>(n - lowest_)] = std::move(c);
}

int Series::valuation() const {
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        if (!coeffs_[i].is_zero()) return lowest_ + static_cast<int>(i);
    return order_ + 1;
}

Series Series::truncated(int order) const {
    if (order > order_) throw PrecisionError("cannot extend a series beyond its known order");
    Series s(ring_, var_, std::min(lowest_, order + 1), order);
    for (int n = s.lowest_; n <= order; ++n) s.coeffs_[static_cast<std::size_t>(n - s.lowest_)] = coeff(n);
    return s;
}

Series Series::with_lowest(int lowest) const {
    if (lowest > valuation()) throw DomainError("with_lowest would drop nonzero coefficients");
    Series s(ring_, var_, lowest, order_);
    for (int n = lowest; n <= order_; ++n) s.coeffs_[static_cast<std::size_t>(n - lowest)] = coeff(n);
    return s;
}

Series Series::renamed(std::string variable) const {
    Series s(*this);
    s.var_ = std::move(variable);
    return s;
}

Series Series::operator-() const {
    Series s(*this);
    for (auto& c : s.coeffs_) c = -c;
    return s;
}

Series& Series::operator*=(const GradedPoly& c) {
    require_same_ring(c.ring(), ring_, "series scale");
    for (auto& x : coeffs_) x = x * c;
    return *this;
}

static void require_compatible(const Series& a, const Series& b, const char* where) {
    require_same_ring(a.ring(), b.ring(), where);
    if (a.variable() != b.variable())
        throw IncompatibleRing(std::string(where) + ": series in different variables");
}

Series operator+(const Series& a, const Series& b) {
    require_compatible(a, b, "series add");
    int order = std::min(a.order_, b.order_);
    int lowest = std::min(std::min(a.lowest_, b.lowest_), order + 1);
    Series s(a.ring_, a.var_, lowest, order);
    for (int n = lowest; n <= order; ++n) s.coeffs_[static_cast<std::size_t>(n - lowest)] = a.coeff(n) + b.coeff(n);
    return s;
}

Series operator-(const Series& a, const Series& b) { return a + (-b); }

Series operator*(const Series& a, const Series& b) {
    require_compatible(a, b, "series mul");
    const int va = a.valuation(), vb = b.valuation();
    const int order = std::min(a.order_ + vb, b.order_ + va);
    const int lowest = std::min(va + vb, order + 1);
    Series s(a.ring_, a.var_, lowest, order);
    for (int i = va; i <= a.order_; ++i) {
        const GradedPoly& ai = a.coeffs_[static_cast<std::size_t>(i - a.lowest_)];
        if (ai.is_zero()) continue;
        for (int j = vb; j <= b.order_ && i + j <= order; ++j) {
            const GradedPoly& bj = b.coeffs_[static_cast<std::size_t>(j - b.lowest_)];
            if (bj.is_zero()) continue;
            s.coeffs_[static_cast<std::size_t>(i + j - lowest)] += ai * bj;
        }
    }
    return s;
}

bool operator==(const Series& a, const Series& b) {
    if (a.var_ != b.var_ || a.order_ != b.order_ || !same_ring(a.ring_, b.ring_)) return false;
    for (int n = std::min(a.lowest_, b.lowest_); n <= a.order_; ++n)
        if (!(a.coeff(n) == b.coeff(n))) return false;
    return true;
}

std::string Series::str() const {
    std::ostringstream out;
    bool first = true;
    for (int n = lowest_; n <= order_; ++n) {
        const GradedPoly& c = coeffs_[static_cast<std::size_t>(n - lowest_)];
        if (c.is_zero()) continue;
        if (!first) out << " + ";
        first = false;
        std::string cs = c.str();
        bool simple = c.terms().size() == 1;
        if (n == 0) {
            out << (simple ? cs : "(" + cs + ")");
            continue;
        }
        if (cs == "1") {
        } else if (cs == "-1") {
            out << "-";
        } else {
            out << (simple ? cs : "(" + cs + ")") << "*";
        }
        out << var_;
        if (n != 1) out << "^" << n;
    }
    if (!first) out << " + ";
    out << "O(" << var_ << "^" << order_ + 1 << ")";
    return out.str();
}

nlohmann::json Series::to_json() const {
    nlohmann::json cs = nlohmann::json::array();
    for (const auto& c : coeffs_) cs.push_back(c.to_json());
    return {{"variable", var_}, {"lowest", lowest_}, {"order", order_}, {"coefficients", cs}};
}

Series Series::from_json(const nlohmann::json& j, const RingPtr& ring) {
    std::vector<GradedPoly> cs;
    for (const auto& c : j.at("coefficients")) cs.push_back(GradedPoly::from_json(c, ring));
    Series s = from_coefficients(ring, j.at("variable").get<std::string>(), j.at("lowest").get<int>(),
                                 std::move(cs));
    if (s.order_ != j.at("order").get<int>()) throw DomainError("series JSON order disagrees with its coefficients");
    return s;
}

// ---------------------------------------------------------------------------

Series reciprocal(const Series& b) {
    const int v = b.valuation();
    if (v > b.order()) throw NonUnit("reciprocal of a series with no visible nonzero coefficient");
    const GradedPoly lead = b.coeff(v);
    if (!lead.is_unit())
        throw NonUnit("reciprocal: leading coefficient " + lead.str() + " is not invertible");
    const GradedPoly lead_inv = lead.inverse();
    const int known = b.order() - v; // b = t^v (b_v + ... + b_{v+known} t^known)
    std::vector<GradedPoly> inv;
    inv.reserve(static_cast<std::size_t>(known + 1));
    inv.push_back(lead_inv);
    for (int n = 1; n <= known; ++n) {
        GradedPoly acc(b.ring());
        for (int k = 1; k <= n; ++k) acc += b.coeff(v + k) * inv[static_cast<std::size_t>(n - k)];
        inv.push_back(-(acc * lead_inv));
    }
    return Series::from_coefficients(b.ring(), b.variable(), -v, std::move(inv));
}

Series divide(const Series& a, const Series& b) { return a * reciprocal(b); }

Series series_arith(SeriesOp op, const Series& a, const Series& b) {
    switch (op) {
    case SeriesOp::Add: return a + b;
    case SeriesOp::Mul: return a * b;
    case SeriesOp::Div: return divide(a, b);
    }
    throw DomainError("unknown series operation");
}

namespace {

// Horner evaluation of f(g) truncated at `order`.
Series horner(const Series& f, const Series& g, int order) {
    Series acc = Series::constant(f.coeff(f.order()), g.variable(), order);
    for (int k = f.order() - 1; k >= 0; --k) {
        acc = (acc * g).truncated(order);
        Series fk = Series::constant(f.coeff(k), g.variable(), order);
        acc = acc + fk;
    }
    return acc.truncated(order);
}

} // namespace

Series compose(const Series& f, const Series& g) {
    require_same_ring(f.ring(), g.ring(), "compose");
    if (f.valuation() < 0) throw CompositionDomain("compose: outer series has negative powers");
    const int vg = g.valuation();
    if (vg < 0) throw CompositionDomain("compose: inner series has negative powers");
    int order;
    if (vg >= 1) {
        long tail = static_cast<long>(f.order() + 1) * vg - 1;
        order = static_cast<int>(std::min<long>(tail, g.order()));
    } else {
        const GradedPoly c = g.coeff(0);
        if (!c.constant_term().is_zero())
            throw CompositionDomain("compose: inner series has a unit constant term");
        long killed = static_cast<long>(f.order() + 1) * c.min_weight().value_or(0);
        if (killed <= f.ring()->truncation())
            throw CompositionDomain("compose: constant term " + c.str() +
                                    " would need coefficients of f beyond its order");
        order = g.order();
    }
    if (f.order() < 0) return Series(f.ring(), g.variable(), 0, order);
    return horner(f, g, order);
}

Series revert(const Series& f) {
    if (f.valuation() < 1) throw ReversionError("revert: series must vanish at 0");
    if (f.order() < 1) throw ReversionError("revert: order too small");
    const GradedPoly lead = f.coeff(1);
    if (!lead.is_unit()) throw ReversionError("revert: linear coefficient " + lead.str() + " is not a unit");
    const GradedPoly lead_inv = lead.inverse();
    const int N = f.order();
    Series g(f.ring(), f.variable(), 0, N);
    g.set_coeff(1, lead_inv);
    for (int n = 2; n <= N; ++n) {
        // with g_n = 0, the t^n coefficient of f(g) is the residual to cancel
        Series fn = f.truncated(n);
        Series gn = g.truncated(n);
        GradedPoly residual = horner(fn, gn, n).coeff(n);
        g.set_coeff(n, -(residual * lead_inv));
    }
    Series check = compose(f, g);
    Series identity = Series::variable(f.ring(), f.variable(), check.order());
    if (!(check == identity)) throw ReversionError("revert: back-substitution check failed");
    return g;
}

Series exp(const Series& f) {
    if (f.valuation() < 0) throw DomainError("exp: argument has negative powers");
    const int M = f.order();
    GradedPoly c = M >= 0 ? f.coeff(0) : GradedPoly(f.ring());
    if (!c.constant_term().is_zero()) throw DomainError("exp: constant term has a rational part");
    Series h = f;
    if (M >= 0) h.set_coeff(0, GradedPoly(f.ring()));
    Series sum = Series::constant(GradedPoly::constant(f.ring(), Rational(1)), f.variable(), M);
    Series power = sum;
    for (int k = 1; k <= M; ++k) {
        power = (power * h).truncated(M);
        power *= GradedPoly::constant(f.ring(), Rational(1, k));
        sum = sum + power;
    }
    return sum * exp_nilpotent(c);
}

Series log(const Series& f) {
    if (f.valuation() < 0) throw DomainError("log: argument has negative powers");
    const int M = f.order();
    if (M < 0) throw PrecisionError("log: nothing known about the argument");
    GradedPoly c = f.coeff(0);
    if (!c.constant_term().is_one()) throw DomainError("log: constant term must be 1 up to nilpotents");
    Series h = f * c.inverse();
    h.set_coeff(0, GradedPoly(f.ring()));
    if (h.lowest() > 0) h = h.with_lowest(0);
    Series sum = Series::constant(log_unit(c), f.variable(), M);
    Series power = Series::constant(GradedPoly::constant(f.ring(), Rational(1)), f.variable(), M);
    for (int k = 1; k <= M; ++k) {
        power = (power * h).truncated(M);
        sum = sum + power * GradedPoly::constant(f.ring(), Rational((k % 2) ? 1 : -1, k));
    }
    return sum;
}

Series exp_log(ExpLogOp op, const Series& f) { return op == ExpLogOp::Exp ? exp(f) : log(f); }

BernoulliCache::BernoulliCache(int n) {
    if (n < 0) throw DomainError("Bernoulli index must be non-negative");
    values_.reserve(static_cast<std::size_t>(n + 1));
    values_.push_back(Rational(1));
    for (int m = 1; m <= n; ++m) {
        Rational acc(0);
        for (int k = 0; k < m; ++k) acc += binomial(m + 1, k) * values_[static_cast<std::size_t>(k)];
        values_.push_back(-acc / Rational(m + 1));
    }
}

Rational bernoulli(int n) { return BernoulliCache(n)[n]; }

namespace {

// sum_n c_n zeta^n e^{n x} through x^order
Series laurent_at(const RingPtr& ring, const QRational::Laurent& p, const Rational& zeta, int order,
                  const std::string& var) {
    Series s(ring, var, 0, order);
    for (int k = 0; k <= order; ++k) {
        GradedPoly acc(ring);
        for (const auto& [n, c] : p) acc += c * (zeta.pow(n) * Rational(n).pow(k) / factorial(k));
        s.set_coeff(k, acc);
    }
    return s;
}

} // namespace

Series expand_at_root_of_unity(const RingPtr& ring, const QRational& f, const Rational& zeta, int order,
                               std::string variable) {
    if (zeta.is_zero()) throw UnsupportedInput("expansion point must be nonzero");
    int pole_bound = 0;
    for (const auto& [factor, mult] : f.denominator) {
        if (mult < 0) throw UnsupportedInput("negative multiplicity in a denominator");
        int deg = factor.empty() ? 0 : factor.rbegin()->first;
        pole_bound += mult * std::max(deg, 1);
    }
    const int work = order + 2 * pole_bound;
    Series num = laurent_at(ring, f.numerator, zeta, work, variable);
    Series den = Series::constant(GradedPoly::constant(ring, Rational(1)), variable, work);
    for (const auto& [factor, mult] : f.denominator) {
        Series fs = laurent_at(ring, factor, zeta, work, variable);
        for (int i = 0; i < mult; ++i) den = den * fs;
    }
    Series r = divide(num, den);
    if (r.order() < order) throw PrecisionError("expansion lost more precision than budgeted");
    return r.truncated(order);
}

} // namespace mqc
