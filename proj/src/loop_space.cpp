#include "mqc/loop_space.hpp"

#include "mqc/errors.hpp"

#include <algorithm>

namespace mqc {

namespace {

GradedPoly one(const RingPtr& ring) { return GradedPoly::constant(ring, Rational(1)); }

ScalarLoop zero_loop(const RingPtr& ring) { return ScalarLoop(ring); }

void require_same_algebra(const AlgebraPtr& a, const AlgebraPtr& b) {
    if (a != b && (a->rank() != b->rank() || a->data().structure != b->data().structure))
        throw IncompatibleRing("loops over different algebras");
}

// 1/(1 - q^-k) = -q^k / (1 - q^k)
ScalarLoop geometric_tail(const RingPtr& ring, int k) {
    std::vector<Rational> dense(static_cast<std::size_t>(k) + 1, Rational(0));
    dense[0] = Rational(1);
    dense[static_cast<std::size_t>(k)] = Rational(-1);
    Factorization fac = factor(QPoly(dense));
    return ScalarLoop::fraction(ring, {{k, GradedPoly::constant(ring, -fac.unit.inverse())}}, fac.factors);
}

// Coefficients d[n] of q^-n, n = 0..count, of a proper fraction expanded at q = infinity.
std::vector<GradedPoly> expansion_at_infinity(const ScalarLoop& p, int count) {
    const RingPtr& ring = p.ring();
    std::vector<GradedPoly> d(static_cast<std::size_t>(count) + 1, GradedPoly(ring));
    if (p.is_zero()) return d;
    auto fr = p.as_fraction();
    QPoly den = QPoly::constant(Rational(1));
    for (const auto& [f, m] : fr.denominator) den = den * f.poly().pow(static_cast<unsigned>(m));
    const int deg = den.degree();
    // 1 / reversed(den) as a power series in w = 1/q
    QPoly rev = den.reversed();
    std::vector<Rational> inv(static_cast<std::size_t>(count) + 1, Rational(0));
    const Rational lead = rev[0].inverse();
    for (int n = 0; n <= count; ++n) {
        Rational acc = n == 0 ? Rational(1) : Rational(0);
        for (int k = 1; k <= std::min(n, deg); ++k) acc = acc - rev[k] * inv[static_cast<std::size_t>(n - k)];
        inv[static_cast<std::size_t>(n)] = acc * lead;
    }
    // q^i / den = w^{deg-i} / reversed(den)
    for (const auto& [i, c] : fr.numerator) {
        if (i < 0 || i >= deg) throw DomainError("expansion at infinity needs a proper fraction");
        for (int n = deg - i; n <= count; ++n) d[static_cast<std::size_t>(n)] += c * inv[static_cast<std::size_t>(n - deg + i)];
    }
    return d;
}

} // namespace

// ---------------------------------------------------------------------------
// RationalLoop

RationalLoop::RationalLoop(AlgebraPtr algebra) : alg_(std::move(algebra)) {
    c_.assign(alg_->rank(), zero_loop(alg_->ring()));
}

RationalLoop::RationalLoop(AlgebraPtr algebra, std::vector<ScalarLoop> coords) : alg_(std::move(algebra)), c_(std::move(coords)) {
    if (c_.size() != alg_->rank()) throw DomainError("loop has the wrong number of coordinates");
    for (const auto& c : c_) require_same_ring(c.ring(), alg_->ring(), "RationalLoop");
}

RationalLoop RationalLoop::scalar(AlgebraPtr algebra, const ScalarLoop& f) {
    std::vector<ScalarLoop> v;
    const Element unit = algebra->unit();
    for (const auto& u : unit.coords()) v.push_back(f * u);
    return {std::move(algebra), std::move(v)};
}

RationalLoop RationalLoop::constant(const Element& e) {
    std::vector<ScalarLoop> v;
    for (const auto& c : e.coords()) v.push_back(ScalarLoop::constant(c));
    return {e.algebra(), std::move(v)};
}

bool RationalLoop::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const ScalarLoop& f) { return f.is_zero(); });
}

bool RationalLoop::is_laurent() const {
    return std::all_of(c_.begin(), c_.end(), [](const ScalarLoop& f) { return f.is_laurent(); });
}

RationalLoop RationalLoop::principal_parts() const {
    auto v = c_;
    for (auto& f : v) f = f.principal_parts();
    return {alg_, std::move(v)};
}

RationalLoop RationalLoop::laurent_only() const {
    auto v = c_;
    for (auto& f : v) f = f.laurent_only();
    return {alg_, std::move(v)};
}

Element RationalLoop::at_zero() const {
    std::vector<GradedPoly> v;
    for (const auto& f : c_) v.push_back(f.at_zero());
    return alg_->element(std::move(v));
}

Element RationalLoop::at_infinity() const {
    std::vector<GradedPoly> v;
    for (const auto& f : c_) v.push_back(f.at_infinity());
    return alg_->element(std::move(v));
}

RationalLoop RationalLoop::reflected() const {
    auto v = c_;
    for (auto& f : v) f = f.reflected();
    return {alg_, std::move(v)};
}

RationalLoop RationalLoop::operator-() const {
    auto v = c_;
    for (auto& f : v) f = -f;
    return {alg_, std::move(v)};
}

RationalLoop operator+(const RationalLoop& a, const RationalLoop& b) {
    require_same_algebra(a.alg_, b.alg_);
    auto v = a.c_;
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = v[i] + b.c_[i];
    return {a.alg_, std::move(v)};
}

RationalLoop operator-(const RationalLoop& a, const RationalLoop& b) { return a + (-b); }

RationalLoop operator*(const RationalLoop& a, const RationalLoop& b) {
    require_same_algebra(a.alg_, b.alg_);
    const std::size_t n = a.alg_->rank();
    const auto& s = a.alg_->data().structure;
    std::vector<ScalarLoop> out(n, zero_loop(a.alg_->ring()));
    for (std::size_t i = 0; i < n; ++i) {
        if (a.c_[i].is_zero()) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (b.c_[j].is_zero()) continue;
            ScalarLoop fg = a.c_[i] * b.c_[j];
            for (std::size_t k = 0; k < n; ++k)
                if (!s[i][j][k].is_zero()) out[k] = out[k] + fg * s[i][j][k];
        }
    }
    return {a.alg_, std::move(out)};
}

RationalLoop operator*(const RationalLoop& a, const Element& e) { return a * RationalLoop::constant(e); }

RationalLoop operator*(const RationalLoop& a, const GradedPoly& c) {
    auto v = a.c_;
    for (auto& f : v) f = f * c;
    return {a.alg_, std::move(v)};
}

bool operator==(const RationalLoop& a, const RationalLoop& b) { return a.alg_->rank() == b.alg_->rank() && a.c_ == b.c_; }

std::string RationalLoop::str(const std::string& var) const {
    if (alg_->rank() == 1) return c_[0].str(var);
    std::string out;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        if (!out.empty()) out += " + ";
        out += "(" + c_[i].str(var) + ")*" + alg_->labels()[i];
    }
    return out.empty() ? "0" : out;
}

nlohmann::json RationalLoop::to_json() const {
    if (alg_->rank() == 1) return c_[0].to_json();
    nlohmann::json comps = nlohmann::json::object();
    for (std::size_t i = 0; i < c_.size(); ++i) comps[alg_->labels()[i]] = c_[i].to_json();
    return {{"components", comps}};
}

RationalLoop RationalLoop::from_json(const nlohmann::json& j, const AlgebraPtr& algebra) {
    if (!j.contains("components")) return scalar(algebra, ScalarLoop::from_json(j, algebra->ring()));
    RationalLoop out(algebra);
    for (const auto& [label, value] : j.at("components").items()) {
        auto idx = algebra->index_of(label);
        if (!idx) throw DomainError("loop JSON: unknown basis label '" + label + "'");
        out.c_[*idx] = ScalarLoop::from_json(value, algebra->ring());
    }
    return out;
}

RationalLoop parse_loop(const AlgebraPtr& algebra, std::string_view text) {
    return RationalLoop::scalar(algebra, parse_scalar_loop(algebra->ring(), text));
}

// ---------------------------------------------------------------------------
// Residues and the pairing

PoleAt PoleAt::parse(std::string_view text) {
    if (text == "0") return zero();
    if (text == "inf" || text == "infinity") return infinity();
    return at(PoleFactor::parse_location(text));
}

Element residue(const RationalLoop& f, const PoleAt& pole) {
    std::vector<GradedPoly> v;
    for (const auto& c : f.coords()) {
        switch (pole.kind) {
        case PoleAt::Kind::Zero: v.push_back(c.residue_zero()); break;
        case PoleAt::Kind::Infinity: v.push_back(c.residue_infinity()); break;
        case PoleAt::Kind::Factor: v.push_back(c.residue_at(*pole.factor)); break;
        }
    }
    return f.algebra()->element(std::move(v));
}

GradedPoly omega(const RationalLoop& f, const RationalLoop& g, const PairingConfig& cfg) {
    require_same_algebra(f.algebra(), g.algebra());
    const auto& a = f.algebra();
    const auto& ring = a->ring();
    Element w = cfg.twist ? *cfg.twist : a->unit();
    require_same_algebra(w.algebra(), a);

    ScalarLoop h(ring);
    for (std::size_t i = 0; i < a->rank(); ++i) {
        if (f[i].is_zero()) continue;
        for (std::size_t j = 0; j < a->rank(); ++j) {
            if (g[j].is_zero()) continue;
            GradedPoly pairing = a->chi(a->basis(i) * a->basis(j) * w);
            if (pairing.is_zero()) continue;
            h = h + f[i] * g[j].reflected() * pairing;
        }
    }
    h = h * ScalarLoop::monomial(ring, -1, one(ring));
    GradedPoly out = -(h.residue_zero() + h.residue_infinity());
    if (cfg.r != 1) {
        if (cfg.r < 1) throw DomainError("Adams index must be positive");
        out = adams_coefficients(out, cfg.r) * Rational(cfg.r);
    }
    if (cfg.scale) out = out * *cfg.scale;
    return out;
}

// ---------------------------------------------------------------------------
// Kernels

Kernel Kernel::canonical(const RingPtr& ring) {
    Kernel k;
    k.name = "canonical";
    k.numerator[0].emplace(0, one(ring));
    return k;
}

Kernel Kernel::hirzebruch(const RingPtr& ring) {
    if (!ring->index_of("y")) throw DomainError("the Hirzebruch kernel needs a generator y");
    auto y = GradedPoly::generator(ring, "y");
    auto scale = (one(ring) - y).inverse();
    Kernel k;
    k.name = "hirzebruch";
    k.numerator[0].emplace(0, scale);
    k.numerator[1].emplace(-1, -(y * scale));
    return k;
}

const RingPtr& Kernel::ring() const {
    for (const auto& [a, coeffs] : numerator)
        if (!coeffs.empty()) return coeffs.begin()->second.ring();
    throw DomainError("empty kernel");
}

std::string Kernel::str() const {
    std::string num;
    for (const auto& [a, coeffs] : numerator) {
        std::string c = ScalarLoop::laurent(ring(), coeffs).str();
        std::string term = a == 0 ? "(" + c + ")" : "(" + c + ")*x" + (a == 1 ? "" : "^" + std::to_string(a));
        num += num.empty() ? term : " + " + term;
    }
    return (num.empty() ? "0" : num) + "/(1 - x/q)";
}

// ---------------------------------------------------------------------------
// Tensor map

ScalarLoop tensor_polarization_map(const Kernel& kernel, const ScalarLoop& f) {
    const RingPtr& ring = f.ring();
    require_same_ring(kernel.ring(), ring, "tensor_polarization_map");
    if (!f.is_laurent() && !f.laurent_part().empty())
        throw PolarizationError("input is not in the standard negative space: Laurent part " + f.laurent_only().str());
    if (f.is_laurent()) {
        if (!f.is_zero()) throw PolarizationError("input is not in the standard negative space: " + f.str());
        return f;
    }
    const auto fraction = f.as_fraction();
    QPoly den = QPoly::constant(Rational(1));
    for (const auto& [p, m] : fraction.denominator) den = den * p.poly().pow(static_cast<unsigned>(m));
    const int deg = den.degree();

    int amax = 0;
    for (const auto& [a, coeffs] : kernel.numerator) {
        if (a < 0) throw DomainError("kernel numerator must be polynomial in x");
        amax = std::max(amax, a);
    }
    // window of expansion coefficients g_e, e = emax down to elo
    constexpr int kLowest = -8;
    const int emax = amax - 1;
    const int elo = kLowest - 2 * deg - 8;

    std::map<int, GradedPoly> g;
    for (const auto& [a, coeffs] : kernel.numerator) {
        // 1/(1 - x/q) = -sum_{m>=1} (q/x)^m, so x^{a-m} carries [Res_0 + Res_inf](fa q^{m-1} dq),
        // which is minus the q^-m coefficient of the principal part of fa at infinity
        ScalarLoop fa = f * ScalarLoop::laurent(ring, coeffs);
        auto tail = expansion_at_infinity(fa.principal_parts(), a - elo);
        for (int m = 1; m <= a - elo; ++m) {
            const GradedPoly& d = tail[static_cast<std::size_t>(m)];
            if (d.is_zero()) continue;
            auto [it, inserted] = g.try_emplace(a - m, ring);
            it->second -= d * Rational(kTensorSign);
        }
    }

    // h = den(x) g(x) must be a Laurent polynomial
    Laurent numerator;
    for (int j = elo + deg; j <= emax + deg; ++j) {
        GradedPoly h(ring);
        for (int k = 0; k <= deg; ++k) {
            auto it = g.find(j - k);
            if (it != g.end() && !den[k].is_zero()) h += it->second * den[k];
        }
        if (h.is_zero()) continue;
        if (j < kLowest) throw PolarizationError("tensor map output is not a rational function with the input's poles");
        numerator.emplace(j, h);
    }
    return ScalarLoop::fraction(ring, numerator, fraction.denominator);
}

RationalLoop tensor_polarization_map(const Kernel& kernel, const RationalLoop& f) {
    auto v = f.coords();
    for (auto& c : v) c = tensor_polarization_map(kernel, c);
    return {f.algebra(), std::move(v)};
}

// ---------------------------------------------------------------------------
// Polarizations

Projection project(const RationalLoop& f, const Polarization& pol) {
    RationalLoop plus = f.laurent_only();
    RationalLoop minus = f.principal_parts();
    if (std::holds_alternative<Polarization::Standard>(pol.space)) return {plus, minus};

    if (const auto* c = std::get_if<Polarization::Constraint>(&pol.space)) {
        // minus + k satisfies (minus + k)(inf) = lambda (minus + k)(0) since minus(inf) = 0
        GradedPoly gap = one(f.algebra()->ring()) - c->lambda;
        if (!gap.is_unit()) throw PolarizationError("constraint f(inf) = lambda f(0) needs 1 - lambda invertible");
        Element shift = minus.at_zero() * (c->lambda * gap.inverse());
        RationalLoop k = RationalLoop::constant(shift);
        return {plus - k, minus + k};
    }

    const auto& kernel = std::get<Kernel>(pol.space);
    RationalLoop image = tensor_polarization_map(kernel, minus);
    if (!(image - minus).is_laurent())
        throw PolarizationError("kernel " + kernel.str() + " moves the poles of " + f.str());
    return {f - image, image};
}

bool in_negative_space(const RationalLoop& f, const Polarization& pol) {
    if (std::holds_alternative<Polarization::Standard>(pol.space)) return f.laurent_only().is_zero();
    if (const auto* c = std::get_if<Polarization::Constraint>(&pol.space)) {
        try {
            return f.at_infinity() == f.at_zero() * c->lambda;
        } catch (const DomainError&) {
            return false;
        }
    }
    try {
        return project(f, pol).plus.is_zero();
    } catch (const PolarizationError&) {
        return false;
    }
}

bool hirzebruch_negative_space_check(const RationalLoop& f) {
    const auto& ring = f.algebra()->ring();
    if (!ring->index_of("y")) throw DomainError("the Hirzebruch constraint needs a generator y");
    return f.at_infinity() == f.at_zero() * GradedPoly::generator(ring, "y");
}

Dilaton parse_dilaton(std::string_view name) {
    if (name == "standard") return Dilaton::Standard;
    if (name == "hirzebruch") return Dilaton::Hirzebruch;
    throw UnsupportedInput("unknown dilaton shift '" + std::string(name) + "' (use standard or hirzebruch)");
}

ScalarLoop dilaton_shift(const RingPtr& ring, Dilaton which) {
    if (which == Dilaton::Standard) return parse_scalar_loop(ring, "1 - q");
    if (!ring->index_of("y")) throw DomainError("the Hirzebruch dilaton shift needs a generator y");
    return parse_scalar_loop(ring, "(1 - q)/(1 - y*q)");
}

// ---------------------------------------------------------------------------
// Twisted multiplication

TwMult tw_mult_operator(const AlgebraPtr& a, const MultClass& cls, const SplitBundle& lines, int order) {
    require_same_ring(a->ring(), cls.ring(), "tw_mult_operator");
    for (const auto& t : lines.terms) (void)t.line.inverse();

    RationalLoop exponent(a);
    for (int k = 1; k <= cls.known(); ++k) {
        const GradedPoly& ck = cls.c[static_cast<std::size_t>(k)];
        if (ck.is_zero()) continue;
        Element shifted = a->zero();
        for (const auto& t : lines.terms)
            shifted = shifted + (t.line.pow(k) - a->unit()) * GradedPoly::constant(a->ring(), Rational(t.sign * t.multiplicity));
        if (shifted.is_zero()) continue;
        exponent = exponent + RationalLoop::scalar(a, geometric_tail(a->ring(), k)) * (shifted * (ck * Rational(1, k)));
    }
    TwMult out{exponent, {}, exponent.is_zero()};
    for (const auto& c : exponent.coords()) out.expansion.push_back(expand_at(c, Rational(1), order, "x"));
    return out;
}

} // namespace mqc
