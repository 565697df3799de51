#include "mqc/rational_loop.hpp"

#include "mqc/errors.hpp"
#include "mqc/expr_parser.hpp"

#include <algorithm>

namespace mqc {

namespace {

QPoly q_power(int n) { return QPoly::monomial(n); }

// One coprime denominator factor with its multiplicity.
struct Piece {
    QPoly factor;
    int mult;
};

// Coefficients of R_F = sum_j N_j F^{m-j}, returned as N_1..N_m.
std::vector<CPoly> adic_digits(CPoly r, const QPoly& f, int m) {
    std::vector<CPoly> digits(static_cast<std::size_t>(m), CPoly(r.ring()));
    for (int j = m; j >= 1; --j) {
        auto [quot, rem] = divmod(r, f);
        digits[static_cast<std::size_t>(j - 1)] = rem;
        r = quot;
    }
    if (!r.is_zero()) throw DomainError("partial fractions: numerator is not proper");
    return digits;
}

} // namespace

ScalarLoop::ScalarLoop(RingPtr ring) : ring_(std::move(ring)) {}

ScalarLoop ScalarLoop::constant(const GradedPoly& c) { return monomial(c.ring(), 0, c); }

ScalarLoop ScalarLoop::laurent(RingPtr ring, Laurent terms) {
    ScalarLoop out(std::move(ring));
    for (const auto& [n, c] : terms) out.add_laurent(n, c);
    return out;
}

ScalarLoop ScalarLoop::monomial(RingPtr ring, int n, const GradedPoly& c) {
    ScalarLoop out(std::move(ring));
    out.add_laurent(n, c);
    return out;
}

ScalarLoop ScalarLoop::pole(const PoleFactor& p, int j, const GradedPoly& c) {
    if (j < 1) throw DomainError("pole order must be positive");
    return fraction(c.ring(), {{0, c}}, {{p, j}});
}

void ScalarLoop::add_laurent(int n, const GradedPoly& c) {
    require_same_ring(c.ring(), ring_, "ScalarLoop");
    if (c.is_zero()) return;
    auto [it, inserted] = laurent_.try_emplace(n, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) laurent_.erase(it);
    }
}

void ScalarLoop::normalize() {
    std::erase_if(laurent_, [](const auto& kv) { return kv.second.is_zero(); });
    for (auto it = principal_.begin(); it != principal_.end();) {
        auto& parts = it->second;
        while (!parts.empty() && parts.back().is_zero()) parts.pop_back();
        if (parts.empty()) it = principal_.erase(it);
        else ++it;
    }
}

ScalarLoop ScalarLoop::fraction(RingPtr ring, const Laurent& numerator, const std::map<PoleFactor, int>& denominator) {
    ScalarLoop out(ring);
    if (numerator.empty()) return out;
    const int s = std::min(0, numerator.begin()->first);

    CPoly a0(ring);
    for (const auto& [n, c] : numerator) {
        require_same_ring(c.ring(), ring, "ScalarLoop::fraction");
        a0.add(n - s, c);
    }

    std::vector<std::pair<PoleFactor, Piece>> pieces;
    QPoly total = q_power(-s);
    for (const auto& [p, m] : denominator) {
        if (m < 0) throw DomainError("negative pole multiplicity");
        if (m == 0) continue;
        pieces.push_back({p, {p.poly(), m}});
        total = total * p.poly().pow(static_cast<unsigned>(m));
    }

    auto [whole, rest] = divmod(a0, total);
    for (int k = 0; k <= whole.degree(); ++k) out.add_laurent(k, whole[k]);
    if (rest.is_zero()) return out;

    auto split = [&](const QPoly& f, int m) {
        QPoly power = f.pow(static_cast<unsigned>(m));
        QPoly other = divmod(total, power).quotient;
        CPoly r = divmod(rest * inverse_mod(other, power), power).remainder;
        return adic_digits(r, f, m);
    };

    if (s < 0) {
        auto digits = split(q_power(1), -s);
        for (int j = 1; j <= -s; ++j) out.add_laurent(-j, digits[static_cast<std::size_t>(j - 1)][0]);
    }
    for (const auto& [p, piece] : pieces) out.principal_[p] = split(piece.factor, piece.mult);
    out.normalize();
    return out;
}

int ScalarLoop::multiplicity(const PoleFactor& p) const {
    auto it = principal_.find(p);
    return it == principal_.end() ? 0 : static_cast<int>(it->second.size());
}

int ScalarLoop::min_exponent() const { return laurent_.empty() ? 0 : laurent_.begin()->first; }
int ScalarLoop::max_exponent() const { return laurent_.empty() ? 0 : laurent_.rbegin()->first; }

ScalarLoop ScalarLoop::principal_parts() const {
    ScalarLoop out(ring_);
    out.principal_ = principal_;
    return out;
}

ScalarLoop ScalarLoop::laurent_only() const { return laurent(ring_, laurent_); }

GradedPoly ScalarLoop::at_zero() const {
    if (min_exponent() < 0) throw DomainError("loop has a pole at q = 0");
    GradedPoly v = laurent_.contains(0) ? laurent_.at(0) : GradedPoly(ring_);
    for (const auto& [p, parts] : principal_)
        for (const auto& n : parts) v += n[0];
    return v;
}

GradedPoly ScalarLoop::at_infinity() const {
    if (max_exponent() > 0) throw DomainError("loop has a pole at q = infinity");
    return laurent_.contains(0) ? laurent_.at(0) : GradedPoly(ring_);
}

GradedPoly ScalarLoop::residue_zero() const {
    return laurent_.contains(-1) ? laurent_.at(-1) : GradedPoly(ring_);
}

GradedPoly ScalarLoop::residue_at(const PoleFactor& p) const {
    auto it = principal_.find(p);
    if (it == principal_.end()) return GradedPoly(ring_);
    QPoly poly = p.poly();
    return it->second.front()[poly.degree() - 1] * poly.leading().inverse();
}

// Res_inf f(q) dq = -Res_0 f(1/w) w^-2 dw
GradedPoly ScalarLoop::residue_infinity() const {
    if (is_laurent()) return -residue_zero();
    ScalarLoop g = reflected() * monomial(ring_, -2, GradedPoly::constant(ring_, Rational(1)));
    return -g.residue_zero();
}

ScalarLoop::Fraction ScalarLoop::as_fraction() const {
    Fraction f;
    QPoly q_total = QPoly::constant(Rational(1));
    for (const auto& [p, parts] : principal_) {
        f.denominator[p] = static_cast<int>(parts.size());
        q_total = q_total * p.poly().pow(static_cast<unsigned>(parts.size()));
    }
    CPoly num(ring_);
    for (const auto& [p, parts] : principal_) {
        const int m = static_cast<int>(parts.size());
        QPoly other = divmod(q_total, p.poly().pow(static_cast<unsigned>(m))).quotient;
        for (int j = 1; j <= m; ++j)
            num = num + parts[static_cast<std::size_t>(j - 1)] * (p.poly().pow(static_cast<unsigned>(m - j)) * other);
    }
    for (int k = 0; k <= num.degree(); ++k)
        if (!num[k].is_zero()) f.numerator.emplace(k, num[k]);
    for (const auto& [n, c] : laurent_)
        for (int k = 0; k <= q_total.degree(); ++k) {
            if (q_total[k].is_zero()) continue;
            auto [it, inserted] = f.numerator.try_emplace(n + k, c * q_total[k]);
            if (!inserted) it->second += c * q_total[k];
        }
    std::erase_if(f.numerator, [](const auto& kv) { return kv.second.is_zero(); });
    return f;
}

QRational ScalarLoop::as_qrational() const {
    Fraction f = as_fraction();
    QRational out;
    out.numerator = f.numerator;
    for (const auto& [p, m] : f.denominator) {
        QRational::Laurent factor;
        QPoly poly = p.poly();
        for (int k = 0; k <= poly.degree(); ++k)
            if (!poly[k].is_zero()) factor.emplace(k, GradedPoly::constant(ring_, poly[k]));
        out.denominator.push_back({factor, m});
    }
    return out;
}

ScalarLoop ScalarLoop::reflected() const {
    Fraction f = as_fraction();
    // P(1/q)^m = q^{-dm} lc^m Ptilde(q)^m with Ptilde the reflected factor
    int shift = 0;
    Rational scale(1);
    std::map<PoleFactor, int> den;
    for (const auto& [p, m] : f.denominator) {
        QPoly poly = p.poly();
        shift += poly.degree() * m;
        scale *= poly.leading().pow(m);
        den[p.reflected()] += m;
    }
    Laurent num;
    for (const auto& [n, c] : f.numerator) num.emplace(shift - n, c * scale.inverse());
    return fraction(ring_, num, den);
}

ScalarLoop ScalarLoop::map_coefficients(const std::function<GradedPoly(const GradedPoly&)>& fn,
                                        RingPtr target) const {
    ScalarLoop out(target);
    for (const auto& [n, c] : laurent_) out.add_laurent(n, fn(c));
    for (const auto& [p, parts] : principal_) {
        std::vector<CPoly> mapped;
        for (const auto& n : parts) mapped.push_back(n.map(fn, target));
        out.principal_[p] = std::move(mapped);
    }
    out.normalize();
    return out;
}

ScalarLoop ScalarLoop::operator-() const { return *this * GradedPoly::constant(ring_, Rational(-1)); }

ScalarLoop operator+(const ScalarLoop& a, const ScalarLoop& b) {
    require_same_ring(a.ring_, b.ring_, "ScalarLoop +");
    ScalarLoop out = a;
    for (const auto& [n, c] : b.laurent_) out.add_laurent(n, c);
    for (const auto& [p, parts] : b.principal_) {
        auto& mine = out.principal_[p];
        if (mine.size() < parts.size()) mine.resize(parts.size(), CPoly(a.ring_));
        for (std::size_t j = 0; j < parts.size(); ++j) mine[j] = mine[j] + parts[j];
    }
    out.normalize();
    return out;
}

ScalarLoop operator-(const ScalarLoop& a, const ScalarLoop& b) { return a + (-b); }

ScalarLoop operator*(const ScalarLoop& a, const ScalarLoop& b) {
    require_same_ring(a.ring_, b.ring_, "ScalarLoop *");
    if (a.is_zero() || b.is_zero()) return ScalarLoop(a.ring_);
    if (a.is_laurent() && b.is_laurent()) {
        ScalarLoop out(a.ring_);
        for (const auto& [n, c] : a.laurent_)
            for (const auto& [m, d] : b.laurent_) out.add_laurent(n + m, c * d);
        return out;
    }
    auto fa = a.as_fraction();
    auto fb = b.as_fraction();
    Laurent num;
    for (const auto& [n, c] : fa.numerator)
        for (const auto& [m, d] : fb.numerator) {
            auto [it, inserted] = num.try_emplace(n + m, c * d);
            if (!inserted) it->second += c * d;
        }
    std::erase_if(num, [](const auto& kv) { return kv.second.is_zero(); });
    auto den = fa.denominator;
    for (const auto& [p, m] : fb.denominator) den[p] += m;
    return ScalarLoop::fraction(a.ring_, num, den);
}

ScalarLoop operator*(ScalarLoop a, const GradedPoly& c) {
    require_same_ring(a.ring_, c.ring(), "ScalarLoop scale");
    for (auto& [n, v] : a.laurent_) v = v * c;
    for (auto& [p, parts] : a.principal_)
        for (auto& n : parts) n = n * c;
    a.normalize();
    return a;
}

bool operator==(const ScalarLoop& a, const ScalarLoop& b) {
    return same_ring(a.ring_, b.ring_) && a.laurent_ == b.laurent_ && a.principal_ == b.principal_;
}

// ---------------------------------------------------------------------------
// Text and JSON

namespace {

std::string coeff_str(const GradedPoly& c, bool& negative) {
    std::string s = c.str();
    negative = false;
    if (c.terms().size() == 1 && s.starts_with("-")) {
        negative = true;
        s = s.substr(1);
    } else if (c.terms().size() > 1) {
        s = "(" + s + ")";
    }
    return s;
}

std::string power_str(const std::string& var, int n) {
    if (n == 0) return "";
    if (n == 1) return var;
    return var + "^" + (n < 0 ? "(" + std::to_string(n) + ")" : std::to_string(n));
}

std::string cpoly_str(const CPoly& p, const std::string& var) {
    std::string out;
    for (int k = 0; k <= p.degree(); ++k) {
        if (p[k].is_zero()) continue;
        bool neg;
        std::string c = coeff_str(p[k], neg);
        std::string pw = power_str(var, k);
        std::string term = pw.empty() ? c : (c == "1" ? pw : c + "*" + pw);
        if (out.empty()) out = (neg ? "-" : "") + term;
        else out += (neg ? " - " : " + ") + term;
    }
    return out;
}

} // namespace

std::string ScalarLoop::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::string out;
    auto append = [&](const std::string& term, bool neg) {
        if (out.empty()) out = (neg ? "-" : "") + term;
        else out += (neg ? " - " : " + ") + term;
    };
    for (const auto& [n, c] : laurent_) {
        bool neg;
        std::string cs = coeff_str(c, neg);
        std::string pw = power_str(var, n);
        append(pw.empty() ? cs : (cs == "1" ? pw : cs + "*" + pw), neg);
    }
    for (const auto& [p, parts] : principal_) {
        std::string den = "(" + p.poly().str(var) + ")";
        for (std::size_t j = 0; j < parts.size(); ++j) {
            if (parts[j].is_zero()) continue;
            std::string num = cpoly_str(parts[j], var);
            bool neg = false;
            if (parts[j].degree() == 0) num = coeff_str(parts[j][0], neg);
            else num = "(" + num + ")";
            append(num + "/" + den + (j ? "^" + std::to_string(j + 1) : ""), neg);
        }
    }
    return out;
}

nlohmann::json ScalarLoop::to_json() const {
    nlohmann::json lau = nlohmann::json::array();
    for (const auto& [n, c] : laurent_) lau.push_back({{"exponent", n}, {"coeff", c.str()}});
    nlohmann::json poles = nlohmann::json::array();
    for (const auto& [p, parts] : principal_) {
        nlohmann::json principal = nlohmann::json::array();
        for (const auto& n : parts) {
            nlohmann::json coeffs = nlohmann::json::array();
            for (int k = 0; k <= n.degree(); ++k) coeffs.push_back(n[k].str());
            principal.push_back(coeffs);
        }
        poles.push_back({{"location", p.location()},
                         {"multiplicity", static_cast<int>(parts.size())},
                         {"principal", principal}});
    }
    return {{"numerator", lau}, {"poles", poles}};
}

ScalarLoop ScalarLoop::from_json(const nlohmann::json& j, const RingPtr& ring) {
    ScalarLoop out(ring);
    for (const auto& t : j.at("numerator"))
        out.add_laurent(t.at("exponent").get<int>(), parse_poly(ring, t.at("coeff").get<std::string>()));
    for (const auto& pj : j.value("poles", nlohmann::json::array())) {
        PoleFactor p = PoleFactor::parse_location(pj.at("location").get<std::string>());
        const int m = pj.at("multiplicity").get<int>();
        if (m < 1) throw DomainError("pole multiplicity must be positive");
        if (!pj.contains("principal")) continue;
        const auto& principal = pj.at("principal");
        if (static_cast<int>(principal.size()) > m) throw DomainError("more principal coefficients than multiplicity");
        for (std::size_t idx = 0; idx < principal.size(); ++idx) {
            const int jj = static_cast<int>(idx) + 1;
            Laurent num;
            int k = 0;
            for (const auto& c : principal[idx]) {
                GradedPoly v = parse_poly(ring, c.get<std::string>());
                if (!v.is_zero()) num.emplace(k, v);
                ++k;
            }
            out = out + fraction(ring, num, {{p, jj}});
        }
    }
    return out;
}

// ---------------------------------------------------------------------------

Series expand_at(const ScalarLoop& f, const Rational& zeta, int order, std::string variable) {
    return expand_at_root_of_unity(f.ring(), f.as_qrational(), zeta, order, std::move(variable));
}

namespace {

// 1 / num for a Laurent polynomial whose rational part is nonzero: the rational part is
// factored over Q and the nilpotent remainder expanded as a finite geometric series.
ScalarLoop invert(const RingPtr& ring, const Laurent& num) {
    std::map<int, Rational> rational;
    Laurent nil;
    for (const auto& [n, c] : num) {
        Rational r = c.constant_term();
        if (!r.is_zero()) rational[n] = r;
        GradedPoly rest = c - GradedPoly::constant(ring, r);
        if (!rest.is_zero()) nil.emplace(n, rest);
    }
    if (rational.empty()) throw NonUnit("division by a loop with nilpotent numerator");
    const int low = rational.begin()->first;
    std::vector<Rational> dense(static_cast<std::size_t>(rational.rbegin()->first - low + 1), Rational(0));
    for (const auto& [n, r] : rational) dense[static_cast<std::size_t>(n - low)] = r;
    Factorization fac = factor(QPoly(dense)); // shift is 0 by construction

    // 1 / base with base = rational part
    ScalarLoop inv_base =
        ScalarLoop::fraction(ring, {{-low, GradedPoly::constant(ring, fac.unit.inverse())}}, fac.factors);
    if (nil.empty()) return inv_base;

    ScalarLoop minus_ratio = -(ScalarLoop::laurent(ring, nil) * inv_base);
    ScalarLoop term = inv_base;
    ScalarLoop sum = inv_base;
    const int steps = ring->truncation() + 1;
    for (int k = 1; k <= steps; ++k) {
        term = term * minus_ratio;
        if (term.is_zero()) break;
        sum = sum + term;
    }
    return sum;
}

struct LoopOps {
    RingPtr ring;

    ScalarLoop number(const mpz_class& n) { return ScalarLoop::constant(GradedPoly::constant(ring, Rational(n, mpz_class(1)))); }
    ScalarLoop ident(const Expr& e) {
        if (e.name == "q") return ScalarLoop::monomial(ring, 1, GradedPoly::constant(ring, Rational(1)));
        if (!ring->index_of(e.name)) throw ParseError("unknown symbol '" + e.name + "'", e.line, e.column);
        return ScalarLoop::constant(GradedPoly::generator(ring, e.name));
    }
    ScalarLoop neg(const ScalarLoop& a) { return -a; }
    ScalarLoop add(const ScalarLoop& a, const ScalarLoop& b) { return a + b; }
    ScalarLoop sub(const ScalarLoop& a, const ScalarLoop& b) { return a - b; }
    ScalarLoop mul(const ScalarLoop& a, const ScalarLoop& b) { return a * b; }
    ScalarLoop inverse(const ScalarLoop& b, const Expr& at) {
        auto f = b.as_fraction();
        if (f.numerator.empty()) throw ParseError("division by zero", at.line, at.column);
        Laurent den;
        QPoly total = QPoly::constant(Rational(1));
        for (const auto& [p, m] : f.denominator) total = total * p.poly().pow(static_cast<unsigned>(m));
        for (int k = 0; k <= total.degree(); ++k)
            if (!total[k].is_zero()) den.emplace(k, GradedPoly::constant(ring, total[k]));
        try {
            return invert(ring, f.numerator) * ScalarLoop::laurent(ring, den);
        } catch (const NonUnit& e) {
            throw ParseError(e.what(), at.line, at.column);
        } catch (const UnsupportedInput& e) {
            throw ParseError(e.what(), at.line, at.column);
        }
    }
    ScalarLoop div(const ScalarLoop& a, const ScalarLoop& b, const Expr& at) { return a * inverse(b, at); }
    ScalarLoop pow(const ScalarLoop& a, long e, const Expr& at) {
        ScalarLoop base = e < 0 ? inverse(a, at) : a;
        ScalarLoop out = ScalarLoop::constant(GradedPoly::constant(ring, Rational(1)));
        for (long i = 0; i < (e < 0 ? -e : e); ++i) out = out * base;
        return out;
    }
};

} // namespace

ScalarLoop parse_scalar_loop(const RingPtr& ring, std::string_view text) {
    auto tree = parse_expr(text);
    LoopOps ops{ring};
    return evaluate<ScalarLoop>(*tree, ops);
}

} // namespace mqc
