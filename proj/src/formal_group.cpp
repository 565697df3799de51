#include "mqc/formal_group.hpp"

#include "mqc/errors.hpp"

#include <algorithm>

namespace mqc {

FormalGroupLaw fgl_from_log(const Series& log) {
    if (log.valuation() < 1 || !log.coeff(1).constant_term().is_one() || log.coeff(1).terms().size() != 1)
        throw DomainError("formal group logarithm must start with u");
    return {log, revert(log)};
}

FormalGroupLaw mishchenko_log(int order, int truncation) {
    if (order < 2) throw DomainError("mishchenko_log: order must be at least 2");
    RingPtr ring = cobordism_ring(order - 1, truncation);
    Series z = Series::variable(ring, "u", order);
    for (int n = 1; n + 1 <= order; ++n)
        z.set_coeff(n + 1, GradedPoly::generator(ring, "p" + std::to_string(n)) * Rational(1, n + 1));
    return fgl_from_log(z);
}

// ---------------------------------------------------------------------------
// Two-variable law

namespace {

struct Extended {
    RingPtr ring;
    std::size_t base_size;
    int base_truncation;
    int order;
    std::vector<int> base_weights; // x-generators weigh 0
    std::vector<int> x_degrees;    // base generators weigh 0

    Extended(const RingPtr& base, int order_) : order(order_) {
        base_size = base->size();
        base_truncation = base->truncation();
        ring = base->extended({{"x2", 1}, {"x3", 1}}, base->truncation() + order_);
        for (std::size_t i = 0; i < ring->size(); ++i) {
            bool is_x = i >= base_size;
            base_weights.push_back(is_x ? 0 : ring->weight(i));
            x_degrees.push_back(is_x ? 1 : 0);
        }
    }

    static Extended of(const TwoVariableLaw& law) { return Extended(law.base, law.order); }

    std::size_t x2() const { return base_size; }
    std::size_t x3() const { return base_size + 1; }

    GradedPoly trim(const GradedPoly& p, int x_budget) const {
        if (x_budget < 0) return GradedPoly(ring);
        return p.restricted(base_weights, base_truncation).restricted(x_degrees, x_budget);
    }

    // coefficient of x1^i may carry x-degree at most order - i
    Series trim(const Series& s) const {
        Series out(ring, s.variable(), 0, order);
        for (int i = std::max(0, s.lowest()); i <= order; ++i) out.set_coeff(i, trim(s.coeff(i), order - i));
        return out;
    }

    GradedPoly x_power(std::size_t index, std::uint32_t e) const {
        GradedPoly p(ring);
        p.add_term(Monomial::generator(index, 1, e), Rational(1));
        return p;
    }

    // exchanges the roles of x2 and x3
    GradedPoly swap_x(const GradedPoly& p) const {
        GradedPoly out(ring);
        for (const auto& [m, c] : p.terms()) {
            Monomial t;
            for (const auto& [i, e] : m.entries()) {
                std::size_t j = i == x2() ? x3() : i == x3() ? x2() : i;
                t = t * Monomial::generator(j, ring->weight(j), e);
            }
            out.add_term(t, c);
        }
        return out;
    }

    // sum_k f_k g^k with every intermediate trimmed to total degree <= order
    Series substitute(const std::vector<GradedPoly>& f, const Series& g) const {
        Series acc = Series::constant(f.back(), g.variable(), order);
        for (int k = static_cast<int>(f.size()) - 2; k >= 0; --k) {
            acc = trim(acc * g);
            acc = acc + Series::constant(f[static_cast<std::size_t>(k)], g.variable(), order);
        }
        return trim(acc);
    }
};

} // namespace

TwoVariableLaw group_law(const FormalGroupLaw& fgl) {
    const int N = fgl.order();
    Extended ext(fgl.ring(), N);
    auto up = [&](const GradedPoly& p) { return embed(p, ext.ring); };

    Series log1 = fgl.log.map_coefficients(up, ext.ring).renamed("x1");
    GradedPoly log2(ext.ring);
    for (int k = 1; k <= N; ++k) log2 += up(fgl.log.coeff(k)) * ext.x_power(ext.x2(), static_cast<std::uint32_t>(k));
    Series sum = log1 + Series::constant(ext.trim(log2, N), "x1", N);

    std::vector<GradedPoly> e;
    for (int k = 0; k <= N; ++k) e.push_back(up(fgl.exp.coeff(k)));
    return {ext.substitute(e, sum), fgl.ring(), N};
}

GradedPoly TwoVariableLaw::coefficient(int i, int j) const {
    GradedPoly out(base);
    if (i < 0 || j < 0 || i + j > order) return out;
    Extended ext = Extended::of(*this);
    const GradedPoly row = series.coeff(i);
    for (const auto& [m, c] : row.terms()) {
        if (m.exponent(ext.x2()) != static_cast<std::uint32_t>(j) || m.exponent(ext.x3()) != 0) continue;
        Monomial t;
        for (const auto& [g, e] : m.entries())
            if (g < ext.base_size) t = t * Monomial::generator(g, base->weight(g), e);
        out.add_term(t, c);
    }
    return out;
}

Series swapped(const TwoVariableLaw& law) {
    Extended ext = Extended::of(law);
    Series out(ext.ring, "x1", 0, law.order);
    for (int j = 0; j <= law.order; ++j) {
        GradedPoly acc(ext.ring);
        for (int i = 0; i + j <= law.order; ++i)
            acc += embed(law.coefficient(i, j), ext.ring) * ext.x_power(ext.x2(), static_cast<std::uint32_t>(i));
        out.set_coeff(j, acc);
    }
    return out;
}

Series right_unit(const TwoVariableLaw& law) {
    Series out(law.base, "u", 0, law.order);
    for (int i = 0; i <= law.order; ++i) out.set_coeff(i, law.coefficient(i, 0));
    return out;
}

std::pair<Series, Series> associativity_sides(const TwoVariableLaw& law) {
    Extended ext = Extended::of(law);
    const int N = law.order;

    // F(F(x1,x2), x3): the outer law's coefficients use x3 as second variable
    std::vector<GradedPoly> outer;
    for (int k = 0; k <= N; ++k) outer.push_back(ext.swap_x(law.series.coeff(k)));
    Series lhs = ext.substitute(outer, law.series);

    // F(x1, F(x2,x3)): substitute H = F(x2,x3) for x2 in each coefficient
    GradedPoly H(ext.ring);
    for (int a = 0; a <= N; ++a)
        H += ext.x_power(ext.x2(), static_cast<std::uint32_t>(a)) * ext.swap_x(law.series.coeff(a));
    H = ext.trim(H, N);
    std::vector<GradedPoly> hpow{GradedPoly::constant(ext.ring, Rational(1))};
    for (int j = 1; j <= N; ++j) hpow.push_back(ext.trim(hpow.back() * H, N));

    Series rhs(ext.ring, "x1", 0, N);
    for (int i = 0; i <= N; ++i) {
        GradedPoly acc(ext.ring);
        const GradedPoly row = law.series.coeff(i);
        for (const auto& [m, c] : row.terms()) {
            Monomial rest;
            std::uint32_t j = 0;
            for (const auto& [g, e] : m.entries()) {
                if (g == ext.x2()) j = e;
                else rest = rest * Monomial::generator(g, ext.ring->weight(g), e);
            }
            GradedPoly term(ext.ring);
            term.add_term(rest, c);
            acc += term * hpow[j];
        }
        rhs.set_coeff(i, ext.trim(acc, N - i));
    }
    return {lhs, rhs};
}

Series evaluate_law(const TwoVariableLaw& law, const Series& a, const Series& b) {
    if (a.valuation() < 1 || b.valuation() < 1)
        throw CompositionDomain("evaluate_law: arguments must vanish at 0");
    require_same_ring(a.ring(), law.base, "evaluate_law");
    const int order = std::min({law.order, a.order(), b.order()});
    std::vector<Series> ap{Series::constant(GradedPoly::constant(law.base, Rational(1)), a.variable(), order)};
    std::vector<Series> bp = ap;
    for (int k = 1; k <= order; ++k) {
        ap.push_back((ap.back() * a).truncated(order));
        bp.push_back((bp.back() * b.renamed(a.variable())).truncated(order));
    }
    Series out(law.base, a.variable(), 0, order);
    for (int i = 0; i <= order; ++i)
        for (int j = 0; i + j <= order; ++j) {
            GradedPoly c = law.coefficient(i, j);
            if (c.is_zero()) continue;
            out = out + (ap[static_cast<std::size_t>(i)] * bp[static_cast<std::size_t>(j)]).truncated(order) * c;
        }
    return out;
}

Series fgl_inverse(const FormalGroupLaw& fgl) { return compose(fgl.exp, -fgl.log); }

// ---------------------------------------------------------------------------
// Orientation and generators

Series orientation_series(const FormalGroupLaw& fgl, const GradedPoly& t0) {
    require_same_ring(t0.ring(), fgl.ring(), "orientation_series");
    if (!t0.is_unit()) throw NonUnit("orientation_series: unit scale " + t0.str() + " is not invertible");
    Series scaled = -(fgl.log * t0);
    Series one = Series::constant(GradedPoly::constant(fgl.ring(), Rational(1)), "u", fgl.order());
    Series t_of_u = one - exp(scaled);
    return revert(t_of_u).renamed("t");
}

GeneratorTable extract_generators(const Series& u, const GradedPoly& t0) {
    require_same_ring(u.ring(), t0.ring(), "extract_generators");
    const RingPtr& ring = u.ring();
    const int N = u.order();
    if (N < 1 || u.valuation() < 1) throw DomainError("extract_generators: orientation must start at t");
    if (!(u.coeff(1) * t0 == GradedPoly::constant(ring, Rational(1))))
        throw DomainError("extract_generators: leading coefficient is not 1/t0 (inconsistent t0)");

    GeneratorTable table{.b = {}, .a = {}, .c = {}, .t0 = t0, .log_t0 = log_unit(t0), .order = N};
    Series scaled = u * t0;
    for (int k = 1; k + 1 <= N; ++k) table.b.push_back(scaled.coeff(k + 1));

    std::vector<GradedPoly> u_over_t;
    for (int k = 0; k + 1 <= N; ++k) u_over_t.push_back(scaled.coeff(k + 1));
    Series normalized_ratio = reciprocal(Series::from_coefficients(ring, "t", 0, u_over_t));
    Series a_series = log(normalized_ratio);
    for (int k = 1; k <= a_series.order(); ++k) table.a.push_back(a_series.coeff(k));

    // sum_k a_k (1 - q^-1)^k = sum_j s_j q^-j with s_j = (-1)^j sum_{k>=j} C(k,j) a_k
    const int K = static_cast<int>(table.a.size());
    for (int j = 0; j <= K; ++j) {
        GradedPoly s(ring);
        for (int k = std::max(j, 1); k <= K; ++k) s += table.a_at(k) * binomial(k, j);
        if (j % 2) s = -s;
        table.c.push_back(j == 0 ? s : s * Rational(j));
    }
    return table;
}

Series reconstruct_orientation(const GeneratorTable& table) {
    const RingPtr& ring = table.t0.ring();
    Series u = Series::variable(ring, "t", table.order);
    for (int k = 1; k + 1 <= table.order; ++k) u.set_coeff(k + 1, table.b_at(k));
    return u * table.t0.inverse();
}

GradedPoly s_at_one(const GeneratorTable& table) {
    GradedPoly s = table.c.at(0);
    for (std::size_t k = 1; k < table.c.size(); ++k) s += table.c[k] * Rational(1, static_cast<long>(k));
    return s;
}

namespace {

nlohmann::json poly_list(const std::vector<GradedPoly>& v) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& p : v) out.push_back(p.to_json());
    return out;
}

std::vector<GradedPoly> read_list(const nlohmann::json& j, const RingPtr& ring) {
    std::vector<GradedPoly> out;
    for (const auto& p : j) out.push_back(GradedPoly::from_json(p, ring));
    return out;
}

} // namespace

nlohmann::json GeneratorTable::to_json() const {
    return {{"order", order},     {"t0", t0.to_json()}, {"log_t0", log_t0.to_json()},
            {"b", poly_list(b)},  {"a", poly_list(a)},  {"c", poly_list(c)}};
}

GeneratorTable GeneratorTable::from_json(const nlohmann::json& j, const RingPtr& ring) {
    return {read_list(j.at("b"), ring), read_list(j.at("a"), ring), read_list(j.at("c"), ring),
            GradedPoly::from_json(j.at("t0"), ring), GradedPoly::from_json(j.at("log_t0"), ring),
            j.at("order").get<int>()};
}

bool operator==(const GeneratorTable& x, const GeneratorTable& y) {
    return x.order == y.order && x.b == y.b && x.a == y.a && x.c == y.c && x.t0 == y.t0 &&
           x.log_t0 == y.log_t0;
}

// ---------------------------------------------------------------------------
// Genera

Genus parse_genus(std::string_view name) {
    if (name == "additive") return Genus::Additive;
    if (name == "classical_K") return Genus::ClassicalK;
    if (name == "hirzebruch") return Genus::Hirzebruch;
    throw DomainError("unknown genus '" + std::string(name) + "'");
}

std::string genus_name(Genus g) {
    switch (g) {
    case Genus::Additive: return "additive";
    case Genus::ClassicalK: return "classical_K";
    case Genus::Hirzebruch: return "hirzebruch";
    }
    return "?";
}

GenusSpecialization specialize_genus(Genus genus, const RingPtr& source) {
    const int D = source->truncation();
    RingPtr target = genus == Genus::Hirzebruch ? hirzebruch_ring(D) : Ring::make({}, D);
    GradedPoly one = GradedPoly::constant(target, Rational(1));
    GenusSpecialization spec{genus, target, {}, one};
    if (genus == Genus::Hirzebruch) spec.t0 = one - GradedPoly::generator(target, "y");

    for (const auto& g : source->generators()) {
        if (g.name.size() < 2 || g.name[0] != 'p')
            throw MissingAssignment("genus specialization has no image for '" + g.name + "'");
        const int n = std::stoi(g.name.substr(1));
        GradedPoly image(target);
        switch (genus) {
        case Genus::Additive: break;
        case Genus::ClassicalK: image = one; break;
        case Genus::Hirzebruch: {
            GradedPoly y = GradedPoly::generator(target, "y");
            for (int p = 0; p <= n; ++p) image += y.pow(static_cast<unsigned>(p));
            break;
        }
        }
        spec.phi.emplace(g.name, image);
    }
    return spec;
}

GradedPoly GenusSpecialization::apply(const GradedPoly& x) const { return specialize(x, phi, target); }

Series GenusSpecialization::apply(const Series& s) const {
    return s.map_coefficients([&](const GradedPoly& c) { return apply(c); }, target);
}

FormalGroupLaw GenusSpecialization::apply(const FormalGroupLaw& fgl) const { return fgl_from_log(apply(fgl.log)); }

GeneratorTable GenusSpecialization::apply(const GeneratorTable& table) const {
    auto map_all = [&](const std::vector<GradedPoly>& v) {
        std::vector<GradedPoly> out;
        for (const auto& p : v) out.push_back(apply(p));
        return out;
    };
    return {map_all(table.b), map_all(table.a), map_all(table.c), apply(table.t0), apply(table.log_t0),
            table.order};
}

} // namespace mqc
