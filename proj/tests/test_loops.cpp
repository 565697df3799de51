#include "test_support.hpp"

#include "mqc/errors.hpp"
#include "mqc/expr_parser.hpp"
#include "mqc/qpoly.hpp"
#include "mqc/rational_loop.hpp"

using namespace mqc;

namespace {

GradedPoly num(const RingPtr& ring, Rational r) { return GradedPoly::constant(ring, r); }

// Evaluates the canonical form at a rational point away from all poles.
GradedPoly eval_canonical(const ScalarLoop& f, const Rational& r) {
    GradedPoly v(f.ring());
    for (const auto& [n, c] : f.laurent_part()) v += c * r.pow(n);
    for (const auto& [p, parts] : f.principal())
        for (std::size_t j = 0; j < parts.size(); ++j) {
            GradedPoly nval(f.ring());
            for (int k = 0; k <= parts[j].degree(); ++k) nval += parts[j][k] * r.pow(k);
            v += nval * p.poly().eval(r).pow(-static_cast<int>(j + 1));
        }
    return v;
}

struct RawLoop {
    Laurent numerator;
    std::map<PoleFactor, int> den;

    GradedPoly eval(const RingPtr& ring, const Rational& r) const {
        GradedPoly v(ring);
        for (const auto& [n, c] : numerator) v += c * r.pow(n);
        Rational d(1);
        for (const auto& [p, m] : den) d *= p.poly().eval(r).pow(m);
        return v * d.inverse();
    }
};

const std::vector<PoleFactor>& pole_menu() {
    static const std::vector<PoleFactor> menu{PoleFactor::root_of_unity(1), PoleFactor::root_of_unity(2),
                                              PoleFactor::root_of_unity(3), PoleFactor::root_of_unity(4),
                                              PoleFactor::root_of_unity(6), PoleFactor::linear(Rational(2))};
    return menu;
}

RawLoop random_raw(Rng& rng, const RingPtr& ring) {
    RawLoop raw;
    const int terms = static_cast<int>(rng.between(1, 4));
    for (int i = 0; i < terms; ++i) {
        auto c = random_poly(rng, ring, 2);
        if (c.is_zero()) continue;
        auto [it, inserted] = raw.numerator.try_emplace(static_cast<int>(rng.between(-3, 4)), c);
        if (!inserted) it->second += c;
    }
    std::erase_if(raw.numerator, [](const auto& kv) { return kv.second.is_zero(); });
    const int poles = static_cast<int>(rng.between(0, 3));
    for (int i = 0; i < poles; ++i)
        raw.den[pole_menu()[static_cast<std::size_t>(rng.between(0, 5))]] += static_cast<int>(rng.between(1, 2));
    return raw;
}

} // namespace

TEST_CASE("rational polynomial arithmetic") {
    CHECK(cyclotomic(1) == QPoly({Rational(-1), Rational(1)}));
    CHECK(cyclotomic(3) == QPoly({Rational(1), Rational(1), Rational(1)}));
    CHECK(cyclotomic(4) == QPoly({Rational(1), Rational(0), Rational(1)}));
    CHECK(cyclotomic(6) == QPoly({Rational(1), Rational(-1), Rational(1)}));
    CHECK(cyclotomic(12).degree() == 4);

    Rng rng(5);
    for (int i = 0; i < 30; ++i) {
        std::vector<Rational> a, b;
        for (int k = 0; k < 5; ++k) a.push_back(rng.small_rational());
        for (int k = 0; k < 3; ++k) b.push_back(rng.small_rational());
        QPoly pa(a), pb(b);
        if (pb.is_zero()) continue;
        auto [q, r] = divmod(pa, pb);
        CHECK(q * pb + r == pa);
        CHECK(r.degree() < pb.degree());
        auto [g, u, v] = ext_gcd(pa, pb);
        CHECK(u * pa + v * pb == g);
    }
    CHECK_THROWS_AS(inverse_mod(QPoly({Rational(1), Rational(-1)}), cyclotomic(1).pow(2)), DomainError);
}

TEST_CASE("factoring over Q into linear and cyclotomic factors") {
    // 3 q^2 (1 - q)^2 (1 + q + q^2) (1 - 2q)
    QPoly p = QPoly::monomial(2, Rational(3)) * QPoly({Rational(1), Rational(-1)}).pow(2) * cyclotomic(3) *
              QPoly({Rational(1), Rational(-2)});
    auto f = factor(p);
    CHECK(f.shift == 2);
    CHECK(f.unit == Rational(3));
    CHECK(f.factors.at(PoleFactor::root_of_unity(1)) == 2);
    CHECK(f.factors.at(PoleFactor::root_of_unity(3)) == 1);
    CHECK(f.factors.at(PoleFactor::linear(Rational(2))) == 1);
    CHECK(PoleFactor::linear(Rational(2)).location() == "1/2");
    CHECK(PoleFactor::parse_location("1/2") == PoleFactor::linear(Rational(2)));
    CHECK(PoleFactor::parse_location("zeta_4") == PoleFactor::parse_location("i"));
    CHECK(PoleFactor::parse_location("zeta_2") == PoleFactor::linear(Rational(-1)));
    CHECK_THROWS_AS(PoleFactor::parse_location("0"), UndeclaredPole);
    CHECK_THROWS_AS(PoleFactor::parse_location("zeta_x"), UndeclaredPole);
    CHECK_THROWS_AS(factor(QPoly({Rational(1), Rational(1), Rational(2)})), UnsupportedInput);
}

TEST_CASE("canonical partial fractions") {
    auto ring = Ring::make({}, 0);
    auto one = num(ring, 1);
    auto P1 = PoleFactor::root_of_unity(1);

    // 1/(q(1-q)) = 1/q + 1/(1-q)
    auto f = ScalarLoop::fraction(ring, {{-1, one}}, {{P1, 1}});
    CHECK(f == ScalarLoop::monomial(ring, -1, one) + ScalarLoop::pole(P1, 1, one));
    CHECK(f.residue_zero() == one);
    CHECK(f.residue_at(P1) == -one);
    CHECK(f.residue_infinity().is_zero());

    // q/(1-q) = -1 + 1/(1-q)
    auto g = ScalarLoop::fraction(ring, {{1, one}}, {{P1, 1}});
    CHECK(g == ScalarLoop::constant(-one) + ScalarLoop::pole(P1, 1, one));
    CHECK(g.str() == "-1 + 1/(1 - q)");
    CHECK(g.at_zero() == num(ring, 0));
    CHECK(g.at_infinity() == -one);
    CHECK_THROWS_AS(ScalarLoop::monomial(ring, 2, one).at_infinity(), DomainError);
    CHECK_THROWS_AS(f.at_zero(), DomainError);

    // a Laurent polynomial has no residue away from 0 and infinity
    auto lp = ScalarLoop::laurent(ring, {{-2, one}, {3, one}});
    CHECK(lp.residue_at(PoleFactor::root_of_unity(3)).is_zero());
}

TEST_CASE("canonical form agrees with the raw fraction at rational points") {
    auto ring = hirzebruch_ring(3);
    Rng rng(2024);
    const std::vector<Rational> points{Rational(3), Rational(-5, 2), Rational(7, 3)};
    for (int i = 0; i < 60; ++i) {
        auto raw = random_raw(rng, ring);
        auto f = ScalarLoop::fraction(ring, raw.numerator, raw.den);
        for (const auto& r : points) CHECK(eval_canonical(f, r) == raw.eval(ring, r));
        auto again = f.as_fraction();
        CHECK(ScalarLoop::fraction(ring, again.numerator, again.denominator) == f);
        auto refl = f.reflected();
        CHECK(refl.reflected() == f);
        CHECK(eval_canonical(refl, Rational(3)) == eval_canonical(f, Rational(1, 3)));
    }
}

TEST_CASE("loop arithmetic matches pointwise arithmetic") {
    auto ring = hirzebruch_ring(2);
    Rng rng(77);
    for (int i = 0; i < 40; ++i) {
        auto a = random_raw(rng, ring);
        auto b = random_raw(rng, ring);
        auto fa = ScalarLoop::fraction(ring, a.numerator, a.den);
        auto fb = ScalarLoop::fraction(ring, b.numerator, b.den);
        Rational r(5, 3);
        CHECK(eval_canonical(fa * fb, r) == eval_canonical(fa, r) * eval_canonical(fb, r));
        CHECK(eval_canonical(fa + fb, r) == eval_canonical(fa, r) + eval_canonical(fb, r));
        CHECK((fa - fa).is_zero());
    }
}

TEST_CASE("total residue vanishes on random loops") {
    auto ring = hirzebruch_ring(3);
    Rng rng(99);
    for (int i = 0; i < 100; ++i) {
        auto raw = random_raw(rng, ring);
        auto f = ScalarLoop::fraction(ring, raw.numerator, raw.den);
        GradedPoly total = f.residue_zero() + f.residue_infinity();
        for (const auto& [p, parts] : f.principal()) total += f.residue_at(p);
        CHECK(total.is_zero());
    }
}

TEST_CASE("cyclotomic residues sum over the Galois orbit") {
    // 1/(1+q^2) = (1/2)/(1 - iq) + (1/2)/(1 + iq): residues at +-i are +-i/2, summing to 0;
    // q/(1+q^2) has residue 1/2 at each of i and -i.
    auto ring = Ring::make({}, 0);
    auto one = num(ring, 1);
    auto P4 = PoleFactor::root_of_unity(4);
    CHECK(ScalarLoop::fraction(ring, {{0, one}}, {{P4, 1}}).residue_at(P4).is_zero());
    CHECK(ScalarLoop::fraction(ring, {{1, one}}, {{P4, 1}}).residue_at(P4) == one);
}

TEST_CASE("parsing loop expressions") {
    auto ring = hirzebruch_ring(3);
    auto y = GradedPoly::generator(ring, "y");
    auto one = num(ring, 1);
    auto P1 = PoleFactor::root_of_unity(1);

    CHECK(parse_scalar_loop(ring, "q/(1-q)") == ScalarLoop::constant(-one) + ScalarLoop::pole(P1, 1, one));
    // nilpotent poles expand to Laurent polynomials
    auto dil = parse_scalar_loop(ring, "(1-q)/(1-y*q)");
    CHECK(dil.is_laurent());
    Laurent expect{{0, one}, {1, y - one}, {2, y * y - y}, {3, y.pow(3) - y * y}, {4, -y.pow(3)}};
    CHECK(dil == ScalarLoop::laurent(ring, expect));

    auto cyc = parse_scalar_loop(ring, "1/(1-q^3)");
    CHECK(cyc.multiplicity(P1) == 1);
    CHECK(cyc.multiplicity(PoleFactor::root_of_unity(3)) == 1);
    CHECK(parse_scalar_loop(ring, "1/(1+q^2)").multiplicity(PoleFactor::root_of_unity(4)) == 1);
    CHECK(parse_scalar_loop(ring, "(1-q)^-2") == ScalarLoop::pole(P1, 2, one));
    // mixed: 1/((1-q)(1-yq)) keeps the pole at 1 and expands the nilpotent factor
    auto mixed = parse_scalar_loop(ring, "1/((1-q)*(1-y*q))");
    CHECK(mixed.multiplicity(P1) == 1);
    CHECK(mixed.at_zero() == one);

    CHECK_THROWS_AS(parse_scalar_loop(ring, "1/y"), ParseError);
    CHECK_THROWS_AS(parse_scalar_loop(ring, "1/(1+q+2*q^2)"), ParseError);
    CHECK_THROWS_AS(parse_scalar_loop(ring, "1/(q-q)"), ParseError);
    CHECK_THROWS_AS(parse_scalar_loop(ring, "x/(1-q)"), ParseError);
}

TEST_CASE("loop JSON round trip") {
    auto ring = hirzebruch_ring(3);
    auto f = parse_scalar_loop(ring, "y*q^-2 + (2+q)/(1+q+q^2)^2 + 1/(1-2*q) + y/(1-q)^3");
    auto j = f.to_json();
    CHECK(ScalarLoop::from_json(j, ring) == f);
    CHECK(ScalarLoop::from_json(nlohmann::json::parse(j.dump()), ring) == f);
    CHECK(j["poles"][0]["location"] == "1");
    CHECK(j["poles"][1]["location"] == "1/2");
    CHECK(j["poles"][2]["location"] == "zeta_3");
}

TEST_CASE("expansion at roots of unity") {
    auto ring = Ring::make({}, 0);
    BernoulliCache b(12);
    auto f = parse_scalar_loop(ring, "1/(1-q)");
    auto s = expand_at(f, Rational(1), 10);
    for (int n = -1; n <= 10; ++n) CHECK(s.coeff(n) == num(ring, -b[n + 1] / factorial(n + 1)));
    // q = -e^x turns 1/(1+q) into the same series
    auto g = parse_scalar_loop(ring, "1/(1+q)");
    CHECK(expand_at(g, Rational(-1), 10) == s);
}
