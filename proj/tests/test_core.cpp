#include "test_support.hpp"

#include "mqc/errors.hpp"
#include "mqc/expr_parser.hpp"
#include "mqc/graded_poly.hpp"
#include "mqc/rational.hpp"
#include "mqc/series.hpp"



using namespace mqc;

TEST_CASE("rational arithmetic and parsing") {
    Rational a(1, 2), b(-2, 6);
    CHECK((a + b) == Rational(1, 6));
    CHECK((a * b) == Rational(-1, 6));
    CHECK((a / b) == Rational(-3, 2));
    CHECK(Rational::parse("-6/4") == Rational(-3, 2));
    CHECK(Rational::parse("7").str() == "7");
    CHECK(Rational(3, -9).str() == "-1/3");
    CHECK(Rational(2, 3).pow(-2) == Rational(9, 4));
    CHECK_THROWS_AS(Rational::parse("1/0"), Error);
    CHECK_THROWS_AS(Rational::parse("x"), Error);
    CHECK_THROWS_AS(Rational(0).inverse(), Error);
    CHECK(binomial(6, 2) == Rational(15));
    CHECK(binomial(3, 5) == Rational(0));
    CHECK(factorial(5) == Rational(120));
}

TEST_CASE("graded polynomials respect the truncation") {
    auto ring = cobordism_ring(3, 4);
    auto p1 = GradedPoly::generator(ring, "p1");
    auto p3 = GradedPoly::generator(ring, "p3");
    CHECK((p1 * p3).max_weight() == 4);
    CHECK((p1 * p1 * p3).is_zero());
    CHECK(p1.pow(5).is_zero());

    auto u = GradedPoly::constant(ring, Rational(2)) + p1;
    CHECK(u.is_unit());
    CHECK(u * u.inverse() == GradedPoly::constant(ring, Rational(1)));
    CHECK_THROWS_AS(p1.inverse(), NonUnit);

    auto other = cobordism_ring(3, 5);
    CHECK_THROWS_AS(p1 + GradedPoly::generator(other, "p1"), IncompatibleRing);
}

TEST_CASE("graded polynomial printing and JSON round trip") {
    auto ring = cobordism_ring(2, 4);
    auto x = parse_poly(ring, "1/2 - 1/2*p1 + 3*p1^2*p2");
    CHECK(x.str() == "1/2 - 1/2*p1 + 3*p1^2*p2");
    auto back = GradedPoly::from_json(x.to_json());
    CHECK(back == x);
    CHECK(GradedPoly::from_json(x.to_json(), ring) == x);
    CHECK_THROWS_AS(GradedPoly::from_json(x.to_json(), cobordism_ring(2, 5)), Error);
}

TEST_CASE("parser reports positions and accepts unicode operators") {
    auto ring = hirzebruch_ring(4);
    auto y = GradedPoly::generator(ring, "y");
    auto one = GradedPoly::constant(ring, Rational(1));
    CHECK(parse_poly(ring, "1 \xE2\x88\x92 y\xC2\xB7y") == one - y * y);
    CHECK(parse_poly(ring, "(1-y)^-1") == (one - y).inverse());
    try {
        parse_poly(ring, "1 +\n  z");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() == 3);
    }
    CHECK_THROWS_AS(parse_poly(ring, "1/y"), ParseError);
    CHECK_THROWS_AS(parse_poly(ring, "(1+y"), ParseError);
}

TEST_CASE("specialization is a ring homomorphism") {
    auto src = cobordism_ring(3, 6);
    auto dst = hirzebruch_ring(6);
    auto y = GradedPoly::generator(dst, "y");
    auto one = GradedPoly::constant(dst, Rational(1));
    Assignment phi{{"p1", one + y}, {"p2", one + y + y * y}, {"p3", one + y + y * y + y.pow(3)}};
    // generators go to non-homogeneous images, so the factors are drawn with
    // weight <= 3 to keep every product inside the truncation
    auto low = cobordism_ring(3, 3);
    test::Rng rng(11);
    for (int i = 0; i < 20; ++i) {
        auto a = embed(test::random_poly(rng, low, 3), src);
        auto b = embed(test::random_poly(rng, low, 3), src);
        CHECK(specialize(a * b, phi, dst) == specialize(a, phi, dst) * specialize(b, phi, dst));
        CHECK(specialize(a + b, phi, dst) == specialize(a, phi, dst) + specialize(b, phi, dst));
    }
    Assignment partial{{"p1", one}};
    CHECK_THROWS_AS(specialize(GradedPoly::generator(src, "p2"), partial, dst), MissingAssignment);
    Assignment heavy{{"p1", y * y}, {"p2", one}, {"p3", one}};
    CHECK_THROWS_AS(specialize(GradedPoly::generator(src, "p1"), heavy, dst), DomainError);
}

TEST_CASE("log and exp of nilpotents are inverse") {
    auto ring = hirzebruch_ring(6);
    auto y = GradedPoly::generator(ring, "y");
    auto one = GradedPoly::constant(ring, Rational(1));
    auto l = log_unit(one - y);
    // -log(1-y) = y + y^2/2 + ...
    GradedPoly expect(ring);
    for (int k = 1; k <= 6; ++k) expect -= y.pow(static_cast<unsigned>(k)) * Rational(1, k);
    CHECK(l == expect);
    CHECK(exp_nilpotent(l) == one - y);
    CHECK_THROWS_AS(log_unit(one + one), DomainError);
    CHECK(adams_coefficients(one + y, 3) == one + y.pow(3));
}

TEST_CASE("series precision is tracked pessimistically") {
    auto ring = Ring::make({}, 0);
    auto t = Series::variable(ring, "t", 5);
    auto one = Series::constant(GradedPoly::constant(ring, Rational(1)), "t", 5);
    auto geo = reciprocal(one - t);
    for (int n = 0; n <= 5; ++n) CHECK(geo.coeff(n) == GradedPoly::constant(ring, Rational(1)));
    CHECK_THROWS_AS(geo.coeff(6), PrecisionError);

    // t^-1 * (t + O(t^6)) is known through t^4 only
    auto inv_t = reciprocal(t);
    CHECK(inv_t.lowest() == -1);
    CHECK((inv_t * t).order() == 4);
    CHECK_THROWS_AS(reciprocal(Series(ring, "t", 0, 4)), NonUnit);
}

TEST_CASE("exp, log, compose and revert agree with closed forms") {
    auto ring = Ring::make({}, 0);
    auto c = [&](Rational r) { return GradedPoly::constant(ring, r); };
    const int N = 8;
    auto t = Series::variable(ring, "t", N);
    auto e = exp(t);
    for (int n = 0; n <= N; ++n) CHECK(e.coeff(n) == c(Rational(1) / factorial(n)));
    auto l = log(e);
    CHECK(l == t);

    // reversion of t - t^2 is the Catalan series
    auto f = t - t * t;
    auto g = revert(f);
    for (int n = 1; n <= N; ++n) CHECK(g.coeff(n) == c(binomial(2 * n - 2, n - 1) / Rational(n)));
    CHECK(compose(f, g) == t);
    CHECK_THROWS_AS(revert(t * t), ReversionError);
    CHECK_THROWS_AS(compose(e, e), CompositionDomain);
}

TEST_CASE("Bernoulli numbers from x/(e^x - 1)") {
    auto ring = Ring::make({}, 0);
    const int N = 10;
    auto x = Series::variable(ring, "x", N + 1);
    auto one = Series::constant(GradedPoly::constant(ring, Rational(1)), "x", N + 1);
    auto gen = divide(x, exp(x) - one);
    BernoulliCache b(N);
    for (int n = 0; n <= N; ++n)
        CHECK(gen.coeff(n) == GradedPoly::constant(ring, b[n] / factorial(n)));
    CHECK(bernoulli(1) == Rational(-1, 2));
    CHECK(bernoulli(12) == Rational(-691, 2730));
}

TEST_CASE("expansion at a root of unity") {
    // x * 1/(1-q) at q = e^x equals -x/(e^x - 1)
    auto ring = Ring::make({}, 0);
    auto one = GradedPoly::constant(ring, Rational(1));
    QRational f;
    f.numerator.emplace(0, one);
    f.denominator.push_back({{{0, one}, {1, -one}}, 1});
    auto s = expand_at_root_of_unity(ring, f, Rational(1), 10);
    CHECK(s.lowest() <= -1);
    BernoulliCache b(12);
    for (int n = -1; n <= 10; ++n)
        CHECK(s.coeff(n) == GradedPoly::constant(ring, -b[n + 1] / factorial(n + 1)));
}

TEST_CASE("series JSON round trip") {
    auto ring = hirzebruch_ring(3);
    auto y = GradedPoly::generator(ring, "y");
    auto s = Series::from_coefficients(ring, "t", -1, {y, y * y, GradedPoly::constant(ring, Rational(2, 3))});
    CHECK(Series::from_json(s.to_json(), ring) == s);
    CHECK(Series::from_json(nlohmann::json::parse(s.to_json().dump()), ring) == s);
}
