#include "test_support.hpp"

#include "mqc/errors.hpp"
#include "mqc/expr_parser.hpp"
#include "mqc/formal_group.hpp"

using namespace mqc;

namespace {

GradedPoly num(const RingPtr& ring, Rational r) { return GradedPoly::constant(ring, r); }

// t / ((1-y) + y t), the Hirzebruch orientation written in t = 1 - q^-1
Series hirzebruch_closed_form(const RingPtr& ring, int order) {
    auto y = GradedPoly::generator(ring, "y");
    auto base = (num(ring, 1) - y).inverse();
    Series out(ring, "t", 0, order);
    for (int k = 1; k <= order; ++k) {
        auto c = base.pow(static_cast<unsigned>(k)) * y.pow(static_cast<unsigned>(k - 1));
        out.set_coeff(k, (k - 1) % 2 ? -c : c);
    }
    return out;
}

} // namespace

TEST_CASE("Mishchenko logarithm and its reversion") {
    auto fgl = mishchenko_log(5, 5);
    auto ring = fgl.ring();
    CHECK(ring->size() == 4);
    CHECK(fgl.log.coeff(3) == GradedPoly::generator(ring, "p2") * Rational(1, 3));
    // exp(z) = z - p1/2 z^2 + (p1^2/2 - p2/3) z^3 + ...
    CHECK(fgl.exp.coeff(2) == parse_poly(ring, "-p1/2"));
    CHECK(fgl.exp.coeff(3) == parse_poly(ring, "p1^2/2 - p2/3"));
    CHECK(compose(fgl.log, fgl.exp) == Series::variable(ring, "u", 5).renamed(fgl.exp.variable()));
    CHECK_THROWS_AS(mishchenko_log(1, 4), DomainError);
}

TEST_CASE("universal group law satisfies the axioms at order 8, weight 8") {
    auto fgl = mishchenko_log(8, 8);
    auto law = group_law(fgl);
    auto unit = right_unit(law);
    CHECK(unit == Series::variable(fgl.ring(), "u", 8));
    CHECK(swapped(law) == law.series);
    auto [lhs, rhs] = associativity_sides(law);
    CHECK(lhs == rhs);
    // F = x1 + x2 - p1 x1 x2 + ...
    CHECK(law.coefficient(1, 1) == -GradedPoly::generator(fgl.ring(), "p1"));
    CHECK(law.coefficient(1, 0) == num(fgl.ring(), 1));
    CHECK(law.coefficient(0, 0).is_zero());
    for (int i = 0; i <= 8; ++i)
        for (int j = 0; i + j <= 8; ++j) CHECK(law.coefficient(i, j) == law.coefficient(j, i));
}

TEST_CASE("a perturbed law is caught by the associativity check") {
    auto fgl = mishchenko_log(5, 5);
    auto law = group_law(fgl);
    auto bumped = law.series;
    auto row = bumped.coeff(2);
    row += GradedPoly::generator(row.ring(), "x2") * Rational(1, 7);
    bumped.set_coeff(2, row);
    TwoVariableLaw broken{bumped, law.base, law.order};
    auto [lhs, rhs] = associativity_sides(broken);
    CHECK_FALSE(lhs == rhs);
}

TEST_CASE("orientation generators of the universal class") {
    auto fgl = mishchenko_log(8, 8);
    auto ring = fgl.ring();
    auto u = orientation_series(fgl, num(ring, 1));
    auto table = extract_generators(u, num(ring, 1));
    // hand reversion of t = z - z^2/2 + ..., z = u + p1 u^2/2 gives u = t + (1-p1)/2 t^2 + ...
    CHECK(table.b_at(1) == parse_poly(ring, "(1 - p1)/2"));
    CHECK(table.a_at(1) == parse_poly(ring, "(p1 - 1)/2"));
    CHECK(s_at_one(table).is_zero());
    // the c-list reexpands every known a_k, so c_1 is only (1-p1)/2 at order 2
    auto small = mishchenko_log(2, 2);
    auto one = num(small.ring(), 1);
    auto t2 = extract_generators(orientation_series(small, one), one);
    CHECK(t2.c_at(1) == parse_poly(small.ring(), "(1 - p1)/2"));
    CHECK(t2.c_at(0) == -t2.c_at(1));
    CHECK(reconstruct_orientation(table) == u);
    CHECK(GeneratorTable::from_json(table.to_json(), ring) == table);
    CHECK(GeneratorTable::from_json(nlohmann::json::parse(table.to_json().dump()), ring) == table);
}

TEST_CASE("orientation errors") {
    auto fgl = mishchenko_log(4, 4);
    auto ring = fgl.ring();
    CHECK_THROWS_AS(orientation_series(fgl, GradedPoly::generator(ring, "p1")), NonUnit);
    auto u = orientation_series(fgl, num(ring, 1));
    CHECK_THROWS_AS(extract_generators(u, num(ring, 2)), DomainError);
}

TEST_CASE("classical K and additive specializations") {
    auto fgl = mishchenko_log(8, 8);
    auto u = orientation_series(fgl, num(fgl.ring(), 1));
    auto table = extract_generators(u, num(fgl.ring(), 1));

    auto k = specialize_genus(Genus::ClassicalK, fgl.ring());
    auto uk = k.apply(u);
    CHECK(uk == Series::variable(k.target, "t", 8));
    auto tk = k.apply(table);
    for (const auto& b : tk.b) CHECK(b.is_zero());
    for (const auto& a : tk.a) CHECK(a.is_zero());
    for (const auto& c : tk.c) CHECK(c.is_zero());

    // additive: z = u, so u(t) = -log(1 - t) = sum t^k / k
    auto add = specialize_genus(Genus::Additive, fgl.ring());
    auto ua = orientation_series(add.apply(fgl), num(add.target, 1));
    for (int k = 1; k <= 8; ++k) CHECK(ua.coeff(k) == num(add.target, Rational(1, k)));
    CHECK(add.apply(u) == ua);
}

TEST_CASE("specialization commutes with generator extraction") {
    auto fgl = mishchenko_log(7, 7);
    auto one = num(fgl.ring(), 1);
    auto table = extract_generators(orientation_series(fgl, one), one);
    for (Genus g : {Genus::Additive, Genus::ClassicalK, Genus::Hirzebruch}) {
        auto spec = specialize_genus(g, fgl.ring());
        auto target_one = num(spec.target, 1);
        auto direct = extract_generators(orientation_series(spec.apply(fgl), target_one), target_one);
        CHECK(spec.apply(table) == direct);
    }
}

TEST_CASE("Hirzebruch orientation and its generators") {
    auto fgl = mishchenko_log(8, 8);
    auto h = specialize_genus(Genus::Hirzebruch, fgl.ring());
    auto y = GradedPoly::generator(h.target, "y");
    CHECK(h.phi.at("p3") == parse_poly(h.target, "1 + y + y^2 + y^3"));
    CHECK(h.t0 == num(h.target, 1) - y);

    auto fh = h.apply(fgl);
    auto u = orientation_series(fh, h.t0);
    CHECK(u == hirzebruch_closed_form(h.target, 8));

    auto fh9 = specialize_genus(Genus::Hirzebruch, cobordism_ring(8, 8)).apply(mishchenko_log(9, 8));
    auto table = extract_generators(orientation_series(fh9, h.t0), h.t0);
    for (int k = 1; k <= 8; ++k) CHECK(table.c_at(k) == -y.pow(static_cast<unsigned>(k)));
    CHECK(table.log_t0 == log_unit(h.t0));
    CHECK(s_at_one(table).is_zero());
}

TEST_CASE("formal inverse of the Hirzebruch orientation") {
    auto h = specialize_genus(Genus::Hirzebruch, cobordism_ring(7, 8));
    auto fh = h.apply(mishchenko_log(8, 8));
    auto u = orientation_series(fh, h.t0);
    auto iota = fgl_inverse(fh);
    auto flipped = compose(iota, u);
    // u(1 - q) in t = 1 - q^-1 is -t / ((1-y) - t)
    auto y = GradedPoly::generator(h.target, "y");
    auto r = (num(h.target, 1) - y).inverse();
    Series expect(h.target, "t", 0, 8);
    for (int k = 1; k <= 8; ++k) expect.set_coeff(k, -r.pow(static_cast<unsigned>(k)));
    CHECK(flipped == expect);

    auto law = group_law(fh);
    CHECK(evaluate_law(law, u, flipped).is_zero());
    CHECK_FALSE(evaluate_law(law, u, u).is_zero());
}

TEST_CASE("genus names") {
    CHECK(parse_genus("hirzebruch") == Genus::Hirzebruch);
    CHECK(genus_name(Genus::ClassicalK) == "classical_K");
    CHECK_THROWS_AS(parse_genus("elliptic"), DomainError);
}
