#include "test_support.hpp"

#include "mqc/errors.hpp"
#include "mqc/expr_parser.hpp"
#include "mqc/formal_group.hpp"
#include "mqc/kring.hpp"

using namespace mqc;

namespace {

GradedPoly num(const RingPtr& ring, Rational r) { return GradedPoly::constant(ring, r); }

// C(m, n) for any integer m by the falling-factorial product
Rational choose(long m, long n) {
    Rational out(1);
    for (long i = 0; i < n; ++i) out = out * Rational(m - i) / Rational(i + 1);
    return out;
}

Element line(const AlgebraPtr& a, int k) { return a->basis(*a->index_of("L")).pow(k); }

} // namespace

TEST_CASE("proj(1) Gram matrix and proj(2) Euler characteristic") {
    auto ring = hirzebruch_ring(4);
    auto p1 = builtin_model("proj1", ring);
    auto d = pairing_and_duals(p1);
    CHECK(d.gram[0][0] == num(ring, 1));
    CHECK(d.gram[0][1] == num(ring, 2));
    CHECK(d.gram[1][0] == num(ring, 2));
    CHECK(d.gram[1][1] == num(ring, 3));
    auto p2 = builtin_model("proj(2)", ring);
    CHECK(p2->rank() == 3);
    CHECK(p2->chi(line(p2, 1)) == num(ring, 3));
    CHECK(builtin_model("point", ring)->rank() == 1);
    CHECK_THROWS_AS(builtin_model("proj0", ring), UnsupportedInput);
    CHECK_THROWS_AS(builtin_model("grass(2,4)", ring), UnsupportedInput);
}

TEST_CASE("Euler characteristics of line bundles on projective space") {
    auto ring = hirzebruch_ring(4);
    for (int n = 1; n <= 3; ++n) {
        auto a = builtin_model("proj" + std::to_string(n), ring);
        for (int k = -5; k <= 5; ++k) {
            CAPTURE(n);
            CAPTURE(k);
            CHECK(a->chi(line(a, k)) == num(ring, choose(n + k, n)));
            // Serre duality, K = O(-n-1)
            Rational sign(n % 2 ? -1 : 1);
            CHECK(a->chi(line(a, -k)) == a->chi(line(a, k - n - 1)) * sign);
        }
        // (1 - L)^{n+1} = 0 but (1 - L)^n != 0
        auto x = a->unit() - line(a, 1);
        CHECK(nilpotency(x, 10) == n + 1);
    }
}

TEST_CASE("duals and the Frobenius pairing") {
    auto ring = hirzebruch_ring(3);
    auto a = builtin_model("proj3", ring);
    auto d = pairing_and_duals(a);
    for (std::size_t i = 0; i < a->rank(); ++i)
        for (std::size_t j = 0; j < a->rank(); ++j)
            CHECK(a->chi(d.basis[i] * d.dual[j]) == num(ring, i == j ? 1 : 0));
    test::Rng rng(11);
    auto random_element = [&] {
        std::vector<GradedPoly> v;
        for (std::size_t i = 0; i < a->rank(); ++i) v.push_back(test::random_poly(rng, ring, 2));
        return a->element(v);
    };
    for (int trial = 0; trial < 20; ++trial) {
        auto x = random_element(), y = random_element(), z = random_element();
        CHECK(a->chi((x * y) * z) == a->chi(x * (y * z)));
        CHECK((x * y) * z == x * (y * z));
        CHECK(x * y == y * x);
    }
}

TEST_CASE("Casimir element does not depend on the basis") {
    auto ring = hirzebruch_ring(2);
    for (int n = 1; n <= 3; ++n) {
        auto a = builtin_model("proj" + std::to_string(n), ring);
        auto standard = casimir(pairing_and_duals(a));
        std::vector<Element> other;
        for (int k = 0; k <= n; ++k) other.push_back(line(a, -k) * num(ring, Rational(k + 1)));
        CHECK(casimir(pairing_and_duals(a, other)) == standard);
        std::vector<Element> mixed;
        auto y = GradedPoly::generator(ring, "y");
        for (int k = 0; k <= n; ++k) mixed.push_back(line(a, k) + a->unit() * (y * Rational(k)));
        CHECK(casimir(pairing_and_duals(a, mixed)) == standard);
    }
    auto a = builtin_model("proj2", ring);
    std::vector<Element> degenerate{a->unit(), a->unit(), line(a, 1)};
    CHECK_THROWS_AS(pairing_and_duals(a, degenerate), DualityError);
}

TEST_CASE("Adams operations are ring maps and compose") {
    auto ring = hirzebruch_ring(3);
    auto a = builtin_model("proj3", ring);
    auto y = GradedPoly::generator(ring, "y");
    test::Rng rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<GradedPoly> u, v;
        for (std::size_t i = 0; i < a->rank(); ++i) {
            u.push_back(test::random_poly(rng, ring, 2));
            v.push_back(test::random_poly(rng, ring, 2));
        }
        auto x = a->element(u), z = a->element(v);
        for (int r = 1; r <= 4; ++r) {
            CHECK(a->adams(r, x * z) == a->adams(r, x) * a->adams(r, z));
            CHECK(a->adams(r, x + z) == a->adams(r, x) + a->adams(r, z));
            for (int s = 1; r * s <= 8; ++s) CHECK(a->adams(r, a->adams(s, x)) == a->adams(r * s, x));
        }
    }
    CHECK(a->adams(3, a->scalar(y)) == a->scalar(y.pow(3)));
    CHECK(a->adams(2, line(a, -1)) == line(a, -2));
    CHECK_THROWS_AS(a->adams(9, a->unit()), DomainError);
}

TEST_CASE("Newton polynomials in exterior powers give Adams operations") {
    auto ring = hirzebruch_ring(2);
    auto a = builtin_model("proj3", ring);
    test::Rng rng(17);
    for (int trial = 0; trial < 12; ++trial) {
        SplitBundle v;
        int rank = 1 + static_cast<int>(rng.between(0, 3));
        for (int i = 0; i < rank; ++i) v.terms.push_back({line(a, static_cast<int>(rng.between(-2, 2))), 1, 1});
        auto lambda = v.exterior_powers(a, 4);
        // lambda^k vanishes above the rank
        for (int k = rank + 1; k <= 4; ++k) CHECK(lambda[static_cast<std::size_t>(k - 1)].is_zero());
        CHECK(lambda[0] == v.value(a));
        for (int r = 1; r <= 4; ++r) {
            auto direct = a->zero();
            for (const auto& t : v.terms) direct = direct + a->adams(r, t.line);
            CHECK(newton_adams(lambda, r) == direct);
            CHECK(v.adams(a, r) == direct);
        }
    }
    SplitBundle two{{{line(a, 1), 2, 1}}};
    auto lam = two.exterior_powers(a, 2);
    CHECK(lam[1] == line(a, 2));
    CHECK_THROWS_AS(newton_adams(lam, 3), DomainError);
    SplitBundle virt{{{line(a, 1), 1, -1}}};
    CHECK_THROWS_AS(virt.exterior_powers(a, 2), DomainError);
}

TEST_CASE("Hirzebruch class on lines and the chi_y genus of projective space") {
    auto ring = hirzebruch_ring(6);
    auto y = GradedPoly::generator(ring, "y");
    auto cy = MultClass::hirzebruch(ring);
    for (int n = 1; n <= 4; ++n) {
        auto a = builtin_model("proj" + std::to_string(n), ring);
        SplitBundle l{{{line(a, 1), 1, 1}}};
        SplitBundle trivial{{{a->unit(), 1, 1}}};
        for (auto mode : {EvalMode::LineProduct, EvalMode::AdamsExponential}) {
            CHECK(eval_class(a, cy, l, mode) == a->unit() - line(a, -1) * y);
            CHECK(eval_class(a, cy, trivial, mode) == a->scalar(num(ring, 1) - y));
        }
        // Hodge numbers of CP^n: h^{p,p} = 1, so chi_y = sum_p y^p
        GradedPoly hodge(ring);
        for (int p = 0; p <= n; ++p) hodge += y.pow(static_cast<unsigned>(p));
        auto tangent = tangent_proj(a);
        CHECK(tangent.rank() == n);
        auto value = pushforward_chi(eval_class(a, cy, tangent, EvalMode::AdamsExponential));
        CHECK(value == hodge);
        CHECK(pushforward_chi(eval_class(a, cy, tangent, EvalMode::LineProduct)) == hodge);
        SplitBundle honest{{{line(a, 1), n + 1, 1}}};
        CHECK(pushforward_chi(eval_class(a, cy, honest, EvalMode::LineProduct)) == hodge * (num(ring, 1) - y));
        // the same number from the specialized generator
        auto source = cobordism_ring(n, n);
        auto spec = specialize_genus(Genus::Hirzebruch, source);
        CHECK(embed(spec.apply(GradedPoly::generator(source, "p" + std::to_string(n))), ring) == hodge);
    }
}

TEST_CASE("classical class is trivial") {
    auto ring = hirzebruch_ring(3);
    auto a = builtin_model("proj2", ring);
    auto cls = MultClass::classical(ring);
    auto tangent = tangent_proj(a);
    for (auto mode : {EvalMode::LineProduct, EvalMode::AdamsExponential})
        CHECK(eval_class(a, cls, tangent, mode) == a->unit());
    CHECK(pushforward_chi(a->unit()) == num(ring, 1));
}

TEST_CASE("universal class: line product agrees with the Adams exponential") {
    auto fgl = mishchenko_log(8, 6);
    auto ring = fgl.ring();
    auto one = num(ring, 1);
    auto table = extract_generators(orientation_series(fgl, one), one);
    auto cls = MultClass::from_table(table);
    test::Rng rng(23);
    for (int n = 1; n <= 2; ++n) {
        auto a = builtin_model("proj" + std::to_string(n), ring);
        for (int trial = 0; trial < 6; ++trial) {
            SplitBundle v;
            int terms = 1 + static_cast<int>(rng.between(0, 2));
            for (int i = 0; i < terms; ++i)
                v.terms.push_back({line(a, static_cast<int>(rng.between(-2, 2))), 1 + static_cast<int>(rng.between(0, 1)),
                                   rng.coin() ? 1 : -1});
            CAPTURE(n);
            CAPTURE(trial);
            auto lp = eval_class(a, cls, v, EvalMode::LineProduct);
            auto ae = eval_class(a, cls, v, EvalMode::AdamsExponential);
            CHECK(lp == ae);
            // multiplicativity on sums
            SplitBundle w{{{line(a, 1), 1, 1}}};
            CHECK(eval_class(a, cls, v + w, EvalMode::LineProduct) == lp * eval_class(a, cls, w, EvalMode::LineProduct));
        }
    }
}

TEST_CASE("class evaluation reports missing precision and bad lines") {
    auto fgl = mishchenko_log(2, 4);
    auto ring = fgl.ring();
    auto one = num(ring, 1);
    auto cls = MultClass::from_table(extract_generators(orientation_series(fgl, one), one));
    auto a = builtin_model("proj3", ring);
    SplitBundle v{{{line(a, 1), 1, 1}}};
    CHECK_THROWS_AS(eval_class(a, cls, v, EvalMode::LineProduct), PrecisionError);
    CHECK_THROWS_AS(eval_class(a, cls, v, EvalMode::AdamsExponential), PrecisionError);
    SplitBundle bad{{{a->unit() * num(ring, 2), 1, 1}}};
    CHECK_THROWS_AS(eval_class(a, cls, bad, EvalMode::LineProduct), DomainError);
    SplitBundle zero{{{a->zero(), 1, 1}}};
    CHECK_THROWS_AS(eval_class(a, cls, zero, EvalMode::LineProduct), NonUnit);
}

TEST_CASE("element inverses and formatting") {
    auto ring = hirzebruch_ring(3);
    auto a = builtin_model("proj2", ring);
    auto y = GradedPoly::generator(ring, "y");
    auto x = a->unit() - line(a, -1) * y;
    CHECK(x * x.inverse() == a->unit());
    CHECK(line(a, 1) * line(a, -1) == a->unit());
    CHECK_THROWS_AS((a->unit() - line(a, 1)).inverse(), NonUnit);
    CHECK(line(a, 1).str() == "L");
    CHECK((a->unit() - line(a, 1) * num(ring, 2)).str() == "1 - 2*L");
    CHECK(a->zero().str() == "0");
}

TEST_CASE("algebra JSON round trip and validation") {
    auto ring = hirzebruch_ring(3);
    auto a = builtin_model("proj2", ring, 4);
    auto back = Algebra::from_json(a->to_json(), ring, "copy");
    CHECK(back->data().structure == a->data().structure);
    CHECK(back->data().chi == a->data().chi);
    CHECK(back->max_adams() == 4);
    CHECK(back->adams(4, back->basis(1)) == back->element(a->adams(4, a->basis(1)).coords()));

    // K(CP^1) by hand: basis 1, H = 1 - L^-1 with H^2 = 0
    auto j = nlohmann::json::parse(R"({
      "basis": ["1", "H"],
      "structure": [[["1", "0"], ["0", "1"]], [["0", "1"], ["0", "0"]]],
      "chi": ["1", "1"],
      "adams": {"2": [["1", "0"], ["0", "2"]]}
    })");
    auto h = Algebra::from_json(j, ring, "p1");
    CHECK(h->chi(h->basis(1) * h->basis(1)) == num(ring, 0));
    CHECK(h->unit() == h->basis(0));
    auto broken = j;
    broken["adams"]["2"][1] = {"1", "2"};
    CHECK_THROWS_AS(Algebra::from_json(broken, ring), DomainError);
    auto noncomm = j;
    noncomm["structure"][0][1] = {"1", "1"};
    CHECK_THROWS_AS(Algebra::from_json(noncomm, ring), DomainError);
}
