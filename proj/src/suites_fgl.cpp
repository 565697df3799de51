#include "mqc/expr_parser.hpp"
#include "mqc/formal_group.hpp"
#include "mqc/oracles.hpp"
#include "suite_runner.hpp"

namespace mqc::detail {

namespace {

GradedPoly num(const RingPtr& ring, Rational r) { return GradedPoly::constant(ring, r); }

Series as(const Series& s, const char* var) { return s.renamed(var); }

std::string table_rows(const GeneratorTable& t) {
    std::string out;
    for (int k = 1; k < t.order; ++k) out += "b" + std::to_string(k) + "=" + t.b_at(k).str() + "; ";
    for (int k = 1; k < t.order; ++k) out += "a" + std::to_string(k) + "=" + t.a_at(k).str() + "; ";
    for (int k = 0; k < t.order; ++k) out += "c" + std::to_string(k) + "=" + t.c_at(k).str() + "; ";
    return out;
}

} // namespace

void fgl_suite(Runner& run, const SuiteOptions& options) {
    FormalGroupLaw fgl = mishchenko_log(8, 8);
    if (options.inject_exp_sign_fault) fgl.exp.set_coeff(2, -fgl.exp.coeff(2));
    const RingPtr ring = fgl.ring();
    const auto law = group_law(fgl);
    const auto p1 = GradedPoly::generator(ring, "p1");

    run.check("axiom: unit F(u,0) = u", "identity series", [&] {
        return outcome(Series::variable(ring, "u", 8).renamed(right_unit(law).variable()), right_unit(law));
    });
    run.check("axiom: commutativity F(x1,x2) = F(x2,x1)", "swap of x1 and x2", [&] {
        return outcome(law.series, swapped(law));
    });
    run.check("axiom: associativity F(F(x1,x2),x3) = F(x1,F(x2,x3))", "two-sided substitution", [&] {
        auto [lhs, rhs] = associativity_sides(law);
        return outcome(std::string("equal"), lhs == rhs ? "equal" : "differ by " + (lhs - rhs).str());
    });
    run.check("law: coefficient of x1 x2 is -p1", "exp(log x1 + log x2) expanded by hand at order 2", [&] {
        return outcome(-p1, law.coefficient(1, 1));
    });
    run.check("exp: coefficient of u^2 is -p1/2", "degree-2 reversion by hand: e2 = -l2", [&] {
        return outcome(p1 * Rational(-1, 2), fgl.exp.coeff(2));
    });

    const auto classical = specialize_genus(Genus::ClassicalK, cobordism_ring(7, 8));
    const auto fk = classical.apply(mishchenko_log(8, 8));
    run.check("multiplicative law: iota(u) = -u/(1-u)", "solve x + y - xy = 0 for y", [&] {
        oracle::Dense d(9, Rational(-1));
        d[0] = Rational(0);
        return outcome(as(oracle::from_dense(classical.target, d, "u"), "u"), as(fgl_inverse(fk), "u"));
    });

    const RingPtr q = hirzebruch_ring(8);
    const Series u = Series::variable(q, "u", 8);
    const Series one = Series::constant(num(q, 1), "u", 8);
    run.check("series: -log(1-u) = sum u^n/n", "Mercator series", [&] {
        return outcome(oracle::from_dense(q, oracle::mercator(8), "u"), -log(one - u));
    });
    run.check("series: compose(1-e^-t, -log(1-u)) = u", "1 - e^{log(1-u)} = u by hand", [&] {
        Series t = Series::variable(q, "t", 8);
        Series f = Series::constant(num(q, 1), "t", 8) - exp(-t);
        return outcome(u, as(compose(f, -log(one - u)), "u"));
    });
    run.check("series: revert(u - u^2) gives the Catalan numbers", "back-substitution g = t + g^2", [&] {
        return outcome(oracle::from_dense(q, oracle::catalan_reversion(8), "t"), as(revert(u - u * u), "t"));
    });
    run.check("series: revert(1-e^-u) = -log(1-t)", "analytic inverse", [&] {
        return outcome(oracle::from_dense(q, oracle::mercator(8), "t"), as(revert(one - exp(-u)), "t"));
    });
    run.check("series: log(1 - y q^-1) = -sum y^k q^-k / k", "Mercator series in y/q", [&] {
        auto y = GradedPoly::generator(q, "y");
        Series s = Series::variable(q, "s", 8);
        Series expect(q, "s", 0, 8);
        for (int k = 1; k <= 8; ++k) expect.set_coeff(k, -y.pow(static_cast<unsigned>(k)) * Rational(1, k));
        return outcome(expect, log(Series::constant(num(q, 1), "s", 8) - s * y));
    });
    const auto b = oracle::bernoulli_numbers(12);
    run.check("bernoulli(2) = 1/6", "recurrence sum C(m+1,k) B_k = 0", [&] { return outcome(b[2], bernoulli(2)); });
    run.check("bernoulli(3) = 0", "recurrence sum C(m+1,k) B_k = 0", [&] { return outcome(b[3], bernoulli(3)); });
}

void generators_suite(Runner& run) {
    const FormalGroupLaw fgl = mishchenko_log(8, 8);
    const RingPtr ring = fgl.ring();
    const auto one = num(ring, 1);
    const auto p1 = GradedPoly::generator(ring, "p1");
    const auto half_b1 = (one - p1) * Rational(1, 2);

    run.check("b₁ = (1−p₁)/2", "order-2 hand reversion", [&] {
        auto table = extract_generators(orientation_series(fgl, one), one);
        return outcome(half_b1, table.b_at(1));
    });
    run.check("universal order 2: u(t) = t + ((1-p1)/2) t^2", "compose 1 - e^-z and revert at order 2 by hand", [&] {
        auto small = mishchenko_log(2, 8);
        Series expect(ring, "t", 0, 2);
        expect.set_coeff(1, one);
        expect.set_coeff(2, half_b1);
        return outcome(expect, as(orientation_series(small, num(small.ring(), 1)), "t"));
    });
    run.check("universal order 2: a1, c1, c0", "log(t/u) = -b1 t by hand, binomial reexpansion", [&] {
        auto small = mishchenko_log(2, 8);
        auto unit = num(small.ring(), 1);
        auto table = extract_generators(orientation_series(small, unit), unit);
        std::string expect = "a1=" + ((p1 - one) * Rational(1, 2)).str() + "; c1=" + half_b1.str() + "; c0=" + (-half_b1).str();
        std::string got = "a1=" + table.a_at(1).str() + "; c1=" + table.c_at(1).str() + "; c0=" + table.c_at(0).str();
        return outcome(expect, got);
    });

    const auto classical = specialize_genus(Genus::ClassicalK, ring);
    const auto kone = num(classical.target, 1);
    const auto kfgl = classical.apply(fgl);
    run.check("classical K: u(t) = t", "z = -log(1-u) gives 1 - e^-z = u", [&] {
        return outcome(Series::variable(classical.target, "t", 8), as(orientation_series(kfgl, kone), "t"));
    });
    run.check("classical K: all a_k, b_k, c_k vanish", "u = t identically", [&] {
        auto table = extract_generators(orientation_series(kfgl, kone), kone);
        GeneratorTable zero = table;
        for (auto* v : {&zero.a, &zero.b, &zero.c})
            for (auto& x : *v) x = GradedPoly(classical.target);
        return outcome(table_rows(zero), table_rows(table));
    });
    run.check("classical K: phi(pn) = 1 sends (1-p1)/2 to 0", "evaluate (1-1)/2 by hand", [&] {
        return outcome(GradedPoly(classical.target), classical.apply(half_b1));
    });
    run.check("classical K: z(u) = -log(1-u)", "sum u^{n+1}/(n+1) rearranged", [&] {
        return outcome(oracle::from_dense(classical.target, oracle::mercator(8), "u"), as(kfgl.log, "u"));
    });

    const auto hz = specialize_genus(Genus::Hirzebruch, ring);
    run.check("hirzebruch: normalized log = sum u^n (1-y^n)/(n(1-y))", "invert e^-z = (1-u)/(1-uy) by hand", [&] {
        return outcome(oracle::hirzebruch_log(hz.target, 8), as(hz.apply(fgl).log, "u"));
    });
    run.check("hirzebruch: phi(p2) = 1+y+y^2 at D=4", "u^3 coefficient of the closed-form log, times 3", [&] {
        auto source = cobordism_ring(4, 4);
        auto spec = specialize_genus(Genus::Hirzebruch, source);
        auto expect = oracle::hirzebruch_log(spec.target, 4).coeff(3) * Rational(3);
        return outcome(expect, spec.apply(GradedPoly::generator(source, "p2")));
    });
}

} // namespace mqc::detail
