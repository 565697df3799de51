#include "mqc/errors.hpp"
#include "mqc/formal_group.hpp"
#include "mqc/oracles.hpp"
#include "suite_runner.hpp"

#include <set>

namespace mqc::detail {

namespace {

GradedPoly num(const RingPtr& ring, Rational r) { return GradedPoly::constant(ring, r); }

// q^shift num / den with rational coefficients, for the Laurent-expansion oracle
oracle::Fraction to_oracle(const ScalarLoop& f) {
    auto fr = f.as_fraction();
    oracle::Fraction out;
    out.shift = fr.numerator.empty() ? 0 : fr.numerator.begin()->first;
    for (const auto& [n, c] : fr.numerator) {
        if (c != num(f.ring(), c.constant_term())) throw DomainError("oracle needs rational coefficients");
        out.num.resize(static_cast<std::size_t>(n - out.shift) + 1, Rational(0));
        out.num[static_cast<std::size_t>(n - out.shift)] = c.constant_term();
    }
    QPoly den = QPoly::constant(Rational(1));
    for (const auto& [p, m] : fr.denominator) den = den * p.poly().pow(static_cast<unsigned>(m));
    for (int k = 0; k <= den.degree(); ++k) out.den.push_back(den[k]);
    return out;
}

std::string coefficients(const std::map<int, Rational>& c, int lowest) {
    std::string out;
    for (auto it = c.rbegin(); it != c.rend(); ++it)
        if (it->first >= lowest && !it->second.is_zero()) out += "[" + std::to_string(it->first) + "]" + it->second.str() + " ";
    return out;
}

ScalarLoop random_fraction(Rng& rng, const RingPtr& ring, int low, int high) {
    static const std::vector<PoleFactor> factors{PoleFactor::linear(Rational(1)), PoleFactor::linear(Rational(-1)),
                                                 PoleFactor::linear(Rational(3)), PoleFactor::root_of_unity(3),
                                                 PoleFactor::root_of_unity(6)};
    Laurent numerator;
    for (int n = low; n <= high; ++n)
        if (rng.coin()) numerator.emplace(n, random_poly(rng, ring, 2));
    std::map<PoleFactor, int> den;
    for (const auto& p : factors) {
        long m = rng.between(-1, 2);
        if (m > 0) den[p] = static_cast<int>(m);
    }
    return ScalarLoop::fraction(ring, numerator, den);
}

RationalLoop random_loop(Rng& rng, const AlgebraPtr& a, int low, int high) {
    std::vector<ScalarLoop> v;
    for (std::size_t i = 0; i < a->rank(); ++i) v.push_back(random_fraction(rng, a->ring(), low, high));
    return {a, v};
}

// (1 - zeta^-1 q)^-j for j <= 3 at zeta = 1, -1 and the conjugate pair +-i, spanned over Q
// by 1/(1+q^2)^j and q/(1+q^2)^j
std::vector<ScalarLoop> negative_basis(const RingPtr& ring) {
    std::vector<ScalarLoop> out;
    for (int j = 1; j <= 3; ++j) {
        out.push_back(ScalarLoop::pole(PoleFactor::root_of_unity(1), j, num(ring, 1)));
        out.push_back(ScalarLoop::pole(PoleFactor::root_of_unity(2), j, num(ring, 1)));
        for (int e = 0; e <= 1; ++e)
            out.push_back(ScalarLoop::fraction(ring, {{e, num(ring, 1)}}, {{PoleFactor::root_of_unity(4), j}}));
    }
    return out;
}

GradedPoly at_y_zero(const GradedPoly& x) { return specialize(x, {{"y", GradedPoly(x.ring())}}, x.ring()); }

} // namespace

void loopspace_suite(Runner& run) {
    const RingPtr ring = hirzebruch_ring(4);
    const AlgebraPtr pt = builtin_model("point", ring);
    const AlgebraPtr p1 = builtin_model("proj1", ring);

    run.check("residue of 1/(q(1-q)) at 0 = 1", "partial fractions 1/q + 1/(1-q)", [&] {
        oracle::Fraction f{{Rational(1)}, {Rational(1), Rational(-1)}, -1};
        return outcome(f.residue_zero(), residue(parse_loop(pt, "1/(q*(1-q))"), PoleAt::zero())[0].constant_term());
    });
    run.check("total residue vanishes on 100 random loops", "residue theorem", [&] {
        int ok = 0;
        for (int i = 0; i < 100; ++i) {
            auto f = random_loop(run.rng(), p1, -3, 4);
            Element total = residue(f, PoleAt::zero()) + residue(f, PoleAt::infinity());
            std::set<PoleFactor> poles;
            for (const auto& c : f.coords())
                for (const auto& [p, parts] : c.principal()) poles.insert(p);
            for (const auto& p : poles) total = total + residue(f, PoleAt::at(p));
            ok += total.is_zero();
        }
        return tally(ok, 100);
    });
    run.check("residues at 0 and infinity agree with Laurent expansions on 40 rational loops", "series at q = 0 and q = inf", [&] {
        int ok = 0;
        for (int i = 0; i < 40; ++i) {
            auto f = random_fraction(run.rng(), cobordism_ring(1, 0), -3, 3);
            auto o = to_oracle(f);
            ok += f.residue_zero().constant_term() == o.residue_zero() &&
                  f.residue_infinity().constant_term() == o.residue_infinity();
        }
        return tally(ok, 40);
    });
    run.check("omega vanishes on 50 pairs of Laurent polynomials", "residues at 0 and infinity cancel", [&] {
        int ok = 0;
        for (int i = 0; i < 50; ++i) {
            auto f = random_loop(run.rng(), p1, -3, 3).laurent_only(), g = random_loop(run.rng(), p1, -3, 3).laurent_only();
            ok += omega(f, g).is_zero();
        }
        return tally(ok, 50);
    });
    run.check("omega vanishes on 50 pairs in the standard negative space", "isotropy of the negative space", [&] {
        int ok = 0;
        for (int i = 0; i < 50; ++i) {
            auto f = random_loop(run.rng(), p1, 0, 3).principal_parts(), g = random_loop(run.rng(), p1, 0, 3).principal_parts();
            ok += omega(f, g).is_zero();
        }
        return tally(ok, 50);
    });
    run.check("omega(1/(1-q), 1) = -1 on the point", "residues of 1/(q(1-q)) from Laurent expansions", [&] {
        oracle::Fraction integrand{{Rational(1)}, {Rational(1), Rational(-1)}, -1};
        Rational expect = -(integrand.residue_zero() + integrand.residue_infinity());
        return outcome(expect, omega(parse_loop(pt, "1/(1-q)"), parse_loop(pt, "1")).constant_term());
    });
    run.check("project q/(1-q): plus -1, minus 1/(1-q)", "q/(1-q) = -1 + 1/(1-q)", [&] {
        auto p = project(parse_loop(pt, "q/(1-q)"), Polarization::standard());
        auto plus = ScalarLoop::constant(num(ring, -1));
        auto minus = ScalarLoop::pole(PoleFactor::root_of_unity(1), 1, num(ring, 1));
        return outcome("plus " + plus.str() + ", minus " + minus.str(), "plus " + p.plus.str() + ", minus " + p.minus.str());
    });
    run.check("canonical kernel fixes the 12-element negative basis", "identity calibration", [&] {
        int ok = 0;
        auto basis = negative_basis(ring);
        for (const auto& f : basis) ok += tensor_polarization_map(Kernel::canonical(ring), f) == f;
        return tally(ok, static_cast<int>(basis.size()));
    });
    run.check("canonical kernel sends 1/(1-q)^2 to 1/(1-x)^2", "geometric-series residues of q^{m-1}/(1-q)^2", [&] {
        std::map<int, Rational> expect;
        for (int m = 1; m <= 12; ++m) {
            oracle::Fraction g{{Rational(1)}, {Rational(1), Rational(-2), Rational(1)}, m - 1};
            Rational c = (g.residue_zero() + g.residue_infinity()) * Rational(kTensorSign);
            if (!c.is_zero()) expect[-m] = c;
        }
        auto out = tensor_polarization_map(Kernel::canonical(ring), parse_scalar_loop(ring, "1/(1-q)^2"));
        return outcome(coefficients(expect, -12), coefficients(to_oracle(out).at_infinity(13), -12));
    });
    run.check("x/(1-e^x) matches -x/(e^x-1) through x^10", "Bernoulli recurrence", [&] {
        auto b = oracle::bernoulli_numbers(11);
        auto e = oracle::exponential(11);
        std::string expect, got;
        Series s = expand_at(parse_scalar_loop(ring, "1/(1-q)"), Rational(1), 9);
        for (int n = 0; n <= 10; ++n) {
            expect += (-b[static_cast<std::size_t>(n)] * e[static_cast<std::size_t>(n)]).str() + " ";
            got += s.coeff(n - 1).constant_term().str() + " ";
        }
        return outcome(expect, got);
    });
    run.check("tw_mult of the classical class is the identity", "all c_k vanish", [&] {
        return outcome(true, tw_mult_operator(p1, MultClass::classical(ring), tangent_proj(p1), 6).identity);
    });
    run.check("tw_mult of a rank-0 trivial bundle is the identity", "alpha^k - 1 = 0", [&] {
        SplitBundle v{{{p1->unit(), 1, 1}, {p1->unit(), 1, -1}}};
        return outcome(true, tw_mult_operator(p1, MultClass::hirzebruch(ring), v, 6).identity);
    });
}

void hirzebruch_suite(Runner& run) {
    const RingPtr ring = hirzebruch_ring(8);
    const auto y = GradedPoly::generator(ring, "y");
    const auto one = num(ring, 1);
    const auto universal = mishchenko_log(8, 8);
    const auto spec = specialize_genus(Genus::Hirzebruch, universal.ring());
    const auto fh = spec.apply(universal);
    const Series u = orientation_series(fh, spec.t0);
    const AlgebraPtr pt = builtin_model("point", ring);

    run.check("orientation = (1−q⁻¹)/(1−yq⁻¹)", "closed form t/((1-y) + y t) in t = 1 - q^-1", [&] {
        return outcome(oracle::hirzebruch_orientation(ring, 8), u.renamed("t"));
    });
    run.check("unit-scaled c_k = -y^k for k <= 8", "Mercator series of log(1 - y q^-1)", [&] {
        auto u9 = mishchenko_log(9, 8);
        auto spec9 = specialize_genus(Genus::Hirzebruch, u9.ring());
        auto table = extract_generators(orientation_series(spec9.apply(u9), spec9.t0), spec9.t0);
        auto m = oracle::mercator(8);
        std::string expect, got;
        for (int k = 1; k <= 8; ++k) {
            expect += (-y.pow(static_cast<unsigned>(k)) * (m[static_cast<std::size_t>(k)] * Rational(k))).str() + "; ";
            got += table.c_at(k).str() + "; ";
        }
        return outcome(expect, got);
    });
    run.check("formal inverse of the orientation is (1-q)/(1-yq)", "u(1-q) = -t/((1-y) - t) as a geometric series", [&] {
        auto r = (one - y).inverse();
        Series expect(ring, "t", 0, 8);
        for (int k = 1; k <= 8; ++k) expect.set_coeff(k, -r.pow(static_cast<unsigned>(k)));
        return outcome(expect, compose(fgl_inverse(fh), u).renamed("t"));
    });
    run.check("F(u(1-q^-1), u(1-q)) = 0 through order 8", "1 - q = -t/(1-t) as a geometric series", [&] {
        Series s(spec.target, u.variable(), 0, 8);
        for (int k = 1; k <= 8; ++k) s.set_coeff(k, num(spec.target, -1));
        return outcome(true, evaluate_law(group_law(fh), u, compose(u, s)).is_zero());
    });

    const auto shift = y * (one - y).inverse();
    const auto basis = negative_basis(ring);
    const Kernel kernel = Kernel::hirzebruch(ring);
    run.check("hirzebruch kernel sends 1/(1-q) to 1/(1-x) + y/(1-y)", "residue computation", [&] {
        auto expect = ScalarLoop::pole(PoleFactor::root_of_unity(1), 1, one) + ScalarLoop::constant(shift);
        return outcome(expect.str("x"), tensor_polarization_map(kernel, parse_scalar_loop(ring, "1/(1-q)")).str("x"));
    });
    run.check("hirzebruch kernel maps the 12-element basis to f + (y/(1-y)) f(0)", "value at zero by hand", [&] {
        int ok = 0;
        for (const auto& f : basis) ok += tensor_polarization_map(kernel, f) == f + ScalarLoop::constant(f.at_zero() * shift);
        return tally(ok, 12);
    });
    run.check("hirzebruch kernel outputs satisfy f(inf) = y f(0)", "values at 0 and infinity", [&] {
        int ok = 0;
        for (const auto& f : basis) ok += hirzebruch_negative_space_check(RationalLoop::scalar(pt, tensor_polarization_map(kernel, f)));
        return tally(ok, 12);
    });
    run.check("constraint projection of 1/(1-q)", "constant adjustment f(inf) = y f(0)", [&] {
        auto p = project(parse_loop(pt, "1/(1-q)"), Polarization::constraint(y));
        auto minus = ScalarLoop::pole(PoleFactor::root_of_unity(1), 1, one) + ScalarLoop::constant(shift);
        auto plus = ScalarLoop::constant(-shift);
        return outcome("plus " + plus.str() + ", minus " + minus.str(), "plus " + p.plus.str() + ", minus " + p.minus.str());
    });
    run.check("1/(1-q) + y/(1-y) lies in the hirzebruch negative space", "f(inf) = y/(1-y), f(0) = 1/(1-y)", [&] {
        auto f = RationalLoop::scalar(pt, ScalarLoop::pole(PoleFactor::root_of_unity(1), 1, one) + ScalarLoop::constant(shift));
        bool by_hand = shift == y * (one + shift);
        return outcome(by_hand, hirzebruch_negative_space_check(f));
    });
    run.check("y = 0 reduces every hirzebruch structure to the standard one", "substitution y = 0", [&] {
        int ok = 0, total = 0;
        for (const auto& f : basis) {
            ++total;
            ok += tensor_polarization_map(kernel, f).map_coefficients(at_y_zero, ring) ==
                  tensor_polarization_map(Kernel::canonical(ring), f);
        }
        ++total;
        ok += dilaton_shift(ring, Dilaton::Hirzebruch).map_coefficients(at_y_zero, ring) == dilaton_shift(ring, Dilaton::Standard);
        ++total;
        ok += at_y_zero(y) == GradedPoly(ring) && at_y_zero(shift).is_zero();
        auto p1 = builtin_model("proj1", ring);
        PairingConfig twisted;
        twisted.twist = eval_class(p1, MultClass::hirzebruch(ring), tangent_proj(p1), EvalMode::AdamsExponential);
        twisted.scale = (one - y).inverse();
        for (int i = 0; i < 8; ++i) {
            ++total;
            auto f = random_loop(run.rng(), p1, -2, 2), g = random_loop(run.rng(), p1, -2, 2);
            auto f0 = RationalLoop(p1, {f[0].map_coefficients(at_y_zero, ring), f[1].map_coefficients(at_y_zero, ring)});
            auto g0 = RationalLoop(p1, {g[0].map_coefficients(at_y_zero, ring), g[1].map_coefficients(at_y_zero, ring)});
            ok += at_y_zero(omega(f, g, twisted)) == omega(f0, g0);
        }
        return tally(ok, total);
    });
    run.check("(1-q) Td_y(q^-1) expanded at q = e^x equals the hirzebruch dilaton", "rational-function arithmetic", [&] {
        Laurent product;
        for (int k = 0; k <= ring->truncation(); ++k) {
            auto yk = y.pow(static_cast<unsigned>(k));
            product.try_emplace(k, ring).first->second += yk;
            product.try_emplace(k + 1, ring).first->second -= yk;
        }
        auto by_hand = ScalarLoop::laurent(ring, product);
        return outcome(expand_at(by_hand, Rational(1), 6), expand_at(dilaton_shift(ring, Dilaton::Hirzebruch), Rational(1), 6));
    });
    run.check("tw_mult of the hirzebruch class on a line", "geometric sums cleared by (1-q^-1)(1-q^-2)(1-q^-3)", [&] {
        auto small = hirzebruch_ring(3);
        auto ys = GradedPoly::generator(small, "y");
        auto a = builtin_model("proj1", small);
        auto l = a->basis(1);
        auto tw = tw_mult_operator(a, MultClass::hirzebruch(small), SplitBundle{{{l, 1, 1}}}, 4);
        auto d = [&](int k) {
            return RationalLoop::scalar(a, ScalarLoop::laurent(small, {{0, num(small, 1)}, {-k, num(small, -1)}}));
        };
        RationalLoop expect(a);
        for (int k = 1; k <= 3; ++k) {
            RationalLoop others = RationalLoop::scalar(a, ScalarLoop::constant(num(small, 1)));
            for (int j = 1; j <= 3; ++j)
                if (j != k) others = others * d(j);
            auto coeff = (l.pow(k) - a->unit()) * (-ys.pow(static_cast<unsigned>(k)) * Rational(1, k));
            expect = expect + RationalLoop::constant(coeff) * others;
        }
        return outcome(expect, tw.exponent * d(1) * d(2) * d(3));
    });
}

} // namespace mqc::detail
