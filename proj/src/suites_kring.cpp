#include "mqc/formal_group.hpp"
#include "mqc/oracles.hpp"
#include "suite_runner.hpp"

namespace mqc::detail {

namespace {

GradedPoly num(const RingPtr& ring, Rational r) { return GradedPoly::constant(ring, r); }

Element line(const AlgebraPtr& a, int k) { return a->basis(*a->index_of("L")).pow(k); }

std::string matrix(const Algebra::Matrix& m) {
    std::string out = "[";
    for (std::size_t i = 0; i < m.size(); ++i) {
        out += i ? ",[" : "[";
        for (std::size_t j = 0; j < m[i].size(); ++j) out += (j ? "," : "") + m[i][j].str();
        out += "]";
    }
    return out + "]";
}

SplitBundle random_bundle(Rng& rng, const AlgebraPtr& a, int max_rank, bool honest) {
    SplitBundle v;
    int terms = 1 + static_cast<int>(rng.between(0, max_rank - 1));
    for (int i = 0; i < terms; ++i)
        v.terms.push_back({line(a, static_cast<int>(rng.between(-2, 2))), 1, honest || rng.coin() ? 1 : -1});
    return v;
}

} // namespace

void kring_suite(Runner& run) {
    const RingPtr ring = hirzebruch_ring(6);
    const auto y = GradedPoly::generator(ring, "y");

    run.check("chi(O(k)) on CP^n for n <= 3, 0 <= k <= 4", "Pascal's triangle", [&] {
        std::string expect, got;
        for (int n = 1; n <= 3; ++n) {
            auto a = builtin_model("proj" + std::to_string(n), ring);
            for (int k = 0; k <= 4; ++k) {
                expect += oracle::chi_line(n, k).str() + " ";
                got += a->chi(line(a, k)).str() + " ";
            }
        }
        return outcome(expect, got);
    });
    run.check("proj1: chi(L) = 2", "Riemann-Roch on CP^1", [&] {
        auto a = builtin_model("proj1", ring);
        return outcome(oracle::chi_line(1, 1), a->chi(line(a, 1)));
    });
    run.check("proj2: chi(L) = 3", "Riemann-Roch on CP^2", [&] {
        auto a = builtin_model("proj2", ring);
        return outcome(oracle::chi_line(2, 1), a->chi(line(a, 1)));
    });
    run.check("proj1: Gram matrix [[1,2],[2,3]]", "chi(L^{i+j}) = C(i+j+1, 1)", [&] {
        Algebra::Matrix expect(2, std::vector<GradedPoly>(2, GradedPoly(ring)));
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) expect[i][j] = num(ring, oracle::chi_line(1, i + j));
        return outcome(matrix(expect), matrix(pairing_and_duals(builtin_model("proj1", ring)).gram));
    });
    run.check("duals satisfy chi(e_i e^j) = delta_ij on proj1..proj4", "Kronecker delta", [&] {
        int ok = 0, total = 0;
        for (int n = 1; n <= 4; ++n) {
            auto a = builtin_model("proj" + std::to_string(n), ring);
            auto d = pairing_and_duals(a);
            for (std::size_t i = 0; i < a->rank(); ++i)
                for (std::size_t j = 0; j < a->rank(); ++j, ++total)
                    ok += a->chi(d.basis[i] * d.dual[j]) == num(ring, i == j ? 1 : 0);
        }
        return tally(ok, total);
    });
    run.check("casimir element is basis independent on proj1..proj3", "change of basis L^-k (k+1), L^k + k y", [&] {
        int ok = 0;
        for (int n = 1; n <= 3; ++n) {
            auto a = builtin_model("proj" + std::to_string(n), ring);
            auto standard = casimir(pairing_and_duals(a));
            std::vector<Element> scaled, shifted;
            for (int k = 0; k <= n; ++k) {
                scaled.push_back(line(a, -k) * num(ring, Rational(k + 1)));
                shifted.push_back(line(a, k) + a->unit() * (y * Rational(k)));
            }
            ok += casimir(pairing_and_duals(a, scaled)) == standard && casimir(pairing_and_duals(a, shifted)) == standard;
        }
        return tally(ok, 3);
    });
    run.check("proj1: Psi^2(L) = 2L - 1", "(1 - L)^2 = 0 expanded by hand", [&] {
        auto a = builtin_model("proj1", ring);
        return outcome(line(a, 1) * num(ring, 2) - a->unit(), a->adams(2, line(a, 1)));
    });
    run.check("N_2(L1, L2) = L1^2 + L2^2 on proj2", "Newton: p2 = e1^2 - 2 e2", [&] {
        auto a = builtin_model("proj2", ring);
        SplitBundle v{{{line(a, 1), 1, 1}, {line(a, -1), 1, 1}}};
        return outcome(line(a, 2) + line(a, -2), newton_adams(v.exterior_powers(a, 2), 2));
    });
    run.check("N_3 on a rank-3 bundle equals the sum of cubes", "brute-force power sum", [&] {
        auto a = builtin_model("proj3", ring);
        SplitBundle v{{{line(a, 1), 1, 1}, {line(a, 2), 1, 1}, {line(a, -1), 1, 1}}};
        auto e = v.exterior_powers(a, 3);
        auto brute = e[0] * e[0] * e[0] - e[0] * e[1] * num(ring, 3) + e[2] * num(ring, 3);
        auto cubes = (line(a, 3) + line(a, 6) + line(a, -3)).str();
        return outcome(cubes + " | " + cubes, newton_adams(e, 3).str() + " | " + brute.str());
    });
    run.check("Newton polynomials match the Adams table (rank <= 4, r <= 4)", "Psi^r on each line", [&] {
        auto a = builtin_model("proj3", ring);
        int ok = 0, total = 0;
        for (int trial = 0; trial < 12; ++trial) {
            auto v = random_bundle(run.rng(), a, 4, true);
            auto lambda = v.exterior_powers(a, 4);
            for (int r = 1; r <= 4; ++r, ++total) {
                auto direct = a->zero();
                for (const auto& t : v.terms) direct = direct + a->adams(r, t.line);
                ok += newton_adams(lambda, r) == direct;
            }
        }
        return tally(ok, total);
    });
    run.check("universal class: line product equals the Adams exponential (rank <= 3, weight <= 6)",
              "product of t/u(t) over the lines", [&] {
        auto fgl = mishchenko_log(8, 6);
        auto one = num(fgl.ring(), 1);
        auto cls = MultClass::from_table(extract_generators(orientation_series(fgl, one), one));
        int ok = 0, total = 0;
        for (int n = 1; n <= 2; ++n) {
            auto a = builtin_model("proj" + std::to_string(n), fgl.ring());
            for (int trial = 0; trial < 5; ++trial, ++total) {
                auto v = random_bundle(run.rng(), a, 3, false);
                ok += eval_class(a, cls, v, EvalMode::LineProduct) == eval_class(a, cls, v, EvalMode::AdamsExponential);
            }
        }
        return tally(ok, total);
    });
    run.check("chi_-y(CP^n) = sum y^p = phi_y(p_n) for n <= 3", "Hodge numbers h^{p,q} = delta_pq", [&] {
        std::string expect, got;
        auto cy = MultClass::hirzebruch(ring);
        for (int n = 1; n <= 3; ++n) {
            auto a = builtin_model("proj" + std::to_string(n), ring);
            auto source = cobordism_ring(n, n);
            auto spec = specialize_genus(Genus::Hirzebruch, source);
            auto genus = embed(spec.apply(GradedPoly::generator(source, "p" + std::to_string(n))), ring);
            auto value = pushforward_chi(eval_class(a, cy, tangent_proj(a), EvalMode::AdamsExponential));
            expect += oracle::chi_minus_y(ring, n).str() + "; ";
            got += value.str() + (value == genus ? "; " : " (phi_y(p_n) = " + genus.str() + "); ");
        }
        return outcome(expect, got);
    });
}

} // namespace mqc::detail
