// Prints one PASS/FAIL line per acceptance criterion; exits nonzero if any fails.
#include "mqc/cli.hpp"
#include "mqc/formal_group.hpp"
#include "mqc/loop_space.hpp"
#include "mqc/random.hpp"
#include "mqc/verification.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

using namespace mqc;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Cases {
    std::map<std::pair<std::string, std::string>, OracleReport> by_id;

    /// Every listed case exists and passes; missing ones are reported.
    bool all_pass(const std::string& suite, const std::vector<std::string>& ids, std::string& note) const {
        bool ok = true;
        for (const auto& id : ids) {
            auto it = by_id.find({suite, id});
            if (it == by_id.end()) {
                note += " [missing: " + id + "]";
                ok = false;
            } else if (!it->second.pass) {
                note += " [failed: " + id + "]";
                ok = false;
            }
        }
        return ok;
    }
};

std::string cli_output(const std::vector<std::string>& args, int& code) {
    std::vector<const char*> argv{"mqc"};
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return out.str();
}

bool json_round_trips(std::string& note) {
    Rng rng(2024);
    int bad = 0;
    auto ring = cobordism_ring(4, 6);
    for (int i = 0; i < 20; ++i) {
        auto p = random_poly(rng, ring, 6);
        bad += GradedPoly::from_json(p.to_json()) != p;
        bad += GradedPoly::from_json(p.to_json()).to_json() != p.to_json();
    }
    auto fgl = mishchenko_log(6, 6);
    bad += Series::from_json(fgl.log.to_json(), fgl.ring()) != fgl.log;
    auto one = GradedPoly::constant(fgl.ring(), Rational(1));
    auto table = extract_generators(orientation_series(fgl, one), one);
    bad += !(GeneratorTable::from_json(table.to_json(), fgl.ring()) == table);
    auto hz = hirzebruch_ring(4);
    for (const char* model : {"point", "proj1", "proj3"}) {
        auto a = builtin_model(model, hz);
        auto back = Algebra::from_json(a->to_json(), hz);
        bad += back->to_json() != a->to_json();
        for (const char* text : {"1/(1-q)", "q^2/(1+q)^3 - y/(1-q)", "(2 + q)/(1 + q + q^2)^2 + 1/q"}) {
            auto f = parse_loop(a, text) * a->basis(a->rank() - 1);
            bad += !(RationalLoop::from_json(f.to_json(), a) == f);
            bad += RationalLoop::from_json(f.to_json(), a).to_json() != f.to_json();
        }
    }
    if (bad) note += " [" + std::to_string(bad) + " round-trip mismatches]";
    return bad == 0;
}

} // namespace

int main() {
    const auto start = Clock::now();
    Cases cases;
    double fgl_seconds = 0;
    for (const auto& name : suite_names()) {
        if (name == "all") continue;
        auto t = Clock::now();
        for (auto& r : run_suite(name)) cases.by_id.emplace(std::make_pair(r.suite, r.id), r);
        if (name == "fgl") fgl_seconds = seconds_since(t);
    }

    struct Criterion {
        std::string title;
        std::function<bool(std::string&)> check;
    };
    std::vector<Criterion> criteria{
        {"universal FGL axioms at order 8, D 8",
         [&](std::string& note) {
             note += " (" + std::to_string(fgl_seconds) + " s)";
             return cases.all_pass("fgl", {"axiom: unit F(u,0) = u", "axiom: commutativity F(x1,x2) = F(x2,x1)",
                                           "axiom: associativity F(F(x1,x2),x3) = F(x1,F(x2,x3))"}, note) &&
                    fgl_seconds < 60;
         }},
        {"orientation pipeline: b1 = (1-p1)/2, classical K gives u = t and vanishing rows",
         [&](std::string& note) {
             return cases.all_pass("generators", {"b₁ = (1−p₁)/2", "classical K: u(t) = t",
                                                  "classical K: all a_k, b_k, c_k vanish"}, note);
         }},
        {"hirzebruch orientation and unit-scaled c_k = -y^k",
         [&](std::string& note) {
             return cases.all_pass("hirzebruch", {"orientation = (1−q⁻¹)/(1−yq⁻¹)", "unit-scaled c_k = -y^k for k <= 8"}, note);
         }},
        {"formal-group inversion of the dilaton shift",
         [&](std::string& note) {
             return cases.all_pass("hirzebruch", {"formal inverse of the orientation is (1-q)/(1-yq)",
                                                  "F(u(1-q^-1), u(1-q)) = 0 through order 8"}, note);
         }},
        {"residue engine: total residue, isotropy, omega(1/(1-q), 1) = -1",
         [&](std::string& note) {
             return cases.all_pass("loopspace", {"total residue vanishes on 100 random loops",
                                                 "omega vanishes on 50 pairs of Laurent polynomials",
                                                 "omega vanishes on 50 pairs in the standard negative space",
                                                 "omega(1/(1-q), 1) = -1 on the point"}, note);
         }},
        {"canonical tensor kernel is the identity on 12 basis elements",
         [&](std::string& note) {
             return cases.all_pass("loopspace", {"canonical kernel fixes the 12-element negative basis"}, note);
         }},
        {"hirzebruch polarization and its y = 0 degeneration",
         [&](std::string& note) {
             return cases.all_pass("hirzebruch", {"hirzebruch kernel maps the 12-element basis to f + (y/(1-y)) f(0)",
                                                  "hirzebruch kernel outputs satisfy f(inf) = y f(0)",
                                                  "y = 0 reduces every hirzebruch structure to the standard one"}, note);
         }},
        {"characteristic-class coherence: line product vs Adams exponential, Newton vs table",
         [&](std::string& note) {
             return cases.all_pass("kring", {"universal class: line product equals the Adams exponential (rank <= 3, weight <= 6)",
                                             "Newton polynomials match the Adams table (rank <= 4, r <= 4)"}, note);
         }},
        {"genus values: chi(CP^n; O(k)) and chi_-y(CP^n) = phi_y(p_n)",
         [&](std::string& note) {
             return cases.all_pass("kring", {"chi(O(k)) on CP^n for n <= 3, 0 <= k <= 4",
                                             "chi_-y(CP^n) = sum y^p = phi_y(p_n) for n <= 3"}, note);
         }},
        {"Bernoulli expansion and trivial tw_mult",
         [&](std::string& note) {
             return cases.all_pass("loopspace", {"x/(1-e^x) matches -x/(e^x-1) through x^10",
                                                 "tw_mult of the classical class is the identity",
                                                 "tw_mult of a rank-0 trivial bundle is the identity"}, note);
         }},
        {"determinism and serialization",
         [&](std::string& note) {
             auto t = Clock::now();
             int c1 = 0, c2 = 0;
             auto first = cli_output({"verify", "all", "--seed", "11"}, c1);
             auto second = cli_output({"verify", "all", "--seed", "11"}, c2);
             double run = seconds_since(t) / 2;
             note += " (verify all: " + std::to_string(run) + " s)";
             bool ok = c1 == 0 && c2 == 0 && !first.empty() && first == second;
             if (!ok) note += " [verify all not reproducible or failing]";
             return json_round_trips(note) && ok && run < 300;
         }},
    };

    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        std::string note;
        bool ok = false;
        try {
            ok = criteria[i].check(note);
        } catch (const std::exception& e) {
            note += std::string(" [error: ") + e.what() + "]";
        }
        failed += !ok;
        std::cout << (ok ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].title << note << "\n";
    }
    std::cout << criteria.size() - failed << "/" << criteria.size() << " criteria passed in " << seconds_since(start) << " s\n";
    return failed ? 1 : 0;
}
