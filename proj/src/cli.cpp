#include "mqc/cli.hpp"

#include "mqc/errors.hpp"
#include "mqc/expr_parser.hpp"
#include "mqc/formal_group.hpp"
#include "mqc/loop_space.hpp"
#include "mqc/verification.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

namespace mqc {

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    int degree = 8;
    int order = 8;
    std::string genus;
    std::string model = "point";
    std::string format = "pretty";
    std::string out;
    std::uint64_t seed = 0;
    std::string kernel;

    std::vector<std::string> inputs;
    std::string at = "0";
    int r = 1;
    std::string lambda;
    std::string suite;
    std::string fault;
};

/// A small table plus the JSON document for --format json.
struct Report {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    json doc;
    /// Pretty output prints the single value without a header.
    bool bare = false;
};

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
}

std::string render(const Report& r, const std::string& format) {
    if (format == "json") return r.doc.dump(2) + "\n";
    std::string out;
    if (format == "csv") {
        auto line = [&](const std::vector<std::string>& cells) {
            for (std::size_t i = 0; i < cells.size(); ++i) out += (i ? "," : "") + csv_field(cells[i]);
            out += "\n";
        };
        line(r.header);
        for (const auto& row : r.rows) line(row);
        return out;
    }
    if (r.bare && r.rows.size() == 1) return r.rows[0].back() + "\n";
    std::vector<std::size_t> width(r.header.size(), 0);
    auto measure = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) width[i] = std::max(width[i], cells[i].size());
    };
    measure(r.header);
    for (const auto& row : r.rows) measure(row);
    auto line = [&](const std::vector<std::string>& cells) {
        std::string l;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            l += cells[i];
            if (i + 1 < cells.size()) l += std::string(width[i] - cells[i].size() + 2, ' ');
        }
        out += l + "\n";
    };
    line(r.header);
    for (const auto& row : r.rows) line(row);
    return out;
}

void validate(const Options& o) {
    if (o.order < 2) throw UsageError("--order must be at least 2");
    if (o.degree < o.order) throw UsageError("--degree must be at least --order");
    if (o.format != "json" && o.format != "csv" && o.format != "pretty")
        throw UsageError("--format must be json, csv or pretty");
    if (!o.genus.empty()) {
        try {
            parse_genus(o.genus);
        } catch (const DomainError& e) {
            throw UsageError(e.what());
        }
    }
    if (!o.kernel.empty() && o.kernel != "canonical" && o.kernel != "hirzebruch")
        throw UsageError("--kernel must be canonical or hirzebruch");
}

GradedPoly one(const RingPtr& ring) { return GradedPoly::constant(ring, Rational(1)); }

Report generators(const Options& o) {
    auto fgl = mishchenko_log(o.order, o.degree);
    auto table = extract_generators(orientation_series(fgl, one(fgl.ring())), one(fgl.ring()));
    std::string genus = "universal";
    if (!o.genus.empty()) {
        table = specialize_genus(parse_genus(o.genus), fgl.ring()).apply(table);
        genus = o.genus;
    }
    Report r{{"k", "b_k", "a_k", "c_k"}, {}, {}, false};
    for (int k = 0; k < table.order; ++k)
        r.rows.push_back({std::to_string(k), k ? table.b_at(k).str() : "", k ? table.a_at(k).str() : "", table.c_at(k).str()});
    r.doc = {{"genus", genus}, {"order", o.order}, {"degree", o.degree}, {"table", table.to_json()}};
    return r;
}

Report specialize(const Options& o) {
    if (o.genus.empty()) throw UsageError("specialize needs --genus additive|classical_K|hirzebruch");
    auto fgl = mishchenko_log(o.order, o.degree);
    auto spec = specialize_genus(parse_genus(o.genus), fgl.ring());
    auto u = orientation_series(spec.apply(fgl), spec.t0).renamed("t");
    // the c_k reexpansion is exact once a_1..a_D are known
    auto full = mishchenko_log(std::max(o.order, o.degree + 1), o.degree);
    auto full_spec = specialize_genus(parse_genus(o.genus), full.ring());
    auto table = extract_generators(orientation_series(full_spec.apply(full), full_spec.t0), full_spec.t0);
    Report r{{"name", "value"}, {}, {}, false};
    json phi = json::object();
    for (const auto& g : fgl.ring()->generators()) {
        auto image = spec.apply(GradedPoly::generator(fgl.ring(), g.name));
        r.rows.push_back({"phi(" + g.name + ")", image.str()});
        phi[g.name] = image.to_json();
    }
    r.rows.push_back({"t0", spec.t0.str()});
    r.rows.push_back({"u(t)", u.str()});
    json cs = json::array();
    for (int k = 0; k < o.order; ++k) {
        r.rows.push_back({"c" + std::to_string(k), table.c_at(k).str()});
        cs.push_back(table.c_at(k).to_json());
    }
    r.doc = {{"genus", o.genus}, {"order", o.order},      {"degree", o.degree},
             {"phi", phi},       {"orientation", u.to_json()}, {"c", cs}};
    return r;
}

RationalLoop read_loop(const AlgebraPtr& a, const std::string& text) {
    auto start = text.find_first_not_of(" \t\r\n");
    if (start != std::string::npos && text[start] == '{') return RationalLoop::from_json(json::parse(text), a);
    return parse_loop(a, text);
}

Kernel kernel_named(const std::string& name, const RingPtr& ring) {
    return name == "hirzebruch" ? Kernel::hirzebruch(ring) : Kernel::canonical(ring);
}

Report single(const std::string& text, json value) {
    return {{"name", "value"}, {{"value", text}}, {{"value", std::move(value)}}, true};
}

Report loop(const Options& o, const std::string& sub) {
    auto ring = hirzebruch_ring(o.degree);
    AlgebraPtr a;
    try {
        a = builtin_model(o.model, ring);
    } catch (const UnsupportedInput& e) {
        throw UsageError(e.what());
    }
    if (sub == "pair") {
        if (o.r < 1) throw UsageError("--r must be positive");
        PairingConfig cfg;
        cfg.r = o.r;
        auto v = omega(read_loop(a, o.inputs.at(0)), read_loop(a, o.inputs.at(1)), cfg);
        return single(v.str(), v.to_json());
    }
    if (sub == "residue") {
        auto v = residue(read_loop(a, o.inputs.at(0)), PoleAt::parse(o.at));
        json coords = json::array();
        for (const auto& c : v.coords()) coords.push_back(c.to_json());
        return single(v.str(), {{"basis", a->labels()}, {"coordinates", coords}});
    }
    if (sub == "project") {
        Polarization pol = Polarization::standard();
        if (!o.lambda.empty())
            pol = Polarization::constraint(parse_poly(ring, o.lambda));
        else if (!o.kernel.empty())
            pol = Polarization::tensor(kernel_named(o.kernel, ring));
        auto p = project(read_loop(a, o.inputs.at(0)), pol);
        Report r{{"name", "value"}, {{"plus", p.plus.str()}, {"minus", p.minus.str()}}, {}, false};
        r.doc = {{"plus", p.plus.to_json()}, {"minus", p.minus.to_json()}};
        return r;
    }
    auto kernel = kernel_named(o.kernel.empty() ? "canonical" : o.kernel, ring);
    auto v = tensor_polarization_map(kernel, read_loop(a, o.inputs.at(0)));
    auto r = single(v.str("x"), v.to_json());
    r.doc["variable"] = "x";
    r.doc["kernel"] = kernel.name;
    return r;
}

void write(const std::string& text, const Options& o, std::ostream& out) {
    if (o.out.empty()) {
        out << text;
        return;
    }
    std::ofstream file(o.out, std::ios::binary);
    if (!file) throw UsageError("cannot write '" + o.out + "'");
    file << text;
}

int verify(const Options& o, std::ostream& out) {
    const auto& names = suite_names();
    if (std::find(names.begin(), names.end(), o.suite) == names.end()) throw UsageError("unknown suite '" + o.suite + "'");
    if (!o.fault.empty() && o.fault != "exp-sign") throw UsageError("unknown fault '" + o.fault + "'");
    auto reports = run_suite(o.suite, {o.seed, o.fault == "exp-sign"});
    auto passed = std::count_if(reports.begin(), reports.end(), [](const OracleReport& r) { return r.pass; });
    write(to_json_lines(reports), o, out);
    if (!o.out.empty()) out << passed << "/" << reports.size() << " cases passed\n";
    return passed == static_cast<long>(reports.size()) ? 0 : 1;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Formal group laws, K-theoretic characteristic classes and loop-space residues in exact arithmetic", "mqc"};
    Options o;
    app.set_config("--config", "", "File of key=value lines; command-line flags take precedence");
    app.fallthrough();
    app.require_subcommand(1);
    app.add_option("--degree", o.degree, "Truncation weight D")->capture_default_str();
    app.add_option("--order", o.order, "Series order N")->capture_default_str();
    app.add_option("--genus", o.genus, "additive, classical_K or hirzebruch");
    app.add_option("--model", o.model, "point or projN")->capture_default_str();
    app.add_option("--format", o.format, "json, csv or pretty")->capture_default_str();
    app.add_option("--out", o.out, "Write the result to this file");
    app.add_option("--seed", o.seed, "Seed for randomized verification cases")->capture_default_str();
    app.add_option("--kernel", o.kernel, "canonical or hirzebruch");

    auto* gen = app.add_subcommand("generators", "Universal b_k, a_k, c_k (or their image under --genus)");
    auto* spec = app.add_subcommand("specialize", "phi(p_n), orientation and unit-scaled c_k of a genus");
    auto* lp = app.add_subcommand("loop", "Residues, pairings and polarizations of loops in q");
    lp->require_subcommand(1);
    auto* pair = lp->add_subcommand("pair", "Omega(f, g)");
    pair->add_option("loops", o.inputs, "f g")->required()->expected(2);
    pair->add_option("--r", o.r, "Adams index of the pairing")->capture_default_str();
    auto* res = lp->add_subcommand("residue", "Residue of f dq");
    res->add_option("loop", o.inputs, "f")->required()->expected(1);
    res->add_option("--at", o.at, "0, inf or a pole location such as 1, -1/2, zeta_3")->capture_default_str();
    auto* proj = lp->add_subcommand("project", "Split f into Laurent and negative parts");
    proj->add_option("loop", o.inputs, "f")->required()->expected(1);
    proj->add_option("--lambda", o.lambda, "Negative space f(inf) = lambda f(0)");
    auto* pol = lp->add_subcommand("polarize", "Tensor polarization map of a kernel, output in x");
    pol->add_option("loop", o.inputs, "f")->required()->expected(1);
    auto* ver = app.add_subcommand("verify", "Run an oracle suite and write JSON lines");
    ver->add_option("suite", o.suite, "fgl, generators, loopspace, hirzebruch, kring or all")->required();
    ver->add_option("--inject-fault", o.fault)->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        validate(o);
        if (ver->parsed()) return verify(o, out);
        Report r;
        if (gen->parsed()) r = generators(o);
        else if (spec->parsed()) r = specialize(o);
        else {
            std::string sub = pair->parsed() ? "pair" : res->parsed() ? "residue" : proj->parsed() ? "project" : "polarize";
            r = loop(o, sub);
        }
        write(render(r, o.format), o, out);
        return 0;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace mqc
