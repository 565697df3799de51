#include "mqc/cli.hpp"
#include "mqc/formal_group.hpp"
#include "mqc/loop_space.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace mqc;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result cli(std::vector<std::string> args) {
    args.insert(args.begin(), "mqc");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) { return "mqc_cli_test_" + name; }

} // namespace

TEST_CASE("generators at order 2") {
    auto r = cli({"generators", "--order", "2", "--degree", "2", "--format", "csv"});
    CHECK(r.code == 0);
    CHECK(r.out == "k,b_k,a_k,c_k\n0,,,-1/2 + 1/2*p1\n1,1/2 - 1/2*p1,-1/2 + 1/2*p1,1/2 - 1/2*p1\n");
    auto classical = cli({"generators", "--genus", "classical_K", "--format", "json"});
    REQUIRE(classical.code == 0);
    auto j = nlohmann::json::parse(classical.out);
    for (const char* key : {"a", "b", "c"})
        for (const auto& p : j["table"][key]) CHECK(p["terms"].empty());
}

TEST_CASE("generator table JSON round-trips") {
    auto r = cli({"generators", "--order", "4", "--degree", "5", "--format", "json"});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    auto fgl = mishchenko_log(4, 5);
    auto one = GradedPoly::constant(fgl.ring(), Rational(1));
    auto table = extract_generators(orientation_series(fgl, one), one);
    CHECK(GeneratorTable::from_json(j["table"], fgl.ring()) == table);
    CHECK(GeneratorTable::from_json(j["table"], fgl.ring()).to_json() == j["table"]);
}

TEST_CASE("specialize") {
    auto hz = cli({"specialize", "--genus", "hirzebruch"});
    CHECK(hz.code == 0);
    CHECK(hz.out.find("phi(p2)  1 + y + y^2\n") != std::string::npos);
    CHECK(hz.out.find("c3       -y^3\n") != std::string::npos);
    auto additive = cli({"specialize", "--genus", "additive", "--order", "3", "--format", "csv"});
    CHECK(additive.out.find("u(t),t + 1/2*t^2 + 1/3*t^3 + O(t^4)\n") != std::string::npos);
    CHECK(cli({"specialize"}).code == 2);
    CHECK(cli({"specialize", "--genus", "elliptic"}).code == 2);
}

TEST_CASE("loop commands") {
    CHECK(cli({"loop", "pair", "1/(1-q)", "1", "--model", "point"}).out == "-1\n");
    CHECK(cli({"loop", "project", "q/(1-q)"}).out == "name   value\nplus   -1\nminus  1/(1 - q)\n");
    auto pol = cli({"loop", "polarize", "--kernel", "hirzebruch", "1/(1-q)", "--degree", "2", "--order", "2"});
    CHECK(pol.out == "(y + y^2) + 1/(1 - x)\n");
    CHECK(cli({"loop", "residue", "1/(q*(1-q))", "--at", "0"}).out == "1\n");
    CHECK(cli({"loop", "residue", "1/(q*(1-q))", "--at", "inf"}).out == "0\n");
    CHECK(cli({"loop", "residue", "1/(1-q)", "--at", "-1"}).out == "0\n");
    auto bad_pole = cli({"loop", "residue", "1/(1-q)", "--at", "q=1"});
    CHECK(bad_pole.code == 1);
    auto bad = cli({"loop", "pair", "1/(1-q", "1"});
    CHECK(bad.code == 1);
    CHECK(bad.err.find("line 1, column") != std::string::npos);
    CHECK(cli({"loop", "pair", "1", "1", "--model", "torus"}).code == 2);
}

TEST_CASE("loops given as JSON") {
    auto ring = hirzebruch_ring(8);
    auto pt = builtin_model("point", ring);
    auto f = parse_loop(pt, "1/(1-q)");
    auto r = cli({"loop", "pair", f.to_json().dump(), "1"});
    CHECK(r.out == "-1\n");
    auto proj = cli({"loop", "project", "q/(1-q)", "--format", "json"});
    auto j = nlohmann::json::parse(proj.out);
    CHECK(RationalLoop::from_json(j["minus"], pt) == f);
    CHECK(RationalLoop::from_json(j["minus"], pt).to_json() == j["minus"]);
}

TEST_CASE("configuration errors exit with 2") {
    CHECK(cli({}).code == 2);
    CHECK(cli({"generators", "--order", "9"}).code == 2);
    CHECK(cli({"generators", "--order", "1", "--degree", "1"}).code == 2);
    CHECK(cli({"generators", "--format", "xml"}).code == 2);
    CHECK(cli({"loop", "polarize", "1/(1-q)", "--kernel", "other"}).code == 2);
    CHECK(cli({"verify", "nothing"}).code == 2);
    CHECK(cli({"generators", "--config", temp_path("missing.cfg")}).code == 2);
    CHECK(cli({"--help"}).code == 0);
}

TEST_CASE("config file values yield to flags") {
    auto path = temp_path("settings.cfg");
    {
        std::ofstream f(path);
        f << "order=2\ndegree=2\nformat=csv\n";
    }
    auto from_file = cli({"generators", "--config", path});
    CHECK(from_file.out == cli({"generators", "--order", "2", "--degree", "2", "--format", "csv"}).out);
    auto flagged = cli({"generators", "--config", path, "--format", "pretty"});
    CHECK(flagged.out.rfind("k  b_k", 0) == 0);
    std::remove(path.c_str());
}

TEST_CASE("verify writes reproducible JSON lines") {
    auto a = cli({"verify", "hirzebruch", "--seed", "7"});
    auto b = cli({"verify", "hirzebruch", "--seed", "7"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    std::istringstream lines(a.out);
    std::string line;
    int n = 0;
    while (std::getline(lines, line)) {
        auto j = nlohmann::json::parse(line);
        CHECK(j["status"] == "pass");
        ++n;
    }
    CHECK(n > 5);

    auto path = temp_path("report.jsonl");
    auto filed = cli({"verify", "kring", "--out", path});
    CHECK(filed.code == 0);
    std::ifstream f(path);
    std::string content((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    CHECK(content == cli({"verify", "kring"}).out);
    std::remove(path.c_str());
}

TEST_CASE("an injected exponential sign fault fails verification") {
    auto r = cli({"verify", "fgl", "--inject-fault", "exp-sign"});
    CHECK(r.code == 1);
    bool associativity_failed = false;
    std::istringstream lines(r.out);
    std::string line;
    while (std::getline(lines, line)) {
        auto j = nlohmann::json::parse(line);
        if (j["status"] == "fail" && j["case"].get<std::string>().find("associativity") != std::string::npos)
            associativity_failed = true;
    }
    CHECK(associativity_failed);
    CHECK(cli({"verify", "fgl", "--inject-fault", "other"}).code == 2);
}
