#include "mqc/errors.hpp"
#include "mqc/verification.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace mqc;

namespace {

std::string failures(const std::vector<OracleReport>& reports) {
    std::string out;
    for (const auto& r : reports)
        if (!r.pass) out += r.suite + " / " + r.id + "\n  expected " + r.expected + "\n  actual   " + r.actual + "\n";
    return out;
}

} // namespace

TEST_CASE("every oracle suite passes") {
    for (const auto& name : suite_names()) {
        if (name == "all") continue;
        auto reports = run_suite(name);
        CAPTURE(name);
        CHECK(!reports.empty());
        CHECK_MESSAGE(failures(reports).empty(), failures(reports));
        for (const auto& r : reports) CHECK(r.suite == name);
    }
}

TEST_CASE("suite output is sorted, unique and reproducible") {
    auto a = run_suite("all", {7, false});
    auto b = run_suite("all", {7, false});
    CHECK(to_json_lines(a) == to_json_lines(b));
    std::set<std::pair<std::string, std::string>> ids;
    for (const auto& r : a) ids.emplace(r.suite, r.id);
    CHECK(ids.size() == a.size());
    CHECK(std::is_sorted(a.begin(), a.end(), [](const OracleReport& x, const OracleReport& y) {
        return std::tie(x.suite, x.id) < std::tie(y.suite, y.id);
    }));
    auto line = a.front().to_json();
    for (const char* key : {"suite", "case", "oracle", "expected", "actual", "status"}) CHECK(line.contains(key));
    CHECK(!line.contains("runtime_ms"));
    CHECK(a.front().to_json(true).contains("runtime_ms"));
}

TEST_CASE("an exponential sign fault fails the associativity case") {
    auto reports = run_suite("fgl", {0, true});
    auto it = std::find_if(reports.begin(), reports.end(),
                           [](const OracleReport& r) { return r.id.find("associativity") != std::string::npos; });
    REQUIRE(it != reports.end());
    CHECK(!it->pass);
    CHECK(run_suite("fgl", {0, false}).size() == reports.size());
}

TEST_CASE("unknown suite names are rejected") {
    CHECK_THROWS_AS(run_suite("everything"), UnsupportedInput);
}
