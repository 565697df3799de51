#include "mqc/verification.hpp"

#include "mqc/errors.hpp"
#include "suite_runner.hpp"

#include <algorithm>
#include <chrono>
#include <tuple>

namespace mqc {

namespace detail {

namespace {

std::uint64_t mix(std::uint64_t seed, std::string_view name) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : name) h = (h ^ c) * 1099511628211ULL;
    return seed ^ h;
}

} // namespace

Runner::Runner(std::string suite, std::uint64_t seed) : suite_(std::move(suite)), rng_(mix(seed, suite_)) {}

void Runner::check(std::string id, std::string oracle, const std::function<Outcome()>& body) {
    OracleReport r{suite_, std::move(id), std::move(oracle), {}, {}, false, 0};
    auto start = std::chrono::steady_clock::now();
    try {
        auto [expected, actual] = body();
        r.expected = std::move(expected);
        r.actual = std::move(actual);
        r.pass = r.expected == r.actual;
    } catch (const std::exception& e) {
        r.expected = "no error";
        r.actual = std::string("error: ") + e.what();
    }
    r.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    reports_.push_back(std::move(r));
}

} // namespace detail

nlohmann::json OracleReport::to_json(bool with_runtime) const {
    nlohmann::json j{{"suite", suite},       {"case", id},         {"oracle", oracle},
                     {"expected", expected}, {"actual", actual}, {"status", pass ? "pass" : "fail"}};
    if (with_runtime) j["runtime_ms"] = runtime_ms;
    return j;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"fgl", "generators", "loopspace", "hirzebruch", "kring", "all"};
    return names;
}

std::vector<OracleReport> run_suite(std::string_view name, const SuiteOptions& options) {
    if (std::find(suite_names().begin(), suite_names().end(), name) == suite_names().end())
        throw UnsupportedInput("unknown suite '" + std::string(name) + "'");
    std::vector<OracleReport> out;
    auto run = [&](const std::string& suite, auto&& body) {
        if (name != "all" && name != suite) return;
        detail::Runner runner(suite, options.seed);
        body(runner);
        auto part = runner.take();
        out.insert(out.end(), part.begin(), part.end());
    };
    run("fgl", [&](detail::Runner& r) { detail::fgl_suite(r, options); });
    run("generators", detail::generators_suite);
    run("loopspace", detail::loopspace_suite);
    run("hirzebruch", detail::hirzebruch_suite);
    run("kring", detail::kring_suite);
    std::stable_sort(out.begin(), out.end(), [](const OracleReport& a, const OracleReport& b) {
        return std::tie(a.suite, a.id) < std::tie(b.suite, b.id);
    });
    return out;
}

std::string to_json_lines(const std::vector<OracleReport>& reports, bool with_runtime) {
    std::string out;
    for (const auto& r : reports) out += r.to_json(with_runtime).dump() + "\n";
    return out;
}

} // namespace mqc
