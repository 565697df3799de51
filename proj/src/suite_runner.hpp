#pragma once

#include "mqc/kring.hpp"
#include "mqc/loop_space.hpp"
#include "mqc/random.hpp"
#include "mqc/verification.hpp"

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace mqc::detail {

inline std::string text(const std::string& s) { return s; }
inline std::string text(const char* s) { return s; }
inline std::string text(bool b) { return b ? "true" : "false"; }
inline std::string text(const Rational& r) { return r.str(); }
inline std::string text(const GradedPoly& p) { return p.str(); }
inline std::string text(const Series& s) { return s.str(); }
inline std::string text(const ScalarLoop& f) { return f.str(); }
inline std::string text(const RationalLoop& f) { return f.str(); }
inline std::string text(const Element& e) { return e.str(); }

using Outcome = std::pair<std::string, std::string>; // expected, actual

template <class E, class A>
Outcome outcome(const E& expected, const A& actual) {
    return {text(expected), text(actual)};
}

/// "k/n" style tally for property cases
inline Outcome tally(int passed, int total) {
    return {std::to_string(total) + "/" + std::to_string(total), std::to_string(passed) + "/" + std::to_string(total)};
}

class Runner {
public:
    Runner(std::string suite, std::uint64_t seed);

    Rng& rng() { return rng_; }
    /// Runs one case; exceptions become failures whose actual value is the error text.
    void check(std::string id, std::string oracle, const std::function<Outcome()>& body);
    std::vector<OracleReport> take() { return std::move(reports_); }

private:
    std::string suite_;
    Rng rng_;
    std::vector<OracleReport> reports_;
};

void fgl_suite(Runner& run, const SuiteOptions& options);
void generators_suite(Runner& run);
void loopspace_suite(Runner& run);
void hirzebruch_suite(Runner& run);
void kring_suite(Runner& run);

} // namespace mqc::detail
