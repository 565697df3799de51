#pragma once

#include <json.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace mqc {

struct OracleReport {
    std::string suite;
    std::string id;
    std::string oracle;
    std::string expected;
    std::string actual;
    bool pass = false;
    double runtime_ms = 0;

    /// Runtime is left out unless asked for, so reports are byte-reproducible.
    nlohmann::json to_json(bool with_runtime = false) const;
};

struct SuiteOptions {
    std::uint64_t seed = 0;
    /// Flips the sign of the u^2 coefficient of the universal exponential.
    bool inject_exp_sign_fault = false;
};

/// fgl, generators, loopspace, hirzebruch, kring, all
const std::vector<std::string>& suite_names();

/// Cases sorted by (suite, id). Failures are reported, not thrown; an unknown suite
/// name throws UnsupportedInput.
std::vector<OracleReport> run_suite(std::string_view name, const SuiteOptions& options = {});

/// One JSON object per line.
std::string to_json_lines(const std::vector<OracleReport>& reports, bool with_runtime = false);

} // namespace mqc
