#pragma once

#include <ostream>

namespace mqc {

/// Runs one command line. Exit codes: 0 success, 1 computation error or failing
/// verification, 2 usage or configuration error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace mqc
