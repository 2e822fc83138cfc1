#pragma once

#include <string>

#include "slspec/cli/run_spec.hpp"

namespace slspec::cli {

enum ExitCode : int { exit_ok = 0, exit_spec_error = 1, exit_numerical_failure = 2 };

struct RunOutcome {
    int exit_code = exit_ok;
    std::string csv;
    std::string message;
};

/// Executes the command and renders its CSV table; rows are ordered deterministically.
RunOutcome run(const RunSpec& spec);

}  // namespace slspec::cli
