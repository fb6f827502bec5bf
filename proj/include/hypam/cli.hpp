#pragma once

#include <string>

#include "hypam/json_io.hpp"

namespace hypam {

struct JobResult {
    int exit_code = 0;
    json report;
};

/// Dispatch one job object; writes side-effect files named inside the job.
JobResult run_job(const json& job);

/// Full command-line entry point (subcommands, flags, --selftest, --job).
int cli_main(int argc, char** argv);

} // namespace hypam
