// run.hpp: Task execution for the command-line driver

#pragma once

#include <iosfwd>

#include "htc/app/config.hpp"
#include "htc/app/output.hpp"

namespace htc::app {

enum ExitCode : int {
    exit_ok = 0,
    exit_config = 1,
    exit_numerical = 2,
    exit_truncation = 3,
};

/// Runs the configured task and returns its files without touching the disk.
/// Propagates ParamError, NumericalError and TruncationError.
OutputSet execute(const RunConfig& config);

/// execute() + write(); prints the summary to `out` and diagnostics to `err`.
/// Never throws; maps failures onto ExitCode.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

} // namespace htc::app
