#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace ods {

enum class ExitCode : int {
    Ok = 0,               // success, or policy accept
    OperationalError = 1, // I/O, malformed input, bad usage
    ValidationErrors = 2,
    PolicyReview = 3,
    PolicyReject = 4,
};

/// Runs one `ods` subcommand. `args` excludes the program name. Human output
/// goes to `out`, diagnostics to `err`.
ExitCode run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace ods
