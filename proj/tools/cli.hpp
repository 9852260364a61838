#ifndef REPALLOC_CLI_HPP
#define REPALLOC_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "repalloc/worked_examples.hpp"

namespace repalloc::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
	kOk = 0,
	kInputError = 1,
	kRegimeViolated = 2,
	kTooLarge = 3,
	kReproductionMismatch = 4,
};

/// Runs the command line (args excludes the program name) and returns the
/// exit code. Normal output goes to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Prints one line per check and returns kOk or kReproductionMismatch.
int report_reproduction(const std::vector<ReproductionCheck>& checks, std::ostream& out);

} // namespace repalloc::cli

#endif
