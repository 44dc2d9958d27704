#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace varsep::cli {

/// Process exit codes.
enum ExitCode : int {
    kSuccess = 0,       // separable, or the command completed
    kNotSeparable = 1,  // check / separate only
    kUsageError = 2,    // bad arguments, syntax errors, non-polynomial input
    kDegenerate = 3,    // zero polynomial, function vanishing on the grid
    kInternal = 4,      // verification failure or disagreeing routes
};

/// Runs the command line `args` (args[0] is the program name). `in` supplies
/// the expression when it is given as "-".
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace varsep::cli
