#ifndef ALCOVE_CLI_HPP
#define ALCOVE_CLI_HPP

namespace alcove {

/// Entry point of the command-line tool.  Exit codes: 0 success, 2 validation
/// or usage error (a JSON error object is printed), 3 when the mathematical
/// outcome is a non-certificate (NonConvergent or NoWitness).
int cli_main(int argc, const char* const* argv);

}  // namespace alcove

#endif
