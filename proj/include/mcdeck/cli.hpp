#ifndef MCDECK_CLI_HPP
#define MCDECK_CLI_HPP

namespace mcdeck {

// Entry point for the mcdeck tool. Exit codes: 0 success, 1 when warnings
// were emitted and --strict was given, 2 on any error.
int run_cli(int argc, char** argv);

} // namespace mcdeck

#endif
