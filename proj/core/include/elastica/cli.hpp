// Command line front end: subcommand dispatch, JSON config resolution and
// run-record export.
//
// Subcommands: integrate, energy, solve, search, refine, minimize, verify,
// reproduce. Exit codes: 0 success, 1 domain error, 2 usage error.
#ifndef ELASTICA_CLI_HPP
#define ELASTICA_CLI_HPP

#include <string>
#include <vector>

namespace elastica::cli {

/// Runs the tool on the given arguments (excluding the program name).
int run(const std::vector<std::string>& args);

int run(int argc, const char* const* argv);

}  // namespace elastica::cli

#endif
