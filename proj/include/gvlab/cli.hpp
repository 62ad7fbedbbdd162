#ifndef GVLAB_CLI_HPP
#define GVLAB_CLI_HPP

#include <string>
#include <vector>

namespace gvlab {

// Dispatches one subcommand.  Exit codes: 0 success, 1 usage/validation
// error, 2 size guard tripped, 3 internal invariant failure (including
// verification mismatches).  Errors go to stderr as "ERROR <code>: <message>".
int run_cli(int argc, const char* const* argv);
int run_cli(const std::vector<std::string>& args); // args without argv[0]

} // namespace gvlab

#endif
