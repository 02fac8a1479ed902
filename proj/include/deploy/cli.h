#ifndef DEPLOY_CLI_H
#define DEPLOY_CLI_H

#include <iosfwd>
#include <string>
#include <vector>

namespace deploy {

// Batch front end. Subcommands: plan, validate, generate, show. Exit codes:
// 0 success/valid, 1 plan invalid or no plan within bounds, 2 parse or
// validation error (including bad flags), 3 internal error. Diagnostics go
// to err; artifacts to out or the -o file.
int runCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace deploy

#endif
