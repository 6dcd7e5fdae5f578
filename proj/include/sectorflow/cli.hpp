#ifndef SECTORFLOW_CLI_HPP
#define SECTORFLOW_CLI_HPP

#include <string>
#include <vector>

namespace sectorflow {

// Full command-line entry point, callable in-process. args excludes the
// program name. Returns the process exit status: 0 success, 1 bad input
// (parse or validation), 2 computational failure.
int run_cli(const std::vector<std::string>& args);

}  // namespace sectorflow

#endif
