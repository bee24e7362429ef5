#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hdx {

/**
 * Full command-line entry point, exposed for in-process testing.  `args`
 * excludes the program name.
 *
 * Exit codes: 0 success, 1 usage error, 2 parse or validation failure,
 * 3 hypothesis not met (or a rejected random draw), 4 bound violated.
 */
int runCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hdx
