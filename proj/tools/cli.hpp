#ifndef SPLBOARD_TOOLS_CLI_HPP
#define SPLBOARD_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace splboard::cli {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitUsage = 2;

// args excludes the program name. Diagnostics go to `err`; machine outputs
// are written to files under the output directory only.
int run(const std::vector<std::string>& args, std::ostream& err);

}  // namespace splboard::cli

#endif  // SPLBOARD_TOOLS_CLI_HPP
