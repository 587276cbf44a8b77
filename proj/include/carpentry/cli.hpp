#ifndef CARPENTRY_CLI_HPP
#define CARPENTRY_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace carpentry {

inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitValidation = 2;

/// Entry point of the `carpentry` tool. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace carpentry

#endif // CARPENTRY_CLI_HPP
