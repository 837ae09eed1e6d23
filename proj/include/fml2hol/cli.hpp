#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fml2hol::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kInputError = 1;    // parse, validation, unknown logic/domain
inline constexpr int kIoError = 2;
inline constexpr int kTimeout = 3;       // check --strict-timeout
inline constexpr int kBadFixture = 4;    // eval: model violates frame/domain conditions
inline constexpr int kUsage = 64;

// `args[0]` is the program name. Results go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fml2hol::cli
