#pragma once

// Dispatch of a thf problem to an external prover and SZS status parsing.

#include <chrono>
#include <string>
#include <string_view>

#include "fml2hol/error.hpp"

namespace fml2hol::prover {

struct SzsStatus {
  enum class Kind { Theorem, CounterSatisfiable, Satisfiable, Unsatisfiable, Unknown, Timeout, Error };
  Kind kind = Kind::Error;
  // The SZS line (or a diagnostic) for Error.
  std::string raw;
};

const char* to_string(SzsStatus::Kind kind);

// From the first line containing "SZS status"; Error when there is none or
// the status word is not recognized. GaveUp reads as Unknown, ResourceOut as
// Timeout.
SzsStatus parse_szs_status(std::string_view output);

// Replaces every `{file}` with the shell-quoted path. Throws Error if the
// template has no placeholder.
std::string expand_command(std::string_view command_template, std::string_view path);

struct ProverRun {
  SzsStatus status;
  std::string output;  // stdout and stderr interleaved
  int exit_code = -1;  // -1 when killed or not started
};

// Runs the command through /bin/sh, killing its process group after
// `timeout`.
ProverRun run_prover(std::string_view thf_path, std::string_view command_template,
                     std::chrono::milliseconds timeout);

}  // namespace fml2hol::prover
