#include "fml2hol/prover.hpp"

#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <sstream>

namespace fml2hol::prover {

const char* to_string(SzsStatus::Kind kind) {
  switch (kind) {
    case SzsStatus::Kind::Theorem: return "Theorem";
    case SzsStatus::Kind::CounterSatisfiable: return "CounterSatisfiable";
    case SzsStatus::Kind::Satisfiable: return "Satisfiable";
    case SzsStatus::Kind::Unsatisfiable: return "Unsatisfiable";
    case SzsStatus::Kind::Unknown: return "Unknown";
    case SzsStatus::Kind::Timeout: return "Timeout";
    case SzsStatus::Kind::Error: return "Error";
  }
  return "Error";
}

SzsStatus parse_szs_status(std::string_view output) {
  std::istringstream is{std::string(output)};
  for (std::string line; std::getline(is, line);) {
    auto pos = line.find("SZS status");
    if (pos == std::string::npos) continue;
    std::istringstream rest(line.substr(pos + 10));
    std::string word;
    rest >> word;
    using K = SzsStatus::Kind;
    if (word == "Theorem") return {K::Theorem, line};
    if (word == "CounterSatisfiable") return {K::CounterSatisfiable, line};
    if (word == "Satisfiable") return {K::Satisfiable, line};
    if (word == "Unsatisfiable") return {K::Unsatisfiable, line};
    if (word == "Unknown" || word == "GaveUp") return {K::Unknown, line};
    if (word == "Timeout" || word == "ResourceOut") return {K::Timeout, line};
    return {K::Error, line};
  }
  return {SzsStatus::Kind::Error, "no SZS status line in prover output"};
}

std::string expand_command(std::string_view command_template, std::string_view path) {
  std::string quoted = "'";
  for (char c : path) {
    if (c == '\'')
      quoted += "'\\''";
    else
      quoted += c;
  }
  quoted += "'";
  std::string out;
  bool found = false;
  for (std::size_t i = 0; i < command_template.size();) {
    if (command_template.substr(i).starts_with("{file}")) {
      out += quoted;
      i += 6;
      found = true;
    } else {
      out += command_template[i++];
    }
  }
  if (!found) throw Error("prover command must contain a {file} placeholder");
  return out;
}

ProverRun run_prover(std::string_view thf_path, std::string_view command_template,
                     std::chrono::milliseconds timeout) {
  ProverRun run;
  const std::string command = expand_command(command_template, thf_path);
  int fds[2];
  if (pipe(fds) != 0) {
    run.status = {SzsStatus::Kind::Error, "cannot create pipe"};
    return run;
  }
  const pid_t pid = fork();
  if (pid < 0) {
    close(fds[0]);
    close(fds[1]);
    run.status = {SzsStatus::Kind::Error, "cannot spawn prover"};
    return run;
  }
  if (pid == 0) {
    setpgid(0, 0);
    dup2(fds[1], STDOUT_FILENO);
    dup2(fds[1], STDERR_FILENO);
    close(fds[0]);
    close(fds[1]);
    execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  setpgid(pid, pid);
  close(fds[1]);

  const auto deadline = std::chrono::steady_clock::now() + timeout;
  bool timed_out = false;
  char buf[4096];
  for (;;) {
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
        deadline - std::chrono::steady_clock::now());
    if (left.count() <= 0) {
      timed_out = true;
      break;
    }
    pollfd p{fds[0], POLLIN, 0};
    const int r = poll(&p, 1, static_cast<int>(left.count()));
    if (r < 0 && errno == EINTR) continue;
    if (r == 0) {
      timed_out = true;
      break;
    }
    const ssize_t n = read(fds[0], buf, sizeof buf);
    if (n <= 0) break;
    run.output.append(buf, static_cast<std::size_t>(n));
  }
  close(fds[0]);
  if (timed_out) kill(-pid, SIGKILL);
  int status = 0;
  while (waitpid(pid, &status, 0) < 0 && errno == EINTR) {
  }
  if (timed_out) {
    run.status = {SzsStatus::Kind::Timeout, "prover exceeded the time limit"};
    return run;
  }
  run.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  if (run.exit_code == 127 && run.output.empty()) {
    run.status = {SzsStatus::Kind::Error, "cannot execute prover command"};
    return run;
  }
  run.status = parse_szs_status(run.output);
  return run;
}

}  // namespace fml2hol::prover
