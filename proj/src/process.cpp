#include "amrsl/process.hpp"

#include <cerrno>
#include <csignal>
#include <cstring>

#include <sys/wait.h>
#include <unistd.h>

#include "amrsl/errors.hpp"

namespace amrsl {

ChildProcess::ChildProcess(const std::string& command) : command_(command) {
  // A dead child must surface as a write error, not kill us.
  std::signal(SIGPIPE, SIG_IGN);
  int in_pipe[2];
  int out_pipe[2];
  if (pipe(in_pipe) != 0) throw AdapterError("pipe: " + std::string(std::strerror(errno)));
  if (pipe(out_pipe) != 0) {
    close(in_pipe[0]);
    close(in_pipe[1]);
    throw AdapterError("pipe: " + std::string(std::strerror(errno)));
  }
  pid_ = fork();
  if (pid_ < 0) {
    for (int fd : {in_pipe[0], in_pipe[1], out_pipe[0], out_pipe[1]}) close(fd);
    throw AdapterError("fork: " + std::string(std::strerror(errno)));
  }
  if (pid_ == 0) {
    dup2(in_pipe[0], STDIN_FILENO);
    dup2(out_pipe[1], STDOUT_FILENO);
    for (int fd : {in_pipe[0], in_pipe[1], out_pipe[0], out_pipe[1]}) close(fd);
    execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  close(in_pipe[0]);
  close(out_pipe[1]);
  to_child_ = fdopen(in_pipe[1], "w");
  from_child_ = fdopen(out_pipe[0], "r");
  if (!to_child_ || !from_child_) throw AdapterError("fdopen failed for '" + command + "'");
}

ChildProcess::~ChildProcess() {
  if (to_child_) std::fclose(to_child_);
  if (from_child_) std::fclose(from_child_);
  if (pid_ > 0) {
    int status = 0;
    waitpid(pid_, &status, 0);
  }
}

void ChildProcess::write_line(std::string_view line) {
  if (std::fwrite(line.data(), 1, line.size(), to_child_) != line.size() ||
      std::fputc('\n', to_child_) == EOF || std::fflush(to_child_) != 0) {
    throw AdapterError("adapter '" + command_ + "' stopped accepting input");
  }
}

std::optional<std::string> ChildProcess::read_line() {
  std::string line;
  int c;
  while ((c = std::fgetc(from_child_)) != EOF) {
    if (c == '\n') return line;
    line += static_cast<char>(c);
  }
  if (line.empty()) return std::nullopt;
  return line;
}

}  // namespace amrsl
