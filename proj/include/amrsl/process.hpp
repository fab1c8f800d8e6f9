#pragma once

#include <cstdio>
#include <optional>
#include <string>
#include <string_view>

#include <sys/types.h>

namespace amrsl {

// A child process run through /bin/sh with line-oriented pipes on its
// standard input and output. Failures raise AdapterError.
class ChildProcess {
 public:
  explicit ChildProcess(const std::string& command);
  ~ChildProcess();

  ChildProcess(const ChildProcess&) = delete;
  ChildProcess& operator=(const ChildProcess&) = delete;

  void write_line(std::string_view line);
  // nullopt at end of stream.
  std::optional<std::string> read_line();

  const std::string& command() const { return command_; }

 private:
  std::string command_;
  pid_t pid_ = -1;
  std::FILE* to_child_ = nullptr;
  std::FILE* from_child_ = nullptr;
};

}  // namespace amrsl
