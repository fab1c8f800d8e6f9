#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace amrsl {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed PENMAN text. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// Violation of an AmrGraph invariant (duplicate variable, unknown endpoint).
class GraphError : public Error {
 public:
  using Error::Error;
};

class SerializationError : public Error {
 public:
  SerializationError(const std::string& what, std::vector<std::string> unreachable)
      : Error(what), unreachable_(std::move(unreachable)) {}

  const std::vector<std::string>& unreachable() const { return unreachable_; }

 private:
  std::vector<std::string> unreachable_;
};

// Bad user input: corpus files, alignments, configuration.
class InputError : public Error {
 public:
  using Error::Error;
};

// Illegal action for the current machine state. action_index is 0-based.
class MachineError : public Error {
 public:
  MachineError(const std::string& what, std::size_t action_index)
      : Error("action " + std::to_string(action_index) + ": " + what),
        action_index_(action_index) {}

  std::size_t action_index() const { return action_index_; }

 private:
  std::size_t action_index_;
};

// An external model process misbehaved or died.
class AdapterError : public Error {
 public:
  using Error::Error;
};

}  // namespace amrsl
