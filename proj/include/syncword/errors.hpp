#pragma once
#include <cstddef>
#include <stdexcept>
#include <string>

namespace syncword {

// Out-of-range state, symbol or parameter.
class DomainError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

// A configured memory/size cap was exceeded.
class ResourceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A model or answer set does not have the shape its encoding promises.
class DecodeError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// External process failure or unparsable solver output.
class InfrastructureError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class TimeoutError : public InfrastructureError {
public:
  using InfrastructureError::InfrastructureError;
};

// A decoded witness failed verification, or two routes disagree.
class SoundnessError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace syncword
