#pragma once

#include <stdexcept>
#include <string>

namespace gi {

// Error taxonomy mirrors the CLI exit codes: input/parse problems,
// configuration problems, and internal invariant violations.
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class ParseError : public Error {
  public:
    ParseError(const std::string& msg, long line = -1)
        : Error(line >= 0 ? msg + " (line " + std::to_string(line) + ")" : msg), line_(line) {}
    long line() const { return line_; }

  private:
    long line_;
};

class ConflictError : public Error {
  public:
    using Error::Error;
};

class DomainError : public Error {
  public:
    using Error::Error;
};

class LookupError : public Error {
  public:
    using Error::Error;
};

class ConfigError : public Error {
  public:
    using Error::Error;
};

class InvariantError : public Error {
  public:
    using Error::Error;
};

} // namespace gi
