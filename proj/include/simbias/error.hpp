#pragma once

#include <stdexcept>
#include <string>

namespace simbias {

enum class ErrorKind {
  Domain,  // argument outside an operation's mathematical domain
  Config,  // invalid or degenerate experiment configuration
  Fit,     // envelope fit not possible on the given data
  Io,
  Parse,
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace simbias
