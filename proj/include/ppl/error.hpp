#pragma once

#include <stdexcept>
#include <string>

namespace ppl {

enum class ErrorKind {
  Usage,
  Precondition,
  Lookup,
  Parse,
  Validation,
  Integrity,
  Singular,
  NonTermination,
  Semisimplicity,
  NoDispersionlessLimit,
  Grading,
};

const char* to_string(ErrorKind kind);

// Single exception type for the core library; the C API maps `kind` onto
// status codes.
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

}  // namespace ppl
