#pragma once

#include <stdexcept>
#include <string>

namespace grn {

/// Failure category. Each category maps onto one CLI exit code.
enum class ErrorKind {
  Parse,        // malformed input text or framing
  Label,        // label file problems, class sizes
  EmptyResult,  // a stage produced nothing usable downstream
  Io,           // unreadable input, unwritable output
  Domain,       // numeric precondition violated (log of non-positive, sizes)
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse:
      return 2;
    case ErrorKind::Label:
      return 3;
    case ErrorKind::EmptyResult:
      return 4;
    case ErrorKind::Io:
      return 5;
    case ErrorKind::Domain:
      return 2;
  }
  return 1;
}

}  // namespace grn
