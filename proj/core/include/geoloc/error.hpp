#pragma once

#include <stdexcept>
#include <string>

namespace geoloc {

enum class ErrorKind {
  Parse,    // malformed token or value
  Schema,   // wrong column count / header mismatch
  Range,    // value outside its legal interval
  Config,   // invalid configuration parameter
  Domain,   // query outside the supported domain
  Shape,    // tensor / array dimension mismatch
  Numeric,  // NaN or Inf where finite values are required
  Io,       // file read/write failure
};

const char* to_string(ErrorKind kind);

// Single exception type for the whole library. what() is a one-line,
// machine-parseable message of the form "<kind>: <detail>".
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return "parse error";
    case ErrorKind::Schema: return "schema error";
    case ErrorKind::Range: return "range error";
    case ErrorKind::Config: return "config error";
    case ErrorKind::Domain: return "domain error";
    case ErrorKind::Shape: return "shape error";
    case ErrorKind::Numeric: return "numeric error";
    case ErrorKind::Io: return "io error";
  }
  return "error";
}

}  // namespace geoloc
