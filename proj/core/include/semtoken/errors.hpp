#pragma once

#include <stdexcept>
#include <string>

namespace semtoken {

// Failure classes surfaced to callers. Contract violations by the caller
// (bad arguments, broken preconditions) are reported as std::invalid_argument
// instead, since they indicate a programming error rather than bad data.
enum class ErrorKind {
  kIo,          // file could not be opened, read, or written
  kFormat,      // bytes on disk do not follow the expected layout
  kAlignment,   // embeddings and tokens disagree on length
  kData,        // values are well-formed but unusable (NaN, Inf)
  kCorruption,  // compressed sequence references tokens that do not exist
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kIo: return "io";
    case ErrorKind::kFormat: return "format";
    case ErrorKind::kAlignment: return "alignment";
    case ErrorKind::kData: return "data";
    case ErrorKind::kCorruption: return "corruption";
  }
  return "unknown";
}

}  // namespace semtoken
