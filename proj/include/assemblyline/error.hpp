#pragma once

#include <stdexcept>
#include <string>

namespace assemblyline {

// Mirrors al_status in the C header; values must stay in sync.
enum class ErrorCode : int {
  InvalidArgument = 1,
  OutOfRange = 2,
  LevelMismatch = 3,
  Numerical = 4,
  Io = 5,
  Internal = 6,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void throw_error(ErrorCode code, const std::string& what);

inline void require(bool condition, ErrorCode code, const char* what) {
  if (!condition) throw_error(code, what);
}

}  // namespace assemblyline
