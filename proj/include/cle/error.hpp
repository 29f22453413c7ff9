#pragma once

#include <stdexcept>
#include <string>

namespace cle {

// Error taxonomy mirrored by the C API status codes and the CLI exit codes:
// validation -> 1, estimation -> 2, acceptance -> 3. Domain/usage errors on
// in-process calls are validation errors from the driver's point of view.
enum class ErrorCode {
  validation,
  not_implemented,
  estimation,
  acceptance,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) { throw Error(code, msg); }
[[noreturn]] inline void fail_validation(const std::string& msg) { fail(ErrorCode::validation, msg); }
[[noreturn]] inline void fail_estimation(const std::string& msg) { fail(ErrorCode::estimation, msg); }

inline void require(bool cond, const std::string& msg) {
  if (!cond) fail_validation(msg);
}

}  // namespace cle
