#ifndef TAILIX_ERRORS_HPP
#define TAILIX_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tailix {

// Stable error codes, mirrored one-to-one by the C API status values.
enum class ErrorCode : int {
  InvalidArgument = 1,
  NonPositiveValue = 2,
  IndexOutOfRange = 3,
  KOutOfRange = 4,
  DegenerateDenominator = 5,
  DegenerateMoments = 6,
  DomainError = 7,
  NonMonotoneTail = 8,
  ParseError = 9,
  EmptyAfterFilter = 10,
  TooManyDegenerate = 11,
  IoError = 12,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

const char* error_code_name(ErrorCode code) noexcept;

[[noreturn]] inline void raise(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace tailix

#endif  // TAILIX_ERRORS_HPP
