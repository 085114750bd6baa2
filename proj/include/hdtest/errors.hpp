#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hdtest {

// Every failure raised by the library carries one of these codes. The CLI
// maps each code to exactly one exit status (see exit_code()).
enum class ErrorCode {
  // caller / input problems
  InvalidArgument,
  Size,
  Domain,
  NotSymmetric,
  Config,
  Csv,
  // numerical degeneracy of the data
  DegenerateVariance,
  Denominator,
  NotPsd,
  Singular,
  RankDeficient,
  ZeroNormColumn,
  DegenerateResponse,
};

inline constexpr std::array kAllErrorCodes = {
    ErrorCode::InvalidArgument,    ErrorCode::Size,
    ErrorCode::Domain,             ErrorCode::NotSymmetric,
    ErrorCode::Config,             ErrorCode::Csv,
    ErrorCode::DegenerateVariance, ErrorCode::Denominator,
    ErrorCode::NotPsd,             ErrorCode::Singular,
    ErrorCode::RankDeficient,      ErrorCode::ZeroNormColumn,
    ErrorCode::DegenerateResponse,
};

enum class ErrorKind { Validation, Numerical };

ErrorKind kind_of(ErrorCode code) noexcept;
std::string_view code_name(ErrorCode code) noexcept;

/// 1 for validation errors, 2 for numerical degeneracy.
int exit_code(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  ErrorKind kind() const noexcept { return kind_of(code_); }

 private:
  ErrorCode code_;
};

}  // namespace hdtest
