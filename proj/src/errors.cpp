#include "hdtest/errors.hpp"

namespace hdtest {

ErrorKind kind_of(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::Size:
    case ErrorCode::Domain:
    case ErrorCode::NotSymmetric:
    case ErrorCode::Config:
    case ErrorCode::Csv:
      return ErrorKind::Validation;
    case ErrorCode::DegenerateVariance:
    case ErrorCode::Denominator:
    case ErrorCode::NotPsd:
    case ErrorCode::Singular:
    case ErrorCode::RankDeficient:
    case ErrorCode::ZeroNormColumn:
    case ErrorCode::DegenerateResponse:
      return ErrorKind::Numerical;
  }
  return ErrorKind::Validation;
}

std::string_view code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid_argument";
    case ErrorCode::Size: return "size";
    case ErrorCode::Domain: return "domain";
    case ErrorCode::NotSymmetric: return "not_symmetric";
    case ErrorCode::Config: return "config";
    case ErrorCode::Csv: return "csv";
    case ErrorCode::DegenerateVariance: return "degenerate_variance";
    case ErrorCode::Denominator: return "denominator";
    case ErrorCode::NotPsd: return "not_psd";
    case ErrorCode::Singular: return "singular";
    case ErrorCode::RankDeficient: return "rank_deficient";
    case ErrorCode::ZeroNormColumn: return "zero_norm_column";
    case ErrorCode::DegenerateResponse: return "degenerate_response";
  }
  return "unknown";
}

int exit_code(ErrorCode code) noexcept {
  return kind_of(code) == ErrorKind::Validation ? 1 : 2;
}

}  // namespace hdtest
