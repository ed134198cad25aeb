#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace framelab {

enum class ErrorCode {
  EmptyFactors,
  OrderTooLarge,
  ParseError,
  NotAssociative,
  NoIdentity,
  NoInverse,
  MalformedTable,
  NotAbelian,
  GroupMismatch,
  InvalidP,
  NotSelfAdjoint,
  DimTooLarge,
  DimMismatch,
  HomomorphismFailure,
  ZeroGenerator,
  BadLength,
  BadFactorization,
  NotRealValued,
  IndexOutOfRange,
  InvalidArgument,
  Io,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so that
/// front ends can map it onto exit statuses without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace framelab
