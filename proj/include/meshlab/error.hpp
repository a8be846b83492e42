#pragma once

#include <stdexcept>
#include <string>

namespace meshlab {

enum class ErrorKind {
  NoFeasibleLayout,
  NoRoute,
  AllRoutesDepleted,
  MissingLayout,
  ParseError,
  ValidationError,
  IoError,
};

const char* to_string(ErrorKind kind) noexcept;

/// Base for every domain failure raised by the library. The kind is what the
/// CLI maps onto exit codes and what tests match on.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

template <ErrorKind K>
class KindedError : public Error {
 public:
  explicit KindedError(const std::string& message) : Error(K, message) {}
};

using NoFeasibleLayout = KindedError<ErrorKind::NoFeasibleLayout>;
using NoRoute = KindedError<ErrorKind::NoRoute>;
using AllRoutesDepleted = KindedError<ErrorKind::AllRoutesDepleted>;
using MissingLayout = KindedError<ErrorKind::MissingLayout>;
using ParseError = KindedError<ErrorKind::ParseError>;
using ValidationError = KindedError<ErrorKind::ValidationError>;
using IoError = KindedError<ErrorKind::IoError>;

}  // namespace meshlab
