#include "meshlab/error.hpp"

namespace meshlab {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NoFeasibleLayout: return "NoFeasibleLayout";
    case ErrorKind::NoRoute: return "NoRoute";
    case ErrorKind::AllRoutesDepleted: return "AllRoutesDepleted";
    case ErrorKind::MissingLayout: return "MissingLayout";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(meshlab::to_string(kind)) + ": " + message), kind_(kind) {}

}  // namespace meshlab
