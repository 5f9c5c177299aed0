#pragma once

#include <stdexcept>
#include <string>

namespace oclp {

enum class ErrorKind {
    EmptyInput,
    DuplicatePair,
    DanglingTarget,
    NoAdmissibleAction,
    InadmissibleControl,
    BasisMismatch,
    EmptySet,
    MaxIterExceeded,
    NumericalFailure,
    Infeasible,
    SigmaMismatch,
    ParseError,
    BadConfig,
    InternalError,
};

const char* to_string(ErrorKind kind);

/// All library errors carry a kind so callers can dispatch without parsing
/// the message text.
class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

  private:
    ErrorKind kind_;
};

}  // namespace oclp
