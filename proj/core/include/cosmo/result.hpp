#pragma once

#include <cassert>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

namespace cosmo {

/// Recoverable failure codes. Tool-level codes are surfaced to agents as
/// ok=false responses; they never terminate an episode by themselves.
enum class ErrorCode {
  UnknownMaterial,
  UnknownCategory,
  InvalidParams,
  DegenerateGeometry,
  NoFaceMatched,
  SingularSystem,
  NonConvergence,
  EmptyField,
  InjectedFailure,
  BudgetExhausted,
  EpisodeClosed,
  ProtocolViolation,
  ParseError,
  MismatchedInputs,
  IoError,
};

const char* to_string(ErrorCode code);

struct Error {
  ErrorCode code;
  std::string message;
};

/// Minimal expected-like carrier: either a value or an Error.
template <typename T>
class [[nodiscard]] Result {
 public:
  Result(T value) : v_(std::move(value)) {}
  Result(Error err) : v_(std::move(err)) {}

  static Result failure(ErrorCode code, std::string message) {
    return Result(Error{code, std::move(message)});
  }

  bool ok() const { return std::holds_alternative<T>(v_); }
  explicit operator bool() const { return ok(); }

  T& value() {
    assert(ok());
    return std::get<T>(v_);
  }
  const T& value() const {
    assert(ok());
    return std::get<T>(v_);
  }
  T&& take() {
    assert(ok());
    return std::get<T>(std::move(v_));
  }

  const Error& error() const {
    assert(!ok());
    return std::get<Error>(v_);
  }
  ErrorCode code() const { return error().code; }

 private:
  std::variant<T, Error> v_;
};

/// For operations with no payload.
struct Unit {};
using Status = Result<Unit>;

inline Status ok_status() { return Status(Unit{}); }

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownMaterial: return "UnknownMaterial";
    case ErrorCode::UnknownCategory: return "UnknownCategory";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::DegenerateGeometry: return "DegenerateGeometry";
    case ErrorCode::NoFaceMatched: return "NoFaceMatched";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::EmptyField: return "EmptyField";
    case ErrorCode::InjectedFailure: return "InjectedFailure";
    case ErrorCode::BudgetExhausted: return "BudgetExhausted";
    case ErrorCode::EpisodeClosed: return "EpisodeClosed";
    case ErrorCode::ProtocolViolation: return "ProtocolViolation";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::MismatchedInputs: return "MismatchedInputs";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace cosmo
