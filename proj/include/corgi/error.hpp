#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace corgi {

enum class Errc {
  DuplicateType,
  DuplicateAttribute,
  EmptyAttributeList,
  UnknownType,
  SchemaViolation,
  UnknownFactId,
  ParseError,
  DuplicateVarName,
  TypeMismatch,
  UnknownAttribute,
  UndeclaredVar,
  StaleGraph,
  UnknownBinding,
  UnknownVar,
  PendingChanges,
  InvalidatedIterator,
  LimitExceeded,
  Timeout,
  DegenerateFit,
  InvalidArgument,
};

constexpr std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::DuplicateType: return "DuplicateType";
    case Errc::DuplicateAttribute: return "DuplicateAttribute";
    case Errc::EmptyAttributeList: return "EmptyAttributeList";
    case Errc::UnknownType: return "UnknownType";
    case Errc::SchemaViolation: return "SchemaViolation";
    case Errc::UnknownFactId: return "UnknownFactId";
    case Errc::ParseError: return "ParseError";
    case Errc::DuplicateVarName: return "DuplicateVarName";
    case Errc::TypeMismatch: return "TypeMismatch";
    case Errc::UnknownAttribute: return "UnknownAttribute";
    case Errc::UndeclaredVar: return "UndeclaredVar";
    case Errc::StaleGraph: return "StaleGraph";
    case Errc::UnknownBinding: return "UnknownBinding";
    case Errc::UnknownVar: return "UnknownVar";
    case Errc::PendingChanges: return "PendingChanges";
    case Errc::InvalidatedIterator: return "InvalidatedIterator";
    case Errc::LimitExceeded: return "LimitExceeded";
    case Errc::Timeout: return "Timeout";
    case Errc::DegenerateFit: return "DegenerateFit";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Every failure raised by the library. `code()` identifies the failure class;
/// parse failures additionally carry a location (line for fact files, byte
/// offset for patterns).
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message, std::optional<std::size_t> location = std::nullopt)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code),
        message_(message),
        location_(location) {}

  Errc code() const noexcept { return code_; }
  /// The message without the code prefix.
  const std::string& message() const noexcept { return message_; }
  std::optional<std::size_t> location() const noexcept { return location_; }

 private:
  Errc code_;
  std::string message_;
  std::optional<std::size_t> location_;
};

}  // namespace corgi
