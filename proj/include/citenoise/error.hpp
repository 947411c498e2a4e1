#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace citenoise {

enum class ErrorKind {
  DimensionMismatch,
  NonBinaryEntry,
  UnknownAuthor,
  DuplicateId,
  EmptySystem,
  IndexOutOfRange,
  InvalidConfig,
  InsufficientReplicates,
  NonSymmetric,
  InvalidScore,
  MalformedRow,
  EmptyKey,
  EmptyReason,
  ParseError,
  SchemaVersionUnsupported,
  UnknownFixture,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NonBinaryEntry: return "NonBinaryEntry";
    case ErrorKind::UnknownAuthor: return "UnknownAuthor";
    case ErrorKind::DuplicateId: return "DuplicateId";
    case ErrorKind::EmptySystem: return "EmptySystem";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::InsufficientReplicates: return "InsufficientReplicates";
    case ErrorKind::NonSymmetric: return "NonSymmetric";
    case ErrorKind::InvalidScore: return "InvalidScore";
    case ErrorKind::MalformedRow: return "MalformedRow";
    case ErrorKind::EmptyKey: return "EmptyKey";
    case ErrorKind::EmptyReason: return "EmptyReason";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::SchemaVersionUnsupported: return "SchemaVersionUnsupported";
    case ErrorKind::UnknownFixture: return "UnknownFixture";
  }
  return "Unknown";
}

/// Every failure raised by the library. `line()` is 1-based and 0 when the
/// error has no source position.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::size_t line = 0)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind),
        line_(line) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::size_t line() const noexcept { return line_; }

 private:
  ErrorKind kind_;
  std::size_t line_;
};

}  // namespace citenoise
