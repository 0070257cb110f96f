#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pogona {

enum class ErrorKind {
  MalformedLine,
  OutOfRange,
  UnknownClass,
  MissingGeometry,
  InvalidValue,
  UnknownKey,
};

std::string_view error_kind_name(ErrorKind kind);

/// Typed failure from any of the text parsers. `line()` is 1-based; 0 means
/// the error is not tied to a particular line (e.g. a bad file name).
class ParseError : public std::runtime_error {
 public:
  ParseError(ErrorKind kind, std::size_t line, const std::string& detail);

  ErrorKind kind() const noexcept { return kind_; }
  std::size_t line() const noexcept { return line_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::size_t line_;
  std::string detail_;
};

}  // namespace pogona
