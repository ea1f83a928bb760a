#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hadamard {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid point, mismatched spaces, or an out-of-range geodesic parameter.
class GeometryError : public Error {
 public:
  using Error::Error;
};

/// A (k, n) window that does not fit inside the sequence.
class WindowError : public Error {
 public:
  using Error::Error;
};

/// The finite horizon is too short for the requested diagnostic.
class HorizonError : public Error {
 public:
  using Error::Error;
};

/// Malformed sequence or generator document. `field` is a JSON-pointer-like
/// path ("points[3].y"); `line` is 1-based, or 0 when not applicable.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::string field, std::size_t line = 0)
      : Error(format(message, field, line)), field_(std::move(field)), line_(line) {}

  const std::string& field() const noexcept { return field_; }
  std::size_t line() const noexcept { return line_; }

 private:
  static std::string format(const std::string& message, const std::string& field,
                            std::size_t line) {
    std::string out;
    if (line > 0) out += "line " + std::to_string(line) + ": ";
    if (!field.empty()) out += field + ": ";
    return out + message;
  }

  std::string field_;
  std::size_t line_;
};

}  // namespace hadamard
