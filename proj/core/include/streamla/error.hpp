#pragma once

#include <stdexcept>
#include <string>

namespace streamla {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Index or span outside the container.
class BoundsError : public Error {
 public:
  using Error::Error;
};

/// Incompatible shapes (ragged literals, mismatched operands, bad views).
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Element kind not supported by an operation (e.g. loading f32 data into an
/// int64 matrix).
class KindError : public Error {
 public:
  using Error::Error;
};

/// A decomposition, inverse or solver could not produce a result
/// (not positive definite, singular, no convergence).
class FactorisationError : public Error {
 public:
  using Error::Error;
};

/// Allocation failure.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// Filesystem failure. The message carries the path.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Malformed file contents. reason() tells the failure classes apart.
class ParseError : public Error {
 public:
  enum class Reason { malformed_token, ragged_rows, bad_magic, bad_kind, truncated, trailing_data };

  ParseError(Reason r, const std::string& what) : Error(what), reason_(r) {}
  explicit ParseError(const std::string& what) : ParseError(Reason::malformed_token, what) {}

  Reason reason() const noexcept { return reason_; }

 private:
  Reason reason_;
};

namespace detail {

[[noreturn]] inline void throw_bounds(const std::string& what) { throw BoundsError(what); }
[[noreturn]] inline void throw_shape(const std::string& what) { throw ShapeError(what); }
[[noreturn]] inline void throw_domain(const std::string& what) { throw DomainError(what); }

inline std::string dims(unsigned long long r, unsigned long long c) {
  return std::to_string(r) + "x" + std::to_string(c);
}

}  // namespace detail
}  // namespace streamla
