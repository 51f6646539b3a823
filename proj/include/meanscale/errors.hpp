#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace meanscale {

/// Base class for every error raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the open interval a generator or potential is defined on.
class OutOfDomain : public Error {
 public:
  using Error::Error;
};

/// Radical generators require alpha > 0.
class NonPositiveAlpha : public Error {
 public:
  using Error::Error;
};

/// Custom generator failed the sampled strict-monotonicity certificate.
class NotMonotone : public Error {
 public:
  using Error::Error;
};

/// An (a, b) interval with a >= b where a proper interval is required.
class DegenerateInterval : public Error {
 public:
  using Error::Error;
};

/// Target midpoint c does not lie strictly inside (a, b).
class TargetOutOfInterval : public Error {
 public:
  using Error::Error;
};

/// Parameter search hit the bracket cap before reaching the target mean.
/// The scale only attains min/max in the limit, so targets too close to an
/// endpoint are reported instead of silently extrapolated.
class BracketExhausted : public Error {
 public:
  using Error::Error;
};

/// eta is outside the attained range of f' over the potential's domain.
class EtaOutOfRange : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature could not meet its tolerance within the interval cap.
class QuadratureFailure : public Error {
 public:
  using Error::Error;
};

namespace expr {

/// Malformed expression text; offset is the byte position of the problem.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t offset)
      : Error(what + " (at offset " + std::to_string(offset) + ")"),
        offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Identifier that is neither the variable `u` nor a known function.
class UnknownIdentifier : public Error {
 public:
  using Error::Error;
};

/// Evaluation left the real domain (log of non-positive, division by zero,
/// fractional power of a negative base) or produced a non-finite value.
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace expr
}  // namespace meanscale
