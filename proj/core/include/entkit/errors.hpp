#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace entkit {

// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A byte in the input does not belong to the declared alphabet.
class UnknownSymbolError : public Error {
 public:
  UnknownSymbolError(std::size_t position, int symbol)
      : Error("unknown symbol " + std::to_string(symbol) + " at position " +
              std::to_string(position)),
        position_(position),
        symbol_(symbol) {}

  std::size_t position() const noexcept { return position_; }
  int symbol() const noexcept { return symbol_; }

 private:
  std::size_t position_;
  int symbol_;
};

// Context order k exceeds what the string can support.
class OrderTooLargeError : public Error {
 public:
  OrderTooLargeError(unsigned order, std::size_t length)
      : Error("context order " + std::to_string(order) +
              " too large for string of length " + std::to_string(length)) {}
};

class EmptyStringError : public Error {
 public:
  EmptyStringError() : Error("operation requires a nonempty string") {}
  explicit EmptyStringError(const std::string& what) : Error(what) {}
};

class EmptyInputError : public Error {
 public:
  EmptyInputError() : Error("compressor input must be nonempty") {}
};

class EmptyFamilyListError : public Error {
 public:
  EmptyFamilyListError() : Error("model selection requires at least one candidate family") {}
};

class CorruptHeaderError : public Error {
 public:
  explicit CorruptHeaderError(const std::string& what)
      : Error("corrupt header: " + what) {}
};

class TruncatedPayloadError : public Error {
 public:
  explicit TruncatedPayloadError(const std::string& what)
      : Error("truncated payload: " + what) {}
};

class LengthMismatchError : public Error {
 public:
  LengthMismatchError(std::size_t lhs, std::size_t rhs)
      : Error("length mismatch: " + std::to_string(lhs) + " vs " + std::to_string(rhs)) {}
};

// Both marginals of a joint distribution are deterministic, so the
// normalized information distance denominator vanishes.
class DegenerateJointError : public Error {
 public:
  DegenerateJointError() : Error("degenerate joint: both marginal entropies are zero") {}
};

class EnumerationTooLargeError : public Error {
 public:
  EnumerationTooLargeError(const std::string& detail)
      : Error("enumeration too large: " + detail) {}
};

// An external compressor process failed or behaved inconsistently.
class ExternalProcessError : public Error {
 public:
  ExternalProcessError(int exit_code, std::string stderr_text)
      : Error("external compressor exited with code " + std::to_string(exit_code) +
              (stderr_text.empty() ? "" : (": " + stderr_text))),
        exit_code_(exit_code),
        stderr_text_(std::move(stderr_text)) {}

  int exit_code() const noexcept { return exit_code_; }
  const std::string& stderr_text() const noexcept { return stderr_text_; }

 private:
  int exit_code_;
  std::string stderr_text_;
};

}  // namespace entkit
