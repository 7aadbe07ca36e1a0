#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace factpow {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t offset)
      : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class UnknownIdentifier : public SyntaxError {
 public:
  UnknownIdentifier(const std::string& name, std::size_t offset)
      : SyntaxError("unknown identifier '" + name + "'", offset), name_(name) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

class NegativeFactorial : public Error {
 public:
  NegativeFactorial() : Error("factorial of a negative value") {}
};

class NegativeExponent : public Error {
 public:
  NegativeExponent() : Error("negative exponent") {}
};

class EstimateOverflow : public Error {
 public:
  EstimateOverflow() : Error("size estimate exceeds 2^63 bits") {}
};

/// An integer that must be known exactly (an exponent or a factorial
/// argument) is too large to evaluate.
class ExponentTooLarge : public Error {
 public:
  explicit ExponentTooLarge(const std::string& detail)
      : Error("exponent too large: " + detail) {}
};

/// Raised by the interval engine when a subtraction's operands cannot be
/// separated at the requested precision.
class AmbiguousSign : public Error {
 public:
  explicit AmbiguousSign(std::uint32_t precision)
      : Error("ambiguous sign at precision " + std::to_string(precision)),
        precision_(precision) {}
  std::uint32_t precision() const noexcept { return precision_; }

 private:
  std::uint32_t precision_;
};

/// Intervals overlapped at the top of the ladder and exact evaluation was
/// refused. Estimates are empty when they overflowed.
class Undecided : public Error {
 public:
  Undecided(std::uint32_t max_precision, std::optional<std::uint64_t> lhs_bits,
            std::optional<std::uint64_t> rhs_bits, const std::string& context = {})
      : Error(describe(max_precision, lhs_bits, rhs_bits, context)),
        max_precision_(max_precision),
        lhs_bits_(lhs_bits),
        rhs_bits_(rhs_bits) {}

  std::uint32_t max_precision() const noexcept { return max_precision_; }
  std::optional<std::uint64_t> lhs_bits() const noexcept { return lhs_bits_; }
  std::optional<std::uint64_t> rhs_bits() const noexcept { return rhs_bits_; }

 private:
  static std::string describe(std::uint32_t f, std::optional<std::uint64_t> a,
                              std::optional<std::uint64_t> b, const std::string& context) {
    auto bits = [](std::optional<std::uint64_t> v) {
      return v ? std::to_string(*v) : std::string(">2^63");
    };
    std::string s = "undecided after precision " + std::to_string(f) +
                    " (estimates " + bits(a) + " / " + bits(b) + " bits)";
    if (!context.empty()) s += " " + context;
    return s;
  }

  std::uint32_t max_precision_;
  std::optional<std::uint64_t> lhs_bits_;
  std::optional<std::uint64_t> rhs_bits_;
};

/// A binding lies outside an inequality's parameter domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace factpow
