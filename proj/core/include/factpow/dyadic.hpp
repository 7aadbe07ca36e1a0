#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace factpow {

enum class Rounding { Down, Up };

/// Exact dyadic rational mantissa * 2^exponent, kept canonical: the
/// mantissa is odd, or zero with exponent zero.
class Dyadic {
 public:
  Dyadic() = default;
  Dyadic(mpz_class mantissa, std::int64_t exponent);
  explicit Dyadic(long value) : Dyadic(mpz_class(value), 0) {}
  static Dyadic from_integer(const mpz_class& v) { return Dyadic(v, 0); }
  /// 2^e.
  static Dyadic power_of_two(std::int64_t e) { return Dyadic(mpz_class(1), e); }

  const mpz_class& mantissa() const noexcept { return mantissa_; }
  std::int64_t exponent() const noexcept { return exponent_; }
  int sign() const noexcept { return sgn(mantissa_); }
  bool is_zero() const noexcept { return sign() == 0; }

  friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator*(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator*(const Dyadic& a, const mpz_class& k);
  Dyadic operator-() const { return Dyadic(mpz_class(-mantissa_), exponent_); }

  friend bool operator==(const Dyadic& a, const Dyadic& b) noexcept {
    return a.exponent_ == b.exponent_ && a.mantissa_ == b.mantissa_;
  }
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);

  mpz_class floor() const;
  mpz_class ceil() const;
  /// Fractional part in [0, 1).
  Dyadic frac() const { return *this - from_integer(floor()); }

  /// Decimal rendering with `digits` fractional digits, rounded in the given
  /// direction so the printed number bounds the exact value.
  std::string to_decimal(unsigned digits, Rounding dir) const;
  /// Nearest double; for display only.
  double to_double() const;

 private:
  mpz_class mantissa_ = 0;
  std::int64_t exponent_ = 0;
};

inline const Dyadic& min(const Dyadic& a, const Dyadic& b) { return b < a ? b : a; }
inline const Dyadic& max(const Dyadic& a, const Dyadic& b) { return a < b ? b : a; }

}  // namespace factpow
