#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <gmpxx.h>

#include "factpow/dyadic.hpp"
#include "factpow/expr.hpp"

namespace factpow {

/// Closed dyadic interval [lo, hi] bounding log2 of a magnitude.
struct LogInterval {
  Dyadic lo;
  Dyadic hi;

  Dyadic width() const { return hi - lo; }
  bool contains(const Dyadic& x) const { return lo <= x && x <= hi; }
  friend bool operator==(const LogInterval&, const LogInterval&) = default;
};

enum class Sign : int { Negative = -1, Zero = 0, Positive = 1 };

/// Exact sign plus, for nonzero values, an interval containing log2|value|.
class SignedLogMagnitude {
 public:
  static SignedLogMagnitude zero() { return SignedLogMagnitude(Sign::Zero, std::nullopt); }
  static SignedLogMagnitude make(Sign sign, LogInterval magnitude);

  Sign sign() const noexcept { return sign_; }
  /// Present iff sign() != Sign::Zero.
  const std::optional<LogInterval>& magnitude() const noexcept { return magnitude_; }
  SignedLogMagnitude negated() const;

  friend bool operator==(const SignedLogMagnitude&, const SignedLogMagnitude&) = default;

 private:
  SignedLogMagnitude(Sign s, std::optional<LogInterval> m) : sign_(s), magnitude_(std::move(m)) {}
  Sign sign_;
  std::optional<LogInterval> magnitude_;
};

/// Target number of fractional bits; atomic logarithms come back with
/// width at most 2^(1-f).
class Precision {
 public:
  explicit Precision(std::uint32_t fractional_bits);
  std::uint32_t bits() const noexcept { return bits_; }
  friend bool operator==(Precision, Precision) = default;

 private:
  std::uint32_t bits_;
};

LogInterval log2_nat(const mpz_class& m, Precision p);
/// log2(m!) as the exact sum of log2_nat(i), 2 <= i <= m. Memoized per (m, f).
LogInterval log2_factorial(std::uint64_t m, Precision p);

struct BoundOptions {
  std::uint64_t exponent_budget_bits = kExponentBudgetBits;
  /// Largest factorial argument bound_expr will sum over.
  std::uint64_t max_factorial_argument = 200'000;
  /// Sums and differences estimated at or below this size are evaluated
  /// exactly and bounded through log2_nat.
  std::uint64_t exact_sum_bits = 4096;
};

/// Sound sign and log2 bound for a closed expression. Throws AmbiguousSign
/// when a subtraction cannot be resolved at precision p.
SignedLogMagnitude bound_expr(const Expr& e, Precision p, const BoundOptions& options = {});

/// "[lo, hi]" with outward-rounded decimal endpoints.
std::string format_interval(const LogInterval& iv, unsigned digits = 6);

/// Drops all memoized logarithms.
void clear_log_cache();

}  // namespace factpow
