#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "factpow/errors.hpp"

namespace factpow {

/// Default cap on the bit length of any exactly evaluated value.
inline constexpr std::uint64_t kDefaultExactBudgetBits = 3'500'000;
/// Constant subtrees at or below this size are folded by normalize().
inline constexpr std::uint64_t kDefaultFoldThresholdBits = 64;
/// Budget used when an exponent or factorial argument must be known exactly.
inline constexpr std::uint64_t kExponentBudgetBits = 1u << 16;

enum class Op : std::uint8_t { Const, Var, Fact, Pow, Add, Sub, Mul };

/// Variables of the expression language. J is the auxiliary index used by a
/// few catalog inequalities and is only accepted when the parser is asked to.
enum class Var : std::uint8_t { K, N, J };

char var_letter(Var v) noexcept;

struct ExprNode;

/// Immutable factorial-power expression tree with value semantics. Copies
/// share structure.
class Expr {
 public:
  static Expr constant(mpz_class value);
  static Expr constant(unsigned long value);
  static Expr var(Var v);
  static Expr fact(Expr child);
  static Expr pow(Expr base, Expr exponent);
  static Expr add(Expr lhs, Expr rhs);
  static Expr sub(Expr lhs, Expr rhs);
  static Expr mul(Expr lhs, Expr rhs);

  Op op() const noexcept;
  /// Valid for Const only.
  const mpz_class& value() const;
  /// Valid for Var only.
  Var variable() const;
  /// First child: Fact operand, Pow base, or left operand.
  const Expr& lhs() const;
  /// Second child: Pow exponent or right operand.
  const Expr& rhs() const;

  bool is_closed() const noexcept;
  bool uses(Var v) const noexcept;
  std::size_t node_count() const noexcept;
  std::size_t depth() const noexcept;

  /// Structural identity.
  friend bool operator==(const Expr& a, const Expr& b);
  /// Fixed total order on trees: by operator, then payload, then children.
  friend std::strong_ordering operator<=>(const Expr& a, const Expr& b);

 private:
  explicit Expr(std::shared_ptr<const ExprNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const ExprNode> node_;
};

/// Positive integers for k and n, plus the optional auxiliary index j >= 0.
struct Binding {
  std::uint64_t k = 1;
  std::uint64_t n = 1;
  std::optional<std::uint64_t> j;

  Binding() = default;
  Binding(std::uint64_t k_value, std::uint64_t n_value,
          std::optional<std::uint64_t> j_value = std::nullopt);

  friend bool operator==(const Binding&, const Binding&) = default;
};

struct SizeEstimate {
  std::uint64_t upper_bound_bits = 0;
};

struct ParseOptions {
  bool allow_aux_index = false;
};

Expr parse_expr(std::string_view text, const ParseOptions& options = {});

/// Fully parenthesized rendering; parse_expr(to_string(e)) == e.
std::string to_string(const Expr& e);

Expr substitute(const Expr& e, const Binding& b);

struct NormalizeOptions {
  /// Closed subtrees whose estimate does not exceed this are evaluated.
  /// Zero disables all constant folding.
  std::uint64_t fold_threshold_bits = kDefaultFoldThresholdBits;
};

/// Canonical, value-preserving form: Add/Sub chains become sorted positive
/// terms followed by sorted subtracted terms, Mul chains become sorted
/// factors, small constant subtrees are folded.
Expr normalize(const Expr& e, const NormalizeOptions& options = {});

bool structurally_equal(const Expr& a, const Expr& b, const NormalizeOptions& options = {});

/// Sound upper bound on the bit length of |e| for a closed expression,
/// computed without evaluating anything but exponents and factorial
/// arguments.
SizeEstimate estimate_bits(const Expr& e, std::uint64_t exponent_budget_bits = kExponentBudgetBits);

/// Bit length of |v| (zero for v == 0).
std::uint64_t bit_length(const mpz_class& v);

/// Thrown by eval_exact before any subcomputation that would exceed the
/// budget.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(Expr subtree, std::uint64_t estimate_bits, std::uint64_t budget_bits);
  const Expr& subtree() const noexcept { return subtree_; }
  std::uint64_t estimate_bits() const noexcept { return estimate_bits_; }

 private:
  Expr subtree_;
  std::uint64_t estimate_bits_;
};

mpz_class eval_exact(const Expr& e, std::uint64_t budget_bits = kDefaultExactBudgetBits);

}  // namespace factpow
