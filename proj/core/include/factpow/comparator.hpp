#pragma once

#include <atomic>
#include <cstdint>
#include <string>
#include <vector>

#include "factpow/certified_log.hpp"
#include "factpow/expr.hpp"

namespace factpow {

enum class Verdict { Less, Equal, Greater };

Verdict reversed(Verdict v) noexcept;
std::string to_string(Verdict v);

enum class Tier { Structural, LogSeparation, Exact };

std::string to_string(Tier t);

/// Why a verdict holds. `precision` is set for LogSeparation, `bits` (the
/// larger operand bit length) for Exact.
struct Certificate {
  Tier tier = Tier::Structural;
  std::uint32_t precision = 0;
  std::uint64_t bits = 0;

  static Certificate structural() { return {Tier::Structural, 0, 0}; }
  static Certificate log_separation(std::uint32_t f) { return {Tier::LogSeparation, f, 0}; }
  static Certificate exact(std::uint64_t bits) { return {Tier::Exact, 0, bits}; }

  friend bool operator==(const Certificate&, const Certificate&) = default;
};

std::string to_string(const Certificate& c);

struct Comparison {
  Verdict verdict;
  Certificate certificate;
};

struct ComparePolicy {
  std::vector<std::uint32_t> precision_ladder{32, 64, 128, 256, 512, 1024, 2048, 4096};
  std::uint64_t exact_budget_bits = kDefaultExactBudgetBits;
  /// Operands no larger than this go straight to exact evaluation.
  std::uint64_t exact_shortcut_bits = 4096;

  /// Throws std::invalid_argument unless the ladder is nonempty, strictly
  /// increasing with every rung >= 8, and the budget is at least 2^10.
  void validate() const;
};

/// Tier counters; safe to share between threads.
class CompareStats {
 public:
  std::atomic<std::uint64_t> comparisons{0};
  std::atomic<std::uint64_t> structural{0};
  std::atomic<std::uint64_t> log_separation{0};
  std::atomic<std::uint64_t> exact{0};
  std::atomic<std::uint64_t> undecided{0};
  /// Number of bound_expr invocations (one per side per rung).
  std::atomic<std::uint64_t> interval_evaluations{0};
  /// Number of exact evaluations (one per side).
  std::atomic<std::uint64_t> exact_evaluations{0};
  std::atomic<std::uint64_t> exact_bits_touched{0};
  std::atomic<std::uint32_t> max_precision_used{0};

  void record_precision(std::uint32_t f);
};

/// Both sides of a comparison after moving subtracted terms across, so each
/// side is a sum of terms that are positive by construction where that is
/// evident from the structure.
struct Rearranged {
  Expr lhs;
  Expr rhs;
};

Rearranged rearrange(const Expr& a, const Expr& b);

/// Certified three-way comparison of two closed expressions: structural
/// identity, then log2 interval separation along the precision ladder, then
/// exact evaluation within budget. Throws Undecided when all tiers fail.
Comparison compare(const Expr& a, const Expr& b, const ComparePolicy& policy = {},
                   CompareStats* stats = nullptr);

Comparison compare_instance(const Expr& lhs, const Expr& rhs, const Binding& b,
                            const ComparePolicy& policy = {}, CompareStats* stats = nullptr);

}  // namespace factpow
