#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "factpow/comparator.hpp"
#include "factpow/expr.hpp"

namespace factpow {

enum class ExpectedSolutions {
  Diagonal,            ///< k == n only
  DiagonalAndSporadic  ///< k == n, plus (1,2) and (2,1)
};

std::string to_string(ExpectedSolutions e);

struct EquationSpec {
  std::string id;
  std::string lhs_text;
  std::string rhs_text;
  Expr lhs;
  Expr rhs;
  ExpectedSolutions expected;
  std::string anchor;

  bool is_expected_solution(std::uint64_t k, std::uint64_t n) const noexcept;
};

enum class Relation { Greater, GreaterEqual };

std::string to_string(Relation r);

/// Parameter constraints of an inequality. Variables an entry does not use
/// are unconstrained.
struct Domain {
  std::optional<std::uint64_t> k_min{};
  std::optional<std::uint64_t> n_min{};
  bool n_greater_than_k = false;
  /// j ranges over [0, k-1].
  bool has_j = false;

  bool contains(const Binding& b) const noexcept;
  std::string describe() const;
};

/// Inclusive scan ranges. Ranges of variables an entry does not use are
/// ignored.
struct ScanBounds {
  std::uint64_t k_lo = 1;
  std::uint64_t k_hi = 1;
  std::uint64_t n_lo = 1;
  std::uint64_t n_hi = 1;
  bool n_greater_than_k = false;
};

struct InequalitySpec {
  std::string id;
  std::string lhs_text;
  std::string rhs_text;
  Expr lhs;
  Expr rhs;
  Relation relation;
  Domain domain;
  ScanBounds default_bounds;
  std::string anchor;

  bool uses_k() const noexcept { return lhs.uses(Var::K) || rhs.uses(Var::K); }
  bool uses_n() const noexcept { return lhs.uses(Var::N) || rhs.uses(Var::N); }
  bool uses_j() const noexcept { return lhs.uses(Var::J) || rhs.uses(Var::J); }
};

struct Catalog {
  std::vector<EquationSpec> equations;
  std::vector<InequalitySpec> inequalities;

  /// Case-insensitive lookup; nullptr when absent.
  const EquationSpec* find_equation(std::string_view id) const;
  const InequalitySpec* find_inequality(std::string_view id) const;
};

/// The immutable registry of the four equations (T1-T4) and twenty
/// supporting inequalities (I1-I20).
const Catalog& get_catalog();

struct CheckResult {
  bool holds;
  Comparison comparison;
};

/// Decides one instance of an inequality. Throws DomainError when the
/// binding lies outside the entry's domain and Undecided when the
/// comparator cannot decide.
CheckResult check_inequality(const InequalitySpec& spec, const Binding& b, const ComparePolicy& policy = {},
                             CompareStats* stats = nullptr);

}  // namespace factpow
