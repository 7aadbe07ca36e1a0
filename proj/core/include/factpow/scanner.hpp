#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "factpow/catalog.hpp"
#include "factpow/comparator.hpp"

namespace factpow {

enum class TargetKind { Equation, Inequality };

struct PairRecord {
  std::uint64_t k = 1;
  std::uint64_t n = 1;
  std::optional<std::uint64_t> j;
  Verdict verdict = Verdict::Equal;
  Certificate certificate;
  /// Equations: the pair is a solution. Inequalities: the relation holds.
  bool holds = false;
  std::chrono::microseconds elapsed{0};
};

using KnPair = std::pair<std::uint64_t, std::uint64_t>;

struct ScanReport {
  std::string target;
  TargetKind kind = TargetKind::Equation;
  ScanBounds ranges;
  /// Ordered by (k, n, j).
  std::vector<PairRecord> pairs;
  /// Equations: pairs with verdict Equal.
  std::set<KnPair> solutions;
  /// Inequalities: bindings where the relation failed.
  std::vector<PairRecord> failures;
  /// Keys: "structural", "log_separation", "exact".
  std::map<std::string, std::uint64_t> tiers;
  std::uint32_t max_precision = 0;
  std::chrono::milliseconds elapsed{0};
};

struct DiffResult {
  std::set<KnPair> missing;
  std::set<KnPair> spurious;

  bool match() const noexcept { return missing.empty() && spurious.empty(); }
};

struct ScanOptions {
  /// Worker threads; zero picks std::thread::hardware_concurrency().
  unsigned threads = 0;
};

/// Raised when a scan meets an undecidable pair; carries the pair.
class ScanAborted : public Undecided {
 public:
  ScanAborted(const Undecided& cause, std::string target, std::uint64_t k, std::uint64_t n,
              std::optional<std::uint64_t> j);
  const std::string& target() const noexcept { return target_; }
  std::uint64_t k() const noexcept { return k_; }
  std::uint64_t n() const noexcept { return n_; }
  std::optional<std::uint64_t> j() const noexcept { return j_; }

 private:
  std::string target_;
  std::uint64_t k_;
  std::uint64_t n_;
  std::optional<std::uint64_t> j_;
};

/// Classifies every (k, n) in [1, k_max] x [1, n_max].
ScanReport scan_equation(const EquationSpec& eq, std::uint64_t k_max, std::uint64_t n_max,
                         const ComparePolicy& policy = {}, const ScanOptions& options = {});

/// Checks every in-domain binding within bounds. Throws std::invalid_argument
/// when the bounds contain no in-domain binding.
ScanReport scan_inequality(const InequalitySpec& spec, const ScanBounds& bounds, const ComparePolicy& policy = {},
                           const ScanOptions& options = {});

DiffResult diff_expected(const ScanReport& report, const EquationSpec& eq);

}  // namespace factpow
