#pragma once

#include <optional>
#include <string>

#include "factpow/catalog.hpp"
#include "factpow/scanner.hpp"

namespace factpow {

struct ReportFormat {
  /// When false, every wall-time field is written as zero so identical
  /// scans serialize to identical bytes.
  bool include_timing = true;
};

/// JSON object with keys target, kind, ranges, pairs, solutions (equations)
/// or failures (inequalities), diff (when given), tiers, max_precision,
/// elapsed_ms.
std::string to_json(const ScanReport& report, const std::optional<DiffResult>& diff = std::nullopt,
                    const ReportFormat& format = {});

/// Header plus one row per scanned binding.
std::string to_csv(const ScanReport& report, const ReportFormat& format = {});

/// Human-readable summary.
std::string to_table(const ScanReport& report, const std::optional<DiffResult>& diff = std::nullopt);

/// Registry listing: {"equations": [...], "inequalities": [...]}.
std::string catalog_json(const Catalog& catalog);
std::string catalog_table(const Catalog& catalog);

}  // namespace factpow
