#include "factpow/scanner.hpp"

#include <atomic>
#include <exception>
#include <functional>
#include <stdexcept>
#include <thread>

namespace factpow {

ScanAborted::ScanAborted(const Undecided& cause, std::string target, std::uint64_t k, std::uint64_t n,
                         std::optional<std::uint64_t> j)
    : Undecided(cause.max_precision(), cause.lhs_bits(), cause.rhs_bits(),
                "at " + target + " (k=" + std::to_string(k) + ", n=" + std::to_string(n) +
                    (j ? ", j=" + std::to_string(*j) : std::string()) + ")"),
      target_(std::move(target)),
      k_(k),
      n_(n),
      j_(j) {}

namespace {

using Clock = std::chrono::steady_clock;

// Runs task(i) for every i in [0, count) on a small pool. Records are written
// to preassigned slots, so the result does not depend on scheduling. After a
// failure no new tasks start; the failed task with the lowest index wins.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& task) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));

  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count || failed.load()) return;
      try {
        task(i);
      } catch (...) {
        errors[i] = std::current_exception();
        failed.store(true);
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

void tally(ScanReport& report) {
  report.tiers = {{to_string(Tier::Structural), 0}, {to_string(Tier::LogSeparation), 0}, {to_string(Tier::Exact), 0}};
  for (const auto& r : report.pairs) {
    ++report.tiers[to_string(r.certificate.tier)];
    report.max_precision = std::max(report.max_precision, r.certificate.precision);
  }
}

}  // namespace

ScanReport scan_equation(const EquationSpec& eq, std::uint64_t k_max, std::uint64_t n_max,
                         const ComparePolicy& policy, const ScanOptions& options) {
  if (k_max < 1 || n_max < 1) throw std::invalid_argument("scan ranges must be at least 1");
  policy.validate();
  const auto start = Clock::now();

  ScanReport report;
  report.target = eq.id;
  report.kind = TargetKind::Equation;
  report.ranges = {.k_lo = 1, .k_hi = k_max, .n_lo = 1, .n_hi = n_max};
  report.pairs.resize(k_max * n_max);

  parallel_for(report.pairs.size(), options.threads, [&](std::size_t i) {
    PairRecord& r = report.pairs[i];
    r.k = 1 + i / n_max;
    r.n = 1 + i % n_max;
    const auto t0 = Clock::now();
    try {
      const Comparison c = compare_instance(eq.lhs, eq.rhs, Binding(r.k, r.n), policy);
      r.verdict = c.verdict;
      r.certificate = c.certificate;
    } catch (const Undecided& u) {
      throw ScanAborted(u, eq.id, r.k, r.n, std::nullopt);
    }
    r.holds = r.verdict == Verdict::Equal;
    r.elapsed = std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - t0);
  });

  for (const auto& r : report.pairs)
    if (r.holds) report.solutions.insert({r.k, r.n});
  tally(report);
  report.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start);
  return report;
}

ScanReport scan_inequality(const InequalitySpec& spec, const ScanBounds& bounds, const ComparePolicy& policy,
                           const ScanOptions& options) {
  policy.validate();
  const auto start = Clock::now();

  std::vector<Binding> bindings;
  const bool use_k = spec.uses_k();
  const bool use_n = spec.uses_n();
  const std::uint64_t k_lo = use_k ? std::max<std::uint64_t>(1, bounds.k_lo) : 1;
  const std::uint64_t k_hi = use_k ? bounds.k_hi : 1;
  const std::uint64_t n_lo = use_n ? std::max<std::uint64_t>(1, bounds.n_lo) : 1;
  const std::uint64_t n_hi = use_n ? bounds.n_hi : 1;
  for (std::uint64_t k = k_lo; k <= k_hi; ++k) {
    for (std::uint64_t n = n_lo; n <= n_hi; ++n) {
      if (use_k && use_n && bounds.n_greater_than_k && n <= k) continue;
      if (spec.domain.has_j) {
        for (std::uint64_t j = 0; j < k; ++j) {
          Binding b(k, n, j);
          if (spec.domain.contains(b)) bindings.push_back(b);
        }
      } else {
        Binding b(k, n);
        if (spec.domain.contains(b)) bindings.push_back(b);
      }
    }
  }
  if (bindings.empty())
    throw std::invalid_argument(spec.id + ": scan bounds do not intersect the domain " + spec.domain.describe());

  ScanReport report;
  report.target = spec.id;
  report.kind = TargetKind::Inequality;
  report.ranges = {.k_lo = k_lo, .k_hi = k_hi, .n_lo = n_lo, .n_hi = n_hi,
                   .n_greater_than_k = bounds.n_greater_than_k && use_k && use_n};
  report.pairs.resize(bindings.size());

  parallel_for(bindings.size(), options.threads, [&](std::size_t i) {
    const Binding& b = bindings[i];
    PairRecord& r = report.pairs[i];
    r.k = b.k;
    r.n = b.n;
    r.j = b.j;
    const auto t0 = Clock::now();
    try {
      const CheckResult res = check_inequality(spec, b, policy);
      r.verdict = res.comparison.verdict;
      r.certificate = res.comparison.certificate;
      r.holds = res.holds;
    } catch (const Undecided& u) {
      throw ScanAborted(u, spec.id, b.k, b.n, b.j);
    }
    r.elapsed = std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - t0);
  });

  for (const auto& r : report.pairs)
    if (!r.holds) report.failures.push_back(r);
  tally(report);
  report.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start);
  return report;
}

DiffResult diff_expected(const ScanReport& report, const EquationSpec& eq) {
  DiffResult d;
  const ScanBounds& r = report.ranges;
  for (std::uint64_t k = r.k_lo; k <= r.k_hi; ++k)
    for (std::uint64_t n = r.n_lo; n <= r.n_hi; ++n)
      if (eq.is_expected_solution(k, n) && !report.solutions.contains({k, n})) d.missing.insert({k, n});
  for (const auto& [k, n] : report.solutions)
    if (!eq.is_expected_solution(k, n)) d.spurious.insert({k, n});
  return d;
}

}  // namespace factpow
