#include <doctest.h>

#include "factpow/report.hpp"
#include "factpow/scanner.hpp"
#include "oracle.hpp"

using namespace factpow;

namespace {

const Catalog& cat() { return get_catalog(); }

std::set<KnPair> diagonal(std::uint64_t m) {
  std::set<KnPair> s;
  for (std::uint64_t i = 1; i <= m; ++i) s.insert({i, i});
  return s;
}

}  // namespace

TEST_CASE("equation scans") {
  const ScanReport t2 = scan_equation(*cat().find_equation("T2"), 10, 10);
  CHECK(t2.solutions == diagonal(10));
  CHECK(t2.pairs.size() == 100);
  CHECK(diff_expected(t2, *cat().find_equation("T2")).match());

  const ScanReport t1 = scan_equation(*cat().find_equation("T1"), 10, 10);
  auto want = diagonal(10);
  want.insert({1, 2});
  want.insert({2, 1});
  CHECK(t1.solutions == want);
  CHECK(diff_expected(t1, *cat().find_equation("T1")).match());

  for (const auto& r : t1.pairs) {
    if (r.k == r.n) CHECK(r.certificate.tier == Tier::Structural);
    if (r.verdict == Verdict::Equal) CHECK(r.certificate.tier != Tier::LogSeparation);
  }
  CHECK(t1.tiers.size() == 3);

  const ScanReport t4 = scan_equation(*cat().find_equation("T4"), 3, 3);
  CHECK_FALSE(t4.solutions.contains({2, 3}));
  CHECK(t4.pairs[1 * 3 + 2].verdict == Verdict::Greater);
}

TEST_CASE("pairs are ordered by (k, n)") {
  const ScanReport r = scan_equation(*cat().find_equation("T3"), 3, 4);
  REQUIRE(r.pairs.size() == 12);
  for (std::size_t i = 1; i < r.pairs.size(); ++i)
    CHECK(std::pair(r.pairs[i - 1].k, r.pairs[i - 1].n) < std::pair(r.pairs[i].k, r.pairs[i].n));
  CHECK(r.ranges.k_hi == 3);
  CHECK(r.ranges.n_hi == 4);
}

TEST_CASE("inequality scans") {
  const InequalitySpec& i1 = *cat().find_inequality("I1");
  const ScanReport r1 = scan_inequality(i1, {.n_lo = 3, .n_hi = 40});
  CHECK(r1.failures.empty());
  CHECK(r1.pairs.size() == 38);
  for (const auto& p : r1.pairs) {
    if (p.n > 6) break;
    const Binding b(1, p.n);
    const mpz_class x = *factpow::testing::oracle_eval(substitute(i1.lhs, b));
    const mpz_class y = *factpow::testing::oracle_eval(substitute(i1.rhs, b));
    CHECK(x > y);
    CHECK(p.verdict == Verdict::Greater);
  }

  const ScanReport r3 = scan_inequality(*cat().find_inequality("I3"), {.k_lo = 3, .k_hi = 30});
  CHECK(r3.failures.empty());
  CHECK(r3.tiers.at("log_separation") > 0);
  CHECK(r3.pairs.back().certificate.tier == Tier::LogSeparation);

  const ScanReport r16 = scan_inequality(*cat().find_inequality("I16"), {.k_lo = 3, .k_hi = 10});
  CHECK(r16.failures.empty());
  std::size_t expected = 0;
  for (std::uint64_t k = 3; k <= 10; ++k) expected += k;
  CHECK(r16.pairs.size() == expected);
  CHECK(r16.pairs.front().j == 0u);

  const ScanReport r10 = scan_inequality(*cat().find_inequality("I10"), {.k_lo = 3, .k_hi = 6, .n_lo = 4, .n_hi = 8, .n_greater_than_k = true});
  CHECK(r10.failures.empty());
  for (const auto& p : r10.pairs) CHECK(p.n > p.k);

  CHECK_THROWS_AS(scan_inequality(i1, {.n_lo = 1, .n_hi = 2}), std::invalid_argument);
}

TEST_CASE("diff_expected on constructed reports") {
  const EquationSpec& t1 = *cat().find_equation("T1");
  ScanReport r;
  r.ranges = {.k_lo = 1, .k_hi = 4, .n_lo = 1, .n_hi = 4};
  r.solutions = diagonal(4);
  r.solutions.insert({1, 2});
  DiffResult d = diff_expected(r, t1);
  CHECK_FALSE(d.match());
  CHECK(d.missing == std::set<KnPair>{{2, 1}});
  CHECK(d.spurious.empty());

  r.solutions.insert({2, 1});
  r.solutions.insert({3, 4});
  d = diff_expected(r, t1);
  CHECK(d.missing.empty());
  CHECK(d.spurious == std::set<KnPair>{{3, 4}});
}

TEST_CASE("determinism and order independence") {
  const EquationSpec& t3 = *cat().find_equation("T3");
  const ReportFormat no_time{.include_timing = false};
  const ScanReport a = scan_equation(t3, 12, 12, {}, {.threads = 1});
  const ScanReport b = scan_equation(t3, 12, 12, {}, {.threads = 4});
  const ScanReport c = scan_equation(t3, 12, 12, {}, {.threads = 1});
  CHECK(to_json(a, std::nullopt, no_time) == to_json(c, std::nullopt, no_time));
  CHECK(to_json(a, std::nullopt, no_time) == to_json(b, std::nullopt, no_time));
  CHECK(a.solutions == b.solutions);
  CHECK(a.tiers == b.tiers);
}

TEST_CASE("an undecidable pair aborts the scan with its location") {
  const EquationSpec eq{"X", "", "", parse_expr("2^(2*(n!))"), parse_expr("4^(n!)"), ExpectedSolutions::Diagonal, ""};
  ComparePolicy tight;
  tight.exact_budget_bits = 1024;
  try {
    scan_equation(eq, 1, 10, tight, {.threads = 2});
    FAIL("expected ScanAborted");
  } catch (const ScanAborted& e) {
    CHECK(e.target() == "X");
    CHECK(e.k() == 1);
    CHECK(e.n() == 6);
  }
}
