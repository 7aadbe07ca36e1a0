#include <doctest.h>

#include "factpow/comparator.hpp"
#include "properties.hpp"

using namespace factpow;

namespace {

const Expr kT1L = parse_expr("(k!)^(n!) - k^n");
const Expr kT1R = parse_expr("(n!)^(k!) - n^k");

Comparison at(std::uint64_t k, std::uint64_t n, const ComparePolicy& policy = {}) {
  return compare_instance(kT1L, kT1R, Binding(k, n), policy);
}

}  // namespace

TEST_CASE("equation instances") {
  const Comparison c12 = at(1, 2);
  CHECK(c12.verdict == Verdict::Equal);
  CHECK(c12.certificate.tier == Tier::Exact);

  CompareStats stats;
  const Comparison c99 = compare_instance(kT1L, kT1R, Binding(9, 9), {}, &stats);
  CHECK(c99.verdict == Verdict::Equal);
  CHECK(c99.certificate == Certificate::structural());
  CHECK(stats.interval_evaluations == 0);
  CHECK(stats.exact_evaluations == 0);
  CHECK(at(1, 1).certificate.tier == Tier::Structural);

  const Comparison c23 = at(2, 3);
  CHECK(c23.verdict == Verdict::Greater);
  CHECK(c23.certificate.tier != Tier::Structural);
  CHECK(at(3, 2).verdict == Verdict::Less);

  const Comparison c34 = compare(parse_expr("(3!)^(4!) - 3^4"), parse_expr("(4!)^(3!) - 4^3"));
  CHECK(c34.verdict == Verdict::Greater);
  CHECK(eval_exact(parse_expr("(3!)^(4!) - 3^4")) == mpz_class("4738381338321616815"));
  CHECK(eval_exact(parse_expr("(4!)^(3!) - 4^3")) == 191102912);
}

TEST_CASE("large instances are decided by log separation") {
  const Comparison c = at(3, 10);
  CHECK(c.verdict == Verdict::Greater);
  CHECK(c.certificate.tier == Tier::LogSeparation);
  CHECK(c.certificate.precision == 32);
  CHECK(at(19, 20).verdict == Verdict::Greater);
  CHECK(at(20, 19).verdict == Verdict::Less);
}

TEST_CASE("an Equal verdict never comes from log separation") {
  const Comparison c = compare(parse_expr("2^(2*(8!))"), parse_expr("4^(8!)"));
  CHECK(c.verdict == Verdict::Equal);
  CHECK(c.certificate.tier == Tier::Exact);
}

TEST_CASE("undecided when neither logs nor budget suffice") {
  ComparePolicy tight;
  tight.exact_budget_bits = 1024;
  CompareStats stats;
  try {
    compare(parse_expr("2^(2*(8!))"), parse_expr("4^(8!)"), tight, &stats);
    FAIL("expected Undecided");
  } catch (const Undecided& u) {
    CHECK(u.max_precision() == 4096);
    CHECK(u.lhs_bits().has_value());
  }
  CHECK(stats.undecided == 1);
}

TEST_CASE("escalation climbs the ladder") {
  CompareStats stats;
  // The difference sits thousands of bits below the leading term.
  const Comparison c = compare(parse_expr("2^6000 + 3"), parse_expr("2^6000 + 5"), {}, &stats);
  CHECK(c.verdict == Verdict::Less);
  CHECK(stats.max_precision_used == 4096);
  const Comparison d = compare(parse_expr("(3^5000) * (2^40 + 1)"), parse_expr("(3^5000) * (2^40)"));
  CHECK(d.verdict == Verdict::Greater);
  CHECK(d.certificate.tier == Tier::LogSeparation);
  CHECK(d.certificate.precision >= 64);
}

TEST_CASE("rearrange moves evident subtrahends across") {
  const NormalizeOptions raw{.fold_threshold_bits = 0};
  const Rearranged r = rearrange(parse_expr("7 - 2^3"), parse_expr("5 - 3!"));
  CHECK(normalize(r.lhs, raw) == normalize(parse_expr("7 + 3!"), raw));
  CHECK(normalize(r.rhs, raw) == normalize(parse_expr("5 + 2^3"), raw));
  const Rearranged s = rearrange(parse_expr("7 - 2*(1 - 3)"), parse_expr("1"));
  CHECK(normalize(s.lhs, raw) == normalize(parse_expr("7 - 2*(1 - 3)"), raw));
  CHECK(normalize(s.rhs, raw) == normalize(parse_expr("1"), raw));
}

TEST_CASE("policy validation") {
  ComparePolicy p;
  CHECK_NOTHROW(p.validate());
  p.precision_ladder = {};
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p.precision_ladder = {64, 32};
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p.precision_ladder = {4, 32};
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p.precision_ladder = {32};
  p.exact_budget_bits = 10;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  CHECK_THROWS_AS(compare(parse_expr("k"), parse_expr("1")), std::invalid_argument);
}

TEST_CASE("verdict and certificate rendering") {
  CHECK(to_string(Verdict::Greater) == "Greater");
  CHECK(reversed(Verdict::Less) == Verdict::Greater);
  CHECK(reversed(Verdict::Equal) == Verdict::Equal);
  CHECK(to_string(Tier::LogSeparation) == "log_separation");
  CHECK(to_string(Certificate::log_separation(32)) == "LogSeparation(f=32)");
  CHECK(to_string(Certificate::exact(6)) == "Exact(bits=6)");
}

TEST_CASE("agreement with the exact oracle") {
  SUBCASE("default policy") {
    const auto outcome = factpow::testing::check_comparator_against_oracle(300, 101, {});
    INFO(outcome.summary());
    CHECK(outcome.ok());
  }
  SUBCASE("logs first") {
    ComparePolicy p;
    p.exact_shortcut_bits = 0;
    const auto outcome = factpow::testing::check_comparator_against_oracle(300, 102, p);
    INFO(outcome.summary());
    CHECK(outcome.ok());
  }
  SUBCASE("short ladder") {
    ComparePolicy p;
    p.exact_shortcut_bits = 0;
    p.precision_ladder = {8, 16};
    const auto outcome = factpow::testing::check_comparator_against_oracle(300, 103, p);
    INFO(outcome.summary());
    CHECK(outcome.ok());
  }
  SUBCASE("equation instances") {
    const auto outcome = factpow::testing::check_equation_instances(12, {});
    INFO(outcome.summary());
    CHECK(outcome.ok());
  }
}
