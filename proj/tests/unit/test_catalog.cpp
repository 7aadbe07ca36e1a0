#include <doctest.h>

#include "factpow/catalog.hpp"
#include "oracle.hpp"

using namespace factpow;
using factpow::testing::oracle_eval;

TEST_CASE("registry contents") {
  const Catalog& cat = get_catalog();
  REQUIRE(cat.equations.size() == 4);
  REQUIRE(cat.inequalities.size() == 20);
  for (int i = 0; i < 4; ++i) CHECK(cat.equations[i].id == "T" + std::to_string(i + 1));
  for (int i = 0; i < 20; ++i) CHECK(cat.inequalities[i].id == "I" + std::to_string(i + 1));
  CHECK(cat.find_equation("t3") == &cat.equations[2]);
  CHECK(cat.find_inequality("i16") == &cat.inequalities[15]);
  CHECK(cat.find_equation("T9") == nullptr);
  CHECK(cat.find_inequality("T1") == nullptr);
  CHECK(&get_catalog() == &cat);
  for (const auto& e : cat.equations) {
    CHECK(parse_expr(e.lhs_text) == e.lhs);
    CHECK_FALSE(e.anchor.empty());
  }
  for (const auto& i : cat.inequalities) CHECK_FALSE(i.anchor.empty());
}

TEST_CASE("expected solution sets") {
  const Catalog& cat = get_catalog();
  const EquationSpec& t1 = *cat.find_equation("T1");
  CHECK(t1.is_expected_solution(1, 2));
  CHECK(t1.is_expected_solution(2, 1));
  CHECK(t1.is_expected_solution(7, 7));
  CHECK_FALSE(t1.is_expected_solution(1, 3));
  const EquationSpec& t2 = *cat.find_equation("T2");
  CHECK_FALSE(t2.is_expected_solution(1, 2));
  CHECK(t2.is_expected_solution(4, 4));
  CHECK(cat.find_equation("T3")->expected == ExpectedSolutions::DiagonalAndSporadic);
  CHECK(cat.find_equation("T4")->expected == ExpectedSolutions::Diagonal);
}

TEST_CASE("equation texts evaluate as written") {
  const Catalog& cat = get_catalog();
  // T4 at (2,3): 2^3 + 2^6 vs 6^2 + 3^2.
  const EquationSpec& t4 = *cat.find_equation("T4");
  CHECK(*oracle_eval(substitute(t4.lhs, Binding(2, 3))) == 72);
  CHECK(*oracle_eval(substitute(t4.rhs, Binding(2, 3))) == 45);
  // T1 and T3 both vanish at (1,2).
  for (const char* id : {"T1", "T3"}) {
    const EquationSpec& t = *cat.find_equation(id);
    CHECK(*oracle_eval(substitute(t.lhs, Binding(1, 2))) == 0);
    CHECK(*oracle_eval(substitute(t.rhs, Binding(1, 2))) == 0);
  }
}

TEST_CASE("domains") {
  const Catalog& cat = get_catalog();
  const Domain& i16 = cat.find_inequality("I16")->domain;
  CHECK(i16.has_j);
  CHECK(i16.contains(Binding(3, 1, 0)));
  CHECK(i16.contains(Binding(3, 1, 2)));
  CHECK_FALSE(i16.contains(Binding(3, 1, 3)));
  CHECK_FALSE(i16.contains(Binding(3, 1)));
  CHECK_FALSE(i16.contains(Binding(2, 1, 0)));

  const Domain& i10 = cat.find_inequality("I10")->domain;
  CHECK(i10.contains(Binding(3, 4)));
  CHECK_FALSE(i10.contains(Binding(4, 4)));
  CHECK_FALSE(i10.contains(Binding(2, 4)));

  const Domain& i1 = cat.find_inequality("I1")->domain;
  CHECK(i1.contains(Binding(1, 3)));
  CHECK_FALSE(i1.contains(Binding(1, 2)));
  CHECK_FALSE(i1.describe().empty());
}

TEST_CASE("check_inequality") {
  const Catalog& cat = get_catalog();
  const CheckResult i1 = check_inequality(*cat.find_inequality("I1"), Binding(1, 3));
  CHECK(i1.holds);
  CHECK(i1.comparison.verdict == Verdict::Greater);
  CHECK(*oracle_eval(substitute(cat.find_inequality("I1")->lhs, Binding(1, 3))) == 56);
  CHECK(*oracle_eval(substitute(cat.find_inequality("I1")->rhs, Binding(1, 3))) == 36);

  CHECK(check_inequality(*cat.find_inequality("I6"), Binding(3, 1)).holds);
  CHECK(*oracle_eval(substitute(cat.find_inequality("I6")->lhs, Binding(3, 1))) == 1024);
  CHECK(*oracle_eval(substitute(cat.find_inequality("I6")->rhs, Binding(3, 1))) == 625);

  const InequalitySpec& i12 = *cat.find_inequality("I12");
  CHECK(i12.relation == Relation::GreaterEqual);
  CHECK(check_inequality(i12, Binding(3, 1)).holds);
  CHECK(*oracle_eval(substitute(i12.lhs, Binding(3, 1))) == 36);
  CHECK(*oracle_eval(substitute(i12.rhs, Binding(3, 1))) == 27);

  const InequalitySpec& i3 = *cat.find_inequality("I3");
  CHECK(check_inequality(i3, Binding(3, 1)).holds);
  CHECK(*oracle_eval(substitute(i3.lhs, Binding(3, 1))) == mpz_class("282429536481"));
  CHECK(*oracle_eval(substitute(i3.rhs, Binding(3, 1))) == 17920);

  CHECK_THROWS_AS(check_inequality(*cat.find_inequality("I1"), Binding(1, 2)), DomainError);
  CHECK_THROWS_AS(check_inequality(*cat.find_inequality("I16"), Binding(3, 1)), DomainError);
}

TEST_CASE("every inequality agrees with the oracle where exact values are small") {
  const Catalog& cat = get_catalog();
  std::size_t checked = 0;
  for (const auto& spec : cat.inequalities) {
    for (std::uint64_t k = 1; k <= 8; ++k) {
      for (std::uint64_t n = 1; n <= 8; ++n) {
        for (std::uint64_t j = 0; j < (spec.domain.has_j ? k : 1); ++j) {
          const Binding b = spec.domain.has_j ? Binding(k, n, j) : Binding(k, n);
          if (!spec.domain.contains(b)) continue;
          const auto x = oracle_eval(substitute(spec.lhs, b), 20000);
          const auto y = oracle_eval(substitute(spec.rhs, b), 20000);
          if (!x || !y) continue;
          ++checked;
          const bool want = spec.relation == Relation::Greater ? *x > *y : *x >= *y;
          INFO(spec.id << " k=" << k << " n=" << n << " j=" << j);
          CHECK(want);
          CHECK(check_inequality(spec, b).holds == want);
        }
      }
    }
  }
  CHECK(checked > 100);
}
