#include "factpow/catalog.hpp"

#include <algorithm>
#include <cctype>

namespace factpow {

std::string to_string(ExpectedSolutions e) {
  return e == ExpectedSolutions::Diagonal ? "diagonal" : "diagonal+sporadic";
}

std::string to_string(Relation r) { return r == Relation::Greater ? ">" : ">="; }

bool EquationSpec::is_expected_solution(std::uint64_t k, std::uint64_t n) const noexcept {
  if (k == n) return true;
  if (expected == ExpectedSolutions::Diagonal) return false;
  return (k == 1 && n == 2) || (k == 2 && n == 1);
}

bool Domain::contains(const Binding& b) const noexcept {
  if (k_min && b.k < *k_min) return false;
  if (n_min && b.n < *n_min) return false;
  if (n_greater_than_k && b.n <= b.k) return false;
  if (has_j && (!b.j || *b.j >= b.k)) return false;
  return true;
}

std::string Domain::describe() const {
  std::string s;
  auto append = [&s](const std::string& part) { s += (s.empty() ? "" : ", ") + part; };
  if (k_min) append("k >= " + std::to_string(*k_min));
  if (n_min) append("n >= " + std::to_string(*n_min));
  if (n_greater_than_k) append("n > k");
  if (has_j) append("0 <= j <= k-1");
  return s;
}

namespace {

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
         });
}

EquationSpec equation(std::string id, std::string lhs, std::string rhs, ExpectedSolutions expected,
                      std::string anchor) {
  Expr l = parse_expr(lhs);
  Expr r = parse_expr(rhs);
  return {std::move(id), std::move(lhs), std::move(rhs), std::move(l), std::move(r), expected, std::move(anchor)};
}

InequalitySpec inequality(std::string id, std::string lhs, std::string rhs, Relation rel, Domain domain,
                          ScanBounds bounds, std::string anchor) {
  const ParseOptions opts{.allow_aux_index = true};
  Expr l = parse_expr(lhs, opts);
  Expr r = parse_expr(rhs, opts);
  return {std::move(id), std::move(lhs), std::move(rhs), std::move(l), std::move(r),
          rel,           domain,         bounds,         std::move(anchor)};
}

Domain k_at_least(std::uint64_t m) { return {.k_min = m}; }
Domain n_at_least(std::uint64_t m) { return {.n_min = m}; }
Domain n_above_k_at_least_3() { return {.k_min = 3, .n_min = 4, .n_greater_than_k = true}; }

ScanBounds k_range(std::uint64_t lo, std::uint64_t hi) { return {.k_lo = lo, .k_hi = hi}; }
ScanBounds n_range(std::uint64_t lo, std::uint64_t hi) { return {.n_lo = lo, .n_hi = hi}; }
ScanBounds pair_range(std::uint64_t k_hi, std::uint64_t n_hi) {
  return {.k_lo = 3, .k_hi = k_hi, .n_lo = 4, .n_hi = n_hi, .n_greater_than_k = true};
}

Catalog build() {
  using enum ExpectedSolutions;
  using enum Relation;
  Catalog c;
  c.equations = {
      equation("T1", "(k!)^(n!) - k^n", "(n!)^(k!) - n^k", DiagonalAndSporadic,
               "solved exactly by k = n and (k,n) = (1,2), (2,1)"),
      equation("T2", "(k!)^(n!) + k^n", "(n!)^(k!) + n^k", Diagonal, "solved exactly by k = n"),
      equation("T3", "(k!)^n - k^(n!)", "(n!)^k - n^(k!)", DiagonalAndSporadic,
               "solved exactly by k = n and (k,n) = (1,2), (2,1)"),
      equation("T4", "(k!)^n + k^(n!)", "(n!)^k + n^(k!)", Diagonal, "solved exactly by k = n"),
  };

  c.inequalities = {
      inequality("I1", "2^(n!) - 2^n", "(n!)^2", Greater, n_at_least(3), n_range(3, 60),
                 "k = 2 case of T1: 2^(n!) - 2^n exceeds (n!)^2 for n > 2"),
      inequality("I2", "2^((n-1)!)", "2*(n!)^2", Greater, n_at_least(5), n_range(5, 60),
                 "auxiliary bound for I1, base case n = 5"),
      inequality("I3", "k^((k+1)!)", "((k+1)!)^k + (k+1)^(k!)", Greater, k_at_least(3), k_range(3, 40),
                 "base inequality of both double inductions (T1 and T4), k >= 3"),
      inequality("I4", "(k+1)^(k!*(k+2))", "(k+2)^((k+1)!)", Greater, k_at_least(3), k_range(3, 40),
                 "step of I3: second summand"),
      inequality("I5", "(k+2)*((k+1)!)^k*(k+1)^(k!*(k+1))", "((k+2)!)^(k+1)", Greater, k_at_least(3),
                 k_range(3, 40), "step of I3: first summand"),
      inequality("I6", "(k+1)^(k+2)", "(k+2)^(k+1)", Greater, k_at_least(3), k_range(3, 40),
                 "step of I3: (k+1)^(k+2) > (k+2)^(k+1)"),
      inequality("I7", "(k!)^((k+1)!)", "((k+1)!)^(k!) + k^(k+1)", Greater, k_at_least(3), k_range(3, 40),
                 "induction start of T1 for k >= 3 (n = k+1)"),
      inequality("I8", "((k-1)!)^((k+1)!)*(k+1)^(k!)", "((k+1)!)^(k!)", Greater, k_at_least(3),
                 k_range(3, 40), "induction start of T1: first conjunct"),
      inequality("I9", "((k-1)!)^((k+1)!)*((k+1)!)^k", "k^(k+1)", Greater, k_at_least(3), k_range(3, 40),
                 "induction start of T1: second conjunct"),
      inequality("I10", "(k!)^(n!)", "(n!)^(k!) + k^n", Greater, n_above_k_at_least_3(), pair_range(24, 25),
                 "T1 for n > k >= 3: left side dominates"),
      inequality("I11", "k^n", "n^k", Greater, n_above_k_at_least_3(), pair_range(24, 25),
                 "T2 for n > k >= 3: k^n - n^k is positive"),
      inequality("I12", "(k!)^(k-1)", "k^k", GreaterEqual, k_at_least(3), k_range(3, 60),
                 "T2: k^(k/(k-1)) <= k!, in the integer form k^k <= (k!)^(k-1)"),
      inequality("I13", "(n!)^k", "(k!)^n", Greater, n_above_k_at_least_3(), pair_range(24, 25),
                 "T3 for n > k >= 3: (n!)^k > (k!)^n"),
      inequality("I14", "(n!)^(n-1)", "n+1", Greater, n_at_least(3), n_range(3, 60),
                 "induction step of T1: (n!)^(n-1) > n+1"),
      inequality("I15", "((k-1)!)^k", "k", Greater, k_at_least(3), k_range(3, 60),
                 "induction start of T1: ((k-1)!)^k > k"),
      inequality("I16", "(k+1)^(k+1)", "(k-j)*(k+2)", Greater, Domain{.k_min = 3, .has_j = true}, k_range(3, 20),
                 "step of I3: (k+1)^(k+1) > (k-j)(k+2) for 0 <= j <= k-1"),
      inequality("I17", "k^(n!)", "n^(k!)", Greater, n_above_k_at_least_3(), pair_range(24, 25),
                 "T3 for n > k >= 3: k^(n!) > n^(k!)"),
      inequality("I18", "k^(n!)", "(n!)^k + n^(k!)", Greater, n_above_k_at_least_3(), pair_range(24, 25),
                 "T4 for n > k >= 3: k^(n!) dominates"),
      inequality("I19", "(n+1)*(n!)^k*n^(k!*n)", "((n+1)!)^k", Greater, n_above_k_at_least_3(),
                 pair_range(10, 25), "induction step of I18: first summand"),
      inequality("I20", "n^(k!*(n+1))", "(n+1)^(k!)", Greater, Domain{.k_min = 3, .n_min = 2},
                 pair_range(10, 25), "induction step of I18: second summand"),
  };
  return c;
}

}  // namespace

const EquationSpec* Catalog::find_equation(std::string_view id) const {
  for (const auto& e : equations)
    if (iequals(e.id, id)) return &e;
  return nullptr;
}

const InequalitySpec* Catalog::find_inequality(std::string_view id) const {
  for (const auto& e : inequalities)
    if (iequals(e.id, id)) return &e;
  return nullptr;
}

const Catalog& get_catalog() {
  static const Catalog catalog = build();
  return catalog;
}

CheckResult check_inequality(const InequalitySpec& spec, const Binding& b, const ComparePolicy& policy,
                             CompareStats* stats) {
  if (!spec.domain.contains(b)) {
    std::string where = "k=" + std::to_string(b.k) + ", n=" + std::to_string(b.n);
    if (b.j) where += ", j=" + std::to_string(*b.j);
    throw DomainError(spec.id + ": binding (" + where + ") outside domain " + spec.domain.describe());
  }
  const Comparison c = compare_instance(spec.lhs, spec.rhs, b, policy, stats);
  const bool holds = c.verdict == Verdict::Greater ||
                     (spec.relation == Relation::GreaterEqual && c.verdict == Verdict::Equal);
  return {holds, c};
}

}  // namespace factpow
