#include "factpow/comparator.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

namespace factpow {

Verdict reversed(Verdict v) noexcept {
  switch (v) {
    case Verdict::Less: return Verdict::Greater;
    case Verdict::Greater: return Verdict::Less;
    case Verdict::Equal: break;
  }
  return Verdict::Equal;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Less: return "Less";
    case Verdict::Equal: return "Equal";
    case Verdict::Greater: return "Greater";
  }
  return "?";
}

std::string to_string(Tier t) {
  switch (t) {
    case Tier::Structural: return "structural";
    case Tier::LogSeparation: return "log_separation";
    case Tier::Exact: return "exact";
  }
  return "?";
}

std::string to_string(const Certificate& c) {
  switch (c.tier) {
    case Tier::Structural: return "Structural";
    case Tier::LogSeparation: return "LogSeparation(f=" + std::to_string(c.precision) + ")";
    case Tier::Exact: return "Exact(bits=" + std::to_string(c.bits) + ")";
  }
  return "?";
}

void ComparePolicy::validate() const {
  if (precision_ladder.empty()) throw std::invalid_argument("precision ladder is empty");
  for (std::size_t i = 0; i < precision_ladder.size(); ++i) {
    if (precision_ladder[i] < 8) throw std::invalid_argument("ladder precisions must be >= 8");
    if (i > 0 && precision_ladder[i] <= precision_ladder[i - 1])
      throw std::invalid_argument("precision ladder must be strictly increasing");
  }
  if (exact_budget_bits < 1024) throw std::invalid_argument("exact budget must be at least 2^10 bits");
}

void CompareStats::record_precision(std::uint32_t f) {
  std::uint32_t cur = max_precision_used.load(std::memory_order_relaxed);
  while (f > cur && !max_precision_used.compare_exchange_weak(cur, f, std::memory_order_relaxed)) {
  }
}

namespace {

struct SignedTerm {
  bool negative;
  Expr term;
};

void collect_terms(const Expr& e, bool negative, std::vector<SignedTerm>& out) {
  if (e.op() == Op::Add) {
    collect_terms(e.lhs(), negative, out);
    collect_terms(e.rhs(), negative, out);
  } else if (e.op() == Op::Sub) {
    collect_terms(e.lhs(), negative, out);
    collect_terms(e.rhs(), !negative, out);
  } else {
    out.push_back({negative, e});
  }
}

bool evidently_positive(const Expr& e) {
  switch (e.op()) {
    case Op::Const: return sgn(e.value()) > 0;
    case Op::Fact: return true;
    case Op::Pow: return evidently_positive(e.lhs());
    case Op::Mul:
    case Op::Add: return evidently_positive(e.lhs()) && evidently_positive(e.rhs());
    case Op::Var: return e.variable() != Var::J;
    case Op::Sub: return false;
  }
  return false;
}

Expr build_side(const std::vector<Expr>& plus, const std::vector<Expr>& minus) {
  std::optional<Expr> out;
  for (const auto& t : plus) out = out ? Expr::add(*out, t) : t;
  if (!out) out = Expr::constant(0ul);
  for (const auto& t : minus) out = Expr::sub(*out, t);
  return *out;
}

std::optional<std::uint64_t> try_estimate(const Expr& e) {
  try {
    return estimate_bits(e).upper_bound_bits;
  } catch (const EstimateOverflow&) {
    return std::nullopt;
  } catch (const ExponentTooLarge&) {
    return std::nullopt;
  }
}

bool within(const std::optional<std::uint64_t>& est, std::uint64_t limit) {
  return est && *est <= limit;
}

int rank(Sign s) { return static_cast<int>(s); }

std::optional<Verdict> separate(const SignedLogMagnitude& a, const SignedLogMagnitude& b) {
  if (a.sign() != b.sign()) return rank(a.sign()) < rank(b.sign()) ? Verdict::Less : Verdict::Greater;
  if (a.sign() == Sign::Zero) return std::nullopt;
  const LogInterval& x = *a.magnitude();
  const LogInterval& y = *b.magnitude();
  std::optional<Verdict> by_magnitude;
  if (x.hi < y.lo) by_magnitude = Verdict::Less;
  if (x.lo > y.hi) by_magnitude = Verdict::Greater;
  if (by_magnitude && a.sign() == Sign::Negative) return reversed(*by_magnitude);
  return by_magnitude;
}

}  // namespace

Rearranged rearrange(const Expr& a, const Expr& b) {
  struct Split {
    std::vector<Expr> own;    // positive terms
    std::vector<Expr> stay;   // subtracted, sign not evident
    std::vector<Expr> moved;  // subtracted, evidently positive: go across
  };
  auto split = [](const Expr& e) {
    std::vector<SignedTerm> terms;
    collect_terms(e, false, terms);
    Split s;
    for (auto& t : terms) {
      if (!t.negative) s.own.push_back(t.term);
      else if (evidently_positive(t.term)) s.moved.push_back(t.term);
      else s.stay.push_back(t.term);
    }
    return s;
  };
  Split l = split(a);
  Split r = split(b);
  l.own.insert(l.own.end(), r.moved.begin(), r.moved.end());
  r.own.insert(r.own.end(), l.moved.begin(), l.moved.end());
  return {build_side(l.own, l.stay), build_side(r.own, r.stay)};
}

Comparison compare(const Expr& a, const Expr& b, const ComparePolicy& policy, CompareStats* stats) {
  policy.validate();
  if (!a.is_closed() || !b.is_closed()) throw std::invalid_argument("compare requires closed expressions");
  if (stats) stats->comparisons.fetch_add(1, std::memory_order_relaxed);

  const NormalizeOptions structural{.fold_threshold_bits = 0};
  const Expr na = normalize(a, structural);
  const Expr nb = normalize(b, structural);
  if (na == nb) {
    if (stats) stats->structural.fetch_add(1, std::memory_order_relaxed);
    return {Verdict::Equal, Certificate::structural()};
  }

  const Rearranged sides = rearrange(na, nb);
  if (normalize(sides.lhs, structural) == normalize(sides.rhs, structural)) {
    if (stats) stats->structural.fetch_add(1, std::memory_order_relaxed);
    return {Verdict::Equal, Certificate::structural()};
  }

  const auto est_l = try_estimate(sides.lhs);
  const auto est_r = try_estimate(sides.rhs);

  auto exact = [&]() -> Comparison {
    if (stats) stats->exact_evaluations.fetch_add(2, std::memory_order_relaxed);
    const mpz_class x = eval_exact(sides.lhs, policy.exact_budget_bits);
    const mpz_class y = eval_exact(sides.rhs, policy.exact_budget_bits);
    const std::uint64_t bits = std::max(bit_length(x), bit_length(y));
    if (stats) {
      stats->exact.fetch_add(1, std::memory_order_relaxed);
      stats->exact_bits_touched.fetch_add(bit_length(x) + bit_length(y), std::memory_order_relaxed);
    }
    const int c = cmp(x, y);
    const Verdict v = c < 0 ? Verdict::Less : c > 0 ? Verdict::Greater : Verdict::Equal;
    return {v, Certificate::exact(bits)};
  };

  const std::uint64_t shortcut = std::min(policy.exact_shortcut_bits, policy.exact_budget_bits);
  if (within(est_l, shortcut) && within(est_r, shortcut)) return exact();

  for (const std::uint32_t f : policy.precision_ladder) {
    const Precision p(f);
    if (stats) {
      stats->interval_evaluations.fetch_add(2, std::memory_order_relaxed);
      stats->record_precision(f);
    }
    try {
      const SignedLogMagnitude x = bound_expr(sides.lhs, p);
      const SignedLogMagnitude y = bound_expr(sides.rhs, p);
      if (auto v = separate(x, y)) {
        if (stats) stats->log_separation.fetch_add(1, std::memory_order_relaxed);
        return {*v, Certificate::log_separation(f)};
      }
    } catch (const AmbiguousSign&) {
      continue;
    } catch (const ExponentTooLarge&) {
      break;
    }
  }

  if (within(est_l, policy.exact_budget_bits) && within(est_r, policy.exact_budget_bits)) return exact();

  if (stats) stats->undecided.fetch_add(1, std::memory_order_relaxed);
  throw Undecided(policy.precision_ladder.back(), est_l, est_r);
}

Comparison compare_instance(const Expr& lhs, const Expr& rhs, const Binding& b, const ComparePolicy& policy,
                            CompareStats* stats) {
  return compare(substitute(lhs, b), substitute(rhs, b), policy, stats);
}

}  // namespace factpow
