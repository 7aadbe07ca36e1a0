#include "properties.hpp"

#include <optional>
#include <sstream>

#include "factpow/catalog.hpp"
#include "factpow/certified_log.hpp"
#include "oracle.hpp"

namespace factpow::testing {

void PropertyOutcome::fail(std::string what) {
  ++failures;
  if (details.size() < 10) details.push_back(std::move(what));
}

std::string PropertyOutcome::summary() const {
  std::ostringstream os;
  os << cases << " cases, " << failures << " failures";
  if (skipped) os << ", " << skipped << " skipped";
  for (const auto& d : details) os << "\n    " << d;
  return os.str();
}

namespace {

Verdict oracle_verdict(const mpz_class& a, const mpz_class& b) {
  const int c = cmp(a, b);
  return c < 0 ? Verdict::Less : c > 0 ? Verdict::Greater : Verdict::Equal;
}

}  // namespace

PropertyOutcome check_comparator_against_oracle(std::size_t pairs, std::uint64_t seed, const ComparePolicy& policy) {
  PropertyOutcome out;
  SampleGenerator gen(seed);
  for (std::size_t i = 0; i < pairs; ++i) {
    const auto [a, b] = gen.next_pair();
    ++out.cases;
    const std::string label = a.text.substr(0, 80) + " vs " + b.text.substr(0, 80);
    try {
      const Expr ea = parse_expr(a.text);
      const Expr eb = parse_expr(b.text);
      const Verdict want = oracle_verdict(a.value, b.value);
      const Comparison c = compare(ea, eb, policy);
      if (c.verdict != want) {
        out.fail(label + ": got " + to_string(c.verdict) + ", oracle " + to_string(want));
        continue;
      }
      if (c.verdict == Verdict::Equal && c.certificate.tier == Tier::LogSeparation)
        out.fail(label + ": Equal certified by log separation");
      const Comparison back = compare(eb, ea, policy);
      if (back.verdict != reversed(c.verdict)) out.fail(label + ": not antisymmetric");
    } catch (const std::exception& e) {
      out.fail(label + ": " + e.what());
    }
  }
  return out;
}

PropertyOutcome check_equation_instances(std::uint64_t range, const ComparePolicy& policy, std::uint64_t max_bits) {
  PropertyOutcome out;
  for (const auto& eq : get_catalog().equations) {
    for (std::uint64_t k = 1; k <= range; ++k) {
      for (std::uint64_t n = 1; n <= range; ++n) {
        const Binding b(k, n);
        const auto x = oracle_eval(substitute(eq.lhs, b), max_bits);
        const auto y = oracle_eval(substitute(eq.rhs, b), max_bits);
        if (!x || !y) {
          ++out.skipped;
          continue;
        }
        ++out.cases;
        const std::string label = eq.id + " at (" + std::to_string(k) + "," + std::to_string(n) + ")";
        try {
          const Comparison c = compare_instance(eq.lhs, eq.rhs, b, policy);
          if (c.verdict != oracle_verdict(*x, *y)) out.fail(label + ": got " + to_string(c.verdict));
        } catch (const std::exception& e) {
          out.fail(label + ": " + e.what());
        }
      }
    }
  }
  return out;
}

PropertyOutcome check_interval_soundness(std::size_t pairs, std::uint64_t seed,
                                         const std::vector<std::uint32_t>& ladder) {
  PropertyOutcome out;
  SampleGenerator gen(seed);
  for (std::size_t i = 0; i < pairs; ++i) {
    const auto [a, b] = gen.next_pair();
    for (const Sample* s : {&a, &b}) {
      ++out.cases;
      const std::string label = s->text.substr(0, 100);
      const Expr e = parse_expr(s->text);
      const Sign want = sgn(s->value) < 0 ? Sign::Negative : sgn(s->value) > 0 ? Sign::Positive : Sign::Zero;
      std::optional<Dyadic> prev_width;
      std::size_t bounded = 0;
      for (const std::uint32_t f : ladder) {
        SignedLogMagnitude m = SignedLogMagnitude::zero();
        try {
          m = bound_expr(e, Precision(f));
        } catch (const AmbiguousSign&) {
          continue;
        } catch (const std::exception& ex) {
          out.fail(label + " f=" + std::to_string(f) + ": " + ex.what());
          break;
        }
        ++bounded;
        if (m.sign() != want) {
          out.fail(label + " f=" + std::to_string(f) + ": wrong sign");
          break;
        }
        if (want == Sign::Zero) continue;
        const LogInterval& iv = *m.magnitude();
        const Enclosure enc = log2_enclosure(s->value, iv);
        if (enc != Enclosure::Inside) {
          out.fail(label + " f=" + std::to_string(f) + ": " +
                   (enc == Enclosure::Outside ? "log2 outside " : "unresolved ") + format_interval(iv, 12));
          break;
        }
        if (prev_width && iv.width() > *prev_width) {
          out.fail(label + " f=" + std::to_string(f) + ": width grew");
          break;
        }
        prev_width = iv.width();
      }
      if (bounded == 0) ++out.skipped;
    }
  }
  return out;
}

}  // namespace factpow::testing
