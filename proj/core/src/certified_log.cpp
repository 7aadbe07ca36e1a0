#include "factpow/certified_log.hpp"

#include <functional>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

namespace factpow {

SignedLogMagnitude SignedLogMagnitude::make(Sign sign, LogInterval magnitude) {
  if (sign == Sign::Zero) return zero();
  return SignedLogMagnitude(sign, std::move(magnitude));
}

SignedLogMagnitude SignedLogMagnitude::negated() const {
  if (sign_ == Sign::Zero) return *this;
  return SignedLogMagnitude(sign_ == Sign::Positive ? Sign::Negative : Sign::Positive, magnitude_);
}

Precision::Precision(std::uint32_t fractional_bits) : bits_(fractional_bits) {
  if (bits_ < 8) throw std::invalid_argument("precision must be at least 8 fractional bits");
}

namespace {

// Idempotent memo table keyed by (argument, precision). Concurrent inserts of
// the same key store identical values, so the last write wins harmlessly.
class MemoTable {
 public:
  using Key = std::pair<std::uint64_t, std::uint32_t>;

  std::optional<LogInterval> find(const Key& key) const {
    std::shared_lock lock(mutex_);
    auto it = map_.find(key);
    if (it == map_.end()) return std::nullopt;
    return it->second;
  }

  void insert(const Key& key, const LogInterval& value) {
    std::unique_lock lock(mutex_);
    map_.insert_or_assign(key, value);
  }

  void clear() {
    std::unique_lock lock(mutex_);
    map_.clear();
  }

 private:
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept {
      return std::hash<std::uint64_t>{}(k.first * 0x9E3779B97F4A7C15ull ^ k.second);
    }
  };
  mutable std::shared_mutex mutex_;
  std::unordered_map<Key, LogInterval, KeyHash> map_;
};

MemoTable& nat_cache() {
  static MemoTable table;
  return table;
}

MemoTable& factorial_cache() {
  static MemoTable table;
  return table;
}

// One pass of bit extraction. The fixed-point value y in [1, 2) carries
// `work` fractional bits; each step squares it and emits a bit when the
// square reaches 2. Rounding y down (up) at every step yields a lower
// (upper) bound on the fractional part of log2 m.
mpz_class extract_bits(mpz_class y, std::uint64_t work, std::uint32_t count, Rounding dir) {
  mpz_class two;
  mpz_setbit(two.get_mpz_t(), work + 1);
  mpz_class bits = 0;
  mpz_class sq;
  for (std::uint32_t i = 0; i < count; ++i) {
    mpz_mul(sq.get_mpz_t(), y.get_mpz_t(), y.get_mpz_t());
    if (dir == Rounding::Down)
      mpz_fdiv_q_2exp(y.get_mpz_t(), sq.get_mpz_t(), work);
    else
      mpz_cdiv_q_2exp(y.get_mpz_t(), sq.get_mpz_t(), work);
    mpz_mul_2exp(bits.get_mpz_t(), bits.get_mpz_t(), 1);
    if (y >= two) {
      bits += 1;
      if (dir == Rounding::Down)
        mpz_fdiv_q_2exp(y.get_mpz_t(), y.get_mpz_t(), 1);
      else
        mpz_cdiv_q_2exp(y.get_mpz_t(), y.get_mpz_t(), 1);
    }
  }
  return bits;
}

LogInterval log2_nat_single(const mpz_class& m, std::uint32_t f) {
  const std::uint64_t int_part = mpz_sizeinbase(m.get_mpz_t(), 2) - 1;
  const Dyadic base = Dyadic::from_integer(mpz_class(static_cast<unsigned long>(int_part)));
  if (mpz_scan1(m.get_mpz_t(), 0) == int_part) return {base, base};

  // Extracting f+1 bits keeps the total width (truncation on both sides plus
  // accumulated rounding) below 2^(1-f).
  const std::uint32_t count = f + 1;
  const std::uint64_t work = count + 16 + mpz_sizeinbase(mpz_class(count).get_mpz_t(), 2);

  mpz_class y_lo, y_hi;
  if (int_part <= work) {
    mpz_mul_2exp(y_lo.get_mpz_t(), m.get_mpz_t(), work - int_part);
    y_hi = y_lo;
  } else {
    mpz_fdiv_q_2exp(y_lo.get_mpz_t(), m.get_mpz_t(), int_part - work);
    mpz_cdiv_q_2exp(y_hi.get_mpz_t(), m.get_mpz_t(), int_part - work);
  }
  const mpz_class lo_bits = extract_bits(y_lo, work, count, Rounding::Down);
  const mpz_class hi_bits = extract_bits(y_hi, work, count, Rounding::Up);
  const auto shift = -static_cast<std::int64_t>(count);
  return {base + Dyadic(lo_bits, shift), base + Dyadic(mpz_class(hi_bits + 1), shift)};
}

LogInterval intersect(const LogInterval& a, const LogInterval& b) {
  return {max(a.lo, b.lo), min(a.hi, b.hi)};
}

}  // namespace

// The result at precision f is intersected with the result at f/2, so
// intervals are nested along any doubling ladder.
LogInterval log2_nat(const mpz_class& m, Precision p) {
  if (sgn(m) <= 0) throw std::invalid_argument("log2_nat requires m >= 1");
  const std::uint32_t f = p.bits();
  const bool cacheable = m.fits_ulong_p();
  const MemoTable::Key key{cacheable ? m.get_ui() : 0, f};
  if (cacheable) {
    if (auto hit = nat_cache().find(key)) return *hit;
  }
  LogInterval iv = log2_nat_single(m, f);
  if (f / 2 >= 8 && iv.lo != iv.hi) iv = intersect(iv, log2_nat(m, Precision(f / 2)));
  if (cacheable) nat_cache().insert(key, iv);
  return iv;
}

LogInterval log2_factorial(std::uint64_t m, Precision p) {
  const Dyadic zero;
  if (m <= 1) return {zero, zero};
  const std::uint32_t f = p.bits();
  auto& cache = factorial_cache();
  if (auto hit = cache.find({m, f})) return *hit;

  // Walk down to the nearest memoized prefix, then accumulate upward.
  std::uint64_t start = m;
  LogInterval acc{zero, zero};
  while (start > 1) {
    if (auto hit = cache.find({start - 1, f})) {
      acc = *hit;
      break;
    }
    --start;
  }
  if (start <= 1) start = 2;
  for (std::uint64_t i = start; i <= m; ++i) {
    const LogInterval term = log2_nat(mpz_class(static_cast<unsigned long>(i)), p);
    acc = {acc.lo + term.lo, acc.hi + term.hi};
    cache.insert({i, f}, acc);
  }
  return acc;
}

void clear_log_cache() {
  nat_cache().clear();
  factorial_cache().clear();
}

namespace {

// Upper bound on 2^x: 2^floor(x) * (1 + frac(x)), which is continuous and
// nondecreasing in x. Below -cutoff it is replaced by the constant 2^-cutoff.
Dyadic exp2_upper(const Dyadic& x, std::int64_t cutoff) {
  if (x < Dyadic(-cutoff)) return Dyadic::power_of_two(-cutoff);
  const mpz_class fl = x.floor();
  const Dyadic fr = x - Dyadic::from_integer(fl);
  return Dyadic::power_of_two(fl.get_si()) * (Dyadic(1) + fr);
}

class Bounder {
 public:
  Bounder(Precision p, const BoundOptions& options)
      : p_(p), options_(options), cutoff_(static_cast<std::int64_t>(p.bits()) + 64) {}

  SignedLogMagnitude run(const Expr& e) {
    switch (e.op()) {
      case Op::Const:
        if (sgn(e.value()) == 0) return SignedLogMagnitude::zero();
        return SignedLogMagnitude::make(Sign::Positive, log2_nat(e.value(), p_));
      case Op::Var: throw std::invalid_argument("bound_expr on an open expression");
      case Op::Fact: {
        const mpz_class m = exact_operand(e.lhs());
        if (sgn(m) < 0) throw NegativeFactorial();
        if (!m.fits_ulong_p() || m.get_ui() > options_.max_factorial_argument)
          throw ExponentTooLarge("factorial argument " + m.get_str());
        return SignedLogMagnitude::make(Sign::Positive, log2_factorial(m.get_ui(), p_));
      }
      case Op::Pow: {
        const mpz_class x = exact_operand(e.rhs());
        if (sgn(x) < 0) throw NegativeExponent();
        if (sgn(x) == 0) return SignedLogMagnitude::make(Sign::Positive, {Dyadic(), Dyadic()});
        const SignedLogMagnitude base = run(e.lhs());
        if (base.sign() == Sign::Zero) return base;
        const Sign s = base.sign() == Sign::Negative && mpz_odd_p(x.get_mpz_t()) ? Sign::Negative
                                                                                : Sign::Positive;
        const LogInterval& m = *base.magnitude();
        return SignedLogMagnitude::make(s, {m.lo * x, m.hi * x});
      }
      case Op::Mul: {
        const SignedLogMagnitude a = run(e.lhs());
        const SignedLogMagnitude b = run(e.rhs());
        if (a.sign() == Sign::Zero || b.sign() == Sign::Zero) return SignedLogMagnitude::zero();
        const Sign s = a.sign() == b.sign() ? Sign::Positive : Sign::Negative;
        const LogInterval& x = *a.magnitude();
        const LogInterval& y = *b.magnitude();
        return SignedLogMagnitude::make(s, {x.lo + y.lo, x.hi + y.hi});
      }
      case Op::Add:
        if (auto small = exact_if_small(e)) return *small;
        return combine(run(e.lhs()), run(e.rhs()));
      case Op::Sub: {
        if (auto small = exact_if_small(e)) return *small;
        const NormalizeOptions structural{.fold_threshold_bits = 0};
        if (normalize(e.lhs(), structural) == normalize(e.rhs(), structural))
          return SignedLogMagnitude::zero();
        return combine(run(e.lhs()), run(e.rhs()).negated());
      }
    }
    return SignedLogMagnitude::zero();
  }

 private:
  std::optional<SignedLogMagnitude> exact_if_small(const Expr& e) const {
    std::uint64_t est = 0;
    try {
      est = estimate_bits(e, options_.exponent_budget_bits).upper_bound_bits;
    } catch (const EstimateOverflow&) {
      return std::nullopt;
    } catch (const ExponentTooLarge&) {
      return std::nullopt;
    }
    if (est > options_.exact_sum_bits) return std::nullopt;
    const mpz_class v = eval_exact(e, est);
    if (sgn(v) == 0) return SignedLogMagnitude::zero();
    return SignedLogMagnitude::make(sgn(v) < 0 ? Sign::Negative : Sign::Positive, log2_nat(abs(v), p_));
  }

  mpz_class exact_operand(const Expr& e) const {
    try {
      return eval_exact(e, options_.exponent_budget_bits);
    } catch (const BudgetExceeded& ex) {
      throw ExponentTooLarge(to_string(e) + " needs ~" + std::to_string(ex.estimate_bits()) + " bits");
    }
  }

  SignedLogMagnitude combine(const SignedLogMagnitude& a, const SignedLogMagnitude& b) const {
    if (a.sign() == Sign::Zero) return b;
    if (b.sign() == Sign::Zero) return a;
    const LogInterval& x = *a.magnitude();
    const LogInterval& y = *b.magnitude();
    if (a.sign() == b.sign()) return SignedLogMagnitude::make(a.sign(), sum(x, y));
    if (x.lo > y.hi) return SignedLogMagnitude::make(a.sign(), difference(x, y));
    if (y.lo > x.hi) return SignedLogMagnitude::make(b.sign(), difference(y, x));
    throw AmbiguousSign(p_.bits());
  }

  // log2(2^a + 2^b) <= M + log2(1 + 2^d) with d = min_hi - M <= 0, and
  // log2(1 + 2^d) <= 2^(d+1) (also capped at 1).
  LogInterval sum(const LogInterval& x, const LogInterval& y) const {
    const Dyadic& top = max(x.hi, y.hi);
    const Dyadic d = min(x.hi, y.hi) - top;
    const Dyadic slack = min(Dyadic(1), exp2_upper(d + Dyadic(1), cutoff_));
    return {max(x.lo, y.lo), top + slack};
  }

  // For big > small with gap D = big.lo - small.hi >= 1, the difference
  // satisfies log2(2^a - 2^b) >= a - 3 * 2^-D, from ln(1-t) >= -2t on
  // t <= 1/2. A nonzero integer difference always has log2 >= 0.
  LogInterval difference(const LogInterval& big, const LogInterval& small) const {
    const Dyadic gap = big.lo - small.hi;
    Dyadic lo;
    if (gap >= Dyadic(1)) lo = max(Dyadic(), big.lo - exp2_upper(-gap, cutoff_) * mpz_class(3));
    return {lo, big.hi};
  }

  Precision p_;
  BoundOptions options_;
  std::int64_t cutoff_;
};

}  // namespace

SignedLogMagnitude bound_expr(const Expr& e, Precision p, const BoundOptions& options) {
  if (!e.is_closed()) throw std::invalid_argument("bound_expr requires a closed expression");
  return Bounder(p, options).run(e);
}

std::string format_interval(const LogInterval& iv, unsigned digits) {
  return "[" + iv.lo.to_decimal(digits, Rounding::Down) + ", " + iv.hi.to_decimal(digits, Rounding::Up) +
         "]";
}

}  // namespace factpow
