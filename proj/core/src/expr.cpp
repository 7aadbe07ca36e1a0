#include "factpow/expr.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace factpow {

struct ExprNode {
  Op op;
  mpz_class value;
  Var variable = Var::K;
  std::optional<Expr> a;
  std::optional<Expr> b;
  std::uint8_t var_mask = 0;
  std::size_t count = 1;
  std::size_t depth = 1;
};

namespace {

std::uint8_t mask_of(Var v) { return static_cast<std::uint8_t>(1u << static_cast<unsigned>(v)); }

}  // namespace

char var_letter(Var v) noexcept {
  switch (v) {
    case Var::K: return 'k';
    case Var::N: return 'n';
    case Var::J: return 'j';
  }
  return '?';
}

Expr Expr::constant(mpz_class value) {
  if (sgn(value) < 0) throw std::invalid_argument("Const must be nonnegative");
  auto node = std::make_shared<ExprNode>();
  node->op = Op::Const;
  node->value = std::move(value);
  return Expr(std::move(node));
}

Expr Expr::constant(unsigned long value) { return constant(mpz_class(value)); }

Expr Expr::var(Var v) {
  auto node = std::make_shared<ExprNode>();
  node->op = Op::Var;
  node->variable = v;
  node->var_mask = mask_of(v);
  return Expr(std::move(node));
}

namespace {

std::uint8_t mask_union(const Expr& x, const Expr* y) {
  std::uint8_t m = 0;
  for (Var v : {Var::K, Var::N, Var::J})
    if (x.uses(v) || (y != nullptr && y->uses(v))) m |= mask_of(v);
  return m;
}

std::shared_ptr<ExprNode> make_node(Op op, Expr lhs, std::optional<Expr> rhs) {
  auto node = std::make_shared<ExprNode>();
  node->op = op;
  node->var_mask = mask_union(lhs, rhs ? &*rhs : nullptr);
  node->count = 1 + lhs.node_count() + (rhs ? rhs->node_count() : 0);
  node->depth = 1 + std::max(lhs.depth(), rhs ? rhs->depth() : 0);
  node->a = std::move(lhs);
  node->b = std::move(rhs);
  return node;
}

}  // namespace

Expr Expr::fact(Expr child) { return Expr(make_node(Op::Fact, std::move(child), std::nullopt)); }
Expr Expr::pow(Expr base, Expr exponent) {
  return Expr(make_node(Op::Pow, std::move(base), std::move(exponent)));
}
Expr Expr::add(Expr lhs, Expr rhs) { return Expr(make_node(Op::Add, std::move(lhs), std::move(rhs))); }
Expr Expr::sub(Expr lhs, Expr rhs) { return Expr(make_node(Op::Sub, std::move(lhs), std::move(rhs))); }
Expr Expr::mul(Expr lhs, Expr rhs) { return Expr(make_node(Op::Mul, std::move(lhs), std::move(rhs))); }

Op Expr::op() const noexcept { return node_->op; }

const mpz_class& Expr::value() const {
  if (node_->op != Op::Const) throw std::logic_error("value() on non-constant");
  return node_->value;
}

Var Expr::variable() const {
  if (node_->op != Op::Var) throw std::logic_error("variable() on non-variable");
  return node_->variable;
}

const Expr& Expr::lhs() const {
  if (!node_->a) throw std::logic_error("lhs() on leaf");
  return *node_->a;
}

const Expr& Expr::rhs() const {
  if (!node_->b) throw std::logic_error("rhs() on non-binary node");
  return *node_->b;
}

bool Expr::is_closed() const noexcept { return node_->var_mask == 0; }
bool Expr::uses(Var v) const noexcept { return (node_->var_mask & mask_of(v)) != 0; }
std::size_t Expr::node_count() const noexcept { return node_->count; }
std::size_t Expr::depth() const noexcept { return node_->depth; }

bool operator==(const Expr& a, const Expr& b) { return (a <=> b) == 0; }

std::strong_ordering operator<=>(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  const ExprNode& x = *a.node_;
  const ExprNode& y = *b.node_;
  if (auto c = x.op <=> y.op; c != 0) return c;
  switch (x.op) {
    case Op::Const: {
      const int c = cmp(x.value, y.value);
      return c < 0 ? std::strong_ordering::less
                   : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }
    case Op::Var: return x.variable <=> y.variable;
    case Op::Fact: return *x.a <=> *y.a;
    default:
      if (auto c = *x.a <=> *y.a; c != 0) return c;
      return *x.b <=> *y.b;
  }
}

Binding::Binding(std::uint64_t k_value, std::uint64_t n_value, std::optional<std::uint64_t> j_value)
    : k(k_value), n(n_value), j(j_value) {
  if (k < 1 || n < 1) throw std::invalid_argument("k and n must be positive integers");
}

// ---------------------------------------------------------------------------
// Parsing and printing

namespace {

class Parser {
 public:
  Parser(std::string_view text, const ParseOptions& options) : text_(text), options_(options) {}

  Expr parse() {
    skip_ws();
    if (at_end()) throw SyntaxError("empty expression", pos_);
    Expr e = parse_sum();
    skip_ws();
    if (!at_end()) throw SyntaxError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    return e;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (!at_end() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expr parse_sum() {
    Expr e = parse_product();
    for (;;) {
      if (accept('+')) {
        e = Expr::add(std::move(e), parse_product());
      } else if (accept('-')) {
        e = Expr::sub(std::move(e), parse_product());
      } else {
        return e;
      }
    }
  }

  Expr parse_product() {
    Expr e = parse_power();
    while (accept('*')) e = Expr::mul(std::move(e), parse_power());
    return e;
  }

  Expr parse_power() {
    Expr base = parse_postfix();
    if (accept('^')) return Expr::pow(std::move(base), parse_power());
    return base;
  }

  Expr parse_postfix() {
    Expr e = parse_primary();
    while (accept('!')) e = Expr::fact(std::move(e));
    return e;
  }

  Expr parse_primary() {
    skip_ws();
    if (at_end()) throw SyntaxError("unexpected end of input", pos_);
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Expr inner = parse_sum();
      skip_ws();
      if (!accept(')')) throw SyntaxError("expected ')'", pos_);
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return Expr::constant(mpz_class(std::string(text_.substr(start, pos_ - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      const std::string_view name = text_.substr(start, pos_ - start);
      if (name == "k") return Expr::var(Var::K);
      if (name == "n") return Expr::var(Var::N);
      if (name == "j" && options_.allow_aux_index) return Expr::var(Var::J);
      throw UnknownIdentifier(std::string(name), start);
    }
    throw SyntaxError(std::string("unexpected '") + c + "'", pos_);
  }

  std::string_view text_;
  ParseOptions options_;
  std::size_t pos_ = 0;
};

void print(const Expr& e, std::string& out) {
  switch (e.op()) {
    case Op::Const: out += e.value().get_str(); return;
    case Op::Var: out += var_letter(e.variable()); return;
    case Op::Fact:
      out += '(';
      print(e.lhs(), out);
      out += "!)";
      return;
    case Op::Pow:
      out += '(';
      print(e.lhs(), out);
      out += '^';
      print(e.rhs(), out);
      out += ')';
      return;
    case Op::Add:
    case Op::Sub:
    case Op::Mul: {
      const char* sym = e.op() == Op::Add ? " + " : e.op() == Op::Sub ? " - " : " * ";
      out += '(';
      print(e.lhs(), out);
      out += sym;
      print(e.rhs(), out);
      out += ')';
      return;
    }
  }
}

}  // namespace

Expr parse_expr(std::string_view text, const ParseOptions& options) {
  return Parser(text, options).parse();
}

std::string to_string(const Expr& e) {
  std::string out;
  print(e, out);
  return out;
}

Expr substitute(const Expr& e, const Binding& b) {
  if (e.is_closed()) return e;
  switch (e.op()) {
    case Op::Var:
      switch (e.variable()) {
        case Var::K: return Expr::constant(static_cast<unsigned long>(b.k));
        case Var::N: return Expr::constant(static_cast<unsigned long>(b.n));
        case Var::J:
          if (!b.j) throw std::invalid_argument("binding has no value for j");
          return Expr::constant(static_cast<unsigned long>(*b.j));
      }
      break;
    case Op::Fact: return Expr::fact(substitute(e.lhs(), b));
    case Op::Pow: return Expr::pow(substitute(e.lhs(), b), substitute(e.rhs(), b));
    case Op::Add: return Expr::add(substitute(e.lhs(), b), substitute(e.rhs(), b));
    case Op::Sub: return Expr::sub(substitute(e.lhs(), b), substitute(e.rhs(), b));
    case Op::Mul: return Expr::mul(substitute(e.lhs(), b), substitute(e.rhs(), b));
    case Op::Const: break;
  }
  return e;
}

// ---------------------------------------------------------------------------
// Size estimation and exact evaluation

std::uint64_t bit_length(const mpz_class& v) {
  if (sgn(v) == 0) return 0;
  return mpz_sizeinbase(v.get_mpz_t(), 2);
}

namespace {

__extension__ using u128 = unsigned __int128;

constexpr std::uint64_t kEstimateLimit = std::uint64_t{1} << 63;

std::uint64_t checked(u128 v) {
  if (v > kEstimateLimit) throw EstimateOverflow();
  return static_cast<std::uint64_t>(v);
}

std::uint64_t checked(const mpz_class& v) {
  if (v > mpz_class(std::to_string(kEstimateLimit))) throw EstimateOverflow();
  return v.get_ui();
}

// sum_{i=1}^{m} ceil(log2 i) + 1
std::uint64_t factorial_bits(std::uint64_t m) {
  u128 total = 1;
  // ceil(log2 i) == t exactly for i in (2^(t-1), 2^t].
  for (unsigned t = 1; t <= 64; ++t) {
    const u128 lo = (static_cast<u128>(1) << (t - 1)) + 1;
    if (lo > m) break;
    const u128 hi_full = static_cast<u128>(1) << t;
    const u128 hi = hi_full < m ? hi_full : m;
    total += static_cast<u128>(t) * (hi - lo + 1);
    if (total > kEstimateLimit) throw EstimateOverflow();
  }
  return checked(total);
}

// Rational upper bound on 1/ln 2 = 1.44269504088896340736...
const mpq_class kLog2eUpper(mpz_class("14426950408889635"), mpz_class("10000000000000000"));

// bit_length(b^x) <= floor(x * log2|b|) + 1. With |b| = 2^(L-1) * (1 + u),
// 0 <= u < 1, log2|b| is bounded above through ln(1+u) <= u(6+u)/(6+4u).
std::uint64_t power_bits(const mpz_class& base, const mpz_class& x) {
  const mpz_class b = abs(base);
  if (b <= 1) return 1;
  const std::uint64_t top = bit_length(b) - 1;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 2, top);
  const mpq_class u(b - scale, scale);
  mpq_class lg = u * (6 + u) / (6 + 4 * u) * kLog2eUpper + top;
  lg.canonicalize();
  mpq_class total = lg * x;
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), total.get_num_mpz_t(), total.get_den_mpz_t());
  return checked(mpz_class(fl + 1));
}

void require_closed(const Expr& e) {
  if (!e.is_closed()) throw std::invalid_argument("expression has free variables: " + to_string(e));
}

// Exact value of an exponent or factorial argument, refused beyond the budget.
mpz_class exact_operand(const Expr& e, std::uint64_t budget) {
  try {
    return eval_exact(e, budget);
  } catch (const BudgetExceeded& ex) {
    throw ExponentTooLarge(to_string(e) + " needs ~" + std::to_string(ex.estimate_bits()) + " bits");
  }
}

mpz_class eval_unchecked(const Expr& e, std::uint64_t budget) {
  switch (e.op()) {
    case Op::Const: return e.value();
    case Op::Var: require_closed(e); break;
    case Op::Fact: {
      const mpz_class m = exact_operand(e.lhs(), kExponentBudgetBits);
      if (sgn(m) < 0) throw NegativeFactorial();
      mpz_class r;
      mpz_fac_ui(r.get_mpz_t(), m.get_ui());
      return r;
    }
    case Op::Pow: {
      const mpz_class x = exact_operand(e.rhs(), kExponentBudgetBits);
      if (sgn(x) < 0) throw NegativeExponent();
      if (sgn(x) == 0) return 1;
      const mpz_class base = eval_unchecked(e.lhs(), budget);
      if (sgn(base) == 0) return 0;
      if (abs(base) == 1) return (sgn(base) < 0 && mpz_odd_p(x.get_mpz_t())) ? -1 : 1;
      mpz_class r;
      mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), x.get_ui());
      return r;
    }
    case Op::Add: return eval_unchecked(e.lhs(), budget) + eval_unchecked(e.rhs(), budget);
    case Op::Sub: return eval_unchecked(e.lhs(), budget) - eval_unchecked(e.rhs(), budget);
    case Op::Mul: return eval_unchecked(e.lhs(), budget) * eval_unchecked(e.rhs(), budget);
  }
  return 0;
}

}  // namespace

SizeEstimate estimate_bits(const Expr& e, std::uint64_t exponent_budget_bits) {
  switch (e.op()) {
    case Op::Const: return {bit_length(e.value())};
    case Op::Var: require_closed(e); break;
    case Op::Fact: {
      const mpz_class m = exact_operand(e.lhs(), exponent_budget_bits);
      if (sgn(m) < 0) throw NegativeFactorial();
      if (!m.fits_ulong_p()) throw EstimateOverflow();
      return {factorial_bits(m.get_ui())};
    }
    case Op::Pow: {
      const mpz_class x = exact_operand(e.rhs(), exponent_budget_bits);
      if (sgn(x) < 0) throw NegativeExponent();
      if (sgn(x) == 0) return {1};
      const std::uint64_t base_bits = estimate_bits(e.lhs(), exponent_budget_bits).upper_bound_bits;
      if (base_bits <= 64) return {power_bits(eval_unchecked(e.lhs(), 64), x)};
      return {checked(mpz_class(x * base_bits))};
    }
    case Op::Add:
    case Op::Sub: {
      const auto a = estimate_bits(e.lhs(), exponent_budget_bits).upper_bound_bits;
      const auto b = estimate_bits(e.rhs(), exponent_budget_bits).upper_bound_bits;
      return {checked(static_cast<u128>(std::max(a, b)) + 1)};
    }
    case Op::Mul: {
      const auto a = estimate_bits(e.lhs(), exponent_budget_bits).upper_bound_bits;
      const auto b = estimate_bits(e.rhs(), exponent_budget_bits).upper_bound_bits;
      return {checked(static_cast<u128>(a) + b)};
    }
  }
  return {0};
}

BudgetExceeded::BudgetExceeded(Expr subtree, std::uint64_t estimate_bits, std::uint64_t budget_bits)
    : Error("exact evaluation refused: estimate " + std::to_string(estimate_bits) +
            " bits exceeds budget " + std::to_string(budget_bits)),
      subtree_(std::move(subtree)),
      estimate_bits_(estimate_bits) {}

// Every child's estimate is bounded by its parent's (the one exception, a
// base raised to the power zero, is never evaluated), so a single check at
// the root guards every subcomputation.
mpz_class eval_exact(const Expr& e, std::uint64_t budget_bits) {
  require_closed(e);
  std::uint64_t est = 0;
  try {
    est = estimate_bits(e).upper_bound_bits;
  } catch (const EstimateOverflow&) {
    throw BudgetExceeded(e, std::numeric_limits<std::uint64_t>::max(), budget_bits);
  }
  if (est > budget_bits) throw BudgetExceeded(e, est, budget_bits);
  return eval_unchecked(e, budget_bits);
}

// ---------------------------------------------------------------------------
// Normalization

namespace {

struct SignedTerm {
  bool negative;
  Expr term;
};

Expr from_signed_value(const mpz_class& v) {
  if (sgn(v) >= 0) return Expr::constant(v);
  return Expr::sub(Expr::constant(0ul), Expr::constant(mpz_class(-v)));
}

class Normalizer {
 public:
  explicit Normalizer(const NormalizeOptions& options) : threshold_(options.fold_threshold_bits) {}

  Expr run(const Expr& e) {
    // Constant subtrees fold as a whole or not at all.
    if (threshold_ > 0 && e.op() != Op::Const && e.is_closed()) {
      const Expr shape = Normalizer(NormalizeOptions{.fold_threshold_bits = 0}).run(e);
      return fold(shape);
    }
    switch (e.op()) {
      case Op::Const:
      case Op::Var: return e;
      case Op::Fact: return Expr::fact(run(e.lhs()));
      case Op::Pow: return Expr::pow(run(e.lhs()), run(e.rhs()));
      case Op::Add:
      case Op::Sub: return sum(e);
      case Op::Mul: return product(e);
    }
    return e;
  }

 private:
  Expr fold(Expr e) const {
    if (threshold_ == 0 || !e.is_closed()) return e;
    try {
      if (estimate_bits(e).upper_bound_bits > threshold_) return e;
      return from_signed_value(eval_exact(e, threshold_));
    } catch (const Error&) {
      return e;
    }
  }

  static void collect_terms(const Expr& e, bool negative, std::vector<SignedTerm>& out) {
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

  static void collect_factors(const Expr& e, std::vector<Expr>& out) {
    if (e.op() == Op::Mul) {
      collect_factors(e.lhs(), out);
      collect_factors(e.rhs(), out);
    } else {
      out.push_back(e);
    }
  }

  Expr sum(const Expr& e) {
    std::vector<SignedTerm> raw;
    collect_terms(e, false, raw);
    std::vector<SignedTerm> terms;
    for (auto& t : raw) collect_terms(run(t.term), t.negative, terms);

    std::vector<Expr> pos;
    std::vector<Expr> neg;
    mpz_class constant = 0;
    for (auto& t : terms) {
      if (t.term.op() == Op::Const) {
        if (sgn(t.term.value()) == 0) continue;
        if (threshold_ > 0 && bit_length(t.term.value()) <= threshold_) {
          constant += t.negative ? mpz_class(-t.term.value()) : t.term.value();
          continue;
        }
      }
      (t.negative ? neg : pos).push_back(t.term);
    }
    if (sgn(constant) > 0) pos.push_back(Expr::constant(constant));
    if (sgn(constant) < 0) neg.push_back(Expr::constant(mpz_class(-constant)));

    std::sort(pos.begin(), pos.end());
    std::sort(neg.begin(), neg.end());
    cancel(pos, neg);

    if (pos.empty() && neg.empty()) return Expr::constant(0ul);
    Expr out = pos.empty() ? Expr::constant(0ul) : pos.front();
    for (std::size_t i = 1; i < pos.size(); ++i) out = Expr::add(out, pos[i]);
    for (const auto& t : neg) out = Expr::sub(out, t);
    return out;
  }

  // Removes matching pairs from two sorted lists.
  static void cancel(std::vector<Expr>& pos, std::vector<Expr>& neg) {
    std::vector<Expr> p, n;
    std::size_t i = 0, j = 0;
    while (i < pos.size() && j < neg.size()) {
      const auto c = pos[i] <=> neg[j];
      if (c == 0) {
        ++i;
        ++j;
      } else if (c < 0) {
        p.push_back(pos[i++]);
      } else {
        n.push_back(neg[j++]);
      }
    }
    p.insert(p.end(), pos.begin() + static_cast<std::ptrdiff_t>(i), pos.end());
    n.insert(n.end(), neg.begin() + static_cast<std::ptrdiff_t>(j), neg.end());
    pos = std::move(p);
    neg = std::move(n);
  }

  Expr product(const Expr& e) {
    std::vector<Expr> raw;
    collect_factors(e, raw);
    std::vector<Expr> factors;
    for (const auto& f : raw) collect_factors(run(f), factors);

    std::vector<Expr> kept;
    mpz_class constant = 1;
    for (auto& f : factors) {
      if (f.op() == Op::Const) {
        if (f.value() == 1) continue;
        if (threshold_ > 0 && bit_length(f.value()) <= threshold_) {
          constant *= f.value();
          continue;
        }
      }
      kept.push_back(f);
    }
    if (sgn(constant) == 0) return Expr::constant(0ul);
    if (constant != 1) kept.push_back(Expr::constant(constant));
    if (kept.empty()) return Expr::constant(1ul);
    std::sort(kept.begin(), kept.end());
    Expr out = kept.front();
    for (std::size_t i = 1; i < kept.size(); ++i) out = Expr::mul(out, kept[i]);
    return fold(out);
  }

  std::uint64_t threshold_;
};

}  // namespace

Expr normalize(const Expr& e, const NormalizeOptions& options) { return Normalizer(options).run(e); }

bool structurally_equal(const Expr& a, const Expr& b, const NormalizeOptions& options) {
  return normalize(a, options) == normalize(b, options);
}

}  // namespace factpow
