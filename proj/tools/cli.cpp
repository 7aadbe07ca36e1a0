#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "factpow/catalog.hpp"
#include "factpow/certified_log.hpp"
#include "factpow/comparator.hpp"
#include "factpow/report.hpp"
#include "factpow/scanner.hpp"
#include "json.hpp"

namespace factpow::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CommonFlags {
  std::string ladder;
  std::optional<std::uint64_t> budget;
  std::string format = "table";
  std::string out_path;
  unsigned threads = 0;
  bool no_timing = false;
};

void add_common(CLI::App* cmd, CommonFlags& flags, bool with_format = true) {
  cmd->add_option("--ladder", flags.ladder, "Comma-separated precision ladder, e.g. 32,64,128");
  cmd->add_option("--budget", flags.budget, "Exact evaluation budget in bits");
  if (with_format)
    cmd->add_option("--format", flags.format, "Output format")->check(CLI::IsMember({"table", "json", "csv"}));
  cmd->add_option("--out", flags.out_path, "Write the report to this file instead of stdout");
  cmd->add_option("--threads", flags.threads, "Worker threads (0 = hardware concurrency)");
  cmd->add_flag("--no-timing", flags.no_timing, "Write zero for all wall-time fields");
}

std::vector<std::uint32_t> parse_ladder(const std::string& text) {
  std::vector<std::uint32_t> ladder;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const unsigned long v = std::stoul(item, &used);
      if (used != item.size() || v > 1'000'000) throw std::invalid_argument(item);
      ladder.push_back(static_cast<std::uint32_t>(v));
    } catch (const std::exception&) {
      throw UsageError("invalid precision ladder entry '" + item + "'");
    }
  }
  return ladder;
}

std::uint64_t parse_budget(const std::string& text) {
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw UsageError("invalid exact budget '" + text + "'");
  }
}

ComparePolicy make_policy(const CommonFlags& flags) {
  ComparePolicy policy;
  if (const char* env = std::getenv(kEnvLadder); env && *env) policy.precision_ladder = parse_ladder(env);
  if (const char* env = std::getenv(kEnvBudget); env && *env) policy.exact_budget_bits = parse_budget(env);
  if (!flags.ladder.empty()) policy.precision_ladder = parse_ladder(flags.ladder);
  if (flags.budget) policy.exact_budget_bits = *flags.budget;
  try {
    policy.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return policy;
}

void emit(const std::string& text, const CommonFlags& flags, std::ostream& out) {
  if (flags.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(flags.out_path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open " + flags.out_path);
  file << text;
}

std::string join_json(const std::vector<std::string>& docs) {
  if (docs.size() == 1) return docs.front();
  std::string s = "[\n";
  for (std::size_t i = 0; i < docs.size(); ++i) {
    std::string d = docs[i];
    while (!d.empty() && d.back() == '\n') d.pop_back();
    s += d + (i + 1 < docs.size() ? ",\n" : "\n");
  }
  return s + "]\n";
}

std::string render(const ScanReport& r, const std::optional<DiffResult>& diff, const CommonFlags& flags,
                   bool first) {
  const ReportFormat fmt{.include_timing = !flags.no_timing};
  if (flags.format == "json") return to_json(r, diff, fmt);
  if (flags.format == "csv") {
    std::string csv = to_csv(r, fmt);
    if (!first) csv.erase(0, csv.find('\n') + 1);
    return csv;
  }
  return to_table(r, diff);
}

std::string combine(const std::vector<std::string>& parts, const CommonFlags& flags) {
  if (flags.format == "json") return join_json(parts);
  std::string s;
  for (const auto& p : parts) s += p;
  return s;
}

// ---------------------------------------------------------------------------

struct ScanArgs {
  std::string equation;
  std::optional<std::uint64_t> max;
  std::optional<std::uint64_t> k_max;
  std::optional<std::uint64_t> n_max;
};

int run_scan(const ScanArgs& a, const CommonFlags& flags, std::ostream& out) {
  const Catalog& cat = get_catalog();
  std::vector<const EquationSpec*> targets;
  if (a.equation == "all") {
    for (const auto& e : cat.equations) targets.push_back(&e);
  } else if (const auto* e = cat.find_equation(a.equation)) {
    targets.push_back(e);
  } else {
    throw UsageError("unknown equation id '" + a.equation + "' (expected t1..t4 or all)");
  }
  const std::uint64_t k_max = a.k_max.value_or(a.max.value_or(20));
  const std::uint64_t n_max = a.n_max.value_or(a.max.value_or(20));
  if (k_max < 1 || n_max < 1) throw UsageError("scan ranges must be at least 1");

  const ComparePolicy policy = make_policy(flags);
  bool all_match = true;
  std::vector<std::string> parts;
  for (const auto* eq : targets) {
    const ScanReport r = scan_equation(*eq, k_max, n_max, policy, {.threads = flags.threads});
    const DiffResult d = diff_expected(r, *eq);
    all_match = all_match && d.match();
    parts.push_back(render(r, d, flags, parts.empty()));
  }
  emit(combine(parts, flags), flags, out);
  return all_match ? kExitOk : kExitMismatch;
}

struct LemmaArgs {
  std::string id;
  std::optional<std::uint64_t> from;
  std::optional<std::uint64_t> to;
  std::optional<std::uint64_t> k_max;
};

ScanBounds lemma_bounds(const InequalitySpec& spec, const LemmaArgs& a) {
  ScanBounds b = spec.default_bounds;
  const bool pair = spec.uses_k() && spec.uses_n();
  if (pair || spec.uses_n()) {
    if (a.from) b.n_lo = *a.from;
    if (a.to) b.n_hi = *a.to;
  } else {
    if (a.from) b.k_lo = *a.from;
    if (a.to) b.k_hi = *a.to;
  }
  if (a.k_max) {
    if (!pair) throw UsageError("--k-max only applies to two-parameter inequalities");
    b.k_hi = *a.k_max;
  }
  return b;
}

int run_lemma(const LemmaArgs& a, const CommonFlags& flags, std::ostream& out) {
  const Catalog& cat = get_catalog();
  std::vector<const InequalitySpec*> targets;
  if (a.id == "all") {
    if (a.from || a.to || a.k_max) throw UsageError("--from/--to/--k-max cannot be combined with --id all");
    for (const auto& i : cat.inequalities) targets.push_back(&i);
  } else if (const auto* i = cat.find_inequality(a.id)) {
    targets.push_back(i);
  } else {
    throw UsageError("unknown inequality id '" + a.id + "' (expected I1..I20 or all)");
  }

  const ComparePolicy policy = make_policy(flags);
  bool all_hold = true;
  std::vector<std::string> parts;
  for (const auto* spec : targets) {
    ScanReport r;
    try {
      r = scan_inequality(*spec, lemma_bounds(*spec, a), policy, {.threads = flags.threads});
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    all_hold = all_hold && r.failures.empty();
    parts.push_back(render(r, std::nullopt, flags, parts.empty()));
  }
  emit(combine(parts, flags), flags, out);
  return all_hold ? kExitOk : kExitMismatch;
}

struct CompareArgs {
  std::string lhs;
  std::string rhs;
  std::optional<std::uint64_t> k;
  std::optional<std::uint64_t> n;
  std::optional<std::uint64_t> j;
};

int run_compare(const CompareArgs& a, const CommonFlags& flags, std::ostream& out) {
  const ParseOptions opts{.allow_aux_index = a.j.has_value()};
  const Expr lhs = parse_expr(a.lhs, opts);
  const Expr rhs = parse_expr(a.rhs, opts);
  for (auto [v, given] : {std::pair{Var::K, a.k.has_value()}, std::pair{Var::N, a.n.has_value()}}) {
    if ((lhs.uses(v) || rhs.uses(v)) && !given)
      throw UsageError(std::string("expression uses ") + var_letter(v) + " but -" + var_letter(v) + " was not given");
  }
  const Binding b(a.k.value_or(1), a.n.value_or(1), a.j);
  const ComparePolicy policy = make_policy(flags);
  const Comparison c = compare_instance(lhs, rhs, b, policy);

  std::ostringstream os;
  if (flags.format == "json") {
    nlohmann::ordered_json j{{"lhs", to_string(lhs)},
                             {"rhs", to_string(rhs)},
                             {"k", b.k},
                             {"n", b.n},
                             {"verdict", to_string(c.verdict)},
                             {"tier", to_string(c.certificate.tier)},
                             {"precision", c.certificate.precision},
                             {"exact_bits", c.certificate.bits}};
    if (b.j) j["j"] = *b.j;
    os << j.dump(2) << "\n";
  } else if (flags.format == "csv") {
    os << "verdict,tier,precision,exact_bits\n"
       << to_string(c.verdict) << ',' << to_string(c.certificate.tier) << ',' << c.certificate.precision << ','
       << c.certificate.bits << "\n";
  } else {
    os << to_string(c.verdict) << "  " << to_string(c.certificate) << "\n";
    if (c.certificate.tier == Tier::LogSeparation) {
      const Rearranged sides = rearrange(substitute(lhs, b), substitute(rhs, b));
      const Precision p(c.certificate.precision);
      for (const auto& [name, side] : {std::pair{"lhs", sides.lhs}, std::pair{"rhs", sides.rhs}}) {
        const SignedLogMagnitude m = bound_expr(side, p);
        os << "  " << name << " log2 in ";
        if (m.magnitude()) os << format_interval(*m.magnitude()) << (m.sign() == Sign::Negative ? " (negative)" : "");
        else os << "(zero)";
        os << "\n";
      }
    }
  }
  emit(os.str(), flags, out);
  return kExitOk;
}

int run_catalog(const CommonFlags& flags, std::ostream& out) {
  if (flags.format == "csv") throw UsageError("catalog supports table or json output");
  const Catalog& cat = get_catalog();
  emit(flags.format == "json" ? catalog_json(cat) : catalog_table(cat), flags, out);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certified verification of factorial-power Diophantine equations"};
  app.name("factpow");
  app.require_subcommand(1, 1);

  CommonFlags scan_flags, lemma_flags, compare_flags, catalog_flags;

  ScanArgs scan_args;
  auto* scan = app.add_subcommand("scan", "Classify (k,n) pairs for an equation");
  scan->add_option("--equation", scan_args.equation, "Equation id: t1..t4 or all")->required();
  scan->add_option("--max", scan_args.max, "Upper bound for both k and n (default 20)");
  scan->add_option("--k-max", scan_args.k_max, "Upper bound for k");
  scan->add_option("--n-max", scan_args.n_max, "Upper bound for n");
  add_common(scan, scan_flags);

  LemmaArgs lemma_args;
  auto* lemma = app.add_subcommand("lemma", "Check a supporting inequality over a range");
  lemma->add_option("--id", lemma_args.id, "Inequality id: I1..I20 or all")->required();
  lemma->add_option("--from", lemma_args.from, "Lower bound of the scanned parameter");
  lemma->add_option("--to", lemma_args.to, "Upper bound of the scanned parameter");
  lemma->add_option("--k-max", lemma_args.k_max, "Upper bound for k (two-parameter inequalities)");
  add_common(lemma, lemma_flags);

  CompareArgs cmp_args;
  auto* cmp = app.add_subcommand("compare", "Compare two expressions at one binding");
  cmp->add_option("--lhs", cmp_args.lhs, "Left expression")->required();
  cmp->add_option("--rhs", cmp_args.rhs, "Right expression")->required();
  cmp->add_option("-k", cmp_args.k, "Value of k")->check(CLI::PositiveNumber);
  cmp->add_option("-n", cmp_args.n, "Value of n")->check(CLI::PositiveNumber);
  cmp->add_option("-j", cmp_args.j, "Value of the auxiliary index j");
  add_common(cmp, compare_flags);

  auto* catalog = app.add_subcommand("catalog", "List the registered equations and inequalities");
  catalog->add_option("--format", catalog_flags.format, "Output format")->check(CLI::IsMember({"table", "json"}));
  catalog->add_option("--out", catalog_flags.out_path, "Write to this file instead of stdout");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "factpow: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    if (scan->parsed()) return run_scan(scan_args, scan_flags, out);
    if (lemma->parsed()) return run_lemma(lemma_args, lemma_flags, out);
    if (cmp->parsed()) return run_compare(cmp_args, compare_flags, out);
    if (catalog->parsed()) return run_catalog(catalog_flags, out);
  } catch (const UsageError& e) {
    err << "factpow: " << e.what() << "\n";
    return kExitUsage;
  } catch (const SyntaxError& e) {
    err << "factpow: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Undecided& e) {
    err << "factpow: " << e.what() << "\n";
    return kExitUndecided;
  } catch (const std::exception& e) {
    err << "factpow: " << e.what() << "\n";
    return kExitError;
  }
  return kExitUsage;
}

}  // namespace factpow::cli
