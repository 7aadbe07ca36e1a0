#include "factpow/report.hpp"

#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace factpow {

namespace {

using Json = nlohmann::ordered_json;

Json pair_list(const std::set<KnPair>& pairs) {
  Json out = Json::array();
  for (const auto& [k, n] : pairs) out.push_back(Json::array({k, n}));
  return out;
}

Json ranges_json(const ScanBounds& r) {
  return Json{{"k", Json::array({r.k_lo, r.k_hi})},
              {"n", Json::array({r.n_lo, r.n_hi})},
              {"n_greater_than_k", r.n_greater_than_k}};
}

Json binding_json(const PairRecord& r) {
  Json b{{"k", r.k}, {"n", r.n}};
  if (r.j) b["j"] = *r.j;
  return b;
}

std::string kind_name(TargetKind k) { return k == TargetKind::Equation ? "equation" : "inequality"; }

}  // namespace

std::string to_json(const ScanReport& report, const std::optional<DiffResult>& diff, const ReportFormat& format) {
  Json out;
  out["target"] = report.target;
  out["kind"] = kind_name(report.kind);
  out["ranges"] = ranges_json(report.ranges);

  Json pairs = Json::array();
  for (const auto& r : report.pairs) {
    Json p = binding_json(r);
    p["verdict"] = to_string(r.verdict);
    p["tier"] = to_string(r.certificate.tier);
    p["precision"] = r.certificate.precision;
    p["exact_bits"] = r.certificate.bits;
    p["holds"] = r.holds;
    p["elapsed_us"] = format.include_timing ? r.elapsed.count() : 0;
    pairs.push_back(std::move(p));
  }
  out["pairs"] = std::move(pairs);

  if (report.kind == TargetKind::Equation) {
    out["solutions"] = pair_list(report.solutions);
  } else {
    Json failures = Json::array();
    for (const auto& r : report.failures) failures.push_back(binding_json(r));
    out["failures"] = std::move(failures);
  }
  if (diff) {
    out["diff"] = Json{{"match", diff->match()},
                       {"missing", pair_list(diff->missing)},
                       {"spurious", pair_list(diff->spurious)}};
  }
  Json tiers = Json::object();
  for (const auto& [name, count] : report.tiers) tiers[name] = count;
  out["tiers"] = std::move(tiers);
  out["max_precision"] = report.max_precision;
  out["elapsed_ms"] = format.include_timing ? report.elapsed.count() : 0;
  return out.dump(2) + "\n";
}

std::string to_csv(const ScanReport& report, const ReportFormat& format) {
  std::ostringstream os;
  os << "target,k,n,j,verdict,tier,precision,exact_bits,holds,elapsed_us\n";
  for (const auto& r : report.pairs) {
    os << report.target << ',' << r.k << ',' << r.n << ',';
    if (r.j) os << *r.j;
    os << ',' << to_string(r.verdict) << ',' << to_string(r.certificate.tier) << ',' << r.certificate.precision
       << ',' << r.certificate.bits << ',' << (r.holds ? "true" : "false") << ','
       << (format.include_timing ? r.elapsed.count() : 0) << '\n';
  }
  return os.str();
}

std::string to_table(const ScanReport& report, const std::optional<DiffResult>& diff) {
  std::ostringstream os;
  const ScanBounds& r = report.ranges;
  os << report.target << " (" << kind_name(report.kind) << ")  k in [" << r.k_lo << ", " << r.k_hi << "]  n in ["
     << r.n_lo << ", " << r.n_hi << "]" << (r.n_greater_than_k ? "  n > k" : "") << "\n";
  os << "  bindings checked : " << report.pairs.size() << "\n";
  if (report.kind == TargetKind::Equation) {
    os << "  solutions        :";
    for (const auto& [k, n] : report.solutions) os << " (" << k << "," << n << ")";
    os << "\n";
    if (diff) {
      if (diff->match()) {
        os << "  expected set     : match\n";
      } else {
        os << "  expected set     : MISMATCH";
        for (const auto& [k, n] : diff->missing) os << " missing(" << k << "," << n << ")";
        for (const auto& [k, n] : diff->spurious) os << " spurious(" << k << "," << n << ")";
        os << "\n";
      }
    }
  } else {
    os << "  failures         : " << report.failures.size();
    for (const auto& f : report.failures) {
      os << " (k=" << f.k << ", n=" << f.n;
      if (f.j) os << ", j=" << *f.j;
      os << ")";
    }
    os << "\n";
  }
  os << "  certificates     :";
  for (const auto& [name, count] : report.tiers) os << ' ' << name << '=' << count;
  os << "\n  max precision    : " << report.max_precision << "\n";
  os << "  elapsed          : " << report.elapsed.count() << " ms\n";
  return os.str();
}

std::string catalog_json(const Catalog& catalog) {
  Json eqs = Json::array();
  for (const auto& e : catalog.equations) {
    eqs.push_back(Json{{"id", e.id},
                       {"lhs", e.lhs_text},
                       {"rhs", e.rhs_text},
                       {"relation", "="},
                       {"expected", to_string(e.expected)},
                       {"anchor", e.anchor}});
  }
  Json ineqs = Json::array();
  for (const auto& i : catalog.inequalities) {
    const ScanBounds& b = i.default_bounds;
    Json bounds{{"k", Json::array({b.k_lo, b.k_hi})},
                {"n", Json::array({b.n_lo, b.n_hi})},
                {"n_greater_than_k", b.n_greater_than_k}};
    ineqs.push_back(Json{{"id", i.id},
                         {"lhs", i.lhs_text},
                         {"rhs", i.rhs_text},
                         {"relation", to_string(i.relation)},
                         {"domain", i.domain.describe()},
                         {"default_bounds", std::move(bounds)},
                         {"anchor", i.anchor}});
  }
  return Json{{"equations", std::move(eqs)}, {"inequalities", std::move(ineqs)}}.dump(2) + "\n";
}

std::string catalog_table(const Catalog& catalog) {
  std::ostringstream os;
  for (const auto& e : catalog.equations)
    os << std::left << std::setw(5) << e.id << e.lhs_text << " = " << e.rhs_text << "   [" << to_string(e.expected)
       << "]\n";
  for (const auto& i : catalog.inequalities)
    os << std::left << std::setw(5) << i.id << i.lhs_text << ' ' << to_string(i.relation) << ' ' << i.rhs_text
       << "   (" << i.domain.describe() << ")\n";
  return os.str();
}

}  // namespace factpow
