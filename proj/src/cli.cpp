#include "ellfib/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "ellfib/acceptance.hpp"
#include "ellfib/arith.hpp"
#include "ellfib/census.hpp"
#include "ellfib/error.hpp"
#include "ellfib/motive.hpp"
#include "ellfib/weier.hpp"

namespace ellfib {

namespace {

using json = nlohmann::ordered_json;

constexpr const char* kCsvColumns =
    "CSV columns:\n"
    "  poly-count, census-strata, census-direct: q, n|d1:d2, observed, formula, match, seconds\n"
    "  zq: B, count, count_abs  (count: ht6 <= B and |Delta| <= 6^cap * B; count_abs: |Delta| <= B)\n"
    "  motive: n, q, class, count\n"
    "  zfqt: n, term, cumulative\n"
    "Environment: MODULI_BUDGET overrides the default enumeration budget.";

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json big(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max()) {
    return json(v.convert_to<std::int64_t>());
  }
  return json(v.str());
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

void csv_row(std::ostream& out, std::initializer_list<std::string> fields) {
  bool first = true;
  for (const auto& f : fields) {
    if (!first) out << ',';
    out << csv_field(f);
    first = false;
  }
  out << "\r\n";
}

std::string seconds_str(double s) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(6) << s;
  return os.str();
}

void emit(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

std::uint64_t effective_budget(const RunConfig& c, std::uint64_t fallback) {
  if (c.budget) {
    if (*c.budget == 0) throw UsageError("--budget must be positive");
    return *c.budget;
  }
  if (const char* env = std::getenv("MODULI_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || v == 0) {
      throw UsageError(std::string("MODULI_BUDGET must be a positive integer, got '") + env + "'");
    }
    return v;
  }
  return fallback;
}

FieldSpec require_field(const RunConfig& c) {
  if (c.q == 0) throw UsageError("--q is required (a prime power, e.g. --q 5)");
  return FieldSpec::of_order(c.q);
}

FieldSpec require_moduli_field(const RunConfig& c) {
  FieldSpec F = require_field(c);
  if (F.p() == 2 || F.p() == 3) {
    throw UsageError("--q " + std::to_string(c.q) + ": Weierstrass models need characteristic other than 2 and 3");
  }
  return F;
}

int require_n(const RunConfig& c) {
  if (!c.n) throw UsageError("--n is required (a positive integer)");
  if (*c.n < 1) throw UsageError("--n must be >= 1, got " + std::to_string(*c.n));
  return *c.n;
}

BigInt parse_bound(const std::string& text) {
  const auto caret = text.find('^');
  auto digits = [&](const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
      throw UsageError("--B expects digits or base^exponent (e.g. 244140625 or 5^12), got '" + text + "'");
    }
    return BigInt(s);
  };
  if (caret == std::string::npos) return digits(text);
  const BigInt base = digits(text.substr(0, caret));
  const BigInt exp = digits(text.substr(caret + 1));
  if (exp > 4096) throw UsageError("--B exponent too large");
  return boost::multiprecision::pow(base, exp.convert_to<unsigned>());
}

OutputFormat resolve(OutputFormat f, OutputFormat fallback) { return f == OutputFormat::Auto ? fallback : f; }

json census_json(const CensusReport& r, bool timing) {
  json j;
  j["schema"] = 1;
  j["kind"] = r.kind;
  j["q"] = r.q;
  if (r.n) j["n"] = *r.n;
  if (r.degrees) {
    j["d1"] = r.degrees->first;
    j["d2"] = r.degrees->second;
  }
  j["observed"] = big(r.observed);
  j["formula"] = big(r.formula);
  j["match"] = r.match;
  if (r.valid_models) j["valid_models"] = *r.valid_models;
  if (!r.strata.empty()) {
    json rows = json::array();
    for (const auto& s : r.strata) {
      rows.push_back(json{{"k", s.k}, {"l", s.l}, {"observed", s.observed}, {"formula", big(s.formula)},
                          {"contribution", big(s.contribution)}, {"match", s.match}});
    }
    j["strata"] = rows;
  }
  if (timing) j["seconds"] = r.seconds;
  return j;
}

int emit_census(const RunConfig& c, const CensusReport& r, std::ostream& out) {
  const std::string key = r.n ? std::to_string(*r.n)
                              : std::to_string(r.degrees->first) + ":" + std::to_string(r.degrees->second);
  switch (resolve(c.format, OutputFormat::Text)) {
    case OutputFormat::Json: emit(out, census_json(r, c.timing)); break;
    case OutputFormat::Csv:
      csv_row(out, {"q", "n|d1:d2", "observed", "formula", "match", "seconds"});
      csv_row(out, {std::to_string(r.q), key, r.observed.str(), r.formula.str(), r.match ? "true" : "false",
                    seconds_str(r.seconds)});
      break;
    default:
      out << r.kind << " q=" << r.q << (r.n ? " n=" : " d1:d2=") << key << ": observed " << r.observed.str()
          << ", formula " << r.formula.str() << ", " << (r.match ? "match" : "MISMATCH") << '\n';
      for (const auto& s : r.strata) {
        if (!s.match) out << "  stratum (" << s.k << "," << s.l << ") mismatch: observed " << s.observed << '\n';
      }
  }
  return r.match ? kExitOk : kExitMismatch;
}

int cmd_motive(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const int n = require_n(c);
  const MotiveClass cls = moduli_class_closed(n);
  std::optional<BigInt> count;
  if (c.q != 0) {
    const auto pe = prime_power_decompose(c.q);
    if (!pe) throw Error(ErrorCode::NotPrime, std::to_string(c.q) + " is not a prime power");
    if (pe->first == 2 || pe->first == 3) {
      err << "warning: q = " << c.q
          << " has characteristic 2 or 3, where the short Weierstrass moduli do not apply; the count is formal\n";
    }
    count = point_count(cls, c.q);
  }
  switch (resolve(c.format, OutputFormat::Text)) {
    case OutputFormat::Json: {
      json j;
      j["schema"] = 1;
      j["n"] = n;
      json terms = json::array();
      for (const auto& [e, coeff] : cls.terms()) terms.push_back(json::array({e, big(coeff)}));
      j["class"] = terms;
      if (count) {
        j["q"] = c.q;
        j["count"] = big(*count);
      }
      emit(out, j);
      break;
    }
    case OutputFormat::Csv:
      csv_row(out, {"n", "q", "class", "count"});
      csv_row(out, {std::to_string(n), count ? std::to_string(c.q) : "", to_string(cls), count ? count->str() : ""});
      break;
    default:
      out << to_string(cls);
      if (count) out << " ; #_" << c.q << " = " << count->str();
      out << '\n';
  }
  return kExitOk;
}

int cmd_poly_count(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const FieldSpec F = require_field(c);
  if (!c.d1 || !c.d2) throw UsageError("--d1 and --d2 are required (nonnegative degrees)");
  if (!c.oracle) {
    const BigInt formula = point_count(poly_class(*c.d1, *c.d2), c.q);
    if (resolve(c.format, OutputFormat::Text) == OutputFormat::Json) {
      emit(out, json{{"schema", 1}, {"kind", "poly-count"}, {"q", c.q}, {"d1", *c.d1}, {"d2", *c.d2},
                     {"formula", big(formula)}});
    } else {
      out << "formula " << formula.str() << " (add --oracle to enumerate)\n";
    }
    return kExitOk;
  }
  const std::uint64_t budget = effective_budget(c, kDefaultBudget);
  CensusReport r = poly_count_report(F, *c.d1, *c.d2, CensusOptions{budget, c.jobs});
  const std::uint64_t reference = count_coprime_pairs_reference(F, *c.d1, *c.d2, budget);
  if (BigInt(reference) != r.observed) {
    err << "serial reference counts " << reference << ", kernel counts " << r.observed.str() << '\n';
    r.match = false;
  }
  return emit_census(c, r, out);
}

int cmd_census_strata(const RunConfig& c, std::ostream& out) {
  const FieldSpec F = require_moduli_field(c);
  const int n = require_n(c);
  return emit_census(c, stratum_census(F, n, CensusOptions{effective_budget(c, kDefaultBudget), c.jobs}), out);
}

int cmd_census_direct(const RunConfig& c, std::ostream& out) {
  const FieldSpec F = require_moduli_field(c);
  const int n = require_n(c);
  return emit_census(
      c, direct_coarse_census(F, n, CensusOptions{effective_budget(c, kDefaultBudget), c.jobs}, c.force), out);
}

int cmd_classify(const RunConfig& c, std::ostream& out) {
  const FieldSpec F = require_moduli_field(c);
  const int n = require_n(c);
  if (c.a4.empty() || c.a6.empty()) throw UsageError("--a4 and --a6 are required (e.g. --a4 1 --a6 0,0,0,0,0,0,1)");
  const WeierstrassFibration w(F, static_cast<unsigned>(n), parse_coeffs(F, c.a4), parse_coeffs(F, c.a6));
  const Validity v = validate(w);
  if (!v.valid) {
    std::string where = "a4 and a6 are both zero";
    if (v.common_zero) {
      where = v.common_zero->is_infinity() ? "at infinity" : "at the place " + to_string(*v.common_zero->poly);
    }
    throw Error(ErrorCode::InvalidModel, "a4 and a6 vanish simultaneously " + where);
  }
  const FiberConfiguration cfg = fiber_configuration(w, c.seed_set ? c.seed : kDefaultFactorSeed);
  if (resolve(c.format, OutputFormat::Json) == OutputFormat::Json) {
    json places = json::array();
    for (const auto& fp : cfg.places) {
      places.push_back(json{{"poly", fp.place.is_infinity() ? std::string("inf") : to_string(*fp.place.poly)},
                            {"deg", fp.residue_degree},
                            {"k", fp.k},
                            {"reduction", std::string(to_string(classify_reduction(w, fp.place)))}});
    }
    emit(out, json{{"schema", 1}, {"n", n}, {"places", places}, {"sum_check", cfg.weighted_sum()}});
  } else {
    for (const auto& fp : cfg.places) {
      out << (fp.place.is_infinity() ? std::string("inf") : to_string(*fp.place.poly)) << "  deg " << fp.residue_degree
          << "  k " << fp.k << "  " << to_string(classify_reduction(w, fp.place)) << '\n';
    }
    out << "sum_check " << cfg.weighted_sum() << " (12n = " << 12 * n << ")\n";
  }
  return cfg.weighted_sum() == static_cast<std::size_t>(12 * n) ? kExitOk : kExitMismatch;
}

int cmd_zfqt(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (c.q == 0) throw UsageError("--q is required (a prime power)");
  if (c.bound.empty()) throw UsageError("--B is required (e.g. --B 5^12)");
  const auto pe = prime_power_decompose(c.q);
  if (pe && (pe->first == 2 || pe->first == 3)) {
    err << "warning: q = " << c.q << " has characteristic 2 or 3; the table is formal\n";
  }
  const ZTable t = z_fqt(HeightQuery(c.q, parse_bound(c.bound)));
  switch (resolve(c.format, OutputFormat::Text)) {
    case OutputFormat::Json: {
      json rows = json::array();
      for (const auto& r : t.rows) {
        rows.push_back(json{{"n", r.n}, {"term", big(r.term)}, {"cumulative", big(r.cumulative)}});
      }
      json bound;
      bound["exact"] = t.bound_exact ? json::array({big(t.bound_exact->first), big(t.bound_exact->second)}) : json();
      bound["upper"] = t.bound_upper;
      emit(out, json{{"schema", 1},
                     {"q", t.q},
                     {"B", big(t.bound)},
                     {"rows", rows},
                     {"total", big(t.total)},
                     {"bound", bound},
                     {"bound_holds", t.bound_holds},
                     {"equality_case", t.equality_case}});
      break;
    }
    case OutputFormat::Csv:
      csv_row(out, {"n", "term", "cumulative"});
      for (const auto& r : t.rows) csv_row(out, {std::to_string(r.n), r.term.str(), r.cumulative.str()});
      break;
    default:
      for (const auto& r : t.rows) out << "n=" << r.n << "  " << r.term.str() << "  " << r.cumulative.str() << '\n';
      out << "Z = " << t.total.str() << "; bound ";
      if (t.bound_exact) {
        out << t.bound_exact->first.str();
        if (t.bound_exact->second != 1) out << "/" << t.bound_exact->second.str();
      } else {
        out << "<= " << std::setprecision(17) << t.bound_upper;
      }
      out << "; " << (t.equality_case ? "equality" : t.bound_holds ? "strict inequality" : "BOUND VIOLATED") << '\n';
  }
  return t.bound_holds ? kExitOk : kExitMismatch;
}

int cmd_zq(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (c.grid != "log10") throw UsageError("--grid supports only log10, got '" + c.grid + "'");
  ZqOptions o;
  o.b_max = c.b_max;
  o.points_per_decade = c.points_per_decade;
  o.valuation_cap = c.valuation_cap;
  o.jobs = c.jobs;
  o.budget = effective_budget(c, ZqOptions{}.budget);
  const ZqResult r = z_q_experiment(o);

  json summary;
  summary["schema"] = 1;
  summary["slope"] = r.slope;
  summary["window"] = json::array({r.window.first, r.window.second});
  summary["disclaimer"] = kZqDisclaimer;
  summary["a_range"] = json::array({r.a_min, r.a_max});
  summary["region"] = r.region;
  summary["candidates"] = r.candidates;
  summary["boundary_audit"] = json{{"passed", r.audit_passed}, {"edge_count", r.audit_edge_count}};
  summary["self_check"] = r.self_check_passed;

  const OutputFormat f = resolve(c.format, OutputFormat::Text);
  if (f == OutputFormat::Json) {
    json rows = json::array();
    for (const auto& row : r.rows) rows.push_back(json{{"B", row.bound}, {"count", row.count}, {"count_abs", row.count_abs}});
    json j = summary;
    j["rows"] = rows;
    emit(out, j);
  } else {
    if (f == OutputFormat::Text) out << "# " << kZqDisclaimer << '\n';
    csv_row(out, {"B", "count", "count_abs"});
    for (const auto& row : r.rows) {
      csv_row(out, {std::to_string(row.bound), std::to_string(row.count), std::to_string(row.count_abs)});
    }
    (f == OutputFormat::Text ? out : err) << summary.dump() << '\n';
  }
  if (!r.audit_passed) {
    err << "warning: boundary audit found " << r.audit_edge_count
        << " counted curves near the truncated A edge; counts are lower bounds\n";
  }
  return r.self_check_passed ? kExitOk : kExitMismatch;
}

int cmd_repro(const RunConfig& c, std::ostream& out, std::ostream& err) {
  AcceptanceOptions o;
  o.jobs = c.jobs;
  o.budget = effective_budget(c, o.budget);
  o.include_slow = c.force;
  if (c.seed_set) o.seed = c.seed;
  bool all = true;
  json criteria = json::array();
  for (int id = 1; id <= kCriterionCount; ++id) {
    const CriterionResult r = id == 9 && !o.include_slow ? skipped_criterion(id, o) : run_criterion(id, o);
    if (!r.skipped && !r.passed) all = false;
    err << "criterion " << id << ": " << (r.skipped ? "skipped" : r.passed ? "pass" : "FAIL") << '\n';
    json j{{"id", r.id}, {"name", r.name}, {"status", r.skipped ? "skipped" : r.passed ? "pass" : "fail"},
           {"detail", r.detail}, {"limit_seconds", r.limit_seconds}};
    if (c.timing) j["seconds"] = r.seconds;
    criteria.push_back(j);
  }
  emit(out, json{{"schema", 1}, {"criteria", criteria}, {"verdict", all ? "pass" : "fail"}});
  return all ? kExitOk : kExitMismatch;
}

bool is_input_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotPrime:
    case ErrorCode::ReducibleModulus:
    case ErrorCode::DegreeMismatch:
    case ErrorCode::FieldMismatch:
    case ErrorCode::BothZero:
    case ErrorCode::ZeroPolynomial:
    case ErrorCode::InvalidModel:
    case ErrorCode::NonPositiveN:
    case ErrorCode::NegativeDegree:
    case ErrorCode::BudgetExceeded:
    case ErrorCode::Reducible:
    case ErrorCode::SingularCurve:
    case ErrorCode::Overflow:
    case ErrorCode::Usage:
    case ErrorCode::DivisionByZero: return true;
  }
  return false;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.jobs < 1) throw UsageError("--jobs must be >= 1");
    const std::string& s = config.subcommand;
    if (s == "motive") return cmd_motive(config, out, err);
    if (s == "poly-count") return cmd_poly_count(config, out, err);
    if (s == "census-strata") return cmd_census_strata(config, out);
    if (s == "census-direct") return cmd_census_direct(config, out);
    if (s == "classify") return cmd_classify(config, out);
    if (s == "zfqt") return cmd_zfqt(config, out, err);
    if (s == "zq") return cmd_zq(config, out, err);
    if (s == "repro") return cmd_repro(config, out, err);
    throw UsageError("unknown subcommand '" + s + "'");
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << e.what() << '\n';
    return is_input_error(e.code()) ? kExitUsage : kExitMismatch;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitMismatch;
  }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Point counts of moduli of elliptic surfaces, census oracles and height counts"};
  app.footer(kCsvColumns);
  app.require_subcommand(1);
  RunConfig c;
  std::string format = "auto";
  std::optional<std::uint64_t> seed;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"auto", "text", "json", "csv"}));
    sub->add_option("--budget", c.budget, "Enumeration budget (overrides MODULI_BUDGET)");
    sub->add_option("--jobs", c.jobs, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--seed", seed, "Seed for equal-degree factoring and sampling");
    sub->add_flag("--timing", c.timing, "Include wall-clock seconds in JSON");
  };

  auto* motive = app.add_subcommand("motive", "Class of L_{1,12n} in the Grothendieck ring, optionally counted");
  motive->add_option("--n", c.n, "Degree parameter n >= 1")->required();
  motive->add_option("--q", c.q, "Specialize L to q");
  common(motive);

  auto* pc = app.add_subcommand("poly-count", "Monic coprime pairs of degrees (d1, d2)");
  pc->add_option("--q", c.q, "Field order")->required();
  pc->add_option("--d1", c.d1)->required();
  pc->add_option("--d2", c.d2)->required();
  pc->add_flag("--oracle", c.oracle, "Enumerate and compare with the formula");
  common(pc);

  auto* cs = app.add_subcommand("census-strata", "Exhaustive stratum census of L_{1,12n}(F_q)");
  cs->add_option("--q", c.q)->required();
  cs->add_option("--n", c.n)->required();
  common(cs);

  auto* cd = app.add_subcommand("census-direct", "Dedup census of L_{1,12n}(F_q) by coarse encodings");
  cd->add_option("--q", c.q)->required();
  cd->add_option("--n", c.n)->required();
  cd->add_flag("--force", c.force, "Ignore the enumeration budget");
  common(cd);

  auto* cl = app.add_subcommand("classify", "Fiber configuration of y^2 = x^3 + a4 x + a6");
  cl->add_option("--q", c.q)->required();
  cl->add_option("--n", c.n)->required();
  cl->add_option("--a4", c.a4, "Constant-first coefficients, e.g. 1,0,2 for 2t^2 + 1")->required();
  cl->add_option("--a6", c.a6, "Constant-first coefficients")->required();
  common(cl);

  auto* zf = app.add_subcommand("zfqt", "Z over F_q(t) up to height B against its bound");
  zf->add_option("--q", c.q)->required();
  zf->add_option("--B", c.bound, "Height bound: digits or base^exponent")->required();
  bool json_flag = false;
  zf->add_flag("--json", json_flag, "Same as --format json");
  common(zf);

  auto* zq = app.add_subcommand("zq", "Away-from-6 count of semistable curves over Q (exploration only)");
  zq->add_option("--Bmax", c.b_max, "Largest height bound")->check(CLI::PositiveNumber);
  zq->add_option("--grid", c.grid, "Grid spacing (log10)");
  zq->add_option("--points-per-decade", c.points_per_decade)->check(CLI::PositiveNumber);
  zq->add_option("--cap", c.valuation_cap, "Enumerate |Delta| <= 6^cap * B");
  common(zq);

  auto* rp = app.add_subcommand("repro", "Run the acceptance sweep and print one JSON verdict");
  rp->add_flag("--force", c.force, "Include the slow direct census");
  common(rp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    const auto subs = app.get_subcommands();
    err << (subs.empty() ? app.help() : subs.front()->help());
    return kExitUsage;
  }
  c.subcommand = app.get_subcommands().front()->get_name();
  c.format = format == "text" ? OutputFormat::Text
             : format == "json" ? OutputFormat::Json
             : format == "csv"  ? OutputFormat::Csv
                                : OutputFormat::Auto;
  if (json_flag) c.format = OutputFormat::Json;
  if (seed) {
    c.seed = *seed;
    c.seed_set = true;
  }
  return run(c, out, err);
}

}  // namespace ellfib
