#include "podlab/cli.hpp"

#include <algorithm>
#include <chrono>
#include <climits>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "podlab/congr.hpp"
#include "podlab/density.hpp"
#include "podlab/etaquot.hpp"
#include "podlab/hecke.hpp"
#include "podlab/partitions.hpp"

namespace podlab::cli {

namespace {

using nlohmann::json;

constexpr const char* kVersion = "0.1.0";
constexpr std::size_t kMaxTerms = 100'000'000;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Options {
  std::string format = "text";
  std::string output;
  bool no_meta = false;

  std::int64_t ell = 0;
  std::size_t terms = 0;
  std::optional<std::uint64_t> modulus;

  std::string spec;
  std::string family;
  std::int64_t p = 0;
  int k = 0;
  std::optional<std::int64_t> level;

  std::string builtin;
  std::string file;
  std::int64_t n_test = 200;

  std::uint64_t residue = 0;
  std::vector<std::uint64_t> cutoffs;

  std::int64_t m = 0;
};

struct Outcome {
  std::string body;
  int status = kExitOk;
};

bool as_json(const Options& o) { return o.format == "json"; }

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

std::string finish_json(json j, const Options& o) {
  if (!o.no_meta) j["meta"] = {{"tool", "podlab"}, {"version", kVersion}, {"generated", utc_timestamp()}};
  return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------

Outcome cmd_series(const Options& o) {
  if (o.ell < 2) throw UsageError("--ell must be >= 2");
  if (o.terms < 1 || o.terms > kMaxTerms) throw UsageError("--terms must be in [1, " + std::to_string(kMaxTerms) + "]");
  if (o.modulus && (*o.modulus < 2 || *o.modulus > UINT32_MAX)) throw UsageError("--mod must be in [2, 2^32)");
  const int ell = static_cast<int>(o.ell);

  std::ostringstream out;
  if (as_json(o)) {
    json coeffs = json::array();
    json j = {{"schema", 1}, {"ell", ell}, {"order", o.terms}};
    if (o.modulus) {
      const auto table = pod_series(ell, o.terms, *o.modulus);
      for (std::size_t n = 0; n < table.size(); ++n) coeffs.push_back(table[n]);
      j["modulus"] = *o.modulus;
    } else {
      const auto table = pod_series(ell, o.terms);
      for (std::size_t n = 0; n < table.size(); ++n) coeffs.push_back(table[n].get_str());
      j["modulus"] = "Z";
    }
    j["coefficients"] = std::move(coeffs);
    return {finish_json(std::move(j), o)};
  }
  if (o.modulus) {
    write_text(out, pod_series(ell, o.terms, *o.modulus).series());
  } else {
    write_text(out, pod_series(ell, o.terms).series());
  }
  return {out.str()};
}

Outcome cmd_eta_check(const Options& o) {
  if (o.spec.empty() == o.family.empty()) throw UsageError("give exactly one of --spec or --family");
  EtaQuotient quotient = [&] {
    if (!o.spec.empty()) return EtaQuotient::parse(o.spec);
    if (o.family != "B") throw UsageError("unknown family '" + o.family + "' (only B is known)");
    if (o.ell < 3 || o.p < 2 || o.k < 1) throw UsageError("--family B needs --ell, --p and --k");
    try {
      const BFamily fam = build_B(o.ell, o.p, o.k);
      return fam.quotient.with_level(fam.standard_level());
    } catch (const std::domain_error& e) {
      throw UsageError(e.what());
    }
  }();
  if (o.level) {
    try {
      quotient = quotient.with_level(*o.level);
    } catch (const std::exception& e) {
      throw UsageError(e.what());
    }
  }
  const auto report = holomorphy_report(quotient);
  const auto minimal = minimal_level(quotient);
  const int status = report.is_modular_form() ? kExitOk : kExitFailed;

  if (as_json(o)) {
    json j = to_json(report);
    j["minimal_level"] = minimal ? json(*minimal) : json();
    if (!o.family.empty()) {
      const BFamily fam = build_B(o.ell, o.p, o.k);
      j["family"] = {{"name", "B"},
                     {"ell", fam.ell},
                     {"p", fam.p},
                     {"a", fam.a},
                     {"k", fam.k},
                     {"expected_weight", to_string(fam.expected_weight())}};
    }
    return {finish_json(std::move(j), o), status};
  }
  std::ostringstream out;
  out << render_text(report);
  out << "minimal level   " << (minimal ? std::to_string(*minimal) : std::string("none")) << '\n';
  return {out.str(), status};
}

std::vector<CongruenceFamily> read_family_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open family file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError("family file '" + path + "' is not valid JSON: " + e.what());
  }
  std::vector<CongruenceFamily> families;
  try {
    if (doc.is_array()) {
      for (const auto& item : doc) families.push_back(family_from_json(item));
    } else {
      families.push_back(family_from_json(doc));
    }
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (families.empty()) throw UsageError("family file '" + path + "' holds no families");
  return families;
}

Outcome cmd_verify(const Options& o) {
  if (o.builtin.empty() == o.file.empty()) throw UsageError("give exactly one of --builtin or --file");
  if (o.n_test < 0) throw UsageError("--n must be >= 0");
  std::vector<VerifyResult> results;
  if (!o.builtin.empty()) {
    const auto& tags = builtin_tags();
    if (std::find(tags.begin(), tags.end(), o.builtin) == tags.end()) {
      throw UsageError("unknown builtin '" + o.builtin + "'");
    }
    results = run_builtin(o.builtin, o.n_test);
  } else {
    results = verify_families(read_family_file(o.file), o.n_test);
  }
  const bool all_passed =
      std::all_of(results.begin(), results.end(), [](const VerifyResult& r) { return r.passed; });
  const int status = all_passed ? kExitOk : kExitFailed;

  if (as_json(o)) {
    json list = json::array();
    for (const auto& r : results) list.push_back(to_json(r));
    json j = {{"schema", 1}, {"n_test", o.n_test}, {"passed", all_passed}, {"results", std::move(list)}};
    return {finish_json(std::move(j), o), status};
  }
  std::ostringstream out;
  for (const auto& r : results) {
    out << (r.passed ? "PASS " : "FAIL ") << r.tag << ": " << r.detail;
    if (r.counterexample) out << " [counterexample n=" << *r.counterexample << ']';
    out << '\n';
  }
  out << (all_passed ? "all " : "") << std::count_if(results.begin(), results.end(),
                                                      [](const VerifyResult& r) { return r.passed; })
      << " of " << results.size() << " checks passed\n";
  return {out.str(), status};
}

Outcome cmd_density(const Options& o) {
  if (o.ell < 2) throw UsageError("--ell must be >= 2");
  if (!o.modulus || *o.modulus < 1 || *o.modulus > UINT32_MAX) throw UsageError("--mod must be in [1, 2^32)");
  if (o.cutoffs.empty()) throw UsageError("--cutoffs needs at least one value");
  DensityReport report;
  try {
    report = density_curve(static_cast<int>(o.ell), *o.modulus, o.residue, o.cutoffs);
  } catch (const std::domain_error& e) {
    throw UsageError(e.what());
  }
  if (as_json(o)) return {finish_json(to_json(report), o)};
  return {render_table(report)};
}

Outcome cmd_hecke(const Options& o) {
  if (o.m < 1) throw UsageError("--m must be >= 1");
  if (o.terms < 2) throw UsageError("--terms must be >= 2");
  const auto um = static_cast<std::size_t>(o.m);
  if (o.terms / um < kMinEigenOverlap) {
    throw UsageError("--terms " + std::to_string(o.terms) + " leaves fewer than " +
                     std::to_string(kMinEigenOverlap) + " coefficients of T_" + std::to_string(o.m) + " f");
  }
  const auto f = eigenform_eta(o.terms);
  const auto lambda = eigen_ratio(f, o.m, o.terms);
  std::optional<bool> recurrence;
  if (is_prime(o.m) && o.m % 4 == 3) recurrence = verify_recurrence(o.m, o.terms);
  const int status = lambda && recurrence.value_or(true) ? kExitOk : kExitFailed;
  const std::size_t overlap = o.terms / um;

  if (as_json(o)) {
    json j = {{"schema", 1},
              {"form", "eta(4z)^2 eta(16z)^2 / eta(8z)^2"},
              {"m", o.m},
              {"terms", o.terms},
              {"compared", overlap},
              {"eigenvalue", lambda ? json(lambda->get_str()) : json()}};
    j["recurrence"] = recurrence ? json(*recurrence) : json();
    return {finish_json(std::move(j), o), status};
  }
  std::ostringstream out;
  if (lambda) {
    out << "T_" << o.m << " f = " << lambda->get_str() << "·f (eigenvalue " << lambda->get_str() << ")\n";
  } else {
    out << "T_" << o.m << " f is not an integer multiple of f on the first " << overlap << " coefficients\n";
  }
  if (recurrence) {
    out << "a(" << o.m << "n) + (-1/" << o.m << ") a(n/" << o.m << ") = 0: " << (*recurrence ? "holds" : "fails")
        << " below q^" << o.terms << '\n';
  }
  return {out.str(), status};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"podlab: pod_ell partitions, eta-quotients, Hecke operators and congruence checks", "podlab"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.set_version_flag("--version", kVersion);
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--output", o.output, "Write to this file instead of standard output");
  app.add_flag("--no-meta", o.no_meta, "Omit the meta block (timestamp) from JSON output");

  auto* series = app.add_subcommand("series", "pod_ell(n) for 0 <= n < terms, in the q-series text format");
  series->add_option("--ell", o.ell, "ell >= 2")->required();
  series->add_option("--terms", o.terms, "Number of coefficients")->required();
  series->add_option("--mod", o.modulus, "Reduce modulo this integer");

  auto* eta = app.add_subcommand("eta-check", "Certify an eta-quotient as a modular form");
  eta->add_option("--spec", o.spec, "delta:exponent,...[@level], e.g. 4:2,16:2,8:-2@64");
  eta->add_option("--family", o.family, "Named family (B)");
  eta->add_option("--ell", o.ell, "Family parameter ell");
  eta->add_option("--p", o.p, "Family parameter p");
  eta->add_option("--k", o.k, "Family parameter k");
  eta->add_option("--level", o.level, "Check at this level instead");

  auto* verify = app.add_subcommand("verify", "Scan congruence families");
  verify->add_option("--builtin", o.builtin, "gireesh|veena|thm2|cor2|cor3|cor3-example|pod5|pod7|podp|all");
  verify->add_option("--file", o.file, "JSON family object or array");
  verify->add_option("--n", o.n_test, "Check 0 <= n <= N");

  auto* dens = app.add_subcommand("density", "Share of 0 <= n < X with pod_ell(n) = r (mod M)");
  dens->add_option("--ell", o.ell, "ell >= 2")->required();
  dens->add_option("--mod", o.modulus, "Modulus M")->required();
  dens->add_option("--residue", o.residue, "Residue r (default 0)");
  dens->add_option("--cutoffs", o.cutoffs, "Ascending cutoffs X")->required()->delimiter(',');

  auto* hecke = app.add_subcommand("hecke", "Apply T_m to eta(4z)^2 eta(16z)^2 / eta(8z)^2");
  hecke->add_option("--m", o.m, "m >= 1")->required();
  o.terms = 2000;
  hecke->add_option("--terms", o.terms, "Expansion length (default 2000)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    Outcome outcome;
    if (*series) {
      outcome = cmd_series(o);
    } else if (*eta) {
      outcome = cmd_eta_check(o);
    } else if (*verify) {
      outcome = cmd_verify(o);
    } else if (*dens) {
      outcome = cmd_density(o);
    } else {
      outcome = cmd_hecke(o);
    }
    if (o.output.empty()) {
      out << outcome.body;
    } else {
      std::ofstream file(o.output, std::ios::binary);
      if (!file) throw UsageError("cannot write '" + o.output + "'");
      file << outcome.body;
    }
    return outcome.status;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

}  // namespace podlab::cli
