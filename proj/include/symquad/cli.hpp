#pragma once

/**
 * @file cli.hpp
 * @brief The `symquad` command line, callable in-process through run().
 *
 * Exit codes: 0 success, 1 numerical failure (e.g. a certificate check did not
 * pass), 2 refusal (rule has N >= N* nodes), 3 invalid input or usage.
 */

#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "symquad/bench.hpp"
#include "symquad/cubature.hpp"
#include "symquad/fooling.hpp"
#include "symquad/io.hpp"
#include "symquad/symmetry.hpp"
#include "symquad/tractability.hpp"
#include "symquad/weighted.hpp"

namespace symquad::cli {

enum ExitCode : int { kOk = 0, kNumericalFailure = 1, kRefusal = 2, kInvalidInput = 3 };

struct CommonOptions {
  std::size_t dim = 0;
  std::string invariant;
  std::string groups;
  std::string format = "json";
  std::size_t cap = kDefaultEnumerationCap;
  std::string out;
};

namespace detail {

using io::json;

inline constexpr const char* kExitCodes =
    "Exit codes: 0 success, 1 numerical failure, 2 refusal (N >= N*), 3 invalid input.";

inline void add_pattern_options(CLI::App* sub, CommonOptions& o) {
  auto* inv = sub->add_option("--invariant", o.invariant,
                              "Single invariance group, 1-based (e.g. 1-3,5)");
  auto* grp = sub->add_option("--groups", o.groups,
                              "Several invariance groups separated by ';' (e.g. \"1-3;4,7\")");
  inv->excludes(grp);
  grp->excludes(inv);
}

inline void add_format_option(CLI::App* sub, CommonOptions& o) {
  sub->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"json", "table"}))
      ->capture_default_str();
}

inline InvariancePattern make_pattern(const CommonOptions& o) {
  if (o.dim == 0) throw InvalidInput("dimension -d must be at least 1");
  if (!o.invariant.empty()) {
    return InvariancePattern::from_one_based(o.dim, {parse_coordinate_list(o.invariant)});
  }
  if (!o.groups.empty()) return InvariancePattern::from_one_based(o.dim, parse_group_list(o.groups));
  return InvariancePattern::trivial(o.dim);
}

inline json envelope(const char* command) {
  return {{"schema_version", io::kSchemaVersion}, {"command", command}};
}

inline void emit_json(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

inline std::string fmt(double v, int precision = 12) {
  std::ostringstream os;
  os << std::setprecision(precision) << v;
  return os.str();
}

inline std::string fmt(Complex c) {
  return fmt(c.real()) + (c.imag() < 0 ? " - " : " + ") + fmt(std::abs(c.imag())) + "i";
}

// --- subcommands ------------------------------------------------------------

inline int run_nabla(const CommonOptions& o, std::ostream& out) {
  const auto p = make_pattern(o);
  const auto nabla = enumerate_nabla(p, o.cap);
  BigInt total = 0;
  json rows = json::array();
  for (std::size_t i = 0; i < nabla.size(); ++i) {
    const auto s = orbit_stats(nabla[i], p);
    total += s.orbit_size;
    rows.push_back({{"index", i},
                    {"k", io::to_json(nabla[i])},
                    {"stabilizer", s.stabilizer_size.str()},
                    {"orbit", s.orbit_size.str()}});
  }
  if (o.format == "table") {
    out << std::left << std::setw(8) << "index" << std::setw(2 * p.dim() + 4) << "k" << std::setw(14)
        << "stabilizer" << "orbit\n";
    for (const auto& r : rows) {
      std::string k = "(";
      for (std::size_t m = 0; m < r["k"].size(); ++m) k += (m ? "," : "") + std::to_string(r["k"][m].get<int>());
      k += ")";
      out << std::left << std::setw(8) << r["index"].get<std::size_t>() << std::setw(2 * p.dim() + 4) << k
          << std::setw(14) << r["stabilizer"].get<std::string>() << r["orbit"].get<std::string>() << '\n';
    }
    out << "N* = " << n_star(p).str() << ", orbit sizes sum to " << total.str() << '\n';
    return kOk;
  }
  json j = envelope("nabla");
  j["pattern"] = io::to_json(p);
  j["n_star"] = n_star(p).str();
  j["orbit_total"] = total.str();
  j["rows"] = rows;
  emit_json(out, j);
  return kOk;
}

inline int run_rule(const CommonOptions& o, bool rectangle, bool folded, std::ostream& out) {
  if (rectangle == folded) throw InvalidInput("rule: pass exactly one of --rectangle or --folded");
  CubatureRule rule(1);
  if (rectangle) {
    if (!o.invariant.empty() || !o.groups.empty()) {
      throw InvalidInput("rule: --rectangle takes no invariance pattern");
    }
    if (o.dim == 0) throw InvalidInput("dimension -d must be at least 1");
    if (o.dim >= 63 || (std::size_t{1} << o.dim) > o.cap) {
      throw CapExceeded("rule: 2^" + std::to_string(o.dim) + " nodes exceed the cap " + std::to_string(o.cap));
    }
    rule = rectangle_rule(o.dim, 63);
  } else {
    rule = folded_rectangle_rule(make_pattern(o), o.cap);
  }
  json j = io::to_json(rule);
  j["schema_version"] = io::kSchemaVersion;
  if (!o.out.empty()) io::write_text_file(o.out, j.dump(2) + "\n");
  if (o.format == "table") {
    out << std::left << std::setw(8) << "node" << std::setw(24) << "weight" << "coordinates\n";
    for (std::size_t n = 0; n < rule.size(); ++n) {
      std::string t;
      for (double x : rule.node(n)) t += (t.empty() ? "" : " ") + fmt(x, 3);
      out << std::left << std::setw(8) << n << std::setw(24) << fmt(rule.weight(n).real(), 17) << t << '\n';
    }
    out << rule.size() << " nodes\n";
  } else if (o.out.empty()) {
    emit_json(out, j);
  }
  return kOk;
}

inline int run_integrate(const std::string& rule_path, const std::string& poly_path,
                         const CommonOptions& o, std::ostream& out) {
  const auto rule = io::rule_from_json(io::read_json_file(rule_path));
  const auto f = io::polynomial_from_json(io::read_json_file(poly_path));
  const Complex value = apply(rule, f);
  const Complex exact = integral(f);
  if (o.format == "table") {
    out << "rule value : " << fmt(value) << "\nintegral   : " << fmt(exact)
        << "\nerror      : " << fmt(std::abs(value - exact)) << '\n';
    return kOk;
  }
  json j = envelope("integrate");
  j["value"] = io::complex_to_json(value);
  j["integral"] = io::complex_to_json(exact);
  j["error"] = std::abs(value - exact);
  emit_json(out, j);
  return kOk;
}

inline int run_wce(const CommonOptions& o, double alpha, double tol, std::ostream& out) {
  if (o.dim == 0) throw InvalidInput("dimension -d must be at least 1");
  const auto report = wce_rectangle(o.dim, Smoothness(alpha), tol);
  const bool agrees = std::abs(report.closed_form - report.oracle_value) <= report.tail_bound + 1e-9;
  if (o.format == "table") {
    out << "closed form  : " << fmt(report.closed_form, 15) << "\noracle value : "
        << fmt(report.oracle_value, 15) << "\ntail bound   : " << fmt(report.tail_bound, 6)
        << "\noracle terms : " << report.oracle_terms << "\nagreement    : " << (agrees ? "yes" : "NO")
        << '\n';
    return agrees ? kOk : kNumericalFailure;
  }
  json j = envelope("wce");
  j["dim"] = o.dim;
  j["alpha"] = alpha;
  j["tol"] = tol;
  j["report"] = io::to_json(report);
  j["agrees"] = agrees;
  emit_json(out, j);
  return agrees ? kOk : kNumericalFailure;
}

inline int run_certify(const CommonOptions& o, const std::string& rule_path, double alpha,
                       bool weighted, const std::string& gammas_path, std::ostream& out,
                       std::ostream& err) {
  const auto rule = io::rule_from_json(io::read_json_file(rule_path));
  CommonOptions with_dim = o;
  if (with_dim.dim == 0) with_dim.dim = rule.dim();
  if (with_dim.dim != rule.dim()) throw DimensionMismatch(with_dim.dim, rule.dim());
  const auto p = make_pattern(with_dim);
  const Smoothness a(alpha);

  if (BigInt(rule.size()) >= n_star(p)) {
    const double upper = wce_rectangle(p.dim(), a, 1e-10).closed_form;
    err << "refused: rule has " << rule.size() << " nodes, N* = " << n_star(p).str()
        << "; the folded rectangle rule with N* nodes has worst-case error at most "
        << fmt(upper, 15) << '\n';
    json j = envelope("certify");
    j["status"] = "refused";
    j["rule_size"] = rule.size();
    j["n_star"] = n_star(p).str();
    j["upper_bound"] = upper;
    if (o.format == "json") emit_json(out, j);
    return kRefusal;
  }
  if (weighted && gammas_path.empty()) throw InvalidInput("certify: --weighted needs --gammas");
  if (!weighted && !gammas_path.empty()) throw InvalidInput("certify: --gammas needs --weighted");

  FoolingCertificate cert =
      weighted ? weighted_construct(rule, p, a, io::weights_from_json(io::read_json_file(gammas_path)))
               : construct(rule, p, a);
  json j = envelope("certify");
  j["status"] = cert.valid ? "valid" : "failed";
  j["pattern"] = io::to_json(p);
  j["certificate"] = io::to_json(cert);
  if (!o.out.empty()) io::write_text_file(o.out, j.dump(2) + "\n");
  if (o.format == "table") {
    out << "status          : " << (cert.valid ? "valid" : "FAILED") << "\nnodes N         : " << rule.size()
        << "\nN*              : " << n_star(p).str() << "\nn*              : " << cert.n_star_index
        << "\n|A(f)|          : " << fmt(cert.residuals.rule, 3) << "\nInt(f)          : "
        << fmt(cert.integral_value) << "\nnorm            : " << fmt(cert.norm_value)
        << "\nwitnessed error : " << fmt(cert.witnessed_error()) << "\nsupport terms   : " << cert.f.size()
        << '\n';
    if (cert.weighted) {
      out << "nu_N            : " << fmt(cert.weighted->nu_n) << "\nscale           : "
          << fmt(cert.weighted->scale) << '\n';
    }
  } else {
    emit_json(out, j);
  }
  return cert.valid ? kOk : kNumericalFailure;
}

inline int run_weights(const CommonOptions& o, const std::string& gammas_path, double kappa,
                       std::ostream& out) {
  const auto p = make_pattern(o);
  const auto w = io::weights_from_json(io::read_json_file(gammas_path));
  const auto ordered = order_weights(p, w, o.cap);
  json rows = json::array();
  for (std::size_t n = 0; n < ordered.psi.size(); ++n) {
    rows.push_back({{"n", n}, {"k", io::to_json(ordered.psi[n])}, {"nu", ordered.nu[n]}});
  }
  json j = envelope("weights");
  j["pattern"] = io::to_json(p);
  j["weights"] = io::to_json(w);
  j["ordering"] = rows;
  std::optional<KappaSum> ks;
  if (kappa > 0.0) {
    ks = kappa_sum(p, w, kappa, o.cap);
    j["kappa"] = {{"kappa", kappa}, {"brute", ks->brute}, {"closed", ks->closed}, {"closed_applies", ks->closed_applies}};
  }
  if (o.format == "table") {
    out << std::left << std::setw(8) << "n" << std::setw(2 * p.dim() + 4) << "psi(n)" << "nu\n";
    for (std::size_t n = 0; n < ordered.psi.size(); ++n) {
      out << std::left << std::setw(8) << n << std::setw(2 * p.dim() + 4) << to_string(ordered.psi[n])
          << fmt(ordered.nu[n]) << '\n';
    }
    if (ks) {
      out << "sum mu^kappa : " << fmt(ks->brute) << "\nproduct form : " << fmt(ks->closed)
          << (ks->closed_applies ? "" : " (in-group gammas differ from 1; formula does not apply)") << '\n';
    }
    return kOk;
  }
  emit_json(out, j);
  return kOk;
}

inline std::vector<std::pair<double, double>> parse_st(const std::string& text) {
  std::vector<std::pair<double, double>> grid;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    const auto comma = item.find(',');
    if (comma == std::string::npos) throw InvalidInput("--st: expected 's,t' pairs separated by ';'");
    try {
      grid.emplace_back(std::stod(item.substr(0, comma)), std::stod(item.substr(comma + 1)));
    } catch (const std::logic_error&) {
      throw InvalidInput("--st: bad number in '" + item + "'");
    }
  }
  if (grid.empty()) throw InvalidInput("--st: empty grid");
  return grid;
}

inline std::vector<double> parse_reals(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      values.push_back(std::stod(item));
    } catch (const std::logic_error&) {
      throw InvalidInput("bad number '" + item + "'");
    }
  }
  if (values.empty()) throw InvalidInput("empty list of numbers");
  return values;
}

inline int run_tract(const CommonOptions& o, const std::string& profile_path, const std::string& st,
                     std::ostream& out) {
  const auto profile = io::profile_from_json(io::read_json_file(profile_path));
  const auto report = evaluate(profile, parse_st(st));
  if (o.format == "table") {
    out << std::left << std::setw(8) << "d" << std::setw(8) << "#I" << std::setw(8) << "b" << "N*\n";
    for (std::size_t i = 0; i < report.samples.size(); ++i) {
      const auto& s = report.samples[i];
      out << std::left << std::setw(8) << s.dim << std::setw(8) << s.invariant << std::setw(8)
          << s.dim - s.invariant << report.n_star_values[i].str() << '\n';
    }
    out << "max b/ln d        : " << fmt(report.max_log_ratio_b_over_ln_d, 6)
        << "\ntail log-log slope: " << fmt(report.tail_loglog_slope, 6) << '\n';
    for (const auto& v : report.verdicts) {
      out << std::left << std::setw(20) << v.notion << to_string(v.verdict) << '\n';
    }
    return kOk;
  }
  json j = envelope("tract");
  j["report"] = io::to_json(report);
  emit_json(out, j);
  return kOk;
}

}  // namespace detail

/// Builds the command tree; exposed for help-text tests.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Integration of permutation-invariant functions on Korobov spaces", "symquad"};
  app.require_subcommand(1);
  app.footer(detail::kExitCodes);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  CommonOptions o;
  std::string rule_path, poly_path, gammas_path, profile_path, st = "1,1";
  double alpha = 2.0, tol = 1e-8, kappa = 0.0;
  bool rectangle = false, folded = false, weighted = false;
  BenchConfig bench;
  std::string fractions = "1,0.5";

  auto* nabla = app.add_subcommand("nabla", "List the canonical 0/1 indices with orbit statistics");
  nabla->add_option("-d,--dim", o.dim, "Dimension d")->required();
  detail::add_pattern_options(nabla, o);
  detail::add_format_option(nabla, o);
  nabla->add_option("--cap", o.cap, "Maximum number of listed indices")->capture_default_str();
  nabla->footer(detail::kExitCodes);

  auto* rule = app.add_subcommand("rule", "Emit the rectangle rule or its folded form as JSON");
  rule->add_flag("--rectangle", rectangle, "2^d-point rectangle rule on {0,1/2}^d");
  rule->add_flag("--folded", folded, "N*-point folded rule for the invariance pattern");
  rule->add_option("-d,--dim", o.dim, "Dimension d")->required();
  detail::add_pattern_options(rule, o);
  detail::add_format_option(rule, o);
  rule->add_option("--cap", o.cap, "Maximum node count")->capture_default_str();
  rule->add_option("--out", o.out, "Write the rule JSON to this file");
  rule->footer(detail::kExitCodes);

  auto* integrate = app.add_subcommand("integrate", "Apply a rule to a polynomial");
  integrate->add_option("--rule", rule_path, "Rule JSON file")->required();
  integrate->add_option("--poly", poly_path, "Polynomial JSON file")->required();
  detail::add_format_option(integrate, o);
  integrate->footer(detail::kExitCodes);

  auto* wce = app.add_subcommand("wce", "Worst-case error of the rectangle rule with its oracle");
  wce->add_option("-d,--dim", o.dim, "Dimension d")->required();
  wce->add_option("--alpha", alpha, "Smoothness alpha > 1")->capture_default_str();
  wce->add_option("--tol", tol, "Tolerance")->capture_default_str();
  detail::add_format_option(wce, o);
  wce->footer(std::string(detail::kExitCodes) + " Exit 1 when the oracle disagrees beyond its tail bound.");

  auto* certify = app.add_subcommand("certify", "Build a fooling function defeating a rule with N < N* nodes");
  certify->add_option("--rule", rule_path, "Rule JSON file")->required();
  certify->add_option("-d,--dim", o.dim, "Dimension d (defaults to the rule's)");
  detail::add_pattern_options(certify, o);
  certify->add_option("--alpha", alpha, "Smoothness alpha > 1")->capture_default_str();
  certify->add_flag("--weighted", weighted, "Weighted construction (needs --gammas)");
  certify->add_option("--gammas", gammas_path, "Weight schedule JSON file");
  certify->add_option("--out", o.out, "Write the certificate JSON to this file");
  detail::add_format_option(certify, o);
  certify->footer(
      "Exit codes: 0 certificate valid (lower bound 1 witnessed), 1 numerical failure, "
      "2 N >= N* (refusal; prints the folded-rule upper bound), 3 invalid input.");

  auto* weights = app.add_subcommand("weights", "Order the effective product weights over the canonical indices");
  weights->add_option("-d,--dim", o.dim, "Dimension d")->required();
  detail::add_pattern_options(weights, o);
  weights->add_option("--gammas", gammas_path, "Weight schedule JSON file")->required();
  weights->add_option("--kappa", kappa, "Also report sum of mu^kappa and its product form");
  weights->add_option("--cap", o.cap, "Maximum number of canonical indices")->capture_default_str();
  detail::add_format_option(weights, o);
  weights->footer(detail::kExitCodes);

  auto* tract = app.add_subcommand("tract", "Necessary tractability conditions on an invariance profile");
  tract->add_option("--profile", profile_path, "Profile JSON file")->required();
  tract->add_option("--st", st, "(s,t) grid, e.g. \"1,1;0.5,0.5\"")->capture_default_str();
  detail::add_format_option(tract, o);
  tract->footer(detail::kExitCodes);

  auto* bench_cmd = app.add_subcommand("bench", "Time the rectangle rule against the folded rule (CSV)");
  bench_cmd->add_option("--d-min", bench.d_min, "Smallest dimension")->capture_default_str();
  bench_cmd->add_option("--d-max", bench.d_max, "Largest dimension")->capture_default_str();
  bench_cmd->add_option("--fractions", fractions, "Invariant fractions of d, comma separated")->capture_default_str();
  bench_cmd->add_option("--reps", bench.repetitions, "Repetitions per configuration")->capture_default_str();
  bench_cmd->add_option("--terms", bench.terms, "Random keys per integrand")->capture_default_str();
  bench_cmd->add_option("--seed", bench.seed, "Seed for the random integrands")->capture_default_str();
  bench_cmd->add_option("--cap", bench.node_cap, "Maximum node count")->capture_default_str();
  bench_cmd->footer(detail::kExitCodes);

  std::vector<const char*> argv{"symquad"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  }

  try {
    if (nabla->parsed()) return detail::run_nabla(o, out);
    if (rule->parsed()) return detail::run_rule(o, rectangle, folded, out);
    if (integrate->parsed()) return detail::run_integrate(rule_path, poly_path, o, out);
    if (wce->parsed()) return detail::run_wce(o, alpha, tol, out);
    if (certify->parsed()) return detail::run_certify(o, rule_path, alpha, weighted, gammas_path, out, err);
    if (weights->parsed()) return detail::run_weights(o, gammas_path, kappa, out);
    if (tract->parsed()) return detail::run_tract(o, profile_path, st, out);
    if (bench_cmd->parsed()) {
      bench.fractions = detail::parse_reals(fractions);
      out << bench_csv(run_bench(bench));
      return kOk;
    }
  } catch (const Refusal& e) {
    err << "refused: " << e.what() << '\n';
    return kRefusal;
  } catch (const NumericalFailure& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const io::json::exception& e) {
    err << "error: malformed JSON: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  }
  return kInvalidInput;
}

}  // namespace symquad::cli
