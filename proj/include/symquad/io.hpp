#pragma once

/**
 * @file io.hpp
 * @brief JSON forms of the library's value types.
 *
 *   polynomial  { "dim": d, "terms": [ { "k": [ints], "re": r, "im": i }, ... ] }
 *   pattern     { "dim": d, "groups": [[1-based ints], ...] }
 *   rule        { "dim": d, "nodes": [[reals], ...], "weights": [ { "re": r, "im": i }, ... ] }
 *   weights     { "dim": d, "gammas": [reals] }
 *   profile     { "samples": [[d, #I_d], ...] }
 *
 * Readers throw InvalidInput on malformed documents; unknown keys are ignored.
 */

#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include <json.hpp>

#include "symquad/cubature.hpp"
#include "symquad/fooling.hpp"
#include "symquad/korobov.hpp"
#include "symquad/symmetry.hpp"
#include "symquad/tractability.hpp"
#include "symquad/weighted.hpp"

namespace symquad::io {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

namespace detail {

inline const json& field(const json& j, const char* key, const char* what) {
  if (!j.is_object() || !j.contains(key)) {
    throw InvalidInput(std::string(what) + ": missing field \"" + key + "\"");
  }
  return j.at(key);
}

inline std::size_t dim_field(const json& j, const char* what) {
  const auto& d = field(j, "dim", what);
  if (!d.is_number_integer() || d.get<long long>() < 1) {
    throw InvalidInput(std::string(what) + ": \"dim\" must be a positive integer");
  }
  return d.get<std::size_t>();
}

inline double real_field(const json& j, const char* key, const char* what) {
  if (!j.contains(key)) return 0.0;
  if (!j.at(key).is_number()) {
    throw InvalidInput(std::string(what) + ": \"" + key + "\" must be a number");
  }
  return j.at(key).get<double>();
}

}  // namespace detail

inline json complex_to_json(Complex c) { return {{"re", c.real()}, {"im", c.imag()}}; }

inline Complex complex_from_json(const json& j, const char* what) {
  if (!j.is_object()) throw InvalidInput(std::string(what) + ": complex value must be an object");
  return {detail::real_field(j, "re", what), detail::real_field(j, "im", what)};
}

inline json to_json(const MultiIndex& k) { return json(std::vector<long long>(k.begin(), k.end())); }

inline MultiIndex multi_index_from_json(const json& j, std::size_t dim, const char* what) {
  if (!j.is_array()) throw InvalidInput(std::string(what) + ": multi-index must be an array");
  if (j.size() != dim) {
    throw InvalidInput(std::string(what) + ": multi-index of length " + std::to_string(j.size()) +
                       " in dimension " + std::to_string(dim));
  }
  std::vector<MultiIndex::value_type> v;
  for (const auto& e : j) {
    if (!e.is_number_integer()) throw InvalidInput(std::string(what) + ": non-integer frequency");
    v.push_back(e.get<MultiIndex::value_type>());
  }
  return MultiIndex(std::move(v));
}

// --- polynomial -----------------------------------------------------------

inline json to_json(const FourierPolynomial& f) {
  json terms = json::array();
  for (const auto& [k, c] : f.terms()) {
    terms.push_back({{"k", to_json(k)}, {"re", c.real()}, {"im", c.imag()}});
  }
  return {{"dim", f.dim()}, {"terms", terms}};
}

inline FourierPolynomial polynomial_from_json(const json& j) {
  constexpr const char* what = "polynomial";
  const std::size_t dim = detail::dim_field(j, what);
  const auto& terms = detail::field(j, "terms", what);
  if (!terms.is_array()) throw InvalidInput("polynomial: \"terms\" must be an array");
  FourierPolynomial f(dim);
  std::set<MultiIndex> seen;
  for (const auto& t : terms) {
    MultiIndex k = multi_index_from_json(detail::field(t, "k", what), dim, what);
    if (!seen.insert(k).second) throw InvalidInput("polynomial: duplicate key " + to_string(k));
    f.set(k, complex_from_json(t, what));
  }
  return f;
}

// --- pattern --------------------------------------------------------------

inline json to_json(const InvariancePattern& p) {
  return {{"dim", p.dim()}, {"groups", p.one_based_groups()}};
}

inline InvariancePattern pattern_from_json(const json& j) {
  constexpr const char* what = "pattern";
  const std::size_t dim = detail::dim_field(j, what);
  std::vector<std::vector<long long>> groups;
  if (j.contains("groups")) {
    const auto& g = j.at("groups");
    if (!g.is_array()) throw InvalidInput("pattern: \"groups\" must be an array");
    for (const auto& group : g) {
      if (!group.is_array()) throw InvalidInput("pattern: each group must be an array");
      std::vector<long long> coords;
      for (const auto& c : group) {
        if (!c.is_number_integer()) throw InvalidInput("pattern: non-integer coordinate");
        coords.push_back(c.get<long long>());
      }
      groups.push_back(std::move(coords));
    }
  }
  return InvariancePattern::from_one_based(dim, groups);
}

// --- rule -----------------------------------------------------------------

inline json to_json(const CubatureRule& rule) {
  json nodes = json::array();
  json weights = json::array();
  for (std::size_t n = 0; n < rule.size(); ++n) {
    const auto t = rule.node(n);
    nodes.push_back(std::vector<double>(t.begin(), t.end()));
    weights.push_back(complex_to_json(rule.weight(n)));
  }
  return {{"dim", rule.dim()}, {"nodes", nodes}, {"weights", weights}};
}

inline CubatureRule rule_from_json(const json& j) {
  constexpr const char* what = "rule";
  const std::size_t dim = detail::dim_field(j, what);
  const auto& nodes_j = detail::field(j, "nodes", what);
  const auto& weights_j = detail::field(j, "weights", what);
  if (!nodes_j.is_array() || !weights_j.is_array()) {
    throw InvalidInput("rule: \"nodes\" and \"weights\" must be arrays");
  }
  std::vector<std::vector<double>> nodes;
  for (const auto& t : nodes_j) {
    if (!t.is_array() || t.size() != dim) {
      throw InvalidInput("rule: every node must be an array of " + std::to_string(dim) + " reals");
    }
    std::vector<double> x;
    for (const auto& c : t) {
      if (!c.is_number()) throw InvalidInput("rule: non-numeric node coordinate");
      x.push_back(c.get<double>());
    }
    nodes.push_back(std::move(x));
  }
  std::vector<Complex> weights;
  for (const auto& w : weights_j) weights.push_back(complex_from_json(w, what));
  return {dim, nodes, std::move(weights)};
}

// --- weights --------------------------------------------------------------

inline json to_json(const WeightSchedule& w) { return {{"dim", w.dim()}, {"gammas", w.gammas()}}; }

inline WeightSchedule weights_from_json(const json& j) {
  constexpr const char* what = "weights";
  const std::size_t dim = detail::dim_field(j, what);
  const auto& g = detail::field(j, "gammas", what);
  if (!g.is_array() || g.size() != dim) {
    throw InvalidInput("weights: \"gammas\" must be an array of " + std::to_string(dim) + " reals");
  }
  std::vector<double> gammas;
  for (const auto& v : g) {
    if (!v.is_number()) throw InvalidInput("weights: non-numeric gamma");
    gammas.push_back(v.get<double>());
  }
  return WeightSchedule(std::move(gammas));
}

// --- profile --------------------------------------------------------------

inline InvarianceProfile profile_from_json(const json& j) {
  const auto& s = detail::field(j, "samples", "profile");
  if (!s.is_array()) throw InvalidInput("profile: \"samples\" must be an array");
  std::vector<ProfileSample> samples;
  for (const auto& pair : s) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer() ||
        !pair[1].is_number_integer() || pair[0].get<long long>() < 1 || pair[1].get<long long>() < 0) {
      throw InvalidInput("profile: every sample must be [d, #I_d] with d >= 1, #I_d >= 0");
    }
    samples.push_back({pair[0].get<std::size_t>(), pair[1].get<std::size_t>()});
  }
  std::string tag;
  if (j.contains("tag") && j.at("tag").is_string()) tag = j.at("tag").get<std::string>();
  return InvarianceProfile(std::move(samples), std::move(tag));
}

// --- reports --------------------------------------------------------------

inline json to_json(const FoolingCertificate& cert) {
  json psi = json::array();
  for (const auto& k : cert.psi) psi.push_back(to_json(k));
  json a = json::array();
  for (const auto& v : cert.a) a.push_back(complex_to_json(v));
  json out = {
      {"polynomial", to_json(cert.f)},
      {"alpha", cert.alpha},
      {"rule_size", cert.rule_size},
      {"psi", psi},
      {"a", a},
      {"n_star_index", cert.n_star_index},
      {"rule_value", complex_to_json(cert.rule_value)},
      {"integral_value", complex_to_json(cert.integral_value)},
      {"norm_value", cert.norm_value},
      {"witnessed_error", cert.witnessed_error()},
      {"residuals",
       {{"nullspace", cert.residuals.nullspace},
        {"rule", cert.residuals.rule},
        {"integral", cert.residuals.integral},
        {"norm_excess", cert.residuals.norm_excess}}},
      {"support_ok", cert.support_ok},
      {"invariant_ok", cert.invariant_ok},
      {"valid", cert.valid},
  };
  if (cert.weighted) {
    out["weighted"] = {{"scale", cert.weighted->scale},
                       {"nu_n", cert.weighted->nu_n},
                       {"unit_ball_excess", cert.weighted->unit_ball_excess},
                       {"unit_ball_ok", cert.weighted->unit_ball_ok},
                       {"integral_ok", cert.weighted->integral_ok}};
  }
  return out;
}

inline json to_json(const ErrorReport& r) {
  return {{"closed_form", r.closed_form},
          {"oracle_value", r.oracle_value},
          {"tail_bound", r.tail_bound},
          {"oracle_terms", r.oracle_terms}};
}

inline json to_json(const TractabilityReport& r) {
  json samples = json::array();
  for (std::size_t i = 0; i < r.samples.size(); ++i) {
    samples.push_back({{"d", r.samples[i].dim},
                       {"invariant", r.samples[i].invariant},
                       {"b", r.samples[i].dim - r.samples[i].invariant},
                       {"n_star", r.n_star_values[i].str()}});
  }
  json ratios = json::array();
  for (std::size_t g = 0; g < r.st_grid.size(); ++g) {
    ratios.push_back({{"s", r.st_grid[g].first}, {"t", r.st_grid[g].second}, {"ratios", r.log_ratios[g]}});
  }
  json verdicts = json::array();
  for (const auto& v : r.verdicts) {
    verdicts.push_back({{"notion", v.notion}, {"verdict", to_string(v.verdict)}, {"statistic", v.statistic}});
  }
  return {{"samples", samples},
          {"reference_epsilon", kReferenceEpsilon},
          {"log_ratios", ratios},
          {"max_b_over_ln_d", r.max_log_ratio_b_over_ln_d},
          {"tail_loglog_slope", r.tail_loglog_slope},
          {"verdicts", verdicts}};
}

// --- files ----------------------------------------------------------------

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidInput("malformed JSON in '" + path + "': " + e.what());
  }
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write '" + path + "'");
  out << text;
}

}  // namespace symquad::io
