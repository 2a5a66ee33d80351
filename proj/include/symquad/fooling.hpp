#pragma once

/**
 * @file fooling.hpp
 * @brief Lower-bound certificates: for a cubature rule with N < N* nodes, an
 *        invariant trigonometric polynomial in the Korobov unit ball that the
 *        rule maps to 0 but whose integral is 1.
 *
 * With psi(0..N) distinct canonical 0/1 indices and a != 0 solving
 *
 *     sum_n a_n (SI e_psi(n))(t_i) / M!(psi(n)) = 0,   i = 1..N,
 *
 * normalized so that a_{n*} = 1 >= max |a_n|, the fooling function is
 *
 *     f_N = #S * SI e_{-psi(n*)} * sum_n a_n SI e_psi(n) / M!(psi(n)).
 *
 * Its coefficients are computed in closed form: for k = h - q with q in the
 * orbit of psi(n*) and h in {0,1}^d, h contributes a_n when canon(h) = psi(n),
 * averaged over the orbit of psi(n*). They live on {-1,0,1}^d, have modulus at
 * most 1, and the zero coefficient is a_{n*} = 1.
 */

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "symquad/cubature.hpp"
#include "symquad/errors.hpp"
#include "symquad/korobov.hpp"
#include "symquad/nullspace.hpp"
#include "symquad/symmetry.hpp"

namespace symquad {

inline constexpr double kCertificateTolerance = 1e-9;

/// Extra checks attached by the weighted construction.
struct WeightedCheck {
  double scale = 1.0;             // sqrt(mu(psi(N)) * mu(psi(n*)))
  double nu_n = 1.0;              // N-th largest weight
  double unit_ball_excess = 0.0;  // max_k |g^(k)| * prod kbar^alpha - sqrt(mu(k))
  bool unit_ball_ok = true;
  bool integral_ok = true;
};

struct FoolingCertificate {
  FourierPolynomial f;
  Complex rule_value;
  Complex integral_value;
  double norm_value = 0.0;
  double alpha = 0.0;
  std::vector<MultiIndex> psi;    // psi(0..N)
  std::vector<Complex> a;
  std::size_t n_star_index = 0;   // n*
  std::size_t rule_size = 0;      // N
  double weight_l1 = 0.0;         // sum |w_n| of the rule

  struct Residuals {
    double nullspace = 0.0;       // ||M a||_inf
    double rule = 0.0;            // |A(f)|
    double integral = 0.0;        // |Int(f) - target|
    double norm_excess = 0.0;     // max(0, ||f|| - 1)
  } residuals;

  bool support_ok = false;        // support within {-1,0,1}^d
  bool invariant_ok = false;
  bool valid = false;
  std::optional<WeightedCheck> weighted;

  /// |Int(f) - A(f)|, the error the rule makes on f.
  double witnessed_error() const { return std::abs(integral_value - rule_value); }
};

namespace detail {

inline void require_single_group(const InvariancePattern& p) {
  if (!p.single_group()) {
    throw Unsupported("fooling construction supports a single invariance group only");
  }
}

inline void require_below_n_star(const CubatureRule& rule, const InvariancePattern& p) {
  if (rule.dim() != p.dim()) throw DimensionMismatch(p.dim(), rule.dim());
  const BigInt bound = n_star(p);
  if (BigInt(rule.size()) >= bound) {
    throw Refusal("rule uses " + std::to_string(rule.size()) + " nodes, N* = " + bound.str() +
                      "; no lower bound applies (the folded rectangle rule attains the upper bound)",
                  rule.size());
  }
}

inline bool in_unit_cube_support(const MultiIndex& k) {
  return std::all_of(k.begin(), k.end(), [](auto v) { return v >= -1 && v <= 1; });
}

}  // namespace detail

/**
 * Row i, column n: (SI e_psi(n))(t_i) / M!(psi(n)) = (1/#S) sum over the orbit of
 * psi(n) of e_k(t_i).
 */
inline ComplexMatrix constraint_matrix(const CubatureRule& rule, const InvariancePattern& p,
                                       const std::vector<MultiIndex>& psi) {
  detail::require_below_n_star(rule, p);
  const std::size_t n = rule.size();
  if (psi.size() != n + 1) {
    throw InvalidInput("constraint_matrix: psi must have N+1 = " + std::to_string(n + 1) +
                       " entries, got " + std::to_string(psi.size()));
  }
  std::set<MultiIndex> seen;
  for (const auto& k : psi) {
    if (k.dim() != p.dim()) throw DimensionMismatch(p.dim(), k.dim());
    if (!std::all_of(k.begin(), k.end(), [](auto v) { return v == 0 || v == 1; }) ||
        canonicalize(k, p) != k) {
      throw InvalidInput("constraint_matrix: psi entry " + to_string(k) +
                         " is not a canonical 0/1 index");
    }
    if (!seen.insert(k).second) throw InvalidInput("constraint_matrix: psi repeats " + to_string(k));
  }

  const double inv_order = 1.0 / group_order(p).convert_to<double>();
  ComplexMatrix m(n, n + 1);
  for (std::size_t col = 0; col <= n; ++col) {
    const auto orbit = orbit_elements(psi[col], p);
    for (std::size_t i = 0; i < n; ++i) {
      const auto t = rule.node(i);
      Complex s{};
      for (const auto& k : orbit) s += unit_root(phase_turns(k.entries(), t));
      m(i, col) = s * inv_order;
    }
  }
  return m;
}

/**
 * Coefficients of f_N from the closed formula. Sums are accumulated unscaled and
 * divided by #orbit(psi(n*)) once, so the zero coefficient is exactly a_{n*}.
 */
inline FourierPolynomial fooling_coefficients(const InvariancePattern& p,
                                              const std::vector<MultiIndex>& psi,
                                              const std::vector<Complex>& a,
                                              std::size_t n_star_index) {
  const auto anchor_orbit = orbit_elements(psi.at(n_star_index), p);
  std::map<MultiIndex, Complex> acc;
  for (std::size_t n = 0; n < psi.size(); ++n) {
    if (a[n] == Complex{}) continue;
    for_each_orbit_element(psi[n], p, [&](const MultiIndex& h) {
      for (const auto& q : anchor_orbit) acc[h - q] += a[n];
    });
  }
  const double orbit = static_cast<double>(anchor_orbit.size());
  FourierPolynomial f(p.dim());
  for (const auto& [k, s] : acc) f.set(k, s / orbit);
  return f;
}

/// Fills the verification fields of a certificate whose f is set.
inline void verify_certificate(FoolingCertificate& cert, const CubatureRule& rule,
                               const InvariancePattern& p, Complex target_integral = 1.0) {
  cert.rule_value = apply(rule, cert.f);
  cert.integral_value = integral(cert.f);
  cert.norm_value = korobov_norm(cert.f, Smoothness(cert.alpha));
  cert.weight_l1 = rule.weight_l1();
  cert.residuals.rule = std::abs(cert.rule_value);
  cert.residuals.integral = std::abs(cert.integral_value - target_integral);
  cert.residuals.norm_excess = std::max(0.0, cert.norm_value - 1.0);
  cert.support_ok = std::all_of(cert.f.terms().begin(), cert.f.terms().end(),
                                [](const auto& t) { return detail::in_unit_cube_support(t.first); });
  cert.invariant_ok = is_invariant(cert.f, p, 1e-10);
  cert.valid = cert.residuals.rule <= kCertificateTolerance * (1.0 + cert.weight_l1) &&
               cert.residuals.integral <= kCertificateTolerance &&
               cert.norm_value <= 1.0 + kCertificateTolerance && cert.support_ok &&
               cert.invariant_ok;
}

/// Fooling construction for a caller-chosen psi prefix of length N+1.
inline FoolingCertificate construct_with_psi(const CubatureRule& rule, const InvariancePattern& p,
                                             Smoothness alpha, std::vector<MultiIndex> psi,
                                             double residual_tol = kDefaultNullspaceTolerance) {
  detail::require_single_group(p);
  const ComplexMatrix m = constraint_matrix(rule, p, psi);
  NullspaceSolution sol = nullspace(m, residual_tol);

  FoolingCertificate cert{.f = fooling_coefficients(p, psi, sol.coefficients, sol.pivot_index)};
  cert.alpha = alpha.value();
  cert.psi = std::move(psi);
  cert.a = std::move(sol.coefficients);
  cert.n_star_index = sol.pivot_index;
  cert.rule_size = rule.size();
  cert.residuals.nullspace = sol.residual;
  verify_certificate(cert, rule, p);
  return cert;
}

/// Fooling construction with psi = the lexicographic prefix of the canonical index set.
inline FoolingCertificate construct(const CubatureRule& rule, const InvariancePattern& p,
                                    Smoothness alpha,
                                    double residual_tol = kDefaultNullspaceTolerance) {
  detail::require_single_group(p);
  detail::require_below_n_star(rule, p);
  return construct_with_psi(rule, p, alpha, nabla_prefix(p, rule.size() + 1), residual_tol);
}

// ---------------------------------------------------------------------------
// Brute-force cross-check of the closed formula
// ---------------------------------------------------------------------------

struct CrosscheckReport {
  double max_deviation;
  std::size_t keys_compared;
};

namespace detail {

/// Calls visit(sigma(k)) for every sigma in the group, with multiplicity.
inline void for_each_group_image(const MultiIndex& k, const InvariancePattern& p,
                                 const std::function<void(const MultiIndex&)>& visit) {
  std::vector<MultiIndex::value_type> img(k.begin(), k.end());
  if (p.groups().empty()) {
    visit(k);
    return;
  }
  const auto& g = p.groups().front();
  std::vector<std::size_t> perm(g.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  do {
    for (std::size_t i = 0; i < g.size(); ++i) img[g[i]] = k[g[perm[i]]];
    visit(MultiIndex(img));
  } while (std::next_permutation(perm.begin(), perm.end()));
}

}  // namespace detail

/**
 * Recomputes f_N as the explicit product of its two factors, expanding every
 * symmetrizer over all group elements and counting stabilizers directly, and
 * reports the largest coefficient deviation from the certificate.
 */
inline CrosscheckReport crosscheck_coefficients(const FoolingCertificate& cert,
                                                const InvariancePattern& p) {
  detail::require_single_group(p);
  if (p.dim() > 8) throw CapExceeded("crosscheck_coefficients: dimension above 8");
  if (group_order(p) > factorial(10)) throw CapExceeded("crosscheck_coefficients: group above 10!");
  const double order = group_order(p).convert_to<double>();

  // #S * SI e_{-psi(n*)} = sum_sigma e_{-sigma(psi(n*))}
  std::map<MultiIndex, Complex> left;
  detail::for_each_group_image(-cert.psi.at(cert.n_star_index), p,
                               [&](const MultiIndex& k) { left[k] += 1.0; });

  // sum_n a_n / M!(psi(n)) * (1/#S) sum_lambda e_{lambda(psi(n))}
  std::map<MultiIndex, Complex> right;
  for (std::size_t n = 0; n < cert.psi.size(); ++n) {
    std::size_t fixers = 0;
    detail::for_each_group_image(cert.psi[n], p,
                                 [&](const MultiIndex& k) { fixers += (k == cert.psi[n]); });
    const Complex c = cert.a[n] / (static_cast<double>(fixers) * order);
    detail::for_each_group_image(cert.psi[n], p, [&](const MultiIndex& k) { right[k] += c; });
  }

  std::map<MultiIndex, Complex> product;
  for (const auto& [kl, cl] : left) {
    for (const auto& [kr, cr] : right) product[kl + kr] += cl * cr;
  }

  double deviation = 0.0;
  std::set<MultiIndex> keys;
  for (const auto& [k, c] : product) keys.insert(k);
  for (const auto& [k, c] : cert.f.terms()) keys.insert(k);
  for (const auto& k : keys) {
    const auto it = product.find(k);
    const Complex brute = it == product.end() ? Complex{} : it->second;
    deviation = std::max(deviation, std::abs(brute - cert.f.coefficient(k)));
  }
  return {deviation, keys.size()};
}

}  // namespace symquad
