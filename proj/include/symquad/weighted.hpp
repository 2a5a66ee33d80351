#pragma once

/**
 * @file weighted.hpp
 * @brief Product weights on invariant Korobov spaces.
 *
 * For product weights gamma_1 >= ... >= gamma_d and a single invariance group I,
 * the effective weight of a frequency k is the smallest product weight over
 * its orbit,
 *
 *     mu(k) = min_sigma prod_{m in supp(sigma k)} gamma_m,
 *
 * which takes the #(supp k ∩ I) smallest in-group gammas and the out-of-group
 * gammas on the support. Sorting the canonical 0/1 indices by mu gives the
 * non-increasing sequence nu_0 >= nu_1 >= ...; nu_N bounds the N-th minimal
 * error from below for every N < N*.
 *
 * The schedule is templated on the scalar so exact rational weights can be
 * checked alongside the binary64 path.
 */

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "symquad/errors.hpp"
#include "symquad/fooling.hpp"
#include "symquad/korobov.hpp"
#include "symquad/symmetry.hpp"

namespace symquad {

template <typename Real>
class BasicWeightSchedule {
 public:
  explicit BasicWeightSchedule(std::vector<Real> gammas) : gammas_(std::move(gammas)) {
    if (gammas_.empty()) throw InvalidInput("WeightSchedule: dimension must be at least 1");
    if (gammas_.front() > Real(1)) throw InvalidInput("WeightSchedule: gamma_1 exceeds 1");
    if (gammas_.back() < Real(0)) throw InvalidInput("WeightSchedule: negative gamma");
    for (std::size_t m = 1; m < gammas_.size(); ++m) {
      if (gammas_[m] > gammas_[m - 1]) {
        throw InvalidInput("WeightSchedule: gammas must be non-increasing (position " +
                           std::to_string(m + 1) + ")");
      }
    }
  }

  std::size_t dim() const noexcept { return gammas_.size(); }
  const Real& operator[](std::size_t m) const { return gammas_[m]; }
  const std::vector<Real>& gammas() const noexcept { return gammas_; }

 private:
  std::vector<Real> gammas_;
};

using WeightSchedule = BasicWeightSchedule<double>;

namespace detail {

template <typename Real>
void require_weight_setting(const InvariancePattern& p, const BasicWeightSchedule<Real>& w) {
  if (!p.single_group()) throw Unsupported("product weights support a single invariance group only");
  if (w.dim() != p.dim()) throw DimensionMismatch(p.dim(), w.dim());
}

}  // namespace detail

/// Effective weight of k (only its support matters).
template <typename Real>
Real mu(const MultiIndex& k, const InvariancePattern& p, const BasicWeightSchedule<Real>& w) {
  detail::require_weight_setting(p, w);
  if (k.dim() != p.dim()) throw DimensionMismatch(p.dim(), k.dim());
  Real product(1);
  std::size_t in_group = 0;
  for (std::size_t m = 0; m < k.dim(); ++m) {
    if (k[m] == 0) continue;
    if (p.group_of(m) >= 0) {
      ++in_group;
    } else {
      product *= w[m];
    }
  }
  if (in_group > 0) {
    // Group coordinates ascend, so their gammas descend: take them from the back.
    const auto& group = p.groups().front();
    for (std::size_t i = 0; i < in_group; ++i) product *= w[group[group.size() - 1 - i]];
  }
  return product;
}

template <typename Real>
struct BasicOrderedWeights {
  std::vector<MultiIndex> psi;  // canonical indices by non-increasing weight
  std::vector<Real> nu;         // nu[n] = mu(psi[n])
};

using OrderedWeights = BasicOrderedWeights<double>;

/// Canonical indices sorted by weight, descending; ties stay lexicographic.
template <typename Real>
BasicOrderedWeights<Real> order_weights(const InvariancePattern& p,
                                        const BasicWeightSchedule<Real>& w,
                                        std::size_t cap = kDefaultEnumerationCap) {
  detail::require_weight_setting(p, w);
  auto nabla = enumerate_nabla(p, cap);
  std::vector<std::pair<Real, std::size_t>> keyed;
  keyed.reserve(nabla.size());
  for (std::size_t i = 0; i < nabla.size(); ++i) keyed.emplace_back(mu(nabla[i], p, w), i);
  std::stable_sort(keyed.begin(), keyed.end(),
                   [](const auto& x, const auto& y) { return x.first > y.first; });
  BasicOrderedWeights<Real> out;
  out.psi.reserve(nabla.size());
  out.nu.reserve(nabla.size());
  for (auto& [value, i] : keyed) {
    out.psi.push_back(nabla[i]);
    out.nu.push_back(value);
  }
  return out;
}

/// nu_N, the lower bound on the N-th minimal error (N < N*).
template <typename Real>
Real lower_bound(std::size_t n, const InvariancePattern& p, const BasicWeightSchedule<Real>& w) {
  detail::require_weight_setting(p, w);
  if (BigInt(n) >= n_star(p)) {
    throw Refusal("lower_bound: N = " + std::to_string(n) + " is not below N* = " + n_star(p).str(),
                  n);
  }
  return order_weights(p, w).nu[n];
}

/**
 * Weighted fooling function g_N = sqrt(mu(psi(N)) mu(psi(n*))) f_N with psi the
 * weight ordering. Throws if some support frequency k violates
 * mu(psi(N)) mu(psi(n*)) <= mu(k), which would contradict the construction.
 */
inline FoolingCertificate weighted_construct(const CubatureRule& rule, const InvariancePattern& p,
                                             Smoothness alpha, const WeightSchedule& w,
                                             double residual_tol = kDefaultNullspaceTolerance) {
  detail::require_weight_setting(p, w);
  detail::require_below_n_star(rule, p);
  const auto ordered = order_weights(p, w);
  const std::size_t n = rule.size();
  std::vector<MultiIndex> psi(ordered.psi.begin(), ordered.psi.begin() + static_cast<long>(n + 1));
  FoolingCertificate cert = construct_with_psi(rule, p, alpha, psi, residual_tol);

  const double product = ordered.nu[n] * mu(cert.psi[cert.n_star_index], p, w);
  WeightedCheck check;
  check.scale = std::sqrt(product);
  check.nu_n = ordered.nu[n];
  cert.f = cert.f.scaled(check.scale);

  for (const auto& [k, c] : cert.f.terms()) {
    const double mu_k = mu(k, p, w);
    if (product > mu_k + 1e-12) {
      throw NumericalFailure("weighted_construct: weight estimate violated at " + to_string(k),
                             product - mu_k);
    }
    const double scaled = std::abs(c) * korobov_weight(k, alpha);
    if (mu_k == 0.0) {
      check.unit_ball_ok = check.unit_ball_ok && std::abs(c) <= 1e-12;
      check.unit_ball_excess = std::max(check.unit_ball_excess, std::abs(c));
    } else {
      const double excess = scaled - std::sqrt(mu_k);
      check.unit_ball_excess = std::max(check.unit_ball_excess, excess);
      check.unit_ball_ok = check.unit_ball_ok && excess <= kCertificateTolerance;
    }
  }

  verify_certificate(cert, rule, p, Complex(check.scale));
  check.integral_ok = cert.integral_value.real() >= check.nu_n - kCertificateTolerance;
  cert.valid = cert.residuals.rule <= kCertificateTolerance * (1.0 + cert.weight_l1) &&
               cert.residuals.integral <= kCertificateTolerance && cert.support_ok &&
               cert.invariant_ok && check.unit_ball_ok && check.integral_ok;
  cert.weighted = check;
  return cert;
}

struct SupermultiplicativityReport {
  bool passed = true;
  std::size_t pairs_checked = 0;
  std::size_t frequencies_checked = 0;
  struct Counterexample {
    std::size_t n;
    std::size_t n_star;
    MultiIndex k;
    double lhs;  // mu(psi(n)) mu(psi(n*))
    double rhs;  // mu(k)
  };
  std::optional<Counterexample> counterexample;
};

/**
 * Exhaustive check of mu(psi(n)) mu(psi(n*)) <= mu(k) for every pair of
 * canonical indices and every k = lambda(psi(n)) - sigma(psi(n*)), with lambda
 * and sigma running over the whole group.
 */
inline SupermultiplicativityReport supermultiplicativity_check(const InvariancePattern& p,
                                                               const WeightSchedule& w,
                                                               std::size_t max_d) {
  detail::require_weight_setting(p, w);
  if (max_d > 6) throw CapExceeded("supermultiplicativity_check: max_d must be at most 6");
  if (p.dim() > max_d) {
    throw CapExceeded("supermultiplicativity_check: dimension " + std::to_string(p.dim()) +
                      " above max_d " + std::to_string(max_d));
  }
  const auto ordered = order_weights(p, w);
  std::vector<std::vector<MultiIndex>> images(ordered.psi.size());
  for (std::size_t n = 0; n < ordered.psi.size(); ++n) {
    std::set<MultiIndex> distinct;
    detail::for_each_group_image(ordered.psi[n], p, [&](const MultiIndex& k) { distinct.insert(k); });
    images[n].assign(distinct.begin(), distinct.end());
  }

  SupermultiplicativityReport report;
  for (std::size_t n = 0; n < ordered.psi.size(); ++n) {
    for (std::size_t s = 0; s < ordered.psi.size(); ++s) {
      const double lhs = ordered.nu[n] * ordered.nu[s];
      ++report.pairs_checked;
      for (const auto& h : images[n]) {
        for (const auto& q : images[s]) {
          const MultiIndex k = h - q;
          const double rhs = mu(k, p, w);
          ++report.frequencies_checked;
          if (lhs > rhs + 1e-12 && report.passed) {
            report.passed = false;
            report.counterexample = SupermultiplicativityReport::Counterexample{n, s, k, lhs, rhs};
          }
        }
      }
    }
  }
  return report;
}

struct KappaSum {
  double brute;
  double closed;
  bool closed_applies;  // all in-group gammas equal 1
};

/**
 * sum over canonical indices of mu^kappa, next to the product formula
 * (#I + 1) prod_{m outside I} (1 + gamma_m^kappa) valid when in-group gammas are 1.
 */
inline KappaSum kappa_sum(const InvariancePattern& p, const WeightSchedule& w, double kappa,
                          std::size_t cap = kDefaultEnumerationCap) {
  detail::require_weight_setting(p, w);
  if (!(kappa > 0.0)) throw DomainError("kappa_sum: kappa must be > 0");
  double brute = 0.0;
  for (const auto& k : enumerate_nabla(p, cap)) brute += std::pow(mu(k, p, w), kappa);

  bool applies = true;
  double closed = static_cast<double>(p.invariant_count() + 1);
  for (std::size_t m = 0; m < p.dim(); ++m) {
    if (p.group_of(m) >= 0) {
      applies = applies && w[m] == 1.0;
    } else {
      closed *= 1.0 + std::pow(w[m], kappa);
    }
  }
  return {brute, closed, applies};
}

}  // namespace symquad
