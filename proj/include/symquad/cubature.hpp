#pragma once

/**
 * @file cubature.hpp
 * @brief Linear cubature rules A(f) = sum_n w_n f(t_n), the 2^d-point rectangle
 *        rule on the half-grid, its folded N*-point form for invariant
 *        integrands, and the rectangle rule's worst-case error.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

#include "symquad/errors.hpp"
#include "symquad/korobov.hpp"
#include "symquad/symmetry.hpp"

namespace symquad {

class CubatureRule {
 public:
  /// The zero algorithm (no nodes) in dimension dim.
  explicit CubatureRule(std::size_t dim) : dim_(dim) {
    if (dim == 0) throw InvalidInput("CubatureRule: dimension must be at least 1");
  }

  CubatureRule(std::size_t dim, const std::vector<std::vector<double>>& nodes,
               std::vector<Complex> weights)
      : CubatureRule(dim) {
    if (nodes.size() != weights.size()) {
      throw InvalidInput("CubatureRule: " + std::to_string(nodes.size()) + " nodes but " +
                         std::to_string(weights.size()) + " weights");
    }
    coords_.reserve(nodes.size() * dim);
    for (const auto& t : nodes) {
      if (t.size() != dim) throw DimensionMismatch(dim, t.size());
      for (double x : t) {
        if (!(x >= 0.0 && x < 1.0)) {
          throw InvalidInput("CubatureRule: node coordinate " + std::to_string(x) +
                             " outside [0,1)");
        }
        coords_.push_back(x);
      }
    }
    weights_ = std::move(weights);
  }

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return weights_.size(); }
  std::span<const double> node(std::size_t n) const {
    return std::span<const double>(coords_).subspan(n * dim_, dim_);
  }
  Complex weight(std::size_t n) const { return weights_[n]; }
  const std::vector<Complex>& weights() const noexcept { return weights_; }

  double weight_l1() const {
    double s = 0.0;
    for (auto w : weights_) s += std::abs(w);
    return s;
  }

 private:
  std::size_t dim_;
  std::vector<double> coords_;  // row-major, size() x dim()
  std::vector<Complex> weights_;
};

/// Worker count for apply(): hardware concurrency, limited by SYMQUAD_THREADS.
inline unsigned default_thread_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("SYMQUAD_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(v));
  }
  return n;
}

/**
 * A(f) = sum_n w_n f(t_n).
 *
 * Nodes are reduced in fixed blocks whose partial sums are combined in block
 * order, so the result is bit-identical for every thread count.
 */
inline Complex apply(const CubatureRule& rule, const FourierPolynomial& f,
                     unsigned threads = default_thread_count()) {
  if (rule.dim() != f.dim()) throw DimensionMismatch(rule.dim(), f.dim());
  const std::size_t n_nodes = rule.size();
  if (n_nodes == 0) return {};

  std::vector<std::vector<MultiIndex::value_type>> keys;
  std::vector<Complex> coeffs;
  for (const auto& [k, c] : f.terms()) {
    keys.emplace_back(k.begin(), k.end());
    coeffs.push_back(c);
  }
  auto node_value = [&](std::size_t n) {
    const auto t = rule.node(n);
    Complex v{};
    for (std::size_t j = 0; j < keys.size(); ++j) v += coeffs[j] * unit_root(phase_turns(keys[j], t));
    return rule.weight(n) * v;
  };

  constexpr std::size_t kBlock = 512;
  const std::size_t n_blocks = (n_nodes + kBlock - 1) / kBlock;
  std::vector<Complex> partial(n_blocks);
  auto run_blocks = [&](std::size_t first, std::size_t stride) {
    for (std::size_t b = first; b < n_blocks; b += stride) {
      Complex s{};
      const std::size_t end = std::min(n_nodes, (b + 1) * kBlock);
      for (std::size_t n = b * kBlock; n < end; ++n) s += node_value(n);
      partial[b] = s;
    }
  };
  const std::size_t workers = std::min<std::size_t>(std::max(1u, threads), n_blocks);
  if (workers <= 1) {
    run_blocks(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run_blocks, w, workers);
  }
  Complex total{};
  for (const auto& s : partial) total += s;
  return total;
}

inline constexpr std::size_t kDefaultRectangleDimCap = 26;

/// Product rectangle rule on {0, 1/2}^d with equal weights 2^-d.
inline CubatureRule rectangle_rule(std::size_t d, std::size_t dim_cap = kDefaultRectangleDimCap) {
  if (d == 0) throw InvalidInput("rectangle_rule: dimension must be at least 1");
  if (d > dim_cap) {
    throw CapExceeded("rectangle_rule: dimension " + std::to_string(d) + " exceeds cap " +
                      std::to_string(dim_cap));
  }
  const std::size_t count = std::size_t{1} << d;
  std::vector<std::vector<double>> nodes(count, std::vector<double>(d));
  for (std::size_t j = 0; j < count; ++j) {
    for (std::size_t m = 0; m < d; ++m) nodes[j][m] = ((j >> (d - 1 - m)) & 1u) ? 0.5 : 0.0;
  }
  return {d, nodes, std::vector<Complex>(count, std::ldexp(1.0, -static_cast<int>(d)))};
}

/// Exact weights of the folded rule: orbit size of each canonical index over 2^d.
struct FoldedWeight {
  MultiIndex index;
  BigInt orbit_size;
};

inline std::vector<FoldedWeight> folded_weights(const InvariancePattern& p,
                                                std::size_t node_cap = kDefaultEnumerationCap) {
  std::vector<FoldedWeight> out;
  for (auto& k : enumerate_nabla(p, node_cap)) {
    auto stats = orbit_stats(k, p);
    out.push_back({std::move(k), std::move(stats.orbit_size)});
  }
  return out;
}

/**
 * One node k/2 per canonical 0/1 index k, weight #orbit(k)/2^d. On invariant
 * integrands this equals the rectangle rule with N* instead of 2^d evaluations.
 */
inline CubatureRule folded_rectangle_rule(const InvariancePattern& p,
                                          std::size_t node_cap = kDefaultEnumerationCap) {
  const std::size_t d = p.dim();
  std::vector<std::vector<double>> nodes;
  std::vector<Complex> weights;
  for (const auto& [k, orbit] : folded_weights(p, node_cap)) {
    std::vector<double> t(d);
    for (std::size_t m = 0; m < d; ++m) t[m] = k[m] ? 0.5 : 0.0;
    nodes.push_back(std::move(t));
    // Rounded once; the power-of-two scaling is exact.
    weights.emplace_back(std::ldexp(orbit.convert_to<double>(), -static_cast<int>(d)));
  }
  return {d, nodes, std::move(weights)};
}

struct ErrorReport {
  double closed_form;
  double oracle_value;
  double tail_bound;
  std::uint64_t oracle_terms;
};

inline constexpr std::uint64_t kWceOracleTermCap = std::uint64_t{1} << 20;

/**
 * Worst-case error of the rectangle rule on the Korobov unit ball,
 * (1 + zeta(alpha) / 2^(alpha-1))^d - 1.
 *
 * The oracle sums the even sublattice directly: per coordinate the nonzero even
 * frequencies contribute 2 * sum_{m<=M} (2m)^-alpha = 2^(1-alpha) zeta_M(alpha),
 * with M = min(2^20, first M whose integral tail is below tol). tail_bound covers
 * the truncated tail, the zeta tolerance and rounding.
 */
inline ErrorReport wce_rectangle(std::size_t d, Smoothness alpha, double tol) {
  if (d == 0) throw InvalidInput("wce_rectangle: dimension must be at least 1");
  if (!(tol > 0.0)) throw DomainError("wce_rectangle: tol must be > 0");
  const double a = alpha.value();
  const double dd = static_cast<double>(d);
  const double scale = std::exp2(1.0 - a);
  const double zeta_tol = tol / (4.0 * dd);

  auto lift = [dd](double x) { return std::expm1(dd * std::log1p(x)); };  // (1+x)^d - 1
  const double closed = lift(scale * zeta(a, zeta_tol));

  const double wanted = std::ceil(std::pow(tol * (a - 1.0), -1.0 / (a - 1.0)));
  const std::uint64_t terms = wanted >= static_cast<double>(kWceOracleTermCap)
                                  ? kWceOracleTermCap
                                  : std::max<std::uint64_t>(1, static_cast<std::uint64_t>(wanted));
  long double partial = 0.0L;
  for (std::uint64_t m = terms; m >= 1; --m) {
    partial += std::pow(static_cast<double>(m), -a);
  }
  const double x_oracle = scale * static_cast<double>(partial);
  const double oracle = lift(x_oracle);
  const double integral_tail = std::pow(static_cast<double>(terms), 1.0 - a) / (a - 1.0);
  const double x_upper = x_oracle + scale * (integral_tail + zeta_tol);
  const double rounding = 8.0 * dd * std::numeric_limits<double>::epsilon() * (1.0 + lift(x_upper));
  const double tail_bound = (lift(x_upper) - oracle) + rounding;
  return {closed, oracle, tail_bound, terms};
}

/// Worst-case error of the zero algorithm: sup over the unit ball of |f^(0)|.
inline double initial_error(Smoothness /*alpha*/) { return 1.0; }

}  // namespace symquad
