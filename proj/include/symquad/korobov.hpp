#pragma once

/**
 * @file korobov.hpp
 * @brief Trigonometric polynomials on the torus and the Korobov-space quantities
 *        built on them.
 *
 * A function f on [0,1)^d is represented by its finitely many nonzero Fourier
 * coefficients, f(x) = sum_k c_k exp(2 pi i k.x). For such f the Korobov norm
 *
 *     ||f|| = max_k |c_k| * (prod_m max(1, |k_m|))^alpha
 *
 * and the integral (the coefficient at k = 0) are exact finite computations.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <map>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "symquad/errors.hpp"

namespace symquad {

using Complex = std::complex<double>;

/// Frequency vector k in Z^d.
class MultiIndex {
 public:
  using value_type = std::int64_t;
  static constexpr value_type kDefaultCap = 2147483647;  // 2^31 - 1

  explicit MultiIndex(std::vector<value_type> entries, value_type cap = kDefaultCap)
      : entries_(std::move(entries)) {
    if (entries_.empty()) throw InvalidInput("MultiIndex: dimension must be at least 1");
    for (auto v : entries_) {
      if (v > cap || v < -cap) {
        throw OverflowError("MultiIndex: entry " + std::to_string(v) + " exceeds magnitude cap");
      }
    }
  }
  MultiIndex(std::initializer_list<value_type> entries)
      : MultiIndex(std::vector<value_type>(entries)) {}

  static MultiIndex zeros(std::size_t dim) { return MultiIndex(std::vector<value_type>(dim, 0)); }

  std::size_t dim() const noexcept { return entries_.size(); }
  value_type operator[](std::size_t m) const { return entries_[m]; }
  std::span<const value_type> entries() const noexcept { return entries_; }
  auto begin() const noexcept { return entries_.begin(); }
  auto end() const noexcept { return entries_.end(); }

  bool is_zero() const noexcept {
    return std::all_of(entries_.begin(), entries_.end(), [](value_type v) { return v == 0; });
  }

  /// Number of nonzero entries.
  std::size_t support_size() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(entries_.begin(), entries_.end(), [](value_type v) { return v != 0; }));
  }

  MultiIndex operator-() const {
    std::vector<value_type> out(entries_.size());
    std::transform(entries_.begin(), entries_.end(), out.begin(), [](value_type v) { return -v; });
    return MultiIndex(std::move(out));
  }

  friend MultiIndex operator+(const MultiIndex& a, const MultiIndex& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch(a.dim(), b.dim());
    std::vector<value_type> out(a.dim());
    for (std::size_t m = 0; m < a.dim(); ++m) out[m] = a[m] + b[m];
    return MultiIndex(std::move(out));
  }
  friend MultiIndex operator-(const MultiIndex& a, const MultiIndex& b) { return a + (-b); }

  friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;
  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

 private:
  std::vector<value_type> entries_;
};

inline std::string to_string(const MultiIndex& k) {
  std::string s = "(";
  for (std::size_t m = 0; m < k.dim(); ++m) {
    if (m) s += ",";
    s += std::to_string(k[m]);
  }
  return s + ")";
}

/// Smoothness parameter alpha > 1.
class Smoothness {
 public:
  explicit Smoothness(double alpha) : alpha_(alpha) {
    if (!(alpha > 1.0) || !std::isfinite(alpha)) {
      throw DomainError("smoothness alpha must be a finite real > 1");
    }
  }
  double value() const noexcept { return alpha_; }

 private:
  double alpha_;
};

/// Finitely supported Fourier series. Keys are kept in lexicographic order and
/// zero coefficients are never stored.
class FourierPolynomial {
 public:
  using Terms = std::map<MultiIndex, Complex>;

  explicit FourierPolynomial(std::size_t dim) : dim_(dim) {
    if (dim == 0) throw InvalidInput("FourierPolynomial: dimension must be at least 1");
  }

  static FourierPolynomial constant(std::size_t dim, Complex c) {
    FourierPolynomial f(dim);
    f.set(MultiIndex::zeros(dim), c);
    return f;
  }

  static FourierPolynomial monomial(const MultiIndex& k, Complex c = 1.0) {
    FourierPolynomial f(k.dim());
    f.set(k, c);
    return f;
  }

  std::size_t dim() const noexcept { return dim_; }
  const Terms& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }

  Complex coefficient(const MultiIndex& k) const {
    check_dim(k);
    auto it = terms_.find(k);
    return it == terms_.end() ? Complex{} : it->second;
  }

  /// Overwrites the coefficient at k; a zero value removes the term.
  void set(const MultiIndex& k, Complex c) {
    check_dim(k);
    if (c == Complex{}) {
      terms_.erase(k);
    } else {
      terms_.insert_or_assign(k, c);
    }
  }

  /// Adds c to the coefficient at k.
  void add(const MultiIndex& k, Complex c) {
    check_dim(k);
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (!inserted) it->second += c;
    if (it->second == Complex{}) terms_.erase(it);
  }

  FourierPolynomial scaled(Complex c) const {
    FourierPolynomial out(dim_);
    for (const auto& [k, v] : terms_) out.set(k, c * v);
    return out;
  }

  /// Sum of coefficient moduli; bounds sup |f| on the torus.
  double l1_coefficients() const {
    double s = 0.0;
    for (const auto& [k, v] : terms_) s += std::abs(v);
    return s;
  }

 private:
  void check_dim(const MultiIndex& k) const {
    if (k.dim() != dim_) throw DimensionMismatch(dim_, k.dim());
  }

  std::size_t dim_;
  Terms terms_;
};

// ---------------------------------------------------------------------------
// Riemann zeta on the real axis s > 1
// ---------------------------------------------------------------------------

namespace detail {

// B_{2j} / (2j)! for j = 1..9.
inline constexpr std::array<double, 9> kBernoulliOverFactorial = {
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40320.0,
    5.0 / 66.0 / 3628800.0,
    -691.0 / 2730.0 / 479001600.0,
    7.0 / 6.0 / 87178291200.0,
    -3617.0 / 510.0 / 20922789888000.0,
    43867.0 / 798.0 / 6402373705728000.0,
};

struct ZetaEstimate {
  double value;
  double error_bound;
};

// Euler-Maclaurin summation with the partial sum cut at `cutoff`; the last
// Bernoulli slot only serves as the remainder bound.
inline ZetaEstimate zeta_euler_maclaurin(double s, std::uint64_t cutoff) {
  const double M = static_cast<double>(cutoff);
  double head = 0.0;
  for (std::uint64_t m = cutoff - 1; m >= 1; --m) head += std::pow(static_cast<double>(m), -s);

  double tail = std::pow(M, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(M, -s);
  double rising = s;                 // s (s+1) ... (s+2j-2)
  double power = std::pow(M, -s - 1.0);
  const std::size_t used = kBernoulliOverFactorial.size() - 1;
  for (std::size_t j = 0; j < used && power > 0.0; ++j) {
    tail += kBernoulliOverFactorial[j] * rising * power;
    rising *= (s + 2.0 * j + 1.0) * (s + 2.0 * j + 2.0);
    power /= M * M;
  }
  const double remainder =
      power > 0.0 ? std::abs(kBernoulliOverFactorial[used] * rising * power) : 0.0;
  return {head + tail, remainder};
}

}  // namespace detail

/**
 * Riemann zeta(alpha) = sum_{m>=1} m^{-alpha} for real alpha > 1, within
 * absolute error tol.
 *
 * The partial sum is closed by an Euler-Maclaurin tail; the cutoff doubles
 * until the remainder bound of the tail expansion drops below tol/2.
 */
inline double zeta(double alpha, double tol) {
  if (!(alpha > 1.0) || !std::isfinite(alpha)) throw DomainError("zeta: alpha must be > 1");
  if (!(tol > 0.0)) throw DomainError("zeta: tol must be > 0");
  std::uint64_t cutoff = 8;
  for (;;) {
    const auto est = detail::zeta_euler_maclaurin(alpha, cutoff);
    if (est.error_bound <= 0.5 * tol || cutoff >= (std::uint64_t{1} << 20)) return est.value;
    cutoff *= 2;
  }
}

/// (prod_m max(1,|k_m|))^alpha; the integer product is formed exactly.
inline double korobov_weight(const MultiIndex& k, Smoothness alpha) {
  std::uint64_t product = 1;
  for (auto v : k) {
    const std::uint64_t bar = v == 0 ? 1 : static_cast<std::uint64_t>(v < 0 ? -v : v);
    if (__builtin_mul_overflow(product, bar, &product)) {
      throw OverflowError("korobov_weight: integer product overflows for " + to_string(k));
    }
  }
  return std::pow(static_cast<double>(product), alpha.value());
}

/// exp(2 pi i * turns), exact at multiples of a quarter turn.
inline Complex unit_root(double turns) {
  const double r = turns - std::nearbyint(turns);  // [-1/2, 1/2]
  if (r == 0.0) return {1.0, 0.0};
  if (r == 0.5 || r == -0.5) return {-1.0, 0.0};
  if (r == 0.25) return {0.0, 1.0};
  if (r == -0.25) return {0.0, -1.0};
  const double theta = 2.0 * std::numbers::pi * r;
  return {std::cos(theta), std::sin(theta)};
}

/// k.x reduced modulo 1 term by term.
inline double phase_turns(std::span<const MultiIndex::value_type> k, std::span<const double> x) {
  double phase = 0.0;
  for (std::size_t m = 0; m < k.size(); ++m) {
    if (k[m] == 0) continue;
    double p = static_cast<double>(k[m]) * x[m];
    phase += p - std::nearbyint(p);
  }
  return phase;
}

/// f(x), summed over the terms in lexicographic key order.
inline Complex eval(const FourierPolynomial& f, std::span<const double> x) {
  if (x.size() != f.dim()) throw DimensionMismatch(f.dim(), x.size());
  Complex sum{};
  for (const auto& [k, c] : f.terms()) sum += c * unit_root(phase_turns(k.entries(), x));
  return sum;
}

inline double korobov_norm(const FourierPolynomial& f, Smoothness alpha) {
  double norm = 0.0;
  for (const auto& [k, c] : f.terms()) norm = std::max(norm, std::abs(c) * korobov_weight(k, alpha));
  return norm;
}

/// Integral over [0,1]^d, i.e. the zero-frequency coefficient.
inline Complex integral(const FourierPolynomial& f) {
  return f.coefficient(MultiIndex::zeros(f.dim()));
}

}  // namespace symquad
