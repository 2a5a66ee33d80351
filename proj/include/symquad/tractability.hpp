#pragma once

/**
 * @file tractability.hpp
 * @brief Finite-sample evaluation of the necessary conditions that the N* lower
 *        bound places on tractability, for a sequence of invariance sizes #I_d.
 *
 * Every verdict is a statement about the sampled dimensions only. With
 * b_d = d - #I_d and the samples sorted by d, the last ceil(n/2) samples form
 * the tail and the rest the head:
 *
 *  - strong polynomial: excluded when N* is not constant over the samples.
 *  - polynomial: needs b_d in O(ln d); consistent when the tail maximum of
 *    b_d / ln d is at most 1.25 * max(1, head maximum).
 *  - (s,t)-weak: needs ln N* / (eps^-s + d^t) -> 0 at eps = 1/2; consistent when
 *    that ratio is non-increasing along the tail and strictly smaller at its end.
 *  - uniform weak: consistent when every requested (s,t) is.
 *  - curse: present when b_d / d stays away from 0; consistent when b_d / d is
 *    positive on the tail and its last value keeps at least 90% of its first.
 */

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "symquad/errors.hpp"
#include "symquad/symmetry.hpp"

namespace symquad {

/// Information complexity lower bound n(eps, d) >= N* for eps in (0,1); 0 for eps >= 1.
inline BigInt info_complexity_lower(double epsilon, const InvariancePattern& p) {
  if (!(epsilon > 0.0)) throw DomainError("info_complexity_lower: epsilon must be > 0");
  if (epsilon >= 1.0) return 0;
  return n_star(p);
}

struct ProfileSample {
  std::size_t dim;
  std::size_t invariant;  // #I_d
};

class InvarianceProfile {
 public:
  explicit InvarianceProfile(std::vector<ProfileSample> samples, std::string tag = {})
      : samples_(std::move(samples)), tag_(std::move(tag)) {
    std::sort(samples_.begin(), samples_.end(),
              [](const auto& a, const auto& b) { return a.dim < b.dim; });
    for (std::size_t i = 0; i < samples_.size(); ++i) {
      if (samples_[i].dim == 0) throw InvalidInput("InvarianceProfile: dimension must be >= 1");
      if (samples_[i].invariant > samples_[i].dim) {
        throw InvalidInput("InvarianceProfile: #I_d exceeds d at d = " +
                           std::to_string(samples_[i].dim));
      }
      if (i > 0 && samples_[i].dim == samples_[i - 1].dim) {
        throw InvalidInput("InvarianceProfile: dimension " + std::to_string(samples_[i].dim) +
                           " sampled twice");
      }
    }
  }

  const std::vector<ProfileSample>& samples() const noexcept { return samples_; }
  const std::string& tag() const noexcept { return tag_; }

 private:
  std::vector<ProfileSample> samples_;
  std::string tag_;
};

enum class Verdict { excluded_at_scale, consistent_at_scale, not_evaluable };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::excluded_at_scale: return "excluded at sampled scale";
    case Verdict::consistent_at_scale: return "consistent at sampled scale";
    case Verdict::not_evaluable: return "not evaluable";
  }
  return "";
}

struct NotionVerdict {
  std::string notion;
  Verdict verdict;
  double statistic;  // the number the verdict was read from
};

struct TractabilityReport {
  std::vector<ProfileSample> samples;
  std::vector<BigInt> n_star_values;
  std::vector<std::pair<double, double>> st_grid;
  std::vector<std::vector<double>> log_ratios;  // [grid point][sample]
  double max_log_ratio_b_over_ln_d = 0.0;
  double tail_loglog_slope = 0.0;               // growth exponent of N* in d over the tail
  std::vector<NotionVerdict> verdicts;
};

inline constexpr double kReferenceEpsilon = 0.5;

namespace detail {

inline double big_log(const BigInt& n) {
  // ln n without overflowing double for huge n.
  const std::size_t bits = boost::multiprecision::msb(n) + 1;
  if (bits <= 1000) return std::log(n.convert_to<double>());
  const std::size_t shift = bits - 64;
  return std::log((n >> shift).convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

inline std::string weak_name(double s, double t) {
  std::ostringstream os;
  os << "weak(" << s << "," << t << ")";
  return os.str();
}

}  // namespace detail

inline TractabilityReport evaluate(const InvarianceProfile& profile,
                                   const std::vector<std::pair<double, double>>& st_grid) {
  for (const auto& [s, t] : st_grid) {
    if (!(s > 0.0 && s <= 1.0 && t > 0.0 && t <= 1.0)) {
      throw DomainError("evaluate: (s,t) must lie in (0,1]^2");
    }
  }
  TractabilityReport report;
  report.samples = profile.samples();
  report.st_grid = st_grid;
  const std::size_t n = report.samples.size();

  std::vector<double> log_n(n), b(n), dims(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& smp = report.samples[i];
    report.n_star_values.push_back(n_star(InvariancePattern::leading(smp.dim, smp.invariant)));
    log_n[i] = detail::big_log(report.n_star_values.back());
    b[i] = static_cast<double>(smp.dim - smp.invariant);
    dims[i] = static_cast<double>(smp.dim);
  }
  for (const auto& [s, t] : st_grid) {
    std::vector<double> row(n);
    for (std::size_t i = 0; i < n; ++i) {
      row[i] = log_n[i] / (std::pow(kReferenceEpsilon, -s) + std::pow(dims[i], t));
    }
    report.log_ratios.push_back(std::move(row));
  }

  auto push = [&](std::string name, Verdict v, double stat) {
    report.verdicts.push_back({std::move(name), v, stat});
  };
  if (n < 3) {
    push("strong_polynomial", Verdict::not_evaluable, 0.0);
    push("polynomial", Verdict::not_evaluable, 0.0);
    for (const auto& [s, t] : st_grid) {
      push(detail::weak_name(s, t), Verdict::not_evaluable, 0.0);
    }
    push("uniform_weak", Verdict::not_evaluable, 0.0);
    push("curse", Verdict::not_evaluable, 0.0);
    return report;
  }

  const std::size_t tail_start = n / 2;  // tail has ceil(n/2) samples

  const bool n_star_constant = std::all_of(report.n_star_values.begin(), report.n_star_values.end(),
                                           [&](const BigInt& v) { return v == report.n_star_values.front(); });
  push("strong_polynomial",
       n_star_constant ? Verdict::consistent_at_scale : Verdict::excluded_at_scale,
       log_n.back() - log_n.front());

  // b_d / ln d; d = 1 carries no information (ln 1 = 0).
  double head_max = 0.0, tail_max = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double ratio = dims[i] > 1.0 ? b[i] / std::log(dims[i]) : 0.0;
    double& slot = i < tail_start ? head_max : tail_max;
    slot = std::max(slot, ratio);
  }
  report.max_log_ratio_b_over_ln_d = std::max(head_max, tail_max);
  push("polynomial",
       tail_max <= 1.25 * std::max(1.0, head_max) ? Verdict::consistent_at_scale
                                                  : Verdict::excluded_at_scale,
       report.max_log_ratio_b_over_ln_d);

  if (n - tail_start >= 2 && dims.back() > dims[tail_start]) {
    report.tail_loglog_slope = (log_n.back() - log_n[tail_start]) /
                               (std::log(dims.back()) - std::log(dims[tail_start]));
  }

  bool all_weak = true;
  for (std::size_t g = 0; g < st_grid.size(); ++g) {
    const auto& row = report.log_ratios[g];
    bool decreasing = row.back() < row[tail_start];
    for (std::size_t i = tail_start + 1; i < n; ++i) decreasing = decreasing && row[i] <= row[i - 1];
    all_weak = all_weak && decreasing;
    push(detail::weak_name(st_grid[g].first, st_grid[g].second),
         decreasing ? Verdict::consistent_at_scale : Verdict::excluded_at_scale, row.back());
  }
  push("uniform_weak",
       st_grid.empty() ? Verdict::not_evaluable
                       : (all_weak ? Verdict::consistent_at_scale : Verdict::excluded_at_scale),
       0.0);

  double tail_min = b[tail_start] / dims[tail_start];
  for (std::size_t i = tail_start; i < n; ++i) tail_min = std::min(tail_min, b[i] / dims[i]);
  const double first = b[tail_start] / dims[tail_start];
  const double last = b.back() / dims.back();
  const bool curse = tail_min > 0.0 && last >= 0.9 * first;
  push("curse", curse ? Verdict::consistent_at_scale : Verdict::excluded_at_scale, tail_min);
  return report;
}

}  // namespace symquad
