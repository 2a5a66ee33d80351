#pragma once

/**
 * @file bench.hpp
 * @brief Timing of the rectangle rule against its folded form on random
 *        invariant integrands.
 */

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "symquad/cubature.hpp"
#include "symquad/symmetry.hpp"

namespace symquad {

/**
 * Random invariant polynomial: `terms` keys with at most `max_support` nonzero
 * entries in [-max_freq, max_freq], symmetrized under p. Sparse keys keep the
 * orbits, and so the term count, polynomial in d.
 */
template <typename Rng>
FourierPolynomial random_invariant_polynomial(const InvariancePattern& p, std::size_t terms,
                                              Rng& rng, int max_freq = 3,
                                              std::size_t max_support = 2) {
  std::uniform_int_distribution<int> freq(1, max_freq);
  std::uniform_int_distribution<std::size_t> coord(0, p.dim() - 1);
  std::uniform_int_distribution<std::size_t> support(0, max_support);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  FourierPolynomial f(p.dim());
  for (std::size_t t = 0; t < terms; ++t) {
    std::vector<MultiIndex::value_type> k(p.dim(), 0);
    for (std::size_t s = support(rng); s > 0; --s) k[coord(rng)] = coef(rng) < 0 ? -freq(rng) : freq(rng);
    f.add(MultiIndex(std::move(k)), Complex(coef(rng), coef(rng)));
  }
  return symmetrize(f, p);
}

struct BenchConfig {
  std::size_t d_min = 4;
  std::size_t d_max = 16;
  std::vector<double> fractions = {1.0, 0.5};  // group size = round(fraction * d)
  std::size_t repetitions = 3;
  std::size_t terms = 8;                       // keys drawn before symmetrization
  std::uint64_t seed = 1;
  std::size_t node_cap = kDefaultEnumerationCap;
};

struct BenchRow {
  std::size_t d;
  std::size_t invariant;
  std::size_t rectangle_nodes;
  std::size_t folded_nodes;
  double rectangle_seconds;  // best of the repetitions
  double folded_seconds;
  double speedup;
  double max_abs_difference;
};

inline std::vector<BenchRow> run_bench(const BenchConfig& cfg) {
  if (cfg.d_min == 0 || cfg.d_min > cfg.d_max) throw InvalidInput("bench: need 1 <= d_min <= d_max");
  if (cfg.repetitions == 0) throw InvalidInput("bench: repetitions must be positive");
  using clock = std::chrono::steady_clock;
  std::mt19937_64 rng(cfg.seed);
  std::vector<BenchRow> rows;
  for (std::size_t d = cfg.d_min; d <= cfg.d_max; ++d) {
    if ((std::size_t{1} << d) > cfg.node_cap) {
      throw CapExceeded("bench: 2^" + std::to_string(d) + " rectangle nodes exceed the cap");
    }
    const CubatureRule rect = rectangle_rule(d, 63);
    for (double fraction : cfg.fractions) {
      if (!(fraction >= 0.0 && fraction <= 1.0)) throw InvalidInput("bench: fractions must lie in [0,1]");
      const auto size = static_cast<std::size_t>(std::lround(fraction * static_cast<double>(d)));
      const auto p = InvariancePattern::leading(d, size);
      const CubatureRule folded = folded_rectangle_rule(p, cfg.node_cap);
      BenchRow row{d, size, rect.size(), folded.size(), 1e300, 1e300, 0.0, 0.0};
      for (std::size_t r = 0; r < cfg.repetitions; ++r) {
        const auto f = random_invariant_polynomial(p, cfg.terms, rng);
        auto t0 = clock::now();
        const Complex full = apply(rect, f, 1);
        auto t1 = clock::now();
        const Complex fold = apply(folded, f, 1);
        auto t2 = clock::now();
        row.rectangle_seconds = std::min(row.rectangle_seconds, std::chrono::duration<double>(t1 - t0).count());
        row.folded_seconds = std::min(row.folded_seconds, std::chrono::duration<double>(t2 - t1).count());
        row.max_abs_difference = std::max(row.max_abs_difference, std::abs(full - fold));
      }
      row.speedup = row.rectangle_seconds / std::max(row.folded_seconds, 1e-9);
      rows.push_back(row);
    }
  }
  return rows;
}

inline std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream os;
  os << "d,invariant,rectangle_nodes,folded_nodes,rectangle_seconds,folded_seconds,speedup,max_abs_difference\n";
  os.precision(6);
  for (const auto& r : rows) {
    os << r.d << ',' << r.invariant << ',' << r.rectangle_nodes << ',' << r.folded_nodes << ','
       << r.rectangle_seconds << ',' << r.folded_seconds << ',' << r.speedup << ','
       << r.max_abs_difference << '\n';
  }
  return os.str();
}

}  // namespace symquad
