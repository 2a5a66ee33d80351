// Acceptance gate: nine end-to-end criteria, one PASS/FAIL line each.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "oracles.hpp"

using namespace symquad;
using Rational = boost::multiprecision::cpp_rational;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

int failures = 0;

void criterion(int id, const char* name, double budget_seconds, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out.fail(std::string("exception: ") + e.what());
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (out.ok && seconds > budget_seconds) out.fail("over time budget");
  if (!out.ok) ++failures;
  std::printf("[%s] %d %s (%.2f s / %.0f s)%s%s\n", out.ok ? "PASS" : "FAIL", id, name, seconds, budget_seconds,
              out.detail.empty() ? "" : ": ", out.detail.c_str());
  std::fflush(stdout);
}

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

Outcome cardinality() {
  Outcome out;
  for (std::size_t d = 1; d <= 14; ++d) {
    for (std::size_t s = 0; s <= d; ++s) {
      const auto p = InvariancePattern::leading(d, s);
      const auto nabla = enumerate_nabla(p);
      const std::size_t want = (s + 1) << (d - s);
      if (nabla.size() != want) out.fail("d=" + std::to_string(d) + " #I=" + std::to_string(s));
      BigInt total = 0;
      for (const auto& k : nabla) total += orbit_stats(k, p).orbit_size;
      if (total != pow2(d)) out.fail("orbit sizes at d=" + std::to_string(d));
    }
  }
  return out;
}

Outcome folded_equivalence() {
  Outcome out;
  oracle::Rng rng(2001);
  double worst = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t d = oracle::pick(rng, 1, 12);
    const auto p = oracle::random_single_group(d, oracle::pick(rng, 0, d), rng);
    const auto f = random_invariant_polynomial(p, 8, rng);
    const double diff = std::abs(apply(folded_rectangle_rule(p), f) - apply(rectangle_rule(d), f));
    const double ratio = diff / (1.0 + f.l1_coefficients());
    worst = std::max(worst, ratio);
    if (ratio > 1e-10) out.fail("trial " + std::to_string(trial) + " diff " + num(diff));
  }
  out.detail = out.ok ? "worst relative difference " + num(worst) : out.detail;
  return out;
}

Outcome wce_formula() {
  Outcome out;
  for (std::size_t d = 1; d <= 8; ++d) {
    for (double alpha : {1.5, 2.0, 3.0, 6.0}) {
      const auto r = wce_rectangle(d, Smoothness(alpha), 1e-8);
      if (!(std::abs(r.closed_form - r.oracle_value) <= r.tail_bound)) {
        out.fail("d=" + std::to_string(d) + " alpha=" + num(alpha) + " gap " +
                 num(std::abs(r.closed_form - r.oracle_value)) + " > " + num(r.tail_bound));
      }
    }
  }
  for (std::size_t d = 1; d <= 5; ++d) {
    const double v = wce_rectangle(d, Smoothness(50.0), 1e-8).closed_form;
    if (!(v < 1e-12)) out.fail("alpha=50 d=" + std::to_string(d) + " value " + num(v));
  }
  return out;
}

Outcome certificates() {
  Outcome out;
  oracle::Rng rng(2004);
  double min_witness = 2.0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = oracle::pick(rng, 1, 8);
    const auto p = oracle::random_single_group(d, oracle::pick(rng, 0, d), rng);
    const auto total = n_star(p).convert_to<std::size_t>();
    const std::size_t n = oracle::pick(rng, 0, total - 1);
    const auto rule = oracle::random_rule(d, n, rng);
    const auto cert = construct(rule, p, Smoothness(oracle::uniform(rng, 1.1, 6.0)));

    const std::string tag = "trial " + std::to_string(trial) + " (d=" + std::to_string(d) + ", N=" +
                            std::to_string(n) + "): ";
    const Complex at_nodes = apply(rule, cert.f);
    if (std::abs(at_nodes) > 1e-9) out.fail(tag + "|A(f)| = " + num(std::abs(at_nodes)));
    if (cert.f.coefficient(MultiIndex::zeros(d)) != Complex(1.0)) out.fail(tag + "f(0) != 1");
    if (korobov_norm(cert.f, Smoothness(cert.alpha)) > 1.0 + 1e-9) out.fail(tag + "norm above 1");
    for (const auto& [k, c] : cert.f.terms()) {
      for (auto v : k) {
        if (v < -1 || v > 1) out.fail(tag + "support outside {-1,0,1}^d");
      }
    }
    if (!is_invariant(cert.f, p, 1e-10)) out.fail(tag + "not invariant");
    const double witnessed = std::abs(integral(cert.f) - at_nodes);
    min_witness = std::min(min_witness, witnessed);
    if (witnessed < 1.0 - 1e-8) out.fail(tag + "witnessed error " + num(witnessed));
    if (!cert.valid) out.fail(tag + "certificate flagged invalid");
  }
  if (out.ok) out.detail = "smallest witnessed error " + num(min_witness);
  return out;
}

Outcome fourier_crosscheck() {
  Outcome out;
  oracle::Rng rng(2005);
  double worst = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t d = oracle::pick(rng, 1, 6);
    const auto p = oracle::random_single_group(d, oracle::pick(rng, 0, d), rng);
    const auto total = n_star(p).convert_to<std::size_t>();
    const auto rule = oracle::random_rule(d, oracle::pick(rng, 0, total - 1), rng);
    const auto report = crosscheck_coefficients(construct(rule, p, Smoothness(2.0)), p);
    worst = std::max(worst, report.max_deviation);
    if (report.max_deviation > 1e-10) out.fail("trial " + std::to_string(trial) + " " + num(report.max_deviation));
  }
  if (out.ok) out.detail = "worst deviation " + num(worst);
  return out;
}

Outcome harmonic_weights() {
  Outcome out;
  for (std::size_t d = 1; d <= 10; ++d) {
    std::vector<Rational> g;
    for (std::size_t m = 1; m <= d; ++m) g.emplace_back(1, static_cast<long>(m));
    const auto ordered = order_weights(InvariancePattern::full(d), BasicWeightSchedule<Rational>(g));
    Rational falling = 1;
    for (std::size_t n = 0; n <= d; ++n) {
      if (n > 0) falling *= static_cast<long>(d - n + 1);
      if (ordered.nu[n] != 1 / falling) out.fail("nu mismatch at d=" + std::to_string(d) + " n=" + std::to_string(n));
    }
  }
  oracle::Rng rng(2006);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t d = oracle::pick(rng, 1, 8);
    std::vector<double> g;
    for (std::size_t m = 1; m <= d; ++m) g.push_back(1.0 / static_cast<double>(m));
    const auto p = InvariancePattern::full(d);
    const std::size_t n = oracle::pick(rng, 0, d);
    const auto rule = oracle::random_rule(d, n, rng);
    const auto cert = weighted_construct(rule, p, Smoothness(2.0), WeightSchedule(g));
    double bound = 1;
    for (std::size_t j = 0; j < n; ++j) bound /= static_cast<double>(d - j);
    if (cert.integral_value.real() < bound - 1e-9) {
      out.fail("d=" + std::to_string(d) + " N=" + std::to_string(n) + " integral " + num(cert.integral_value.real()));
    }
    if (!cert.valid) out.fail("weighted certificate invalid at d=" + std::to_string(d));
  }
  return out;
}

Outcome kappa_identity() {
  Outcome out;
  oracle::Rng rng(2007);
  const double kappas[] = {1.5, 2.0, 3.0};
  double worst = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t d = oracle::pick(rng, 1, 12);
    const std::size_t s = oracle::pick(rng, 0, d);
    const auto p = InvariancePattern::leading(d, s);
    const WeightSchedule w(oracle::random_gammas(d, rng, s));
    const double kappa = kappas[trial % 3];
    const auto sum = kappa_sum(p, w, kappa);
    const double rel = std::abs(sum.brute - sum.closed) / sum.closed;
    worst = std::max(worst, rel);
    if (!sum.closed_applies || rel > 1e-12) out.fail("trial " + std::to_string(trial) + " relative " + num(rel));
  }
  if (out.ok) out.detail = "worst relative gap " + num(worst);
  return out;
}

Outcome supermultiplicativity() {
  Outcome out;
  oracle::Rng rng(2008);
  for (std::size_t d = 1; d <= 5; ++d) {
    for (std::size_t s = 0; s <= d; ++s) {
      for (int trial = 0; trial < 20; ++trial) {
        const auto p = InvariancePattern::leading(d, s);
        const auto report = supermultiplicativity_check(p, WeightSchedule(oracle::random_gammas(d, rng)), 6);
        if (!report.passed) {
          out.fail("d=" + std::to_string(d) + " #I=" + std::to_string(s) + " at " +
                   to_string(report.counterexample->k));
        }
      }
    }
  }
  return out;
}

Outcome bench_sanity() {
  Outcome out;
  BenchConfig cfg;
  cfg.d_min = cfg.d_max = 16;
  cfg.fractions = {1.0};
  cfg.repetitions = 5;
  cfg.seed = 2009;
  const auto row = run_bench(cfg).front();
  if (row.rectangle_nodes != 65536 || row.folded_nodes != 17) {
    out.fail("node counts " + std::to_string(row.rectangle_nodes) + " vs " + std::to_string(row.folded_nodes));
  }
  if (row.max_abs_difference > 1e-9) out.fail("difference " + num(row.max_abs_difference));
  if (row.speedup < 100.0) out.fail("speedup " + num(row.speedup));
  if (out.ok) out.detail = "speedup " + num(row.speedup) + "x";
  return out;
}

}  // namespace

int main() {
  criterion(1, "cardinality identity", 10, cardinality);
  criterion(2, "folded rule equals rectangle rule", 30, folded_equivalence);
  criterion(3, "worst-case error formula vs lattice oracle", 5, wce_formula);
  criterion(4, "lower-bound certificates", 120, certificates);
  criterion(5, "Fourier formula vs convolution oracle", 60, fourier_crosscheck);
  criterion(6, "harmonic weights example", 60, harmonic_weights);
  criterion(7, "kappa-sum product identity", 30, kappa_identity);
  criterion(8, "supermultiplicativity", 120, supermultiplicativity);
  criterion(9, "bench sanity", 60, bench_sanity);
  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
