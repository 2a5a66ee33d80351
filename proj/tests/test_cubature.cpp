#include <gtest/gtest.h>

#include <cstdlib>

#include "oracles.hpp"

using namespace symquad;

TEST(CubatureRule, Validation) {
  EXPECT_THROW(CubatureRule(2, {{0.1, 1.0}}, {1.0}), InvalidInput);
  EXPECT_THROW(CubatureRule(2, {{0.1, -0.1}}, {1.0}), InvalidInput);
  EXPECT_THROW(CubatureRule(2, {{0.1}}, {1.0}), DimensionMismatch);
  EXPECT_THROW(CubatureRule(2, {{0.1, 0.2}}, {}), InvalidInput);
}

TEST(Apply, ZeroRule) {
  oracle::Rng rng(31);
  EXPECT_EQ(apply(CubatureRule(3), oracle::random_polynomial(3, 5, rng)), Complex(0.0, 0.0));
}

TEST(Apply, RectangleExamples) {
  EXPECT_EQ(apply(rectangle_rule(1), FourierPolynomial::monomial(MultiIndex{1})), Complex(0.0, 0.0));
  const auto f = FourierPolynomial::monomial(MultiIndex{2, -2});
  EXPECT_EQ(apply(rectangle_rule(2), f), Complex(1.0, 0.0));
  EXPECT_NEAR(static_cast<double>(std::abs(oracle::rectangle_direct(f) - 1.0L)), 0.0, 1e-15);
}

TEST(Apply, DeterministicAcrossThreadCounts) {
  oracle::Rng rng(32);
  const auto rule = oracle::random_rule(4, 3000, rng);
  const auto f = oracle::random_polynomial(4, 15, rng);
  const Complex one = apply(rule, f, 1);
  for (unsigned threads : {2u, 3u, 8u}) EXPECT_EQ(apply(rule, f, threads), one);
}

TEST(Apply, ThreadEnvironmentVariable) {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  ::setenv("SYMQUAD_THREADS", "1", 1);
  EXPECT_EQ(default_thread_count(), 1u);
  ::setenv("SYMQUAD_THREADS", "3", 1);
  EXPECT_EQ(default_thread_count(), std::min(hw, 3u));
  ::setenv("SYMQUAD_THREADS", "junk", 1);
  EXPECT_GE(default_thread_count(), 1u);
  ::unsetenv("SYMQUAD_THREADS");
}

TEST(Apply, MatchesNodeByNodeSum) {
  oracle::Rng rng(33);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t d = oracle::pick(rng, 1, 5);
    const auto rule = oracle::random_rule(d, oracle::pick(rng, 1, 30), rng);
    const auto f = oracle::random_polynomial(d, 10, rng);
    oracle::LComplex want = 0;
    for (std::size_t n = 0; n < rule.size(); ++n) {
      const auto t = rule.node(n);
      const auto w = rule.weight(n);
      want += oracle::LComplex(w.real(), w.imag()) * oracle::eval(f, std::vector<double>(t.begin(), t.end()));
    }
    EXPECT_NEAR(std::abs(apply(rule, f) - Complex(static_cast<double>(want.real()), static_cast<double>(want.imag()))),
                0.0, 1e-11);
  }
}

TEST(RectangleRule, Examples) {
  const auto r1 = rectangle_rule(1);
  ASSERT_EQ(r1.size(), 2u);
  EXPECT_EQ(r1.node(0)[0], 0.0);
  EXPECT_EQ(r1.node(1)[0], 0.5);
  EXPECT_EQ(r1.weight(0), Complex(0.5));
  EXPECT_EQ(r1.weight(1), Complex(0.5));
  const auto r3 = rectangle_rule(3);
  EXPECT_EQ(r3.size(), 8u);
  Complex sum{};
  for (auto w : r3.weights()) sum += w;
  EXPECT_EQ(sum, Complex(1.0));
  EXPECT_THROW(rectangle_rule(27), CapExceeded);
}

TEST(RectangleRule, IntegratesExactlyTheAllEvenModes) {
  oracle::Rng rng(34);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t d = oracle::pick(rng, 1, 5);
    const auto k = oracle::random_index(d, rng, 4);
    // per coordinate (1 + e^{i pi k_m}) / 2
    Complex want = 1.0;
    for (auto v : k) want *= 0.5 * (1.0 + std::polar(1.0, std::numbers::pi * static_cast<double>(v)));
    const Complex got = apply(rectangle_rule(d), FourierPolynomial::monomial(k));
    EXPECT_NEAR(std::abs(got - want), 0.0, 1e-14);
    const bool all_even = std::all_of(k.begin(), k.end(), [](auto v) { return v % 2 == 0; });
    EXPECT_EQ(got, Complex(all_even ? 1.0 : 0.0));
  }
}

TEST(FoldedRule, TwoDimensionalExample) {
  const auto rule = folded_rectangle_rule(InvariancePattern::full(2));
  ASSERT_EQ(rule.size(), 3u);
  const std::vector<std::vector<double>> nodes{{0, 0}, {0, 0.5}, {0.5, 0.5}};
  const std::vector<Complex> weights{0.25, 0.5, 0.25};
  for (std::size_t n = 0; n < 3; ++n) {
    EXPECT_EQ(std::vector<double>(rule.node(n).begin(), rule.node(n).end()), nodes[n]);
    EXPECT_EQ(rule.weight(n), weights[n]);
  }
}

TEST(FoldedRule, TrivialGroupIsTheRectangleRule) {
  for (std::size_t d = 1; d <= 6; ++d) {
    const auto folded = folded_rectangle_rule(InvariancePattern::trivial(d));
    const auto rect = rectangle_rule(d);
    ASSERT_EQ(folded.size(), rect.size());
    std::multiset<std::pair<std::vector<double>, double>> a, b;
    for (std::size_t n = 0; n < rect.size(); ++n) {
      a.insert({{folded.node(n).begin(), folded.node(n).end()}, folded.weight(n).real()});
      b.insert({{rect.node(n).begin(), rect.node(n).end()}, rect.weight(n).real()});
    }
    EXPECT_EQ(a, b);
  }
}

TEST(FoldedRule, TenDimensionalAgreement) {
  oracle::Rng rng(35);
  const auto p = InvariancePattern::full(10);
  const auto folded = folded_rectangle_rule(p);
  const auto rect = rectangle_rule(10);
  EXPECT_EQ(folded.size(), 11u);
  EXPECT_EQ(rect.size(), 1024u);
  for (int trial = 0; trial < 10; ++trial) {
    const auto f = random_invariant_polynomial(p, 6, rng);
    EXPECT_LE(std::abs(apply(folded, f) - apply(rect, f)), 1e-10 * (1.0 + f.l1_coefficients()));
  }
}

TEST(FoldedRule, WeightsAreOrbitFractions) {
  const auto p = InvariancePattern::from_one_based(5, {{2, 4, 5}});
  double total = 0;
  for (const auto& [k, orbit] : folded_weights(p)) {
    EXPECT_EQ(orbit, oracle::orbit_size(k, p));
    total += orbit.convert_to<double>();
  }
  EXPECT_EQ(total, 32.0);
}

TEST(Wce, Examples) {
  auto r = wce_rectangle(1, Smoothness(2.0), 1e-8);
  EXPECT_NEAR(r.closed_form, 0.8224670334241132, 1e-9);
  EXPECT_LE(std::abs(r.closed_form - r.oracle_value), r.tail_bound);
  r = wce_rectangle(2, Smoothness(4.0), 1e-8);
  EXPECT_NEAR(r.closed_form, std::pow(1.0 + zeta(4.0, 1e-12) / 8.0, 2) - 1.0, 1e-9);
  EXPECT_NEAR(r.closed_form, 0.2888, 1e-4);
  EXPECT_LT(wce_rectangle(3, Smoothness(50.0), 1e-8).closed_form, 1e-13);
  EXPECT_EQ(initial_error(Smoothness(3.0)), 1.0);
}

TEST(Wce, AgreesWithExplicitLatticeSum) {
  // Brute lattice sum over {-2M..2M}^d with d-fold products formed explicitly.
  for (std::size_t d : {1u, 2u, 3u}) {
    for (double alpha : {2.0, 4.0}) {
      const auto r = wce_rectangle(d, Smoothness(alpha), 1e-8);
      const long double lattice = oracle::wce_lattice(d, alpha, 200000);
      // Truncation leaves about d * 2^(1-alpha) M^(1-alpha) / (alpha-1) out of the lattice sum.
      const double cut = 4.0 * static_cast<double>(d) * std::pow(200000.0, 1.0 - alpha);
      EXPECT_NEAR(r.closed_form, static_cast<double>(lattice), cut + 1e-9) << d << " " << alpha;
    }
  }
}

TEST(Wce, Domain) {
  EXPECT_THROW(wce_rectangle(0, Smoothness(2.0), 1e-8), InvalidInput);
  EXPECT_THROW(wce_rectangle(2, Smoothness(2.0), 0.0), DomainError);
}

TEST(Wce, MonotoneInDimensionAndSmoothness) {
  double prev = 0;
  for (std::size_t d = 1; d <= 10; ++d) {
    const double v = wce_rectangle(d, Smoothness(2.0), 1e-10).closed_form;
    EXPECT_GT(v, prev);
    prev = v;
  }
  EXPECT_GT(wce_rectangle(4, Smoothness(2.0), 1e-10).closed_form,
            wce_rectangle(4, Smoothness(3.0), 1e-10).closed_form);
}
