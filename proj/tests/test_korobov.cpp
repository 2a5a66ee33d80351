#include <gtest/gtest.h>

#include <numbers>

#include "oracles.hpp"

using namespace symquad;

TEST(MultiIndex, RejectsEmptyAndOversized) {
  EXPECT_THROW(MultiIndex(std::vector<MultiIndex::value_type>{}), InvalidInput);
  EXPECT_THROW(MultiIndex({1, 5}, 4), OverflowError);
  EXPECT_NO_THROW(MultiIndex({1, -4}, 4));
}

TEST(MultiIndex, ArithmeticAndOrder) {
  const MultiIndex a{1, -2, 0};
  const MultiIndex b{0, 3, 1};
  EXPECT_EQ(a + b, (MultiIndex{1, 1, 1}));
  EXPECT_EQ(a - b, (MultiIndex{1, -5, -1}));
  EXPECT_EQ(-a, (MultiIndex{-1, 2, 0}));
  EXPECT_LT(b, a);
  EXPECT_EQ(a.support_size(), 2u);
  EXPECT_TRUE(MultiIndex::zeros(4).is_zero());
}

TEST(Smoothness, Domain) {
  EXPECT_THROW(Smoothness(1.0), DomainError);
  EXPECT_THROW(Smoothness(0.3), DomainError);
  EXPECT_THROW(Smoothness(std::numeric_limits<double>::infinity()), DomainError);
  EXPECT_DOUBLE_EQ(Smoothness(2.5).value(), 2.5);
}

TEST(Zeta, KnownValues) {
  const double pi = std::numbers::pi;
  EXPECT_NEAR(zeta(2.0, 1e-10), pi * pi / 6.0, 1e-10);
  EXPECT_NEAR(zeta(4.0, 1e-10), std::pow(pi, 4) / 90.0, 1e-10);
  EXPECT_NEAR(zeta(2.0, 1e-10), 1.6449340668, 1e-10);
  EXPECT_NEAR(zeta(4.0, 1e-10), 1.0823232337, 1e-10);
  EXPECT_NEAR(zeta(60.0, 1e-12), 1.0, 1e-15);
}

TEST(Zeta, ThreeHalvesAgainstLongPartialSum) {
  // 10^8 terms of m^-1.5, smallest first, bracketed by the integral tail.
  constexpr std::uint64_t terms = 100'000'000;
  long double partial = 0;
  for (std::uint64_t m = terms; m >= 1; --m) {
    const long double x = static_cast<long double>(m);
    partial += 1.0L / (x * std::sqrt(x));
  }
  const long double lo = partial + 2.0L / std::sqrt(static_cast<long double>(terms + 1));
  const long double hi = partial + 2.0L / std::sqrt(static_cast<long double>(terms));
  const double z = zeta(1.5, 1e-6);
  EXPECT_GE(z, static_cast<double>(lo) - 1e-6);
  EXPECT_LE(z, static_cast<double>(hi) + 1e-6);
  EXPECT_NEAR(zeta(1.5, 1e-12), 2.6123753486854883, 1e-12);
}

TEST(Zeta, Domain) {
  EXPECT_THROW(zeta(1.0, 1e-8), DomainError);
  EXPECT_THROW(zeta(2.0, 0.0), DomainError);
}

TEST(KorobovWeight, Examples) {
  EXPECT_DOUBLE_EQ(korobov_weight(MultiIndex{0, 0, 0}, Smoothness(3.0)), 1.0);
  EXPECT_DOUBLE_EQ(korobov_weight(MultiIndex{2, -3}, Smoothness(2.0)), 36.0);
  EXPECT_NEAR(korobov_weight(MultiIndex{1, 0, -5}, Smoothness(1.5)), std::pow(5.0, 1.5), 1e-12);
  EXPECT_NEAR(korobov_weight(MultiIndex{1, 0, -5}, Smoothness(1.5)), 11.18034, 1e-5);
}

TEST(KorobovWeight, OverflowIsReported) {
  const MultiIndex k{2'000'000'000, 2'000'000'000, 2'000'000'000};
  EXPECT_THROW(korobov_weight(k, Smoothness(2.0)), OverflowError);
}

TEST(Eval, Examples) {
  const std::vector<double> x{0.3};
  EXPECT_EQ(eval(FourierPolynomial::constant(1, {2.0, -1.0}), x), Complex(2.0, -1.0));
  const std::vector<double> half{0.5};
  EXPECT_EQ(eval(FourierPolynomial::monomial(MultiIndex{1}), half), Complex(-1.0, 0.0));
  const std::vector<double> wrong{0.5, 0.5};
  EXPECT_THROW(eval(FourierPolynomial::monomial(MultiIndex{1}), wrong), DimensionMismatch);
}

TEST(Eval, MatchesExtendedPrecisionSum) {
  oracle::Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t d = oracle::pick(rng, 1, 6);
    const auto f = oracle::random_polynomial(d, 20, rng, 7);
    std::vector<double> x(d);
    for (auto& v : x) v = oracle::uniform(rng);
    const Complex got = eval(f, x);
    const auto want = oracle::eval(f, x);
    const double scale = std::max(1.0, static_cast<double>(std::abs(want)));
    EXPECT_NEAR(got.real(), static_cast<double>(want.real()), 1e-12 * scale * 20);
    EXPECT_NEAR(got.imag(), static_cast<double>(want.imag()), 1e-12 * scale * 20);
  }
}

TEST(KorobovNorm, Examples) {
  EXPECT_DOUBLE_EQ(korobov_norm(FourierPolynomial::constant(2, 1.0), Smoothness(2.0)), 1.0);
  FourierPolynomial f(2);
  f.set(MultiIndex{1, 1}, 0.5);
  f.set(MultiIndex{2, 0}, 0.1);
  EXPECT_DOUBLE_EQ(korobov_norm(f, Smoothness(2.0)), 0.5);
  EXPECT_DOUBLE_EQ(korobov_norm(FourierPolynomial(3), Smoothness(2.0)), 0.0);
}

TEST(KorobovNorm, MatchesSupportEnumeration) {
  oracle::Rng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t d = oracle::pick(rng, 1, 5);
    const auto f = oracle::random_polynomial(d, 10, rng);
    const double alpha = oracle::uniform(rng, 1.1, 4.0);
    double want = 0;
    for (const auto& [k, c] : f.terms()) {
      double prod = 1;
      for (auto v : k) prod *= std::max<double>(1.0, std::abs(static_cast<double>(v)));
      want = std::max(want, std::abs(c) * std::pow(prod, alpha));
    }
    EXPECT_NEAR(korobov_norm(f, Smoothness(alpha)), want, 1e-12 * want);
  }
}

TEST(Integral, Examples) {
  EXPECT_EQ(integral(FourierPolynomial::constant(1, {3.0, 1.0})), Complex(3.0, 1.0));
  EXPECT_EQ(integral(FourierPolynomial::monomial(MultiIndex{1, 0}, 5.0)), Complex(0.0, 0.0));
}

TEST(FourierPolynomial, SetZeroErasesAndDimensionChecked) {
  FourierPolynomial f(2);
  f.set(MultiIndex{1, 2}, 3.0);
  EXPECT_EQ(f.size(), 1u);
  f.add(MultiIndex{1, 2}, -3.0);
  EXPECT_EQ(f.size(), 0u);
  EXPECT_THROW(f.set(MultiIndex{1}, 1.0), DimensionMismatch);
}
