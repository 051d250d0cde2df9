#include <gtest/gtest.h>

#include <random>

#include "brute.hpp"
#include "polyfn/zring.hpp"

using polyfn::Residue;
using polyfn::RingCtx;

TEST(RingCtx, TotientValues) {
  EXPECT_EQ(RingCtx(2, 3).phi(), 4u);
  EXPECT_EQ(RingCtx(3, 2).phi(), 6u);
  EXPECT_EQ(RingCtx(5, 1).phi(), 4u);
  EXPECT_EQ(RingCtx(5, 1).totient(), 4u);
}

TEST(RingCtx, RejectsInvalidRings) {
  EXPECT_THROW(RingCtx(4, 2), polyfn::InvalidRing);
  EXPECT_THROW(RingCtx(1, 2), polyfn::InvalidRing);
  EXPECT_THROW(RingCtx(3, 0), polyfn::InvalidRing);
  EXPECT_THROW(RingCtx(2, 31), polyfn::InvalidRing);
  EXPECT_NO_THROW(RingCtx(2, 30));
}

TEST(RingCtx, MuMatchesFactorialSearch) {
  EXPECT_EQ(RingCtx(2, 2).mu(), 4u);
  EXPECT_EQ(RingCtx(2, 3).mu(), 4u);
  EXPECT_EQ(RingCtx(3, 1).mu(), 3u);
  EXPECT_EQ(RingCtx(3, 2).mu(), 6u);
  for (auto [p, n] : {std::pair{2u, 5u}, {3u, 4u}, {5u, 3u}, {7u, 2u}, {2u, 10u}}) {
    const RingCtx ctx(p, n);
    EXPECT_EQ(ctx.mu(), brute::kempner(ctx.q())) << p << "^" << n;
  }
}

TEST(RingCtx, ValuationExamples) {
  const RingCtx z8(2, 3);
  EXPECT_EQ(z8.val_p(0), 3u);
  EXPECT_EQ(z8.val_p(4), 2u);
  EXPECT_EQ(z8.val_p(6), 1u);
  EXPECT_EQ(z8.val_p(7), 0u);
  const RingCtx z9(3, 2);
  EXPECT_EQ(z9.val_p(6), 1u);
  EXPECT_EQ(z9.unit_part(6), 2u);
  EXPECT_EQ(z9.reduce(-1), 8u);
  EXPECT_EQ(z9.reduce(-18), 0u);
}

class RingProperties : public ::testing::TestWithParam<std::pair<std::uint32_t, std::uint32_t>> {};

TEST_P(RingProperties, ArithmeticMatchesIntegers) {
  const RingCtx ctx(GetParam().first, GetParam().second);
  const std::uint64_t q = ctx.q();
  for (Residue a = 0; a < q; ++a) {
    for (Residue b = 0; b < q; ++b) {
      ASSERT_EQ(ctx.add(a, b), (a + b) % q);
      ASSERT_EQ(ctx.sub(a, b), (a + q - b) % q);
      ASSERT_EQ(ctx.mul(a, b), std::uint64_t{a} * b % q);
    }
    ASSERT_EQ(ctx.neg(a), (q - a) % q);
    ASSERT_EQ(ctx.pow(a, 5), brute::powmod(a, 5, q));
  }
}

TEST_P(RingProperties, ValuationRules) {
  const RingCtx ctx(GetParam().first, GetParam().second);
  for (Residue a = 0; a < ctx.q(); ++a) {
    for (Residue b = 0; b < ctx.q(); ++b) {
      ASSERT_EQ(ctx.val_p(ctx.mul(a, b)), std::min(ctx.n(), ctx.val_p(a) + ctx.val_p(b)));
      ASSERT_GE(ctx.val_p(ctx.add(a, b)), std::min(ctx.val_p(a), ctx.val_p(b)));
    }
    ASSERT_EQ(ctx.divisible(a), a % ctx.p() == 0);
  }
}

TEST_P(RingProperties, Euler) {
  const RingCtx ctx(GetParam().first, GetParam().second);
  for (Residue x = 0; x < ctx.q(); ++x) {
    ASSERT_EQ(ctx.pow(x, ctx.phi()), ctx.is_unit(x) ? 1u % ctx.q() : 0u) << x;
  }
}

TEST_P(RingProperties, UnitInverses) {
  const RingCtx ctx(GetParam().first, GetParam().second);
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<Residue> pick(0, ctx.q() - 1);
  int found = 0;
  while (found < 1000) {
    const Residue a = pick(rng);
    if (!ctx.is_unit(a)) {
      EXPECT_THROW(ctx.inv_unit(a), polyfn::NotAUnit);
      continue;
    }
    ASSERT_EQ(ctx.mul(a, ctx.inv_unit(a)), 1u % ctx.q());
    ++found;
  }
}

TEST_P(RingProperties, BinomialRowMatchesPascal) {
  const RingCtx ctx(GetParam().first, GetParam().second);
  std::vector<std::uint64_t> row{1};
  for (std::uint64_t d = 0; d <= 40; ++d) {
    const auto got = ctx.binomial_row(d);
    ASSERT_EQ(got.size(), row.size());
    for (std::size_t t = 0; t < row.size(); ++t) ASSERT_EQ(got[t], row[t] % ctx.q()) << d << "," << t;
    std::vector<std::uint64_t> next(row.size() + 1, 0);
    for (std::size_t t = 0; t < row.size(); ++t) {
      next[t] = (next[t] + row[t]) % ctx.q();
      next[t + 1] = (next[t + 1] + row[t]) % ctx.q();
    }
    row = next;
  }
}

INSTANTIATE_TEST_SUITE_P(SmallRings, RingProperties,
                         ::testing::Values(std::pair{2u, 3u}, std::pair{3u, 2u}, std::pair{2u, 5u},
                                           std::pair{5u, 2u}, std::pair{3u, 3u}, std::pair{7u, 1u}));

TEST(RingCtx, DivisibilityTestOnLargePrimes) {
  std::mt19937_64 rng(5);
  for (std::uint32_t p : {3u, 5u, 7u, 65521u, 46337u}) {
    const RingCtx ctx(p, 1);
    std::uniform_int_distribution<Residue> pick(0, ctx.q() - 1);
    for (int i = 0; i < 2000; ++i) {
      const Residue a = pick(rng);
      ASSERT_EQ(ctx.divisible(a), a % p == 0);
    }
    ASSERT_TRUE(ctx.divisible(0));
  }
}

TEST(RingCtx, PowerOfP) {
  const RingCtx ctx(3, 4);
  EXPECT_EQ(ctx.p_power(0), 1u);
  EXPECT_EQ(ctx.p_power(3), 27u);
  EXPECT_EQ(ctx.p_power(4), 0u);
  EXPECT_EQ(ctx.p_power(9), 0u);
}
