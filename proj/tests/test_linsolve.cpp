#include <gtest/gtest.h>

#include <random>

#include "brute.hpp"
#include "polyfn/linsolve.hpp"

using namespace polyfn;

TEST(SolveSystem, SquareExampleOverZ8) {
  const LocalSystem sys(RingCtx(2, 3), 2, 2, {2, 4, 4, 0}, {4, 0});
  const SolveOutcome out = solve_system(sys);
  ASSERT_EQ(out.status, SolveStatus::kSolvable);
  EXPECT_EQ(out.solution, (std::vector<Residue>{2, 0}));
  ASSERT_FALSE(out.pivot_trace.empty());
  EXPECT_EQ(out.pivot_trace[0].row, 0u);
  EXPECT_EQ(out.pivot_trace[0].col, 0u);
  EXPECT_EQ(out.pivot_trace[0].valuation, 1u);
}

TEST(SolveSystem, IdentityReturnsRhs) {
  const RingCtx z27(3, 3);
  std::vector<Residue> eye(16, 0);
  for (int i = 0; i < 4; ++i) eye[i * 5] = 1;
  const std::vector<Residue> b{5, 26, 0, 13};
  const SolveOutcome out = solve_system(LocalSystem(z27, 4, 4, eye, b));
  ASSERT_EQ(out.status, SolveStatus::kSolvable);
  EXPECT_EQ(out.solution, b);
}

TEST(SolveSystem, InconsistentHalving) {
  const SolveOutcome out = solve_system(LocalSystem(RingCtx(2, 2), 1, 1, {2}, {1}));
  EXPECT_EQ(out.status, SolveStatus::kInconsistent);
  EXPECT_TRUE(out.solution.empty());
  ASSERT_TRUE(out.inconsistent_row.has_value());
  EXPECT_EQ(*out.inconsistent_row, 0u);
}

TEST(SolveSystem, ZeroRowWithNonzeroRhs) {
  const SolveOutcome out = solve_system(LocalSystem(RingCtx(3, 2), 2, 1, {3, 6}, {3, 0}));
  EXPECT_EQ(out.status, SolveStatus::kInconsistent);
  EXPECT_EQ(out.inconsistent_row, 1u);
}

TEST(SolveSystem, DimensionMismatch) {
  const RingCtx z8(2, 3);
  EXPECT_THROW(LocalSystem(z8, 2, 2, {1, 2, 3}, {0, 0}), DimensionMismatch);
  EXPECT_THROW(LocalSystem(z8, 2, 2, {1, 2, 3, 4}, {0}), DimensionMismatch);
  const LocalFactorization lu(z8, 2, 2, {1, 0, 0, 1});
  std::vector<Residue> b{1, 2}, x(1), scratch(4);
  EXPECT_THROW(lu.solve_into(b, x, scratch), DimensionMismatch);
}

struct Shape {
  std::uint32_t p, n;
  std::size_t rows, cols;
};

class SolveAgainstSearch : public ::testing::TestWithParam<Shape> {};

TEST_P(SolveAgainstSearch, StatusMatchesExhaustiveSearch) {
  const auto [p, n, rows, cols] = GetParam();
  const RingCtx ctx(p, n);
  std::mt19937_64 rng(p * 1000 + rows * 10 + cols);
  std::uniform_int_distribution<Residue> any(0, ctx.q() - 1);
  std::uniform_int_distribution<int> kind(0, 3);
  int solvable = 0, inconsistent = 0;
  for (int trial = 0; trial < 400; ++trial) {
    // Bias toward non-units so the valuation logic is exercised.
    std::vector<Residue> a(rows * cols), b(rows);
    for (auto& v : a) v = kind(rng) == 0 ? any(rng) : ctx.mul(p, any(rng));
    for (auto& v : b) v = kind(rng) == 0 ? any(rng) : ctx.mul(p * p % ctx.q(), any(rng));
    const SolveOutcome out = solve_system(LocalSystem(ctx, rows, cols, a, b));
    const bool expected = brute::solvable(a, b, rows, cols, ctx.q());
    ASSERT_EQ(out.status == SolveStatus::kSolvable, expected) << "trial " << trial;
    if (expected) {
      ++solvable;
      for (std::size_t r = 0; r < rows; ++r) {
        std::uint64_t acc = 0;
        for (std::size_t c = 0; c < cols; ++c) acc += std::uint64_t{a[r * cols + c]} * out.solution[c];
        ASSERT_EQ(acc % ctx.q(), b[r]);
      }
    } else {
      ++inconsistent;
    }
  }
  EXPECT_GT(solvable, 0);
  EXPECT_GT(inconsistent, 0);
}

INSTANTIATE_TEST_SUITE_P(DeskScale, SolveAgainstSearch,
                         ::testing::Values(Shape{2, 3, 3, 2}, Shape{2, 3, 3, 3}, Shape{3, 2, 3, 2},
                                           Shape{3, 2, 3, 3}, Shape{2, 4, 2, 3}, Shape{5, 2, 4, 2}));

TEST(SolveSystem, UnitDeterminantHasUniqueSolution) {
  const RingCtx z9(3, 2);
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<Residue> unit_digit(1, 2), any(0, 8);
  int tested = 0;
  while (tested < 200) {
    std::vector<Residue> a(9), b(3);
    for (auto& v : a) v = static_cast<Residue>(3 * any(rng) % 9 + unit_digit(rng)) % 9;
    for (auto& v : b) v = any(rng);
    const std::int64_t det =
        std::int64_t{a[0]} * (a[4] * a[8] - std::int64_t{a[5]} * a[7]) -
        std::int64_t{a[1]} * (a[3] * a[8] - std::int64_t{a[5]} * a[6]) +
        std::int64_t{a[2]} * (a[3] * a[7] - std::int64_t{a[4]} * a[6]);
    if (((det % 3) + 3) % 3 == 0) continue;
    ++tested;
    std::size_t count = 0;
    brute::solvable(a, b, 3, 3, 9, &count);
    ASSERT_EQ(count, 1u);
    const SolveOutcome out = solve_system(LocalSystem(z9, 3, 3, a, b));
    ASSERT_EQ(out.status, SolveStatus::kSolvable);
    ASSERT_EQ(out.pivot_trace.size(), 3u);
  }
}

TEST(LocalFactorization, ReusedAcrossRightHandSides) {
  const RingCtx z16(2, 4);
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<Residue> any(0, 15);
  std::vector<Residue> a(5 * 3);
  for (auto& v : a) v = any(rng) & 0xE;
  const LocalFactorization lu(z16, 5, 3, a);
  std::vector<Residue> x(3), scratch(8);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Residue> b(5);
    for (auto& v : b) v = any(rng) & 0xC;
    const SolveOutcome ref = solve_system(LocalSystem(z16, 5, 3, a, b));
    const std::size_t bad = lu.solve_into(b, x, scratch);
    ASSERT_EQ(bad == LocalFactorization::kSolved, ref.status == SolveStatus::kSolvable);
    if (bad == LocalFactorization::kSolved) {
      ASSERT_EQ(x, ref.solution);
    } else {
      ASSERT_EQ(bad, *ref.inconsistent_row);
    }
  }
}
