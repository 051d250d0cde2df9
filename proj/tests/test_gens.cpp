#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "brute.hpp"
#include "polyfn/decide.hpp"
#include "polyfn/gens.hpp"

using namespace polyfn;

namespace {

Polynomial univariate(const RingCtx& ctx, std::vector<Residue> coeffs) {
  Polynomial out(ctx, 1);
  for (std::uint32_t e = 0; e < coeffs.size(); ++e) out.add_term({e}, coeffs[e]);
  return out;
}

std::uint64_t binomial(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= b; ++i) r = r * (a - b + i) / i;
  return r;
}

}  // namespace

TEST(Generators, UnivariateZ8Tables) {
  const RingCtx z8(2, 3);
  EXPECT_EQ(generator_table(z8, {0}, {0}), FuncTable(z8, 1, {1, 0, 1, 0, 1, 0, 1, 0}));
  EXPECT_EQ(generator_table(z8, {1}, {0}), FuncTable(z8, 1, {0, 0, 2, 0, 4, 0, 6, 0}));
  EXPECT_EQ(generator_table(z8, {2}, {0}), FuncTable(z8, 1, {0, 0, 4, 0, 0, 0, 4, 0}));
}

TEST(Generators, FieldCaseIsStandardBasis) {
  const RingCtx z3(3, 1);
  const GeneratorBasis basis = build_generators(z3, 1);
  ASSERT_EQ(basis.entries().size(), 3u);
  EXPECT_EQ(basis.find({0}, {0})->table, FuncTable(z3, 1, {1, 0, 0}));
  EXPECT_EQ(basis.find({0}, {1})->table, FuncTable(z3, 1, {0, 0, 1}));
  EXPECT_EQ(basis.find({0}, {2})->table, FuncTable(z3, 1, {0, 1, 0}));
  EXPECT_EQ(basis.find({1}, {0}), nullptr);
}

TEST(Generators, BivariateConstantGenerator) {
  const RingCtx z4(2, 2);
  const FuncTable u = generator_table(z4, {0, 0}, {0, 0});
  for (std::uint32_t x = 0; x < 4; ++x) {
    for (std::uint32_t y = 0; y < 4; ++y) {
      EXPECT_EQ(u[x * 4 + y], (x % 2 == 0 && y % 2 == 0) ? 1u : 0u);
    }
  }
}

TEST(Generators, PolynomialExamples) {
  const RingCtx z8(2, 3);
  EXPECT_EQ(generator_polynomial(z8, {0}, {0}), univariate(z8, {1, 0, 0, 0, 7}));
  EXPECT_EQ(generator_polynomial(z8, {1}, {0}), univariate(z8, {0, 1, 0, 0, 0, 7}));
  const Polynomial shifted = generator_polynomial(z8, {0}, {1});
  EXPECT_EQ(shifted, univariate(z8, {0, 4, 2, 4, 7}));
  // Its table is u_0 shifted by one, evaluated independently.
  const brute::Table expected = brute::generator(2, 8, 0, 1);
  for (Residue x = 0; x < 8; ++x) {
    const std::vector<Residue> arg{x};
    EXPECT_EQ(shifted.evaluate(arg), expected[x]);
  }
  EXPECT_EQ(shifted.to_string(), "4x + 2x^2 + 4x^3 + 7x^4");
}

TEST(Generators, CaseSplitAndCounts) {
  for (auto [p, n, m] : {std::tuple{2u, 3u, 1u}, {3u, 2u, 1u}, {2u, 2u, 2u}, {3u, 1u, 2u},
                         {2u, 2u, 3u}, {3u, 2u, 2u}}) {
    const RingCtx ctx(p, n);
    const GeneratorBasis basis = build_generators(ctx, m);
    EXPECT_EQ(basis.entries().size(), binomial(n - 1 + m, m) * brute::ipow(p, m));
    EXPECT_EQ(generator_count(ctx, m), basis.entries().size());
    if (m == 1) EXPECT_EQ(basis.entries().size(), std::size_t{n} * p);
    for (const GeneratorEntry& g : basis.entries()) {
      std::uint32_t total = 0;
      for (auto k : g.degree) total += k;
      ASSERT_LT(total, n);
      const FuncTable& t = g.table;
      for (std::size_t idx = 0; idx < t.size(); ++idx) {
        const auto x = t.args_of(idx);
        std::uint64_t expected = 1;
        for (std::size_t i = 0; i < m; ++i) {
          const std::uint64_t y = (x[i] + g.shift[i]) % ctx.q();
          expected = y % p == 0 ? expected * brute::powmod(y, g.degree[i], ctx.q()) % ctx.q() : 0;
        }
        ASSERT_EQ(t[idx], expected);
      }
    }
  }
}

TEST(Generators, PolynomialsEvaluateToTables) {
  // build_generators checks this itself; repeat with the independent
  // evaluator.
  const RingCtx z9(3, 2);
  const GeneratorBasis basis = build_generators(z9, 2);
  for (const GeneratorEntry& g : basis.entries()) {
    brute::Poly poly;
    for (const auto& [e, c] : g.polynomial.terms()) poly[e] = c;
    ASSERT_EQ(brute::tabulate(poly, 9, 2), std::vector<std::uint32_t>(g.table.values().begin(),
                                                                      g.table.values().end()));
  }
}

TEST(Generators, DegreeTupleOrder) {
  for (std::uint32_t m = 1; m <= 4; ++m) {
    const std::uint32_t n = 5;
    const auto tuples = degree_tuples(n, m);
    EXPECT_EQ(tuples.size(), binomial(n - 1 + m, m));
    std::vector<std::vector<std::uint32_t>> expected;
    std::vector<std::uint32_t> k(m, 0);
    while (true) {
      std::uint32_t total = 0;
      for (auto v : k) total += v;
      if (total < n) expected.push_back(k);
      std::size_t i = 0;
      for (; i < m; ++i) {
        if (++k[i] < n) break;
        k[i] = 0;
      }
      if (i == m) break;
    }
    std::sort(expected.begin(), expected.end(), [](const auto& a, const auto& b) {
      const auto sa = std::accumulate(a.begin(), a.end(), 0u);
      const auto sb = std::accumulate(b.begin(), b.end(), 0u);
      return sa != sb ? sa < sb : a > b;
    });
    ASSERT_EQ(tuples.size(), expected.size());
    for (std::size_t i = 0; i < tuples.size(); ++i) {
      ASSERT_TRUE(std::equal(tuples[i].begin(), tuples[i].end(), expected[i].begin(),
                             expected[i].end()));
    }
  }
  const auto two = degree_tuples(3, 2);
  EXPECT_EQ(two[1], (DegreeTuple{1, 0}));
  EXPECT_EQ(two[2], (DegreeTuple{0, 1}));
}

TEST(Generators, CarlitzCertificates) {
  for (auto [p, n] : {std::pair{2u, 3u}, {3u, 2u}, {2u, 4u}, {3u, 3u}, {5u, 2u}}) {
    const RingCtx ctx(p, n);
    for (std::uint32_t k = 0; k < n; ++k) {
      const FuncTable u = generator_table(ctx, {k}, {0});
      std::vector<FuncTable> phis;
      for (std::uint32_t i = 0; i < n; ++i) {
        std::vector<Residue> v(ctx.q(), 0);
        for (Residue x = 0; x < ctx.q(); x += p) {
          if (i <= k) v[x] = static_cast<Residue>(binomial(k, i) % ctx.q() * brute::powmod(x, k - i, ctx.q()) % ctx.q());
        }
        phis.emplace_back(ctx, 1, std::move(v));
      }
      EXPECT_TRUE(carlitz_verify(u, phis)) << p << "^" << n << " k=" << k;
    }
  }
}

TEST(Generators, ShiftSufficiency) {
  const std::set<brute::Table> span = brute::generator_span(2, 3);
  const RingCtx z8(2, 3);
  for (std::uint32_t k = 0; k < 3; ++k) {
    for (std::int64_t j = 0; j < 8; ++j) {
      const std::vector<std::int64_t> shift{j + 2};
      const FuncTable g = cyclic_shift(generator_table(z8, {k}, {0}), shift);
      ASSERT_TRUE(span.count(brute::Table(g.values().begin(), g.values().end()))) << k << "," << j;
    }
  }
}

TEST(Generators, RandomSpanTablesAreInTheSpan) {
  const std::set<brute::Table> span = brute::generator_span(3, 2);
  const RingCtx z9(3, 2);
  std::mt19937_64 rng(8);
  for (int i = 0; i < 200; ++i) {
    const FuncTable f = random_span_table(z9, 1, rng);
    ASSERT_TRUE(span.count(brute::Table(f.values().begin(), f.values().end())));
  }
}

TEST(Generators, Errors) {
  EXPECT_THROW(build_generators(RingCtx(2, 8), 3, 1 << 20), CapacityExceeded);
  EXPECT_THROW(generator_table(RingCtx(2, 2), {0, 1}, {0}), ArityMismatch);
  EXPECT_THROW(generator_polynomial(RingCtx(2, 2), {}, {}), ArityMismatch);
}
