#include "polyfn/gens.hpp"

#include <algorithm>
#include <string>

namespace polyfn {
namespace {

// (x + j)^d expanded as a univariate coefficient vector.
std::vector<Residue> shifted_power(const RingCtx& ctx, std::uint64_t d, Residue j) {
  std::vector<Residue> binom = ctx.binomial_row(d);
  std::vector<Residue> coeffs(d + 1);
  // coefficient of x^t is C(d, t) j^(d - t); walk t downward so j^(d-t)
  // accumulates by multiplication.
  Residue jpow = 1 % ctx.q();
  for (std::uint64_t t = d + 1; t-- > 0;) {
    coeffs[t] = ctx.mul(binom[t], jpow);
    jpow = ctx.mul(jpow, j);
  }
  return coeffs;
}

// (x + j)^k (1 - (x + j)^phi) as a univariate coefficient vector.
std::vector<Residue> univariate_generator(const RingCtx& ctx, std::uint32_t k, Residue j) {
  std::vector<Residue> low = shifted_power(ctx, k, j);
  std::vector<Residue> high = shifted_power(ctx, std::uint64_t{k} + ctx.phi(), j);
  std::vector<Residue> out(high.size(), 0);
  for (std::size_t t = 0; t < high.size(); ++t) out[t] = ctx.neg(high[t]);
  for (std::size_t t = 0; t < low.size(); ++t) out[t] = ctx.add(out[t], low[t]);
  return out;
}

}  // namespace

std::vector<DegreeTuple> degree_tuples(std::uint32_t n, std::uint32_t arity) {
  std::vector<DegreeTuple> out;
  if (arity == 0) return out;
  for (std::uint32_t total = 0; total < n; ++total) {
    // Tuples of fixed total degree in descending lexicographic order: start
    // at (total, 0, ..., 0) and step to the lexicographic predecessor.
    DegreeTuple k(arity, 0);
    k[0] = total;
    while (true) {
      out.push_back(k);
      // Rightmost nonzero position among the first arity - 1 entries.
      std::size_t i = arity - 1;
      while (i-- > 0 && k[i] == 0) {
      }
      if (i == static_cast<std::size_t>(-1)) break;
      const std::uint32_t tail = k[arity - 1];
      k[arity - 1] = 0;
      --k[i];
      k[i + 1] = tail + 1;
    }
  }
  return out;
}

std::vector<ShiftTuple> shift_tuples(std::uint32_t p, std::uint32_t arity) {
  std::vector<ShiftTuple> out;
  ShiftTuple j(arity, 0);
  while (true) {
    out.push_back(j);
    std::size_t i = arity;
    while (i-- > 0) {
      if (++j[i] < p) break;
      j[i] = 0;
    }
    if (i == static_cast<std::size_t>(-1)) break;
  }
  return out;
}

FuncTable generator_table(const RingCtx& ctx, const DegreeTuple& degree,
                          const ShiftTuple& shift) {
  if (degree.size() != shift.size()) throw ArityMismatch("degree and shift tuples differ in length");
  const auto arity = static_cast<std::uint32_t>(degree.size());
  return FuncTable::tabulate(ctx, arity, [&](std::span<const Residue> x) -> Residue {
    Residue value = 1 % ctx.q();
    for (std::size_t i = 0; i < arity; ++i) {
      const Residue y = ctx.add(x[i], shift[i] % ctx.q());
      if (y % ctx.p() != 0) return 0;
      value = ctx.mul(value, ctx.pow(y, degree[i]));
    }
    return value;
  });
}

Polynomial generator_polynomial(const RingCtx& ctx, const DegreeTuple& degree,
                                const ShiftTuple& shift) {
  if (degree.size() != shift.size() || degree.empty()) {
    throw ArityMismatch("degree and shift tuples must have the same positive length");
  }
  const auto arity = static_cast<std::uint32_t>(degree.size());
  Polynomial out = Polynomial::constant(ctx, arity, 1);
  for (std::uint32_t i = 0; i < arity; ++i) {
    std::vector<Residue> coeffs = univariate_generator(ctx, degree[i], shift[i] % ctx.q());
    Polynomial factor(ctx, arity);
    Exponents e(arity, 0);
    for (std::size_t t = 0; t < coeffs.size(); ++t) {
      e[i] = static_cast<std::uint32_t>(t);
      factor.add_term(e, coeffs[t]);
    }
    out = out * factor;
  }
  return out;
}

const GeneratorEntry* GeneratorBasis::find(const DegreeTuple& degree,
                                           const ShiftTuple& shift) const {
  for (const GeneratorEntry& entry : entries_) {
    if (entry.degree == degree && entry.shift == shift) return &entry;
  }
  return nullptr;
}

std::uint64_t generator_count(const RingCtx& ctx, std::uint32_t arity) {
  // C(n - 1 + m, m) * p^m
  std::uint64_t binom = 1;
  for (std::uint32_t i = 1; i <= arity; ++i) binom = binom * (ctx.n() - 1 + i) / i;
  std::uint64_t shifts = 1;
  for (std::uint32_t i = 0; i < arity; ++i) shifts *= ctx.p();
  return binom * shifts;
}

GeneratorBasis build_generators(const RingCtx& ctx, std::uint32_t arity,
                                std::uint64_t table_limit) {
  const std::size_t size = table_size(ctx, arity, table_limit);
  std::vector<GeneratorEntry> entries;
  for (const DegreeTuple& k : degree_tuples(ctx.n(), arity)) {
    for (const ShiftTuple& j : shift_tuples(ctx.p(), arity)) {
      FuncTable table = generator_table(ctx, k, j);
      Polynomial poly = generator_polynomial(ctx, k, j);
      std::vector<Residue> args(arity, 0);
      for (std::size_t idx = 0; idx < size; ++idx) {
        args = table.args_of(idx);
        if (poly.evaluate(args) != table[idx]) {
          throw Error("generator polynomial disagrees with its table at index " +
                      std::to_string(idx));
        }
      }
      entries.push_back({k, j, std::move(table), std::move(poly)});
    }
  }
  return GeneratorBasis(ctx, arity, std::move(entries));
}

FuncTable random_span_table(const RingCtx& ctx, std::uint32_t arity, std::mt19937_64& rng) {
  const std::size_t size = table_size(ctx, arity);
  std::uniform_int_distribution<Residue> coeff(0, ctx.q() - 1);
  const std::vector<DegreeTuple> degrees = degree_tuples(ctx.n(), arity);
  std::vector<Residue> values(size);
  FuncTable scratch = FuncTable::zeros(ctx, arity);
  const std::size_t len = ctx.q() / ctx.p();
  // (p * s)^e for s in [0, q/p), e < n.
  std::vector<std::vector<Residue>> powers(len, std::vector<Residue>(ctx.n()));
  for (std::size_t s = 0; s < len; ++s) {
    const Residue ps = static_cast<Residue>(ctx.p() * s % ctx.q());
    for (std::uint32_t e = 0; e < ctx.n(); ++e) powers[s][e] = ctx.pow(ps, e);
  }
  std::vector<Residue> beta(degrees.size());
  for (const ResidueClassView& view : split_classes(scratch)) {
    for (Residue& b : beta) b = coeff(rng);
    for (std::size_t s = 0; s < view.size(); ++s) {
      std::size_t rest = s;
      std::vector<std::size_t> digits(arity);
      for (std::size_t i = arity; i-- > 0;) {
        digits[i] = rest % len;
        rest /= len;
      }
      Residue value = 0;
      for (std::size_t d = 0; d < degrees.size(); ++d) {
        Residue term = beta[d];
        for (std::size_t i = 0; i < arity && term != 0; ++i) {
          term = ctx.mul(term, powers[digits[i]][degrees[d][i]]);
        }
        value = ctx.add(value, term);
      }
      values[view.argument_index(s)] = value;
    }
  }
  return FuncTable(ctx, arity, std::move(values));
}

}  // namespace polyfn
