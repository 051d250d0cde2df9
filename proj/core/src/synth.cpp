#include "polyfn/synth.hpp"

#include <map>
#include <string>

namespace polyfn {

SynthesizedPolynomial synthesize(const Witness& witness, const GeneratorBasis& basis) {
  const RingCtx& ctx = basis.ctx();
  Polynomial poly(ctx, basis.arity());
  FuncTable expected = FuncTable::zeros(ctx, basis.arity());
  for (const auto& [key, alpha] : witness.coefficients) {
    const GeneratorEntry* entry = basis.find(key.first, key.second);
    if (entry == nullptr) {
      throw UnknownGenerator("witness references a generator outside the basis");
    }
    poly = poly + entry->polynomial.scaled(alpha);
    expected = expected + entry->table.scaled(alpha);
  }
  SynthesizedPolynomial out{poly, witness, false};
  out.verified = eval_polynomial(poly) == expected;
  return out;
}

FuncTable eval_polynomial(const Polynomial& poly, std::uint64_t table_limit) {
  const RingCtx& ctx = poly.ctx();
  const std::uint32_t m = poly.arity();
  const std::size_t size = table_size(ctx, m, table_limit);

  // Group terms by the exponents of x_2..x_m; within a group the polynomial
  // in x_1 is dense enough for Horner.
  std::map<Exponents, std::map<std::uint32_t, Residue>> groups;
  for (const auto& [e, c] : poly.terms()) {
    Exponents rest(e.begin() + 1, e.end());
    groups[rest][e[0]] = c;
  }

  std::vector<Residue> values(size, 0);
  std::vector<Residue> args(m, 0);
  for (std::size_t idx = 0; idx < size; ++idx) {
    const Residue x1 = args[0];
    Residue total = 0;
    for (const auto& [rest, coeffs] : groups) {
      // Horner over descending exponents of x_1, bridging gaps with pow.
      Residue acc = 0;
      std::uint32_t prev = 0;
      bool first = true;
      for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        if (!first) acc = ctx.mul(acc, ctx.pow(x1, prev - it->first));
        acc = ctx.add(acc, it->second);
        prev = it->first;
        first = false;
      }
      acc = ctx.mul(acc, ctx.pow(x1, prev));
      for (std::size_t i = 1; i < m; ++i) acc = ctx.mul(acc, ctx.pow(args[i], rest[i - 1]));
      total = ctx.add(total, acc);
    }
    values[idx] = total;
    for (std::size_t i = m; i-- > 0;) {
      if (++args[i] < ctx.q()) break;
      args[i] = 0;
    }
  }
  return FuncTable(ctx, m, std::move(values));
}

}  // namespace polyfn
