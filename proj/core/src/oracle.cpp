#include "polyfn/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace polyfn {
namespace {

// log2 of the candidate count, compared against the budget without overflow.
void check_budget(double log2_cost, std::uint64_t budget, const char* what) {
  if (log2_cost > std::log2(static_cast<double>(budget)) + 1e-9) {
    std::ostringstream msg;
    msg << what << " needs about 2^" << log2_cost << " candidates, budget is " << budget;
    throw BudgetExceeded(msg.str(), std::exp2(log2_cost));
  }
}

// Tables of x^e for every exponent tuple in [0, cap)^m.
std::vector<std::vector<Residue>> monomial_tables(const RingCtx& ctx, std::uint32_t arity,
                                                  std::uint32_t cap) {
  std::vector<std::vector<Residue>> tables;
  Exponents e(arity, 0);
  while (true) {
    FuncTable t = FuncTable::tabulate(ctx, arity, [&](std::span<const Residue> x) {
      Residue v = 1 % ctx.q();
      for (std::size_t i = 0; i < arity; ++i) v = ctx.mul(v, ctx.pow(x[i], e[i]));
      return v;
    });
    tables.emplace_back(t.values().begin(), t.values().end());
    std::size_t i = arity;
    while (i-- > 0) {
      if (++e[i] < cap) break;
      e[i] = 0;
    }
    if (i == static_cast<std::size_t>(-1)) break;
  }
  return tables;
}

// Walks every coefficient vector with digit i in [0, orders[i]) and calls
// visit(table) with the running combination sum_i digit_i * generators[i].
// Incrementing digit i adds generators[i]; a wrap from orders[i] - 1 to 0
// subtracts (orders[i] - 1) * generators[i], which is the same as adding
// generators[i] once more when orders[i] is its additive order.
template <typename Visit>
void walk_combinations(const RingCtx& ctx, const std::vector<std::vector<Residue>>& generators,
                       const std::vector<std::uint64_t>& orders, std::size_t table_len,
                       Visit&& visit) {
  std::vector<Residue> acc(table_len, 0);
  std::vector<std::uint64_t> digits(generators.size(), 0);
  while (true) {
    if (!visit(acc)) return;
    std::size_t i = 0;
    for (; i < generators.size(); ++i) {
      const auto& g = generators[i];
      for (std::size_t x = 0; x < table_len; ++x) acc[x] = ctx.add(acc[x], g[x]);
      if (++digits[i] < orders[i]) break;
      digits[i] = 0;
    }
    if (i == generators.size()) return;
  }
}

std::uint64_t additive_order(const RingCtx& ctx, std::span<const Residue> table) {
  std::uint32_t min_val = ctx.n();
  for (Residue v : table) min_val = std::min(min_val, ctx.val_p(v));
  return ctx.q() / static_cast<std::uint64_t>(std::pow(ctx.p(), min_val) + 0.5);
}

}  // namespace

std::size_t TableHash::operator()(const std::vector<Residue>& v) const noexcept {
  // FNV-1a over the 32-bit entries.
  std::uint64_t h = 1469598103934665603ull;
  for (Residue x : v) {
    h ^= x;
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

bool PolyFunctionSet::contains(std::span<const Residue> values) const {
  return members_.count(std::vector<Residue>(values.begin(), values.end())) != 0;
}

bool PolyFunctionSet::contains(const FuncTable& f) const {
  if (!(f.ctx() == ctx_) || f.arity() != arity_) return false;
  return contains(f.values());
}

std::uint32_t kempner_bound(const RingCtx& ctx) {
  std::uint64_t valuation = 0;
  std::uint32_t m = 0;
  while (valuation < ctx.n()) {
    ++m;
    std::uint32_t k = m;
    while (k % ctx.p() == 0) {
      k /= ctx.p();
      ++valuation;
    }
  }
  return std::max<std::uint32_t>(m, 1);
}

PolyFunctionSet enumerate_polynomial_functions(const RingCtx& ctx, std::uint32_t arity,
                                               std::uint64_t budget,
                                               std::optional<std::uint32_t> degree_cap) {
  const std::uint32_t cap = degree_cap.value_or(kempner_bound(ctx));
  const std::size_t len = table_size(ctx, arity);
  const double monomials = std::pow(static_cast<double>(cap), arity);
  check_budget(monomials * std::log2(static_cast<double>(ctx.q())), budget,
               "polynomial enumeration");
  const auto tables = monomial_tables(ctx, arity, cap);
  const std::vector<std::uint64_t> orders(tables.size(), ctx.q());
  PolyFunctionSet out(ctx, arity, cap);
  walk_combinations(ctx, tables, orders, len, [&](const std::vector<Residue>& t) {
    out.insert(t);
    return true;
  });
  return out;
}

std::optional<std::uint64_t> FunctionCount::value() const {
  std::uint64_t v = 1;
  for (std::uint64_t i = 0; i < exponent; ++i) {
    if (v > UINT64_MAX / p) return std::nullopt;
    v *= p;
  }
  return v;
}

double FunctionCount::log10() const {
  return static_cast<double>(exponent) * std::log10(static_cast<double>(p));
}

std::string FunctionCount::to_string() const {
  if (auto v = value()) return std::to_string(*v);
  return std::to_string(p) + "^" + std::to_string(exponent);
}

FunctionCount count_polynomial_functions(const RingCtx& ctx) {
  // q / gcd(q, k!) = p^(n - min(n, v_p(k!))); terms vanish once v_p(k!) >= n.
  FunctionCount count{ctx.p(), 0};
  for (std::uint64_t k = 0; k < ctx.q(); ++k) {
    const std::uint64_t v = factorial_valuation(k, ctx.p());
    if (v >= ctx.n()) break;
    count.exponent += ctx.n() - v;
  }
  return count;
}

double log10_function_space_size(const RingCtx& ctx, std::uint32_t arity) {
  const double entries = std::pow(static_cast<double>(ctx.q()), arity);
  return entries * std::log10(static_cast<double>(ctx.q()));
}

PolyFunctionSet span_enumerate(const GeneratorBasis& basis, std::uint64_t budget) {
  const RingCtx& ctx = basis.ctx();
  std::vector<std::vector<Residue>> tables;
  std::vector<std::uint64_t> orders;
  double log2_cost = 0;
  for (const GeneratorEntry& entry : basis.entries()) {
    const std::uint64_t order = additive_order(ctx, entry.table.values());
    if (order <= 1) continue;  // zero table
    tables.emplace_back(entry.table.values().begin(), entry.table.values().end());
    orders.push_back(order);
    log2_cost += std::log2(static_cast<double>(order));
  }
  check_budget(log2_cost, budget, "span enumeration");
  PolyFunctionSet out(ctx, basis.arity(), 0);
  walk_combinations(ctx, tables, orders, table_size(ctx, basis.arity()),
                    [&](const std::vector<Residue>& t) {
                      out.insert(t);
                      return true;
                    });
  return out;
}

bool brute_force_member(const FuncTable& f, std::uint64_t budget) {
  const RingCtx& ctx = f.ctx();
  const std::uint32_t cap = kempner_bound(ctx);
  const double monomials = std::pow(static_cast<double>(cap), f.arity());
  check_budget(monomials * std::log2(static_cast<double>(ctx.q())), budget,
               "brute-force membership");
  const auto tables = monomial_tables(ctx, f.arity(), cap);
  const std::vector<std::uint64_t> orders(tables.size(), ctx.q());
  const std::span<const Residue> target = f.values();
  bool found = false;
  walk_combinations(ctx, tables, orders, f.size(), [&](const std::vector<Residue>& t) {
    found = std::equal(t.begin(), t.end(), target.begin());
    return !found;
  });
  return found;
}

}  // namespace polyfn
