#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "polyfn/funcspace.hpp"
#include "polyfn/gens.hpp"

namespace polyfn {

// Default work budget for oracle enumerations (candidates or span elements).
inline constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 24;

struct TableHash {
  std::size_t operator()(const std::vector<Residue>& v) const noexcept;
};

// A deduplicated set of function tables over one ring and arity.
class PolyFunctionSet {
 public:
  PolyFunctionSet(RingCtx ctx, std::uint32_t arity, std::uint64_t degree_bound)
      : ctx_(ctx), arity_(arity), degree_bound_(degree_bound) {}

  const RingCtx& ctx() const { return ctx_; }
  std::uint32_t arity() const { return arity_; }
  // Exponent cap used to build the set (0 when built from a span).
  std::uint64_t degree_bound() const { return degree_bound_; }
  std::size_t size() const { return members_.size(); }

  bool insert(std::vector<Residue> values) { return members_.insert(std::move(values)).second; }
  bool contains(std::span<const Residue> values) const;
  bool contains(const FuncTable& f) const;
  const std::unordered_set<std::vector<Residue>, TableHash>& members() const { return members_; }

  friend bool operator==(const PolyFunctionSet& a, const PolyFunctionSet& b) {
    return a.ctx_ == b.ctx_ && a.arity_ == b.arity_ && a.members_ == b.members_;
  }

 private:
  RingCtx ctx_;
  std::uint32_t arity_;
  std::uint64_t degree_bound_;
  std::unordered_set<std::vector<Residue>, TableHash> members_;
};

// Smallest mu with p^n | mu!, found by accumulating the p-adic valuation of
// 1, 2, 3, ... until it reaches n.
std::uint32_t kempner_bound(const RingCtx& ctx);

// Evaluation tables of every polynomial with per-variable degree below
// `degree_cap` (default: the Kempner bound) and coefficients in Z_q.
// Throws BudgetExceeded when q^(cap^m) candidates exceed `budget`.
PolyFunctionSet enumerate_polynomial_functions(const RingCtx& ctx, std::uint32_t arity,
                                               std::uint64_t budget = kDefaultBudget,
                                               std::optional<std::uint32_t> degree_cap = {});

// |P_q| = prod_{k=0}^{q-1} q / gcd(q, k!) = p^exponent. The exponent is exact;
// value() is present only when p^exponent fits 64 bits.
struct FunctionCount {
  std::uint32_t p = 0;
  std::uint64_t exponent = 0;

  std::optional<std::uint64_t> value() const;
  double log10() const;
  std::string to_string() const;
};

FunctionCount count_polynomial_functions(const RingCtx& ctx);

// log10 of q^(q^m), the number of all functions (Z_q)^m -> Z_q.
double log10_function_space_size(const RingCtx& ctx, std::uint32_t arity = 1);

// Every linear combination of the basis tables, deduplicated. Coefficients
// of each generator range over its additive order, so the candidate count
// is the product of orders; BudgetExceeded when that exceeds `budget`.
PolyFunctionSet span_enumerate(const GeneratorBasis& basis,
                               std::uint64_t budget = kDefaultBudget);

// The exhaustive membership procedure: compare f against the table of every
// polynomial of degree below mu, stopping at the first match. No set is
// materialized. BudgetExceeded when q^mu exceeds `budget`.
bool brute_force_member(const FuncTable& f, std::uint64_t budget = kDefaultBudget);

}  // namespace polyfn
