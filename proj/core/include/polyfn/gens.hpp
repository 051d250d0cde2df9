#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "polyfn/funcspace.hpp"
#include "polyfn/polynomial.hpp"
#include "polyfn/zring.hpp"

namespace polyfn {

// Inline storage covers up to four variables without touching the heap.
using DegreeTuple = boost::container::small_vector<std::uint32_t, 4>;
using ShiftTuple = boost::container::small_vector<std::uint32_t, 4>;

// All degree tuples k in N^m with k_1 + ... + k_m < n, in graded order:
// ascending total degree, ties broken by descending lexicographic order
// ((1,0) before (0,1)).
std::vector<DegreeTuple> degree_tuples(std::uint32_t n, std::uint32_t arity);

// All shift tuples in [0, p)^m, lexicographic.
std::vector<ShiftTuple> shift_tuples(std::uint32_t p, std::uint32_t arity);

// Table of u_k shifted by j: the value at x is prod_i (x_i + j_i)^{k_i} when
// p divides every x_i + j_i, and 0 otherwise.
FuncTable generator_table(const RingCtx& ctx, const DegreeTuple& degree, const ShiftTuple& shift);

// prod_i (x_i + j_i)^{k_i} (1 - (x_i + j_i)^phi), fully expanded mod q.
Polynomial generator_polynomial(const RingCtx& ctx, const DegreeTuple& degree,
                                const ShiftTuple& shift);

struct GeneratorEntry {
  DegreeTuple degree;
  ShiftTuple shift;
  FuncTable table;
  Polynomial polynomial;
};

// The generating set of the module of polynomial functions in m variables:
// every u_k with |k| < n together with its shifts by [0, p)^m. Entries are
// ordered degree-major; each entry's polynomial has been checked to evaluate
// to its table.
class GeneratorBasis {
 public:
  GeneratorBasis(RingCtx ctx, std::uint32_t arity, std::vector<GeneratorEntry> entries)
      : ctx_(ctx), arity_(arity), entries_(std::move(entries)) {}

  const RingCtx& ctx() const { return ctx_; }
  std::uint32_t arity() const { return arity_; }
  const std::vector<GeneratorEntry>& entries() const { return entries_; }

  const GeneratorEntry* find(const DegreeTuple& degree, const ShiftTuple& shift) const;

 private:
  RingCtx ctx_;
  std::uint32_t arity_;
  std::vector<GeneratorEntry> entries_;
};

GeneratorBasis build_generators(const RingCtx& ctx, std::uint32_t arity,
                                std::uint64_t table_limit = kDefaultTableLimit);

// Number of generator entries, C(n-1+m, m) * p^m.
std::uint64_t generator_count(const RingCtx& ctx, std::uint32_t arity);

// A uniformly random coefficient choice over the class-local generator
// family, tabulated directly in O(q^m * n) without building the basis.
// Every result is a polynomial function.
FuncTable random_span_table(const RingCtx& ctx, std::uint32_t arity, std::mt19937_64& rng);

}  // namespace polyfn
