#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "polyfn/zring.hpp"

namespace polyfn {

// Default cap on q^m for any materialized table.
inline constexpr std::uint64_t kDefaultTableLimit = std::uint64_t{1} << 24;

// q^m, throwing CapacityExceeded when it exceeds `limit`.
std::size_t table_size(const RingCtx& ctx, std::uint32_t arity,
                       std::uint64_t limit = kDefaultTableLimit);

// A total function (Z_q)^m -> Z_q. Values are stored in lexicographic
// argument order with x_1 most significant, so the argument (x_1, ..., x_m)
// lives at index sum_i x_i * q^(m-i).
class FuncTable {
 public:
  FuncTable(RingCtx ctx, std::uint32_t arity, std::vector<Residue> values);

  // Table with every entry zero.
  static FuncTable zeros(const RingCtx& ctx, std::uint32_t arity);

  // Tabulates `fn` over every argument tuple.
  static FuncTable tabulate(const RingCtx& ctx, std::uint32_t arity,
                            const std::function<Residue(std::span<const Residue>)>& fn);

  const RingCtx& ctx() const { return ctx_; }
  std::uint32_t arity() const { return arity_; }
  std::size_t size() const { return values_.size(); }
  std::span<const Residue> values() const { return values_; }

  Residue operator[](std::size_t index) const { return values_[index]; }
  Residue at(std::span<const Residue> args) const { return values_[index_of(args)]; }

  std::size_t index_of(std::span<const Residue> args) const;
  std::vector<Residue> args_of(std::size_t index) const;

  FuncTable operator+(const FuncTable& other) const;
  FuncTable scaled(Residue c) const;

  friend bool operator==(const FuncTable& a, const FuncTable& b) {
    return a.ctx_ == b.ctx_ && a.arity_ == b.arity_ && a.values_ == b.values_;
  }

 private:
  RingCtx ctx_;
  std::uint32_t arity_;
  std::vector<Residue> values_;
};

// g(x) = f(x + shift mod q), componentwise. Shift components may be any
// integers; they are reduced mod q.
FuncTable cyclic_shift(const FuncTable& f, std::span<const std::int64_t> shift);

// The restriction of a table to arguments congruent to a fixed class tuple
// modulo p: entry s (lexicographic over [0, q/p)^m) is f(c + p*s). The view
// references the parent table and must not outlive it.
class ResidueClassView {
 public:
  ResidueClassView(const FuncTable& parent, std::vector<std::uint32_t> class_index);

  const std::vector<std::uint32_t>& class_index() const { return class_index_; }
  // Number of entries, (q/p)^m.
  std::size_t size() const { return size_; }
  // Flat index into the parent table of entry `s`.
  std::size_t argument_index(std::size_t s) const;
  Residue operator[](std::size_t s) const { return (*parent_)[argument_index(s)]; }

  std::vector<Residue> values() const;

 private:
  const FuncTable* parent_;
  std::vector<std::uint32_t> class_index_;
  std::size_t base_;
  std::size_t size_;
};

// The p^m class views in lexicographic class order.
std::vector<ResidueClassView> split_classes(const FuncTable& f);

// Re-embeds class views at their argument positions.
FuncTable recombine(const RingCtx& ctx, std::uint32_t arity,
                    std::span<const ResidueClassView> views);

}  // namespace polyfn
