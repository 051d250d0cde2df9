#include "polyfn/funcspace.hpp"

#include <string>
#include <utility>

namespace polyfn {

std::size_t table_size(const RingCtx& ctx, std::uint32_t arity, std::uint64_t limit) {
  if (arity == 0) throw ArityMismatch("arity must be at least 1");
  std::uint64_t size = 1;
  for (std::uint32_t i = 0; i < arity; ++i) {
    size *= ctx.q();
    if (size > limit) {
      throw CapacityExceeded("table of " + std::to_string(ctx.q()) + "^" +
                             std::to_string(arity) + " entries exceeds limit " +
                             std::to_string(limit));
    }
  }
  return static_cast<std::size_t>(size);
}

FuncTable::FuncTable(RingCtx ctx, std::uint32_t arity, std::vector<Residue> values)
    : ctx_(ctx), arity_(arity), values_(std::move(values)) {
  const std::size_t expected = table_size(ctx_, arity_);
  if (values_.size() != expected) {
    throw DimensionMismatch("table has " + std::to_string(values_.size()) +
                            " entries, expected " + std::to_string(expected));
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] >= ctx_.q()) {
      throw DimensionMismatch("entry " + std::to_string(i) + " = " +
                              std::to_string(values_[i]) + " is not reduced mod " +
                              std::to_string(ctx_.q()));
    }
  }
}

FuncTable FuncTable::zeros(const RingCtx& ctx, std::uint32_t arity) {
  return FuncTable(ctx, arity, std::vector<Residue>(table_size(ctx, arity), 0));
}

FuncTable FuncTable::tabulate(const RingCtx& ctx, std::uint32_t arity,
                              const std::function<Residue(std::span<const Residue>)>& fn) {
  const std::size_t size = table_size(ctx, arity);
  std::vector<Residue> values(size);
  std::vector<Residue> args(arity, 0);
  for (std::size_t idx = 0; idx < size; ++idx) {
    values[idx] = fn(args) % ctx.q();
    // Odometer increment, last coordinate fastest.
    for (std::size_t i = arity; i-- > 0;) {
      if (++args[i] < ctx.q()) break;
      args[i] = 0;
    }
  }
  return FuncTable(ctx, arity, std::move(values));
}

std::size_t FuncTable::index_of(std::span<const Residue> args) const {
  if (args.size() != arity_) throw ArityMismatch("argument count does not match arity");
  std::size_t idx = 0;
  for (Residue a : args) idx = idx * ctx_.q() + a % ctx_.q();
  return idx;
}

std::vector<Residue> FuncTable::args_of(std::size_t index) const {
  std::vector<Residue> args(arity_);
  for (std::size_t i = arity_; i-- > 0;) {
    args[i] = static_cast<Residue>(index % ctx_.q());
    index /= ctx_.q();
  }
  return args;
}

FuncTable FuncTable::operator+(const FuncTable& other) const {
  if (!(ctx_ == other.ctx_) || arity_ != other.arity_) {
    throw DimensionMismatch("cannot add tables over different domains");
  }
  std::vector<Residue> out(values_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = ctx_.add(values_[i], other.values_[i]);
  return FuncTable(ctx_, arity_, std::move(out));
}

FuncTable FuncTable::scaled(Residue c) const {
  std::vector<Residue> out(values_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = ctx_.mul(values_[i], c % ctx_.q());
  return FuncTable(ctx_, arity_, std::move(out));
}

FuncTable cyclic_shift(const FuncTable& f, std::span<const std::int64_t> shift) {
  if (shift.size() != f.arity()) throw ArityMismatch("shift tuple does not match arity");
  const RingCtx& ctx = f.ctx();
  std::vector<Residue> offsets(shift.size());
  for (std::size_t i = 0; i < shift.size(); ++i) offsets[i] = ctx.reduce(shift[i]);
  std::vector<Residue> moved(f.arity());
  return FuncTable::tabulate(ctx, f.arity(), [&](std::span<const Residue> x) {
    for (std::size_t i = 0; i < x.size(); ++i) moved[i] = ctx.add(x[i], offsets[i]);
    return f.at(moved);
  });
}

ResidueClassView::ResidueClassView(const FuncTable& parent,
                                   std::vector<std::uint32_t> class_index)
    : parent_(&parent), class_index_(std::move(class_index)), base_(0), size_(1) {
  const RingCtx& ctx = parent.ctx();
  if (class_index_.size() != parent.arity()) {
    throw ArityMismatch("class tuple does not match arity");
  }
  const std::size_t stride = ctx.q() / ctx.p();
  for (std::uint32_t c : class_index_) {
    if (c >= ctx.p()) throw DimensionMismatch("class index component must be below p");
    base_ = base_ * ctx.q() + c;
    size_ *= stride;
  }
}

std::size_t ResidueClassView::argument_index(std::size_t s) const {
  const RingCtx& ctx = parent_->ctx();
  const std::size_t len = ctx.q() / ctx.p();
  const std::size_t m = class_index_.size();
  if (m == 1) return base_ + ctx.p() * s;
  std::size_t idx = 0;
  std::size_t scale = 1;
  for (std::size_t i = m; i-- > 0;) {
    const std::size_t digit = s % len;
    s /= len;
    idx += (class_index_[i] + ctx.p() * digit) * scale;
    scale *= ctx.q();
  }
  return idx;
}

std::vector<Residue> ResidueClassView::values() const {
  std::vector<Residue> out(size_);
  for (std::size_t s = 0; s < size_; ++s) out[s] = (*this)[s];
  return out;
}

std::vector<ResidueClassView> split_classes(const FuncTable& f) {
  const std::uint32_t p = f.ctx().p();
  std::vector<ResidueClassView> views;
  std::vector<std::uint32_t> cls(f.arity(), 0);
  while (true) {
    views.emplace_back(f, cls);
    std::size_t i = cls.size();
    while (i-- > 0) {
      if (++cls[i] < p) break;
      cls[i] = 0;
    }
    if (i == static_cast<std::size_t>(-1)) break;
  }
  return views;
}

FuncTable recombine(const RingCtx& ctx, std::uint32_t arity,
                    std::span<const ResidueClassView> views) {
  std::vector<Residue> values(table_size(ctx, arity), 0);
  for (const ResidueClassView& view : views) {
    for (std::size_t s = 0; s < view.size(); ++s) values[view.argument_index(s)] = view[s];
  }
  return FuncTable(ctx, arity, std::move(values));
}

}  // namespace polyfn
