#include "polyfn/polynomial.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "polyfn/error.hpp"

namespace polyfn {

Polynomial::Polynomial(RingCtx ctx, std::uint32_t arity) : ctx_(ctx), arity_(arity) {
  if (arity_ == 0) throw ArityMismatch("polynomial arity must be at least 1");
}

Polynomial Polynomial::constant(const RingCtx& ctx, std::uint32_t arity, Residue c) {
  Polynomial out(ctx, arity);
  out.add_term(Exponents(arity, 0), c);
  return out;
}

Polynomial Polynomial::monomial(const RingCtx& ctx, std::uint32_t arity, Exponents exponents,
                                Residue coefficient) {
  if (exponents.size() != arity) throw ArityMismatch("exponent tuple does not match arity");
  Polynomial out(ctx, arity);
  out.add_term(exponents, coefficient);
  return out;
}

Residue Polynomial::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? 0 : it->second;
}

void Polynomial::add_term(const Exponents& e, Residue c) {
  if (e.size() != arity_) throw ArityMismatch("exponent tuple does not match arity");
  c %= ctx_.q();
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second = ctx_.add(it->second, c);
    if (it->second == 0) terms_.erase(it);
  }
}

std::uint64_t Polynomial::max_degree() const {
  std::uint64_t d = 0;
  for (const auto& [e, c] : terms_) {
    for (std::uint32_t x : e) d = std::max<std::uint64_t>(d, x);
  }
  return d;
}

std::uint64_t Polynomial::total_degree() const {
  std::uint64_t d = 0;
  for (const auto& [e, c] : terms_) {
    std::uint64_t t = 0;
    for (std::uint32_t x : e) t += x;
    d = std::max(d, t);
  }
  return d;
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  if (!(ctx_ == other.ctx_) || arity_ != other.arity_) {
    throw DimensionMismatch("cannot add polynomials over different rings");
  }
  Polynomial out = *this;
  for (const auto& [e, c] : other.terms_) out.add_term(e, c);
  return out;
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
  if (!(ctx_ == other.ctx_) || arity_ != other.arity_) {
    throw DimensionMismatch("cannot multiply polynomials over different rings");
  }
  Polynomial out(ctx_, arity_);
  Exponents e(arity_);
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : other.terms_) {
      for (std::size_t i = 0; i < arity_; ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ctx_.mul(ca, cb));
    }
  }
  return out;
}

Polynomial Polynomial::scaled(Residue c) const {
  Polynomial out(ctx_, arity_);
  for (const auto& [e, coeff] : terms_) out.add_term(e, ctx_.mul(coeff, c % ctx_.q()));
  return out;
}

Residue Polynomial::evaluate(std::span<const Residue> args) const {
  if (args.size() != arity_) throw ArityMismatch("argument count does not match arity");
  Residue sum = 0;
  for (const auto& [e, c] : terms_) {
    Residue term = c;
    for (std::size_t i = 0; i < arity_; ++i) term = ctx_.mul(term, ctx_.pow(args[i], e[i]));
    sum = ctx_.add(sum, term);
  }
  return sum;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) out << " + ";
    first = false;
    bool constant = std::all_of(e.begin(), e.end(), [](std::uint32_t x) { return x == 0; });
    if (c != 1 || constant) out << c;
    bool need_sep = c != 1;
    for (std::size_t i = 0; i < arity_; ++i) {
      if (e[i] == 0) continue;
      if (need_sep && arity_ > 1) out << '*';
      out << 'x';
      if (arity_ > 1) out << (i + 1);
      if (e[i] > 1) out << '^' << e[i];
      need_sep = true;
    }
  }
  return out.str();
}

}  // namespace polyfn
