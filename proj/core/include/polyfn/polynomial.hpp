#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "polyfn/zring.hpp"

namespace polyfn {

// Exponent tuple (e_1, ..., e_m) of a monomial x_1^e_1 ... x_m^e_m.
using Exponents = std::vector<std::uint32_t>;

// A sparse polynomial in m variables over Z_q. Zero coefficients are never
// stored.
class Polynomial {
 public:
  Polynomial(RingCtx ctx, std::uint32_t arity);

  static Polynomial constant(const RingCtx& ctx, std::uint32_t arity, Residue c);
  // coefficient * x_1^e_1 ... x_m^e_m.
  static Polynomial monomial(const RingCtx& ctx, std::uint32_t arity, Exponents exponents,
                             Residue coefficient = 1);

  const RingCtx& ctx() const { return ctx_; }
  std::uint32_t arity() const { return arity_; }
  const std::map<Exponents, Residue>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Residue coefficient(const Exponents& e) const;
  // Adds c to the coefficient of x^e, dropping the term if it cancels.
  void add_term(const Exponents& e, Residue c);

  // Largest exponent of any single variable.
  std::uint64_t max_degree() const;
  std::uint64_t total_degree() const;

  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator*(const Polynomial& other) const;
  Polynomial scaled(Residue c) const;

  Residue evaluate(std::span<const Residue> args) const;

  // "2 + 6x + 2x^2" (m = 1) or "x1*x2^2 + 3" style text.
  std::string to_string() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.ctx_ == b.ctx_ && a.arity_ == b.arity_ && a.terms_ == b.terms_;
  }

 private:
  RingCtx ctx_;
  std::uint32_t arity_;
  std::map<Exponents, Residue> terms_;
};

}  // namespace polyfn
