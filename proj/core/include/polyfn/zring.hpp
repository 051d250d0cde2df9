#pragma once

#include <cstdint>
#include <vector>

#include "polyfn/error.hpp"

namespace polyfn {

// An element of Z_q kept in canonical form [0, q).
using Residue = std::uint32_t;

// Largest modulus accepted by RingCtx. Sums of two residues fit in 32 bits.
inline constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << 31;

// The ring Z_{p^n}. Construction validates that p is prime and that p^n
// fits below kMaxModulus; every other component assumes a valid context.
class RingCtx {
 public:
  RingCtx(std::uint32_t p, std::uint32_t n);

  std::uint32_t p() const { return p_; }
  std::uint32_t n() const { return n_; }
  std::uint32_t q() const { return q_; }
  std::uint32_t phi() const { return phi_; }
  // Smallest mu with p^n | mu!.
  std::uint32_t mu() const { return mu_; }

  std::uint32_t totient() const { return phi_; }

  Residue reduce(std::int64_t x) const {
    std::int64_t r = x % static_cast<std::int64_t>(q_);
    return static_cast<Residue>(r < 0 ? r + q_ : r);
  }

  Residue add(Residue a, Residue b) const {
    Residue s = a + b;
    return s >= q_ ? s - q_ : s;
  }
  Residue sub(Residue a, Residue b) const { return a >= b ? a - b : a + q_ - b; }
  Residue neg(Residue a) const { return a == 0 ? 0 : q_ - a; }
  Residue mul(Residue a, Residue b) const {
    return static_cast<Residue>(std::uint64_t{a} * b % q_);
  }
  Residue pow(Residue base, std::uint64_t exponent) const;

  // p-adic valuation, with val_p(0) = n.
  std::uint32_t val_p(Residue a) const;
  // a / p^{val_p(a)} as an integer; a unit modulo q whenever a != 0.
  Residue unit_part(Residue a) const;
  // Inverse of a unit. Throws NotAUnit when p | a.
  Residue inv_unit(Residue a) const;
  // p^e mod q (zero once e >= n).
  Residue p_power(std::uint32_t e) const;

  bool is_unit(Residue a) const { return !divisible(a); }

  // p | a, tested with a multiply instead of a division.
  bool divisible(Residue a) const {
    if (p_ == 2) return (a & 1) == 0;
    return static_cast<std::uint32_t>(a * p_inv_) <= p_limit_;
  }

  // C(d, t) mod q for t = 0..d, computed by tracking the p-adic valuation
  // and unit part of the running product so no division by p is needed.
  std::vector<Residue> binomial_row(std::uint64_t d) const;

  friend bool operator==(const RingCtx& a, const RingCtx& b) {
    return a.p_ == b.p_ && a.n_ == b.n_;
  }

 private:
  std::uint32_t p_;
  std::uint32_t n_;
  std::uint32_t q_;
  std::uint32_t phi_;
  std::uint32_t mu_;
  std::uint32_t p_inv_ = 0;    // p^-1 mod 2^32 for odd p
  std::uint32_t p_limit_ = 0;  // (2^32 - 1) / p
};

bool is_prime(std::uint64_t x);

// Exponent of p in m! (Legendre's formula).
std::uint64_t factorial_valuation(std::uint64_t m, std::uint32_t p);

}  // namespace polyfn
