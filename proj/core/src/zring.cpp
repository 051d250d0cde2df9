#include "polyfn/zring.hpp"

#include <string>

namespace polyfn {

bool is_prime(std::uint64_t x) {
  if (x < 2) return false;
  for (std::uint64_t d = 2; d * d <= x; ++d) {
    if (x % d == 0) return false;
  }
  return true;
}

std::uint64_t factorial_valuation(std::uint64_t m, std::uint32_t p) {
  std::uint64_t v = 0;
  while (m > 0) {
    m /= p;
    v += m;
  }
  return v;
}

RingCtx::RingCtx(std::uint32_t p, std::uint32_t n) : p_(p), n_(n) {
  if (!is_prime(p)) {
    throw InvalidRing("p = " + std::to_string(p) + " is not prime");
  }
  if (n == 0) throw InvalidRing("n must be positive");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < n; ++i) {
    q *= p;
    if (q >= kMaxModulus) {
      throw InvalidRing("p^n = " + std::to_string(p) + "^" + std::to_string(n) +
                        " does not fit the native word");
    }
  }
  q_ = static_cast<std::uint32_t>(q);
  phi_ = q_ - q_ / p_;
  std::uint32_t m = 1;
  while (factorial_valuation(m, p_) < n_) ++m;
  mu_ = m;
  if (p_ != 2) {
    // Newton iteration for the inverse of an odd number modulo 2^32.
    std::uint32_t inv = p_;
    for (int i = 0; i < 4; ++i) inv *= 2 - p_ * inv;
    p_inv_ = inv;
    p_limit_ = UINT32_MAX / p_;
  }
}

Residue RingCtx::pow(Residue base, std::uint64_t exponent) const {
  std::uint64_t result = 1 % q_;
  std::uint64_t b = base % q_;
  while (exponent > 0) {
    if (exponent & 1) result = result * b % q_;
    b = b * b % q_;
    exponent >>= 1;
  }
  return static_cast<Residue>(result);
}

std::uint32_t RingCtx::val_p(Residue a) const {
  if (a == 0) return n_;
  std::uint32_t e = 0;
  while (a % p_ == 0) {
    a /= p_;
    ++e;
  }
  return e;
}

Residue RingCtx::unit_part(Residue a) const {
  if (a == 0) return 0;
  while (a % p_ == 0) a /= p_;
  return a;
}

Residue RingCtx::inv_unit(Residue a) const {
  a %= q_;
  if (a % p_ == 0) {
    throw NotAUnit(std::to_string(a) + " is not a unit modulo " + std::to_string(q_));
  }
  // Extended Euclid on (a, q).
  std::int64_t r0 = q_, r1 = a;
  std::int64_t t0 = 0, t1 = 1;
  while (r1 != 0) {
    std::int64_t quot = r0 / r1;
    std::int64_t r2 = r0 - quot * r1;
    r0 = r1;
    r1 = r2;
    std::int64_t t2 = t0 - quot * t1;
    t0 = t1;
    t1 = t2;
  }
  return reduce(t0);
}

Residue RingCtx::p_power(std::uint32_t e) const {
  if (e >= n_) return 0;
  Residue r = 1;
  for (std::uint32_t i = 0; i < e; ++i) r *= p_;
  return r % q_;
}

std::vector<Residue> RingCtx::binomial_row(std::uint64_t d) const {
  std::vector<Residue> row(d + 1);
  row[0] = 1 % q_;
  std::uint64_t valuation = 0;
  Residue unit = 1 % q_;
  for (std::uint64_t t = 1; t <= d; ++t) {
    // C(d, t) = C(d, t-1) * (d - t + 1) / t
    std::uint64_t num = d - t + 1;
    std::uint64_t den = t;
    while (num % p_ == 0) {
      num /= p_;
      ++valuation;
    }
    while (den % p_ == 0) {
      den /= p_;
      --valuation;
    }
    unit = mul(unit, static_cast<Residue>(num % q_));
    unit = mul(unit, inv_unit(static_cast<Residue>(den % q_)));
    row[t] = valuation >= n_ ? 0 : mul(unit, p_power(static_cast<std::uint32_t>(valuation)));
  }
  return row;
}

}  // namespace polyfn
