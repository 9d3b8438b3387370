#include "qtspp/field.hpp"

#include <string>

#include "qtspp/errors.hpp"

namespace qtspp {

namespace {

std::uint64_t powmod_u64(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e > 0) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime_u32(std::uint32_t n) noexcept {
  if (n < 2) return false;
  for (std::uint32_t small : {2u, 3u, 5u, 7u}) {
    if (n == small) return true;
    if (n % small == 0) return false;
  }
  // Bases 2, 3, 5, 7 are deterministic below 3.2e9.
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2u, 3u, 5u, 7u}) {
    std::uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = x * x % n;
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

PrimeModulus::PrimeModulus(std::uint32_t p) : p_(p) {
  if (p <= 2 || p >= (1u << 31) || !is_prime_u32(p)) {
    throw InvalidArgument("modulus must be an odd prime below 2^31, got " +
                          std::to_string(p));
  }
}

FieldElement PrimeModulus::pow(FieldElement base, std::uint64_t exp) const noexcept {
  return FieldElement(static_cast<std::uint32_t>(powmod_u64(base.value, exp, p_)));
}

FieldElement PrimeModulus::inv(FieldElement a) const {
  if (a.is_zero()) throw ZeroInverse("inverse of 0 modulo " + std::to_string(p_));
  std::int64_t r0 = p_, r1 = a.value, t0 = 0, t1 = 1;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::int64_t r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
    std::int64_t t2 = t0 - q * t1;
    t0 = t1;
    t1 = t2;
  }
  return from_int(t0);
}

std::uint64_t PrimeModulus::order_up_to(FieldElement x, std::uint64_t limit) const noexcept {
  if (x.is_zero()) return 0;
  FieldElement acc = x;
  for (std::uint64_t m = 1; m <= limit; ++m) {
    if (acc.value == 1) return m;
    acc = mul(acc, x);
  }
  return 0;
}

FieldElement mod_inverse(FieldElement a, const PrimeModulus& mod) { return mod.inv(a); }

}  // namespace qtspp
