#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <vector>

namespace qtspp {

/// A residue modulo a PrimeModulus, always kept in canonical form [0, p).
struct FieldElement {
  std::uint32_t value = 0;

  constexpr FieldElement() = default;
  constexpr explicit FieldElement(std::uint32_t v) : value(v) {}

  constexpr bool is_zero() const noexcept { return value == 0; }
  friend constexpr bool operator==(FieldElement, FieldElement) = default;
  friend constexpr auto operator<=>(FieldElement, FieldElement) = default;
  friend std::ostream& operator<<(std::ostream& os, FieldElement x) {
    return os << x.value;
  }
};

/// Prime modulus p with 2 < p < 2^31. The upper bound keeps 2p below 2^32,
/// which the vector kernels rely on.
class PrimeModulus {
 public:
  static constexpr std::uint32_t kDefault = 2147483647u;    // 2^31 - 1
  static constexpr std::uint32_t kAlternate = 2147483629u;  // 2^31 - 19

  /// Validates primality (deterministic Miller-Rabin); throws InvalidArgument.
  explicit PrimeModulus(std::uint32_t p = kDefault);

  constexpr std::uint32_t p() const noexcept { return p_; }

  FieldElement from_int(std::int64_t x) const noexcept {
    std::int64_t r = x % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return FieldElement(static_cast<std::uint32_t>(r));
  }
  FieldElement from_uint(std::uint64_t x) const noexcept {
    return FieldElement(static_cast<std::uint32_t>(x % p_));
  }

  FieldElement add(FieldElement a, FieldElement b) const noexcept {
    std::uint32_t s = a.value + b.value;  // < 2^32 since p < 2^31
    return FieldElement(s >= p_ ? s - p_ : s);
  }
  FieldElement sub(FieldElement a, FieldElement b) const noexcept {
    return FieldElement(a.value >= b.value ? a.value - b.value
                                           : a.value + p_ - b.value);
  }
  FieldElement neg(FieldElement a) const noexcept {
    return FieldElement(a.value == 0 ? 0 : p_ - a.value);
  }
  FieldElement mul(FieldElement a, FieldElement b) const noexcept {
    return FieldElement(static_cast<std::uint32_t>(
        static_cast<std::uint64_t>(a.value) * b.value % p_));
  }
  FieldElement pow(FieldElement base, std::uint64_t exp) const noexcept;
  /// Throws ZeroInverse for a = 0.
  FieldElement inv(FieldElement a) const;
  FieldElement div(FieldElement a, FieldElement b) const { return mul(a, inv(b)); }

  /// Smallest m in [1, limit] with x^m = 1, or 0 if there is none.
  std::uint64_t order_up_to(FieldElement x, std::uint64_t limit) const noexcept;

  friend constexpr bool operator==(const PrimeModulus&, const PrimeModulus&) = default;

 private:
  std::uint32_t p_;
};

bool is_prime_u32(std::uint32_t n) noexcept;

/// Multiplicative inverse of a modulo `mod`; throws ZeroInverse for a = 0.
FieldElement mod_inverse(FieldElement a, const PrimeModulus& mod);

using FieldVector = std::vector<FieldElement>;

}  // namespace qtspp
