#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qtspp/bigint.hpp"
#include "qtspp/field.hpp"

namespace qtspp {

/// Polynomial in one variable with arbitrary-precision integer coefficients,
/// lowest degree first, trimmed.
class IntegerPoly {
 public:
  IntegerPoly() = default;
  explicit IntegerPoly(std::vector<BigInt> coeffs);

  const std::vector<BigInt>& coefficients() const noexcept { return c_; }
  bool is_zero() const noexcept { return c_.empty(); }
  long degree() const noexcept { return static_cast<long>(c_.size()) - 1; }
  BigInt coeff(std::size_t k) const { return k < c_.size() ? c_[k] : BigInt(0); }

  /// gcd of the coefficients (0 for the zero polynomial).
  BigInt content() const;
  /// Largest |coefficient|.
  BigInt max_abs() const;
  BigInt evaluate(const BigInt& x) const;
  FieldElement evaluate(FieldElement x, const PrimeModulus& mod) const;

  /// "1 + 2*q^3" style rendering for logs.
  std::string to_string(const std::string& var = "q") const;

  friend bool operator==(const IntegerPoly&, const IntegerPoly&) = default;

 private:
  std::vector<BigInt> c_;
};

}  // namespace qtspp
