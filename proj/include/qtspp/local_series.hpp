#pragma once

// Truncated Laurent series over GF(p) in a local parameter t, used to
// evaluate rational functions of q at q0 through q = q0 + t when the
// specialized linear system at q0 degenerates.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qtspp/field.hpp"

namespace qtspp {

/// t^valuation * (c[0] + c[1] t + ...), known modulo t^(valuation + c.size()).
/// A normalized series has c[0] != 0 or no coefficients at all ("zero to
/// the known precision").
class LaurentSeries {
 public:
  /// Stands in for "known exactly" in precision bookkeeping.
  static constexpr long kExactPrecision = 1L << 40;
  /// Stored length of exact constants; longer than any working precision.
  static constexpr std::size_t kExactLength = 256;

  LaurentSeries() = default;
  LaurentSeries(long valuation, std::vector<std::uint32_t> coeffs);
  static LaurentSeries exact_zero();
  static LaurentSeries exact_one();

  long valuation() const noexcept { return val_; }
  /// Exponent up to which the series is known (exclusive).
  long absolute_precision() const noexcept { return val_ + static_cast<long>(c_.size()); }
  bool is_zero() const noexcept { return c_.empty(); }
  const std::vector<std::uint32_t>& coefficients() const noexcept { return c_; }
  /// Coefficient of t^k; requires k < absolute_precision().
  FieldElement coeff(long k) const noexcept;

  LaurentSeries add(const LaurentSeries& b, const PrimeModulus& mod) const;
  LaurentSeries sub(const LaurentSeries& b, const PrimeModulus& mod) const;
  LaurentSeries mul(const LaurentSeries& b, const PrimeModulus& mod) const;
  /// Throws ZeroInverse for a series that is zero to its precision.
  LaurentSeries inv(const PrimeModulus& mod) const;

 private:
  void normalize() noexcept;

  long val_ = 0;
  std::vector<std::uint32_t> c_;
};

/// Power-series arithmetic modulo t^K on plain coefficient vectors.
std::vector<std::uint32_t> series_mul(const std::vector<std::uint32_t>& a,
                                      const std::vector<std::uint32_t>& b, std::size_t precision,
                                      const PrimeModulus& mod);

/// One kernel vector of an m x (m+1) matrix of series of generic rank m,
/// computed with minimal-valuation pivoting. Returns nothing if the rank
/// cannot be certified at this precision.
bool series_kernel(std::vector<std::vector<LaurentSeries>> rows, std::size_t cols,
                   const PrimeModulus& mod, std::vector<LaurentSeries>* kernel);

}  // namespace qtspp
