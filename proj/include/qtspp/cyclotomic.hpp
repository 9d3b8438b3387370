#pragma once

// Products of factors (1 - q^m)^{+-1} evaluated through their cyclotomic
// factorization 1 - q^m = -prod_{d | m} Phi_d(q). Cancelling Phi_d before
// evaluating keeps polynomial quotients such as q-binomials well defined at
// points where single factors vanish mod p (e.g. q = 2 modulo 2^31 - 1, where
// Phi_31(2) = p).

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qtspp/field.hpp"

namespace qtspp {

/// Integer coefficients of the d-th cyclotomic polynomial, lowest degree first.
std::vector<std::int64_t> cyclotomic_poly(std::size_t d);

/// Phi_d(x) mod p.
FieldElement cyclotomic_value(std::size_t d, FieldElement x, const PrimeModulus& mod);

/// Multiset of factors (1 - q^m), with multiplicities that may be negative.
class CyclotomicProduct {
 public:
  void multiply(std::size_t m, int times = 1);
  void divide(std::size_t m, int times = 1) { multiply(m, -times); }

  /// Net exponent of Phi_d after cancellation.
  int exponent(std::size_t d) const;
  std::size_t max_index() const noexcept { return count_.empty() ? 0 : count_.size() - 1; }
  /// (-1)^(number of factors, with multiplicity)
  int sign() const noexcept { return parity_ % 2 == 0 ? 1 : -1; }

 private:
  std::vector<int> count_;  // count_[m] = multiplicity of (1 - q^m)
  long parity_ = 0;
};

}  // namespace qtspp
