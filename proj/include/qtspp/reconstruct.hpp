#pragma once

#include <cstddef>
#include <vector>

#include "qtspp/bigint.hpp"
#include "qtspp/field.hpp"
#include "qtspp/poly.hpp"

namespace qtspp {

/// numerator / denominator over GF(p) with a monic denominator coprime to
/// the numerator.
struct RationalFunctionOverField {
  PolyOverField numerator;
  PolyOverField denominator;

  /// Throws PoleAtSample if the denominator vanishes at x.
  FieldElement evaluate(FieldElement x) const;
};

/// Cauchy interpolation by the extended Euclidean algorithm. The first
/// deg_num_bound + deg_den_bound + 1 points determine the candidate; the
/// remaining points (at least one) verify it.
/// Throws NoFit when no function within the bounds matches every point and
/// PoleAtSample when the candidate denominator vanishes at a sample.
RationalFunctionOverField reconstruct_rational_function(const std::vector<SamplePoint>& points,
                                                        std::size_t deg_num_bound,
                                                        std::size_t deg_den_bound,
                                                        const PrimeModulus& mod);

/// Search over a growing total-degree budget: starting at 10 and doubling up
/// to max_total, each budget runs one Euclidean remainder sequence on the
/// first budget+1 points and accepts the first quotient pair that reproduces
/// every remaining point. At least `min_surplus` points are always held back.
/// Throws NoFit when the budget cap is reached, PoleAtSample as above.
RationalFunctionOverField reconstruct_rational_function_adaptive(
    const std::vector<SamplePoint>& points, const PrimeModulus& mod,
    std::size_t max_total = 128, std::size_t min_surplus = 3);

struct RationalNumber {
  BigInt num;
  BigInt den;  // > 0
  friend bool operator==(const RationalNumber&, const RationalNumber&) = default;
};

/// Recovers a/b with |a|, b <= floor(sqrt(p/2)), gcd(a,b) = 1, a = r b (mod p)
/// by the half-extended Euclidean algorithm. Throws NoReconstruction.
RationalNumber reconstruct_rational_number(FieldElement r, const PrimeModulus& mod);

}  // namespace qtspp
