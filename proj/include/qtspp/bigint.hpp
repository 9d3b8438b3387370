#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include "qtspp/field.hpp"

namespace qtspp {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Residue of an arbitrary integer.
inline FieldElement reduce(const BigInt& x, const PrimeModulus& mod) {
  BigInt r = x % mod.p();
  if (r < 0) r += mod.p();
  return FieldElement(static_cast<std::uint32_t>(r));
}

/// Residue of a rational; throws ZeroInverse if p divides the denominator.
inline FieldElement reduce(const BigRational& x, const PrimeModulus& mod) {
  return mod.div(reduce(boost::multiprecision::numerator(x), mod),
                 reduce(boost::multiprecision::denominator(x), mod));
}

}  // namespace qtspp
