#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "qtspp/field.hpp"

namespace qtspp {

/// Univariate polynomial over GF(p), coefficients lowest degree first.
/// Always trimmed: the zero polynomial has no coefficients.
class PolyOverField {
 public:
  explicit PolyOverField(const PrimeModulus& mod) : mod_(mod) {}
  PolyOverField(FieldVector coeffs, const PrimeModulus& mod);

  static PolyOverField constant(FieldElement c, const PrimeModulus& mod);
  /// x - root
  static PolyOverField linear_root(FieldElement root, const PrimeModulus& mod);

  const PrimeModulus& modulus() const noexcept { return mod_; }
  const FieldVector& coefficients() const noexcept { return c_; }
  bool is_zero() const noexcept { return c_.empty(); }
  /// -1 for the zero polynomial.
  long degree() const noexcept { return static_cast<long>(c_.size()) - 1; }
  FieldElement coeff(std::size_t k) const noexcept { return k < c_.size() ? c_[k] : FieldElement(0); }
  FieldElement leading() const noexcept { return c_.empty() ? FieldElement(0) : c_.back(); }

  FieldElement evaluate(FieldElement x) const noexcept;
  PolyOverField monic() const;
  PolyOverField scaled(FieldElement s) const;

  friend PolyOverField operator+(const PolyOverField& a, const PolyOverField& b);
  friend PolyOverField operator-(const PolyOverField& a, const PolyOverField& b);
  friend PolyOverField operator*(const PolyOverField& a, const PolyOverField& b);
  friend bool operator==(const PolyOverField& a, const PolyOverField& b) {
    return a.mod_ == b.mod_ && a.c_ == b.c_;
  }

 private:
  void trim() noexcept;

  PrimeModulus mod_;
  FieldVector c_;
};

/// Quotient and remainder; throws ZeroInverse on division by zero.
std::pair<PolyOverField, PolyOverField> divmod(const PolyOverField& a, const PolyOverField& b);
/// Monic gcd (zero if both inputs are zero).
PolyOverField gcd(PolyOverField a, PolyOverField b);
/// Monic least common multiple of two nonzero polynomials.
PolyOverField lcm(const PolyOverField& a, const PolyOverField& b);

struct SamplePoint {
  FieldElement x;
  FieldElement y;
};

/// Unique polynomial of degree < points.size() through all points (Newton form,
/// converted to monomial basis). Throws DuplicateAbscissa.
PolyOverField interpolate_poly(const std::vector<SamplePoint>& points, const PrimeModulus& mod);

}  // namespace qtspp
