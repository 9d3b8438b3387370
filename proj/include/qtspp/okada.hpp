#pragma once

// Matrix entries, q-binomials and product formulas evaluated at a numeric q
// modulo p. q = 1 takes separate exact-integer routes because the q-forms
// are 0/0 there.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qtspp/bigint.hpp"
#include "qtspp/field.hpp"
#include "qtspp/matrix.hpp"

namespace qtspp {

/// A numeric substitution for q with its residue, plus memo tables sized for
/// problems up to n_hint: powers q^k for k <= 16 n_hint + 64 and cyclotomic
/// values Phi_d(q) for d <= 3 n_hint + 3. Lookups beyond the tables are
/// computed on the fly. Immutable after construction.
class QPoint {
 public:
  /// Throws InvalidArgument for q_int < 1.
  QPoint(std::int64_t q_int, const PrimeModulus& mod, std::size_t n_hint = 40);

  std::int64_t q_int() const noexcept { return q_int_; }
  FieldElement reduced() const noexcept { return reduced_; }
  bool is_unit() const noexcept { return q_int_ == 1; }
  const PrimeModulus& modulus() const noexcept { return mod_; }

  /// q^k; memoized below max_exponent, computed by squaring above it.
  FieldElement power(std::size_t k) const noexcept {
    return k < powers_.size() ? powers_[k] : mod_.pow(reduced_, k);
  }
  /// 1 - q^k
  FieldElement one_minus_power(std::size_t k) const noexcept {
    return mod_.sub(FieldElement(1), power(k));
  }
  /// Phi_d(q) mod p, d >= 1.
  FieldElement cyclotomic(std::size_t d) const;

 private:
  std::int64_t q_int_;
  PrimeModulus mod_;
  FieldElement reduced_;
  FieldVector powers_;
  FieldVector cyclotomic_;  // cyclotomic_[d] = Phi_d(q), index 0 unused
};

class CyclotomicProduct;

/// Value of a product of (1 - q^m)^{+-1} after cancelling cyclotomic factors.
/// Throws DegenerateDenominator if a Phi_d with negative net exponent vanishes.
FieldElement evaluate(const CyclotomicProduct& prod, const QPoint& qpt);

/// Smallest multiplicative order of q mod p accepted by is_admissible.
inline constexpr std::size_t kMinimumOrder = 16;

/// Pre-screen for sweeps: q = 1, or q nonzero mod p and not a root of unity
/// of order below kMinimumOrder. Degenerate leading minors at larger orders
/// are handled while building cofactor tables; n_max is kept for callers that
/// want a stricter rule later.
bool is_admissible(std::int64_t q_int, const PrimeModulus& mod, std::size_t n_max);

/// Ordinary binomial coefficient; 0 outside 0 <= b <= a.
BigInt binomial(std::int64_t a, std::int64_t b);

/// Gaussian binomial [a choose b]_q at qpt; 0 for b < 0 or b > a. Evaluated
/// as the product of the Phi_d(q) it contains, so it is defined at every q.
FieldElement qbinom(std::int64_t a, std::int64_t b, const QPoint& qpt);

/// a(i,j) = q^{i+j-1} ([i+j-2, i-1] + q [i+j-1, i]) + (1+q^i) d(i,j) - d(i,j+1)
FieldElement okada_entry(std::int64_t i, std::int64_t j, const QPoint& qpt);

/// The q = 1 entry as an exact integer.
BigInt okada_entry_q1(std::int64_t i, std::int64_t j);

/// prod_{1<=i<=j<=k<=n} (1 - q^{i+j+k-1}) / (1 - q^{i+j+k-2}); 1 for n = 0.
FieldElement qtspp_orbit_product(std::size_t n, const QPoint& qpt);

/// The same product at q = 1 as an exact integer (the TSPP count).
BigInt tspp_count(std::size_t n);

/// The k = n layer of the squared product:
/// prod_{1<=i<=j<=n} ((1 - q^{i+j+n-1}) / (1 - q^{i+j+n-2}))^2.
FieldElement nice_ratio(std::size_t n, const QPoint& qpt);

/// n x n matrix (a(i,j)) for 1 <= i, j <= n, stored 0-indexed.
struct OkadaMatrixSlice {
  std::size_t n;
  QPoint qpt;
  DenseMatrix entries;

  FieldElement at(std::size_t i, std::size_t j) const noexcept { return entries.at(i - 1, j - 1); }
};

OkadaMatrixSlice okada_matrix(std::size_t n, const QPoint& qpt);

}  // namespace qtspp
